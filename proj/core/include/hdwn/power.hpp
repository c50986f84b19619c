#pragma once

#include <optional>

#include "hdwn/time_series.hpp"

namespace hdwn {

/// VMA(1) alternative x_t = A0 z_t + A1 z_{t-1}. The derived matrices
/// S0 = A0* A0, S1 = A1* A1, C = A0* A1 are computed on first use and cached.
class VmaSpec {
 public:
  VmaSpec(Matrix a0, Matrix a1);

  const Matrix& a0() const { return a0_; }
  const Matrix& a1() const { return a1_; }
  const Matrix& sigma0_tilde() const;   // A0* A0
  const Matrix& sigma1_tilde() const;   // A1* A1
  const Matrix& sigma01_tilde() const;  // A0* A1
  Eigen::Index dim() const { return a0_.rows(); }

 private:
  Matrix a0_, a1_;
  mutable std::optional<Matrix> s0_, s1_, s01_;
};

/// Every trace expression entering the VMA(1) moments, evaluated exactly from
/// the coefficient matrices. Names: s0/s1/c are Sigma0~, Sigma1~, Sigma01~; `tr_` is
/// a trace, `tr2_` a squared trace, `d_` a diagonal contraction.
struct VmaTraces {
  double tr_sum = 0;          // Tr(S0 + S1)
  double tr_sum_sq = 0;       // Tr((S0 + S1)^2)
  double d2_sum = 0;          // Tr(D^2(S0 + S1))
  double tr_s0s1 = 0;         // Tr(S0 S1)
  double d_s0_d_s1 = 0;       // Tr(D(S0) D(S1))
  double tr_c = 0;            // Tr(C)
  double tr_cct = 0;          // Tr(C C*)
  double tr_cc = 0;           // Tr(C^2)
  double d2_c = 0;            // Tr(D^2(C))
  double tr_sq_sum = 0;       // Tr(S0^2 + S1^2)
  double tr_s0s1_sq = 0;      // Tr((S0 S1)^2)
  double d2_s0s1 = 0;         // Tr(D^2(S0 S1))
  double d_s0s1_d_sum = 0;    // Tr(D(S0 S1) D(S0 + S1))
  double tr_s0s1_sum = 0;     // Tr(S0 S1 (S0 + S1))
  double tr_cs0 = 0;          // Tr(C S0)
  double tr_cs1 = 0;          // Tr(C S1)
  double tr_s0sq_ct = 0;      // Tr(S0^2 C*)
  double tr_s1sq_c = 0;       // Tr(S1^2 C)
  double tr_s1_c_s0 = 0;      // Tr(S1 C S0)
  double tr_ctc_s0 = 0;       // Tr(C* C S0)
  double tr_cct_s1 = 0;       // Tr(C C* S1)
  double tr_ctc_s0sq = 0;     // Tr(C* C S0^2)
  double tr_cct_s1sq = 0;     // Tr(C C* S1^2)
  double tr_ct_s1_c_s0 = 0;   // Tr(C* S1 C S0)
  double tr_cct_ctc = 0;      // Tr(C C* C* C)
  double tr_c_ct_ct = 0;      // Tr(C C* C*)
  double tr_s0s1_c = 0;       // Tr(S0 S1 C)
  double d_s0s1_d_c = 0;      // Tr(D(S0 S1) D(C))
  double d_c_d_sum = 0;       // Tr(D(C) D(S0 + S1))
  double tr_c_sum = 0;        // Tr(C (S0 + S1))
};

VmaTraces trace_polynomials(const VmaSpec& spec);

/// Joint mean/covariance of (G_1, T c_p^2 s1_hat^2) under the VMA(1)
/// alternative, remainder terms dropped.
struct VmaJointMoments {
  double mu_G = 0, mu_S = 0;
  double sigma_G2 = 0, sigma_S2 = 0, sigma_GS = 0;
};
VmaJointMoments vma_joint_moments(const VmaSpec& spec, double T, double nu4);

/// Law of G_1 - T c_p^2 s1_hat^2 under the alternative: mean and standard
/// deviation. The full form keeps the 1/T^2 mean corrections (it reduces to
/// the null second-order mean when A1 = 0); the limit form drops them, which
/// is the normalization the asymptotic power function uses.
struct G11Law {
  double mu = 0;
  double sigma = 0;
};
G11Law g11_law(const VmaSpec& spec, double T, double nu4);
G11Law g11_law_limit(const VmaSpec& spec, double T, double nu4);

/// xi_0: the almost-sure limit of the estimated scale xi_tilde under the
/// alternative, evaluated at finite (p, T).
double xi0(const VmaSpec& spec, double T);

/// Asymptotic power of the feasible q = 1 test at level alpha:
/// beta = 1 - Phi(Z_alpha xi0 / sigma_G11 - mu_G11 / sigma_G11).
/// Reduces exactly to alpha when A1 = 0.
struct PowerPrediction {
  double mu_G11 = 0;
  double sigma_G11 = 0;
  double xi0 = 0;
  double beta = 0;
};
PowerPrediction power_beta(const VmaSpec& spec, double T, double nu4,
                           double alpha);

}  // namespace hdwn
