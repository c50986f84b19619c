#pragma once

#include "hdwn/time_series.hpp"

namespace hdwn {

/// Raw moments of the standardized innovation law. Odd moments are signed
/// (nu3 = E z^3, nu5 = E z^5). b = |E z^2|^2 is 1 for real innovations and 0
/// for proper complex ones; zbar4_z2sq = E(zbar^4) E^2(z^2), which equals nu4
/// in the real case and 0 for proper complex.
struct InnovationMoments {
  double nu3 = 0.0;
  double nu4 = 3.0;
  double nu5 = 0.0;
  double nu6 = 15.0;
  double nu8 = 105.0;
  double b = 1.0;
  double zbar4_z2sq = 3.0;

  static InnovationMoments gaussian() { return {0.0, 3.0, 0.0, 15.0, 105.0, 1.0, 3.0}; }
  /// Standardized Gamma(4, 0.5) - 2: mean 0, variance 1, fourth moment 4.5.
  static InnovationMoments gamma_model_ii() {
    return {1.0, 4.5, 13.0, 55.0, 1235.5, 1.0, 4.5};
  }
  static InnovationMoments rademacher() { return {0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0}; }
  /// Proper complex Gaussian (E z^2 = 0, E|z|^4 = 2). Only the quadratic-form
  /// moments V1..V4' are defined for complex laws.
  static InnovationMoments complex_gaussian() {
    const double nan = std::nan("");
    return {0.0, 2.0, nan, nan, nan, 0.0, 0.0};
  }
};

/// Expectations of quadratic forms in z with matrix Sigma0 (real, PSD):
///   V1  = E(z* S z)                      V2  = E(z* S z)^2
///   V3  = E(z_t* S z_s)^2                V3p = E|z_t* S z_s|^2
///   V4  = E((z* S z_+)^2 (z* S z_-)^2)   V4p = E(|z_+* S z|^2 |z* S z_-|^2)
///   V5  = E(z* S z)^3                    V6  = E(z* S z)^4
///   V7  = E(z* S z_+ z_+* S z_+ z* S z_- z_-* S z_-)
/// V5..V7 require real innovations with moments through nu8; they are the
/// transcription-heavy part and are cross-checked against Monte Carlo in the
/// test suite before anything trusts them.
struct VSet {
  double V1 = 0.0, V2 = 0.0, V3 = 0.0, V3p = 0.0, V4 = 0.0, V4p = 0.0;
  double V5 = 0.0, V6 = 0.0, V7 = 0.0;
};

/// V1..V4' only; valid for real and proper complex innovation laws.
VSet moments_V_quadratic(const Matrix& sigma0, const InnovationMoments& m);

/// Full set including V5..V7. Throws InsufficientMomentsError when the law is
/// not real or nu5/nu6/nu8 are missing.
VSet moments_V(const Matrix& sigma0, const InnovationMoments& m);

/// Exact E and Var of G_q under the null at finite (p, T).
/// Exact for q = 1; for q >= 2 the cross-lag covariance uses the leading
/// form 4 V1^2 (V2 - V1^2) / T^3, which omits O(p/T^3) boundary families.
struct GqMoments {
  double mean = 0.0;
  double var = 0.0;
};
GqMoments exact_gq_moments(const Matrix& sigma0, const InnovationMoments& m,
                           int q, int T);

/// Exact E and Var of p s1_hat^2 under the null.
struct S1sqMoments {
  double mean = 0.0;
  double var = 0.0;
};
S1sqMoments exact_s1sq_moments(const Matrix& sigma0,
                               const InnovationMoments& m, int T);

/// Exact Cov(G_q, p s1_hat^2) under the null (exact per lag).
double exact_cov_gq_s1sq(const Matrix& sigma0, const InnovationMoments& m,
                         int q, int T);

/// Leading-order expressions (orders 1 and 1/T), used to cross-validate the
/// exact formulas and the joint CLT covariance.
struct LeadingOrderMoments {
  double mean_ps1sq = 0.0;
  double var_ps1sq = 0.0;
  double mean_gq = 0.0;
  double var_gq = 0.0;
  double cov_gq_ps1sq = 0.0;
  double mean_s2hat = 0.0;
};
LeadingOrderMoments leading_order_moments(const Matrix& sigma0, const InnovationMoments& m,
                             int q, int T);

}  // namespace hdwn
