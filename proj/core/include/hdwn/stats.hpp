#pragma once

#include <Eigen/Dense>

#include "hdwn/time_series.hpp"

namespace hdwn {

enum class StatisticName { Gq, Gq1, Gq1Star, Hosking, LiMcLeod };

const char* to_string(StatisticName name);

/// Characteristic constants of the cross-sectional covariance entering the
/// asymptotic law: s1 = p^-1 Tr(Sigma0), s2 = p^-1 Tr(Sigma0^2),
/// s_d2 = p^-1 Tr(D^2(Sigma0)), the innovation fourth moment nu4, and the
/// dimension-to-sample ratio c_p = p/T.
struct SpectralConstants {
  double s1 = 1.0;
  double s2 = 1.0;
  double s_d2 = 1.0;
  double nu4 = 3.0;
  double c_p = 0.0;
};

/// Computes (s1, s2, s_d2) exactly from a known covariance matrix.
SpectralConstants constants_from_sigma0(const Matrix& sigma0, double nu4,
                                        double c_p);

/// Parameter snapshot recorded with every test decision.
struct ParamSnapshot {
  Eigen::Index p = 0;
  Eigen::Index T = 0;
  double c_p = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s_d2 = 0.0;
  double nu4 = 0.0;
};

/// Outcome of one test: the raw statistic, the centering and scale that
/// standardize it, the standardized value (a z-score for the normal-limit
/// tests, the chi-square value for the portmanteau tests), and the decision.
struct TestReport {
  StatisticName name = StatisticName::Gq;
  double statistic = 0.0;
  double centering = 0.0;
  double scale = 0.0;  // standard deviation, or chi-square dof
  double z_or_chi2 = 0.0;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  int q = 0;
  ParamSnapshot params;
};

/// Lag-tau sample autocovariance with the circular convention x_t = x_{T+t}
/// for t <= 0: Sigma_tau = T^-1 sum_t x_t x*_{t-tau}. Requires 0 <= tau < T.
Matrix autocov_circular(const Matrix& x, int tau);
ComplexMatrix autocov_circular(const ComplexMatrix& x, int tau);

/// G_q = sum_{tau=1..q} Tr(Sigma_tau* Sigma_tau), the sum of squared singular
/// values of the first q lagged circular autocovariances. Requires 1 <= q < T.
double g_q(const TimeSeriesMatrix& x, int q);

/// Plug-in estimators: s1_hat = p^-1 Tr(Sigma0_hat),
/// s2_hat = p^-1 Tr(Sigma0_hat^2), s2_tilde = s2_hat - c_p s1_hat^2, and
/// s_d2_tilde = p^-1 sum_i (T^-1 sum_t |x_it|^2)^2.
struct S1S2Estimates {
  double s1_hat = 0.0;
  double s2_hat = 0.0;
  double s2_tilde = 0.0;
  double s_d2_tilde = 0.0;
};
S1S2Estimates estimate_s1_s2(const TimeSeriesMatrix& x);

/// Asymptotic variance of G_q for real data:
/// 2q c^2 s2^2 + 4q^2 c^3 (nu4 - 3) s1^2 s_d2 + 8q^2 c^3 s1^2 s2.
double sigma2_real(const SpectralConstants& c, int q);

/// Asymptotic variance for proper complex data:
/// q c^2 s2^2 + 4q^2 c^3 s1^2 [(nu4 - 2) s_d2 + s2].
double sigma2_complex(const SpectralConstants& c, int q);

/// Test with known Sigma0: reject when G_q - qT c_p^2 s1^2 > Z_alpha sigma(c).
/// Dispatches to the complex variance when the input panel is complex.
TestReport test_gq_known_sigma(const TimeSeriesMatrix& x, int q, double alpha,
                               const SpectralConstants& constants);

/// Feasible test with estimated constants: reject when
/// G_q - qT c_p^2 s1_hat^2 > Z_alpha xi_tilde, xi_tilde^2 = 2q c_p^2 s2_tilde^2.
/// Needs no matrix inversion, so it works for p > T. Real data only.
TestReport test_gq1(const TimeSeriesMatrix& x, int q, double alpha);

/// Finite-sample corrected test: adds T^-1 q c_p (2 s2_tilde +
/// (nu4_hat - 3) s_d2_tilde) to the centered statistic and widens the scale
/// accordingly. Real data only; nu4_hat is taken as given.
TestReport test_gq1_star(const TimeSeriesMatrix& x, int q, double alpha,
                         double nu4_hat);

}  // namespace hdwn
