#pragma once

#include <span>

#include "hdwn/stats.hpp"
#include "hdwn/time_series.hpp"

namespace hdwn {

/// Residual panel plus test configuration for the multivariate portmanteau
/// tests. dof_adjust is the fitted VARMA order u+v; both tests reference a
/// chi-square with p^2 (q - dof_adjust) degrees of freedom.
struct PortmanteauInput {
  const Matrix& residuals;
  int q = 1;
  int dof_adjust = 0;
};

/// Truncated (non-circular) sample autocovariance
/// C_tau = T^-1 sum_{t=tau+1..T} x_t x*_{t-tau}. Requires 0 <= tau < T.
Matrix autocov_truncated(const Matrix& x, int tau);

/// Hosking portmanteau statistic
/// Q~_q = T^2 sum_{tau=1..q} (T-tau)^-1 Tr(C_tau* C_0^-1 C_tau C_0^-1),
/// referred to chi2(p^2 (q - u - v)). C_0 is inverted through its symmetric
/// eigendecomposition; eigenvalues below 1e-10 of the largest raise
/// SingularCovarianceError (a sign that p is too close to T).
TestReport hosking(const PortmanteauInput& input, double alpha);

/// Li-McLeod statistic
/// Q*_q = T sum Tr(C_tau* C_0^-1 C_tau C_0^-1) + p^2 q (q+1) / (2T),
/// same reference distribution as the Hosking test.
TestReport li_mcleod(const PortmanteauInput& input, double alpha);

/// Relative errors (theoretical - empirical) / empirical of the sample mean,
/// variance, and 95th percentile of `statistics` against the chi-square
/// theory values (dof, 2 dof, chi2_{0.05, dof}). Requires >= 100 samples.
struct MomentDiagnostics {
  double mean_rel_err = 0.0;
  double var_rel_err = 0.0;
  double p95_rel_err = 0.0;
};
MomentDiagnostics diagnostics_moments(std::span<const double> statistics,
                                      double dof);

}  // namespace hdwn
