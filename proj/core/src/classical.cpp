#include "hdwn/classical.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "hdwn/distributions.hpp"
#include "hdwn/errors.hpp"

namespace hdwn {

namespace {

constexpr double kSingularRatio = 1e-10;

struct Whitener {
  // W = Lambda^{-1/2} U^T with C0 = U Lambda U^T, so that
  // Tr(C* C0^-1 C C0^-1) = || W C W^T ||_F^2.
  Matrix w;
};

Whitener make_whitener(const Matrix& c0) {
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(c0);
  if (eig.info() != Eigen::Success)
    throw SingularCovarianceError("hosking: eigendecomposition failed");
  const auto& vals = eig.eigenvalues();
  const double lmax = vals.maxCoeff();
  const double lmin = vals.minCoeff();
  if (!(lmax > 0.0) || lmin < kSingularRatio * lmax)
    throw SingularCovarianceError(
        "portmanteau: C_0 is singular or near-singular (p too close to T?)");
  Whitener wh;
  wh.w = vals.cwiseSqrt().cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
  return wh;
}

void check_input(const PortmanteauInput& in) {
  const Eigen::Index p = in.residuals.rows();
  const Eigen::Index T = in.residuals.cols();
  if (p > T) throw InfeasibleDimensionError("portmanteau: requires p <= T");
  if (in.q < 1 || in.q >= T) throw InvalidLagError("portmanteau: need 1 <= q < T");
  const double dof =
      static_cast<double>(p) * static_cast<double>(p) * (in.q - in.dof_adjust);
  if (dof < 1.0)
    throw DomainError("portmanteau: p^2 (q - dof_adjust) must be >= 1");
}

TestReport chi2_report(StatisticName name, double statistic, double dof,
                       double alpha, const PortmanteauInput& in) {
  TestReport r;
  r.name = name;
  r.statistic = statistic;
  r.centering = 0.0;
  r.scale = dof;
  r.z_or_chi2 = statistic;
  r.p_value = 1.0 - chi2_cdf(statistic, dof);
  r.alpha = alpha;
  r.reject = statistic > chi2_upper_quantile(alpha, dof);
  r.q = in.q;
  const Eigen::Index p = in.residuals.rows();
  const Eigen::Index T = in.residuals.cols();
  r.params = ParamSnapshot{p, T, static_cast<double>(p) / T,
                           std::nan(""), std::nan(""), std::nan(""), std::nan("")};
  return r;
}

}  // namespace

Matrix autocov_truncated(const Matrix& x, int tau) {
  const Eigen::Index T = x.cols();
  if (tau < 0 || tau >= T)
    throw InvalidLagError("autocov_truncated: need 0 <= tau < T");
  return (x.rightCols(T - tau) * x.leftCols(T - tau).transpose()) /
         static_cast<double>(T);
}

TestReport hosking(const PortmanteauInput& in, double alpha) {
  check_input(in);
  const Eigen::Index p = in.residuals.rows();
  const double T = static_cast<double>(in.residuals.cols());
  const Whitener wh = make_whitener(autocov_truncated(in.residuals, 0));
  double stat = 0.0;
  for (int tau = 1; tau <= in.q; ++tau) {
    const Matrix c = autocov_truncated(in.residuals, tau);
    stat += (wh.w * c * wh.w.transpose()).squaredNorm() / (T - tau);
  }
  stat *= T * T;
  const double dof = static_cast<double>(p) * p * (in.q - in.dof_adjust);
  return chi2_report(StatisticName::Hosking, stat, dof, alpha, in);
}

TestReport li_mcleod(const PortmanteauInput& in, double alpha) {
  check_input(in);
  const Eigen::Index p = in.residuals.rows();
  const double T = static_cast<double>(in.residuals.cols());
  const Whitener wh = make_whitener(autocov_truncated(in.residuals, 0));
  double stat = 0.0;
  for (int tau = 1; tau <= in.q; ++tau) {
    const Matrix c = autocov_truncated(in.residuals, tau);
    stat += (wh.w * c * wh.w.transpose()).squaredNorm();
  }
  stat = T * stat +
         static_cast<double>(p) * p * in.q * (in.q + 1) / (2.0 * T);
  const double dof = static_cast<double>(p) * p * (in.q - in.dof_adjust);
  return chi2_report(StatisticName::LiMcLeod, stat, dof, alpha, in);
}

MomentDiagnostics diagnostics_moments(std::span<const double> statistics,
                                      double dof) {
  if (statistics.size() < 100)
    throw DomainError("diagnostics_moments: need >= 100 samples");
  const double n = static_cast<double>(statistics.size());
  double mean = 0.0;
  for (double v : statistics) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : statistics) var += (v - mean) * (v - mean);
  var /= (n - 1.0);

  std::vector<double> sorted(statistics.begin(), statistics.end());
  std::sort(sorted.begin(), sorted.end());
  // Linear-interpolation sample quantile at 0.95.
  const double pos = 0.95 * (n - 1.0);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  const double p95 = lo + 1 < sorted.size()
                         ? sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac
                         : sorted.back();

  MomentDiagnostics d;
  d.mean_rel_err = (dof - mean) / mean;
  d.var_rel_err = (2.0 * dof - var) / var;
  d.p95_rel_err = (chi2_upper_quantile(0.05, dof) - p95) / p95;
  return d;
}

}  // namespace hdwn
