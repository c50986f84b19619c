#include "hdwn/stats.hpp"

#include <cmath>
#include <complex>

#include "hdwn/distributions.hpp"
#include "hdwn/errors.hpp"

namespace hdwn {

namespace {

inline double conj_val(double v) { return v; }
inline std::complex<double> conj_val(const std::complex<double>& v) {
  return std::conj(v);
}

template <typename M>
M autocov_circular_impl(const M& x, int tau) {
  const Eigen::Index p = x.rows();
  const Eigen::Index T = x.cols();
  if (tau < 0 || tau >= T) throw InvalidLagError("autocov_circular: need 0 <= tau < T");
  if (tau == 0) return (x * x.adjoint()) / static_cast<double>(T);
  M shifted(p, T);
  // column t of `shifted` is x_{t-tau}, indices wrapped modulo T
  shifted.rightCols(T - tau) = x.leftCols(T - tau);
  shifted.leftCols(tau) = x.rightCols(tau);
  return (x * shifted.adjoint()) / static_cast<double>(T);
}

// Everything the G-family tests need from one pass over the data.
struct GqSummary {
  double g_q = 0.0;
  S1S2Estimates est;
  Eigen::Index p = 0;
  Eigen::Index T = 0;
};

// Tr(Sigma_tau* Sigma_tau) for all tau in 0..q via the T x T Gram matrix
// G = X* X: Tr(Sigma_tau* Sigma_tau) = T^-2 sum_{s,t} G_{st} conj(G_{s-tau,t-tau}).
// One p T^2 product replaces q+1 products of p^2 T; preferred when p is large
// relative to T.
template <typename M>
GqSummary summarize_gram(const M& x, int q) {
  const Eigen::Index p = x.rows();
  const Eigen::Index T = x.cols();
  GqSummary out;
  out.p = p;
  out.T = T;
  const M gram = x.adjoint() * x;
  const double T2 = static_cast<double>(T) * static_cast<double>(T);
  for (int tau = 1; tau <= q; ++tau) {
    double acc = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) {
      const Eigen::Index ts = (t + T - tau) % T;
      for (Eigen::Index s = 0; s < T; ++s) {
        const Eigen::Index ss = (s + T - tau) % T;
        acc += std::real(gram(s, t) * conj_val(gram(ss, ts)));
      }
    }
    out.g_q += acc / T2;
  }
  const double tr0 = gram.real().trace();
  out.est.s1_hat = tr0 / (static_cast<double>(p) * T);
  out.est.s2_hat = gram.squaredNorm() / (static_cast<double>(p) * T2);
  return out;
}

// Direct route: form each p x p autocovariance; preferred when p << T.
template <typename M>
GqSummary summarize_direct(const M& x, int q) {
  const Eigen::Index p = x.rows();
  const Eigen::Index T = x.cols();
  GqSummary out;
  out.p = p;
  out.T = T;
  for (int tau = 1; tau <= q; ++tau) out.g_q += autocov_circular_impl(x, tau).squaredNorm();
  const M s0 = autocov_circular_impl(x, 0);
  out.est.s1_hat = s0.real().trace() / static_cast<double>(p);
  out.est.s2_hat = s0.squaredNorm() / static_cast<double>(p);
  return out;
}

template <typename M>
GqSummary summarize(const M& x, int q) {
  const Eigen::Index p = x.rows();
  const Eigen::Index T = x.cols();
  if (q < 1 || q >= T) throw InvalidLagError("g_q: need 1 <= q < T");
  GqSummary out = (p > T) ? summarize_gram(x, q) : summarize_direct(x, q);
  // s_d2_tilde from the per-row mean squares, shared by both routes.
  double sd2 = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) {
    const double d_i = x.row(i).squaredNorm() / static_cast<double>(T);
    sd2 += d_i * d_i;
  }
  out.est.s_d2_tilde = sd2 / static_cast<double>(p);
  out.est.s2_tilde = out.est.s2_hat -
                     (static_cast<double>(p) / T) * out.est.s1_hat * out.est.s1_hat;
  return out;
}

GqSummary summarize(const TimeSeriesMatrix& x, int q) {
  return x.is_complex() ? summarize(x.complex_data(), q)
                        : summarize(x.real_data(), q);
}

TestReport normal_tail_report(StatisticName name, double statistic,
                              double centering, double sigma, double alpha,
                              int q, const ParamSnapshot& params) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DegenerateVarianceError("test scale is not positive");
  TestReport r;
  r.name = name;
  r.statistic = statistic;
  r.centering = centering;
  r.scale = sigma;
  r.z_or_chi2 = (statistic - centering) / sigma;
  r.p_value = 1.0 - normal_cdf(r.z_or_chi2);
  r.alpha = alpha;
  r.reject = r.z_or_chi2 > normal_upper_quantile(alpha);
  r.q = q;
  r.params = params;
  return r;
}

}  // namespace

const char* to_string(StatisticName name) {
  switch (name) {
    case StatisticName::Gq: return "gq";
    case StatisticName::Gq1: return "gq1";
    case StatisticName::Gq1Star: return "gq1_star";
    case StatisticName::Hosking: return "hosking";
    case StatisticName::LiMcLeod: return "li_mcleod";
  }
  return "?";
}

SpectralConstants constants_from_sigma0(const Matrix& sigma0, double nu4,
                                        double c_p) {
  const double p = static_cast<double>(sigma0.rows());
  SpectralConstants c;
  c.s1 = sigma0.trace() / p;
  c.s2 = sigma0.squaredNorm() / p;  // Tr(Sigma0^2) for symmetric Sigma0
  c.s_d2 = sigma0.diagonal().squaredNorm() / p;
  c.nu4 = nu4;
  c.c_p = c_p;
  return c;
}

Matrix autocov_circular(const Matrix& x, int tau) {
  return autocov_circular_impl(x, tau);
}

ComplexMatrix autocov_circular(const ComplexMatrix& x, int tau) {
  return autocov_circular_impl(x, tau);
}

double g_q(const TimeSeriesMatrix& x, int q) { return summarize(x, q).g_q; }

S1S2Estimates estimate_s1_s2(const TimeSeriesMatrix& x) {
  return summarize(x, 1).est;
}

double sigma2_real(const SpectralConstants& c, int q) {
  const double c2 = c.c_p * c.c_p;
  const double c3 = c2 * c.c_p;
  const double qq = static_cast<double>(q);
  return 2.0 * qq * c2 * c.s2 * c.s2 +
         4.0 * qq * qq * c3 * (c.nu4 - 3.0) * c.s1 * c.s1 * c.s_d2 +
         8.0 * qq * qq * c3 * c.s1 * c.s1 * c.s2;
}

double sigma2_complex(const SpectralConstants& c, int q) {
  const double c2 = c.c_p * c.c_p;
  const double c3 = c2 * c.c_p;
  const double qq = static_cast<double>(q);
  return qq * c2 * c.s2 * c.s2 +
         4.0 * qq * qq * c3 * c.s1 * c.s1 * ((c.nu4 - 2.0) * c.s_d2 + c.s2);
}

TestReport test_gq_known_sigma(const TimeSeriesMatrix& x, int q, double alpha,
                               const SpectralConstants& constants) {
  const GqSummary s = summarize(x, q);
  SpectralConstants c = constants;
  c.c_p = static_cast<double>(s.p) / static_cast<double>(s.T);
  const double sigma2 = x.is_complex() ? sigma2_complex(c, q) : sigma2_real(c, q);
  if (!(sigma2 > 0.0))
    throw DegenerateVarianceError("test_gq_known_sigma: sigma^2(c_p) <= 0");
  const double centering = q * s.T * c.c_p * c.c_p * c.s1 * c.s1;
  ParamSnapshot params{s.p, s.T, c.c_p, c.s1, c.s2, c.s_d2, c.nu4};
  return normal_tail_report(StatisticName::Gq, s.g_q, centering,
                            std::sqrt(sigma2), alpha, q, params);
}

TestReport test_gq1(const TimeSeriesMatrix& x, int q, double alpha) {
  if (x.is_complex()) throw DomainError("test_gq1: real data only");
  const GqSummary s = summarize(x, q);
  const double c_p = static_cast<double>(s.p) / static_cast<double>(s.T);
  if (!(s.est.s2_tilde > 0.0))
    throw DegenerateVarianceError("test_gq1: s2_tilde <= 0");
  const double xi2 = 2.0 * q * c_p * c_p * s.est.s2_tilde * s.est.s2_tilde;
  const double centering = q * s.T * c_p * c_p * s.est.s1_hat * s.est.s1_hat;
  ParamSnapshot params{s.p, s.T, c_p, s.est.s1_hat, s.est.s2_tilde,
                       s.est.s_d2_tilde, std::nan("")};
  return normal_tail_report(StatisticName::Gq1, s.g_q, centering,
                            std::sqrt(xi2), alpha, q, params);
}

TestReport test_gq1_star(const TimeSeriesMatrix& x, int q, double alpha,
                         double nu4_hat) {
  if (x.is_complex()) throw DomainError("test_gq1_star: real data only");
  if (!std::isfinite(nu4_hat)) throw DomainError("test_gq1_star: nu4_hat not finite");
  const GqSummary s = summarize(x, q);
  const double c_p = static_cast<double>(s.p) / static_cast<double>(s.T);
  const double T = static_cast<double>(s.T);
  const double correction =
      2.0 * s.est.s2_tilde + (nu4_hat - 3.0) * s.est.s_d2_tilde;
  const double xi2 = 2.0 * q * c_p * c_p * s.est.s2_tilde * s.est.s2_tilde +
                     (q * c_p * c_p / T) * correction * correction;
  if (!(xi2 > 0.0))
    throw DegenerateVarianceError("test_gq1_star: xi_hat^2 <= 0");
  const double statistic = s.g_q + (q * c_p / T) * correction;
  const double centering = q * s.T * c_p * c_p * s.est.s1_hat * s.est.s1_hat;
  ParamSnapshot params{s.p, s.T, c_p, s.est.s1_hat, s.est.s2_tilde,
                       s.est.s_d2_tilde, nu4_hat};
  return normal_tail_report(StatisticName::Gq1Star, statistic, centering,
                            std::sqrt(xi2), alpha, q, params);
}

}  // namespace hdwn
