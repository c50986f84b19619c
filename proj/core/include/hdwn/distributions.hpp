#pragma once

#include <functional>
#include <span>

namespace hdwn {

/// Standard normal density.
double normal_pdf(double z);

/// Standard normal CDF, accurate in both tails.
double normal_cdf(double z);

/// Upper-alpha quantile Z_alpha: P(Z > Z_alpha) = alpha. Throws DomainError
/// unless 0 < alpha < 1.
double normal_upper_quantile(double alpha);

/// Inverse CDF (lower quantile).
double normal_quantile(double prob);

/// Chi-square density with `dof` degrees of freedom.
double chi2_pdf(double x, double dof);

/// Chi-square CDF via the regularized lower incomplete gamma function.
/// Supports very large dof (tested up to 1e7).
double chi2_cdf(double x, double dof);

/// Upper-alpha quantile: P(X > q) = alpha. Wilson-Hilferty seed, then
/// monotone Newton/bisection to within 1e-10 in probability.
double chi2_upper_quantile(double alpha, double dof);

/// Regularized lower incomplete gamma P(a, x), exposed for tests.
double reg_lower_gamma(double a, double x);

/// Log-gamma (Lanczos), thread-safe.
double log_gamma(double x);

/// Kolmogorov-Smirnov distance between a sample and a reference CDF.
/// The sample is copied and sorted internally.
double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov p-value Q(lambda) with lambda = sqrt(n) * D.
double kolmogorov_pvalue(double lambda);

}  // namespace hdwn
