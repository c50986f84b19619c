#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "hdwn/distributions.hpp"
#include "hdwn/errors.hpp"
#include "hdwn/parallel.hpp"
#include "hdwn/rng.hpp"
#include "hdwn/stats.hpp"

using namespace hdwn;

namespace {

Matrix random_panel(int p, int T, std::uint64_t seed) {
  Rng rng(seed, 0);
  Matrix x(p, T);
  for (int t = 0; t < T; ++t)
    for (int i = 0; i < p; ++i) x(i, t) = rng.normal();
  return x;
}

// Brute-force evaluation of the defining wrapped double sum.
Matrix autocov_bruteforce(const Matrix& x, int tau) {
  const int p = static_cast<int>(x.rows());
  const int T = static_cast<int>(x.cols());
  Matrix s = Matrix::Zero(p, p);
  for (int t = 0; t < T; ++t) {
    const int lag = ((t - tau) % T + T) % T;
    s += x.col(t) * x.col(lag).transpose();
  }
  return s / T;
}

const Matrix example_2x3 = [] {
  Matrix x(2, 3);
  x << 1, 0, 1,
       0, 1, 1;
  return x;
}();

}  // namespace

TEST_CASE("autocov_circular: zero data, brute force, gram structure") {
  CHECK(autocov_circular(Matrix(Matrix::Zero(3, 8)), 1).norm() == 0.0);

  const Matrix s1 = autocov_circular(example_2x3, 1);
  CHECK((s1 - autocov_bruteforce(example_2x3, 1)).norm() < 1e-15);
  // hand value: ((1,2),(1,1))/3
  CHECK(s1(0, 0) == doctest::Approx(1.0 / 3));
  CHECK(s1(0, 1) == doctest::Approx(2.0 / 3));
  CHECK(s1(1, 0) == doctest::Approx(1.0 / 3));
  CHECK(s1(1, 1) == doctest::Approx(1.0 / 3));

  const Matrix x = random_panel(5, 17, 11);
  for (int tau : {0, 2, 7, 16})
    CHECK((autocov_circular(x, tau) - autocov_bruteforce(x, tau)).norm() < 1e-12);

  const Matrix s0 = autocov_circular(x, 0);
  CHECK((s0 - s0.transpose()).norm() < 1e-14);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(s0);
  CHECK(eig.eigenvalues().minCoeff() > -1e-12);

  CHECK_THROWS_AS(autocov_circular(x, 17), InvalidLagError);
  CHECK_THROWS_AS(autocov_circular(x, -1), InvalidLagError);
}

TEST_CASE("g_q: zero data, hand value, trace equals singular values") {
  CHECK(g_q(TimeSeriesMatrix(Matrix(Matrix::Zero(3, 8))), 2) == 0.0);

  // Tr(S1* S1) of the 2x3 example = 7/9.
  CHECK(g_q(TimeSeriesMatrix(example_2x3), 1) == doctest::Approx(7.0 / 9).epsilon(1e-12));

  const Matrix x = random_panel(6, 20, 12);
  const double via_trace = g_q(TimeSeriesMatrix(x), 3);
  double via_svd = 0.0;
  for (int tau = 1; tau <= 3; ++tau) {
    const Eigen::JacobiSVD<Matrix> svd(autocov_circular(x, tau));
    via_svd += svd.singularValues().squaredNorm();
  }
  CHECK(std::abs(via_trace - via_svd) / via_svd < 1e-10);
  CHECK(via_trace >= 0.0);

  CHECK_THROWS_AS(g_q(TimeSeriesMatrix(x), 20), InvalidLagError);
  CHECK_THROWS_AS(g_q(TimeSeriesMatrix(x), 0), InvalidLagError);
}

TEST_CASE("g_q: gram route (p > T) agrees with direct route") {
  const Matrix x = random_panel(30, 10, 13);  // p > T triggers the gram path
  double direct = 0.0;
  for (int tau = 1; tau <= 3; ++tau)
    direct += autocov_bruteforce(x, tau).squaredNorm();
  CHECK(g_q(TimeSeriesMatrix(x), 3) == doctest::Approx(direct).epsilon(1e-12));

  const auto est = estimate_s1_s2(TimeSeriesMatrix(x));
  const Matrix s0 = autocov_bruteforce(x, 0);
  CHECK(est.s1_hat == doctest::Approx(s0.trace() / 30).epsilon(1e-12));
  CHECK(est.s2_hat == doctest::Approx(s0.squaredNorm() / 30).epsilon(1e-12));
}

TEST_CASE("orthogonal, circular-shift, and scale invariances") {
  const Matrix x = random_panel(8, 25, 14);
  const double g = g_q(TimeSeriesMatrix(x), 2);

  const Matrix gauss = random_panel(8, 8, 15);
  const Matrix u = Eigen::HouseholderQR<Matrix>(gauss).householderQ();
  CHECK(std::abs(g_q(TimeSeriesMatrix(Matrix(u * x)), 2) - g) / g < 1e-9);

  for (int shift : {1, 7, 24}) {
    Matrix rot(8, 25);
    rot << x.rightCols(shift), x.leftCols(25 - shift);
    CHECK(std::abs(g_q(TimeSeriesMatrix(rot), 2) - g) / g < 1e-10);
  }

  const double sigma = 1.7;
  CHECK(std::abs(g_q(TimeSeriesMatrix(Matrix(sigma * x)), 2) -
                 std::pow(sigma, 4) * g) / (std::pow(sigma, 4) * g) < 1e-12);
}

TEST_CASE("estimate_s1_s2: identity sample covariance and hand example") {
  // X X^T / T = I exactly.
  Matrix x(2, 4);
  x << std::sqrt(2.0), 0, std::sqrt(2.0), 0,
       0, std::sqrt(2.0), 0, std::sqrt(2.0);
  const auto est = estimate_s1_s2(TimeSeriesMatrix(x));
  CHECK(est.s1_hat == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(est.s2_hat == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(est.s2_tilde == doctest::Approx(1.0 - 2.0 / 4.0).epsilon(1e-14));

  const auto e = estimate_s1_s2(TimeSeriesMatrix(example_2x3));
  CHECK(e.s1_hat == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(e.s2_hat == doctest::Approx(5.0 / 9).epsilon(1e-12));
  CHECK(e.s2_tilde == doctest::Approx(7.0 / 27).epsilon(1e-12));
  CHECK(e.s_d2_tilde == doctest::Approx(4.0 / 9).epsilon(1e-12));
}

TEST_CASE("variance formulas at the identity") {
  for (double c : {0.1, 0.5, 2.0}) {
    CHECK(sigma2_real({1, 1, 1, 3.0, c}, 1) ==
          doctest::Approx(2 * c * c + 8 * c * c * c).epsilon(1e-14));
    CHECK(sigma2_complex({1, 1, 1, 2.0, c}, 1) ==
          doctest::Approx(c * c + 4 * c * c * c).epsilon(1e-14));
  }
}

TEST_CASE("test_gq_known_sigma: centering and degenerate variance") {
  const Matrix x = random_panel(50, 100, 16);
  const auto r = test_gq_known_sigma(TimeSeriesMatrix(x), 1, 0.05,
                                     SpectralConstants{1, 1, 1, 3.0, 0});
  CHECK(r.centering == doctest::Approx(25.0).epsilon(1e-14));  // qT c_p^2 s1^2
  CHECK(r.scale == doctest::Approx(std::sqrt(1.5 + 0.01)).epsilon(0.1));
  CHECK(r.p_value >= 0.0);
  CHECK(r.p_value <= 1.0);
  CHECK(r.reject == (r.z_or_chi2 > normal_upper_quantile(0.05)));

  SpectralConstants degenerate{1, 0, 0, 3.0, 0};
  degenerate.s2 = 0;
  CHECK_THROWS_AS(
      test_gq_known_sigma(TimeSeriesMatrix(x), 1, 0.05, degenerate),
      DegenerateVarianceError);
}

TEST_CASE("test_gq1: scaling leaves the z-score unchanged") {
  const Matrix x = random_panel(12, 40, 17);
  const auto r1 = test_gq1(TimeSeriesMatrix(x), 2, 0.05);
  const auto r3 = test_gq1(TimeSeriesMatrix(Matrix(3.0 * x)), 2, 0.05);
  CHECK(std::abs(r1.z_or_chi2 - r3.z_or_chi2) < 1e-9 * std::abs(r1.z_or_chi2) + 1e-12);
  CHECK(r1.reject == r3.reject);

  // works for p > T
  const Matrix wide = random_panel(30, 12, 18);
  CHECK_NOTHROW(test_gq1(TimeSeriesMatrix(wide), 1, 0.05));

  CHECK_THROWS_AS(test_gq1(TimeSeriesMatrix(Matrix(Matrix::Zero(4, 9))), 1, 0.05),
                  DegenerateVarianceError);
}

TEST_CASE("test_gq1_star: zero data errors; nu4=3 decision tracks test_gq1") {
  CHECK_THROWS_AS(
      test_gq1_star(TimeSeriesMatrix(Matrix(Matrix::Zero(4, 9))), 1, 0.05, 3.0),
      DegenerateVarianceError);

  // Paired-decision check: on Gaussian nulls at p=20, T=100 the corrected
  // and uncorrected tests coincide in at least 95% of replicates.
  const int reps = 400;
  int agree = 0;
  for (int r = 0; r < reps; ++r) {
    const Matrix x = random_panel(20, 100, 1000 + r);
    const TimeSeriesMatrix ts(x);
    if (test_gq1(ts, 1, 0.05).reject == test_gq1_star(ts, 1, 0.05, 3.0).reject)
      ++agree;
  }
  CHECK(agree >= static_cast<int>(0.95 * reps));
}

TEST_CASE("complex panels: autocov is hermitian, g_q real, unitary invariant") {
  const int p = 6, T = 15;
  Rng rng(19, 0);
  ComplexMatrix x(p, T);
  for (int t = 0; t < T; ++t)
    for (int i = 0; i < p; ++i)
      x(i, t) = std::complex<double>(rng.normal(), rng.normal()) / std::sqrt(2.0);

  const ComplexMatrix s0 = autocov_circular(x, 0);
  CHECK((s0 - s0.adjoint()).norm() < 1e-14);
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(s0);
  CHECK(eig.eigenvalues().minCoeff() > -1e-12);

  const TimeSeriesMatrix ts(x);
  const double g = g_q(ts, 2);
  CHECK(g >= 0.0);

  ComplexMatrix gauss(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      gauss(i, j) = std::complex<double>(rng.normal(), rng.normal());
  const ComplexMatrix u = Eigen::HouseholderQR<ComplexMatrix>(gauss).householderQ();
  CHECK(std::abs(g_q(TimeSeriesMatrix(ComplexMatrix(u * x)), 2) - g) / g < 1e-9);

  // complex dispatch in the known-sigma test
  const auto rep = test_gq_known_sigma(ts, 1, 0.05, SpectralConstants{1, 1, 1, 2.0, 0});
  CHECK(rep.scale ==
        doctest::Approx(std::sqrt(sigma2_complex({1, 1, 1, 2.0, 0.4}, 1))).epsilon(1e-12));

  CHECK_THROWS_AS(test_gq1(ts, 1, 0.05), DomainError);
  CHECK_THROWS_AS(test_gq1_star(ts, 1, 0.05, 2.0), DomainError);
}

TEST_CASE("complex g_q test holds its size on proper complex Gaussian nulls") {
  const int reps = 2000, p = 50, T = 100;
  std::vector<signed char> rej(reps);
  parallel_for(reps, 0, [&](std::int64_t r) {
    Rng rng(999, static_cast<std::uint64_t>(r));
    ComplexMatrix x(p, T);
    for (int t = 0; t < T; ++t)
      for (int i = 0; i < p; ++i)
        x(i, t) = std::complex<double>(rng.normal(), rng.normal()) / std::sqrt(2.0);
    // proper complex Gaussian: E z^2 = 0, E|z|^4 = 2
    rej[r] = test_gq_known_sigma(TimeSeriesMatrix(std::move(x)), 1, 0.05,
                                 SpectralConstants{1, 1, 1, 2.0, 0})
                 .reject;
  });
  double rate = 0;
  for (auto v : rej) rate += v;
  rate /= reps;
  CHECK(rate > 0.03);
  CHECK(rate < 0.07);
}

TEST_CASE("s2_tilde is consistent: 500 nulls at p=100, T=1000") {
  const int reps = 500;
  std::vector<double> vals(reps);
  parallel_for(reps, 0, [&](std::int64_t r) {
    Rng rng(777, static_cast<std::uint64_t>(r));
    Matrix x(100, 1000);
    for (int t = 0; t < 1000; ++t)
      for (int i = 0; i < 100; ++i) x(i, t) = rng.normal();
    vals[r] = estimate_s1_s2(TimeSeriesMatrix(std::move(x))).s2_tilde;
  });
  double mean = 0;
  for (double v : vals) mean += v;
  mean /= reps;
  double sd = 0;
  for (double v : vals) sd += (v - mean) * (v - mean);
  sd = std::sqrt(sd / (reps - 1));
  CHECK(std::abs(mean - 1.0) < 3.0 * sd / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("null z-scores of test_gq1 pass a KS test against N(0,1)") {
  const int reps = 2000, p = 200, T = 200;
  std::vector<double> z(reps);
  parallel_for(reps, 0, [&](std::int64_t r) {
    Rng rng(888, static_cast<std::uint64_t>(r));
    Matrix x(p, T);
    for (int t = 0; t < T; ++t)
      for (int i = 0; i < p; ++i) x(i, t) = rng.normal();
    z[r] = test_gq1(TimeSeriesMatrix(std::move(x)), 1, 0.05).z_or_chi2;
  });
  const double d = ks_statistic(z, [](double v) { return normal_cdf(v); });
  // level 0.01 critical value of sqrt(n) D is 1.6276
  CHECK(std::sqrt(static_cast<double>(reps)) * d < 1.6276);
}
