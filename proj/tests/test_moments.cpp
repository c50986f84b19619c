#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "hdwn/errors.hpp"
#include "hdwn/moments.hpp"
#include "hdwn/rng.hpp"
#include "hdwn/stats.hpp"

using namespace hdwn;

namespace {

Matrix random_psd(int p, std::uint64_t seed) {
  Rng rng(seed, 0);
  Matrix a(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = rng.normal();
  return a * a.transpose() / p + 0.5 * Matrix::Identity(p, p);
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  return eig.eigenvectors() *
         eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         eig.eigenvectors().transpose();
}

struct MeanSe {
  double mean = 0, se = 0;
};

// Batched Monte Carlo mean with standard error.
MeanSe mc_mean(int batches, int per_batch,
               const std::function<double(Rng&)>& draw, std::uint64_t seed) {
  std::vector<double> bm(batches, 0.0);
  for (int b = 0; b < batches; ++b) {
    Rng rng(seed, static_cast<std::uint64_t>(b));
    double acc = 0;
    for (int i = 0; i < per_batch; ++i) acc += draw(rng);
    bm[b] = acc / per_batch;
  }
  MeanSe out;
  for (double v : bm) out.mean += v;
  out.mean /= batches;
  double var = 0;
  for (double v : bm) var += (v - out.mean) * (v - out.mean);
  out.se = std::sqrt(var / (batches - 1) / batches);
  return out;
}

double draw_innov(bool gamma, Rng& rng) {
  return gamma ? rng.gamma(4.0, 0.5) - 2.0 : rng.normal();
}

Eigen::VectorXd draw_vec(int p, bool gamma, Rng& rng) {
  Eigen::VectorXd z(p);
  for (int i = 0; i < p; ++i) z[i] = draw_innov(gamma, rng);
  return z;
}

}  // namespace

TEST_CASE("V values at the identity match closed forms") {
  const int p = 7;
  const Matrix eye = Matrix::Identity(p, p);
  const auto g = moments_V(eye, InnovationMoments::gaussian());
  CHECK(g.V1 == doctest::Approx(p));
  CHECK(g.V2 == doctest::Approx(p * p + 2 * p));
  CHECK(g.V3 == doctest::Approx(p));
  CHECK(g.V3p == doctest::Approx(p));
  CHECK(g.V4 == doctest::Approx(p * p + 2 * p));
  CHECK(g.V4p == doctest::Approx(p * p + 2 * p));
  CHECK(g.V5 == doctest::Approx(p * (p + 2) * (p + 4)));
  CHECK(g.V6 == doctest::Approx(p * (p + 2) * (p + 4) * (p + 6)));
  CHECK(g.V7 == doctest::Approx(0.0));

  const auto ga = moments_V(eye, InnovationMoments::gamma_model_ii());
  CHECK(ga.V7 == doctest::Approx(static_cast<double>(p)));  // nu3^2 p with nu3=1
}

TEST_CASE("scalar case: V5 = sigma^6 nu6 and V6 = sigma^8 nu8") {
  Matrix s(1, 1);
  s(0, 0) = 1.7;
  for (const auto& m : {InnovationMoments::gaussian(),
                        InnovationMoments::gamma_model_ii(),
                        InnovationMoments::rademacher()}) {
    const auto v = moments_V(s, m);
    CHECK(v.V5 == doctest::Approx(std::pow(1.7, 3) * m.nu6).epsilon(1e-12));
    CHECK(v.V6 == doctest::Approx(std::pow(1.7, 4) * m.nu8).epsilon(1e-12));
    CHECK(v.V7 == doctest::Approx(std::pow(1.7, 4) * m.nu3 * m.nu3).epsilon(1e-12));
  }
}

TEST_CASE("moments_V is invariant under symmetric permutation of Sigma0") {
  const int p = 5;
  const Matrix s = random_psd(p, 31);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(p);
  perm.setIdentity();
  std::swap(perm.indices()[0], perm.indices()[3]);
  std::swap(perm.indices()[1], perm.indices()[4]);
  const Matrix sp = perm * s * perm.transpose();
  const auto a = moments_V(s, InnovationMoments::gamma_model_ii());
  const auto b = moments_V(sp, InnovationMoments::gamma_model_ii());
  CHECK(a.V2 == doctest::Approx(b.V2).epsilon(1e-10));
  CHECK(a.V4 == doctest::Approx(b.V4).epsilon(1e-10));
  CHECK(a.V5 == doctest::Approx(b.V5).epsilon(1e-10));
  CHECK(a.V6 == doctest::Approx(b.V6).epsilon(1e-10));
  CHECK(a.V7 == doctest::Approx(b.V7).epsilon(1e-10));
}

TEST_CASE("complex law lacks V5..V7; quadratic set still available") {
  const Matrix s = random_psd(3, 32);
  CHECK_THROWS_AS(moments_V(s, InnovationMoments::complex_gaussian()),
                  InsufficientMomentsError);
  const auto v = moments_V_quadratic(s, InnovationMoments::complex_gaussian());
  CHECK(v.V3 == doctest::Approx(0.0));  // b = 0
  CHECK(v.V4 == doctest::Approx(0.0));
}

TEST_CASE("V1..V7 match Monte Carlo at p=3 (Gaussian and Gamma)") {
  const int p = 3;
  const Matrix s = random_psd(p, 33);
  for (const bool gamma : {false, true}) {
    const auto m = gamma ? InnovationMoments::gamma_model_ii()
                         : InnovationMoments::gaussian();
    const auto v = moments_V(s, m);
    const std::uint64_t seed = gamma ? 3400 : 3500;

    auto qf = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
      return a.dot(s * b);
    };
    struct Check {
      double exact;
      std::function<double(Rng&)> draw;
      const char* name;
    };
    const int pp = p;
    std::vector<Check> checks = {
        {v.V1, [&, pp](Rng& r) { auto z = draw_vec(pp, gamma, r); return qf(z, z); }, "V1"},
        {v.V2, [&, pp](Rng& r) { auto z = draw_vec(pp, gamma, r); return std::pow(qf(z, z), 2); }, "V2"},
        {v.V3, [&, pp](Rng& r) {
           auto z = draw_vec(pp, gamma, r);
           auto w = draw_vec(pp, gamma, r);
           return std::pow(qf(z, w), 2);
         }, "V3"},
        {v.V4, [&, pp](Rng& r) {
           auto zt = draw_vec(pp, gamma, r);
           auto zp = draw_vec(pp, gamma, r);
           auto zm = draw_vec(pp, gamma, r);
           return std::pow(qf(zt, zp), 2) * std::pow(qf(zt, zm), 2);
         }, "V4"},
        {v.V5, [&, pp](Rng& r) { auto z = draw_vec(pp, gamma, r); return std::pow(qf(z, z), 3); }, "V5"},
        {v.V6, [&, pp](Rng& r) { auto z = draw_vec(pp, gamma, r); return std::pow(qf(z, z), 4); }, "V6"},
        {v.V7, [&, pp](Rng& r) {
           auto zt = draw_vec(pp, gamma, r);
           auto zp = draw_vec(pp, gamma, r);
           auto zm = draw_vec(pp, gamma, r);
           return qf(zt, zp) * qf(zp, zp) * qf(zt, zm) * qf(zm, zm);
         }, "V7"},
    };
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const auto est = mc_mean(50, 8000, checks[i].draw, seed + i);
      INFO(checks[i].name << " exact=" << checks[i].exact
                          << " mc=" << est.mean << " se=" << est.se);
      CHECK(std::abs(est.mean - checks[i].exact) < 4.0 * est.se);
    }
  }
}

TEST_CASE("exact G_q and s1^2 moments match Monte Carlo at p=3, T=20, q=1") {
  const int p = 3, T = 20;
  const Matrix s = random_psd(p, 34);
  const Matrix root = psd_sqrt(s);

  for (const bool gamma : {false, true}) {
    const auto m = gamma ? InnovationMoments::gamma_model_ii()
                         : InnovationMoments::gaussian();
    const auto gq = exact_gq_moments(s, m, 1, T);
    const auto s1 = exact_s1sq_moments(s, m, T);
    const double cov = exact_cov_gq_s1sq(s, m, 1, T);

    // Sample (G_1, p s1_hat^2) through the library code path.
    const int batches = 50, per_batch = 6000;
    std::vector<double> bg(batches), bs(batches), bgg(batches), bss(batches),
        bgs(batches);
    for (int b = 0; b < batches; ++b) {
      Rng rng(gamma ? 4000 + b : 5000 + b, 1);
      double sg = 0, ss = 0, sgg = 0, sss = 0, sgs = 0;
      for (int i = 0; i < per_batch; ++i) {
        Matrix x(p, T);
        for (int t = 0; t < T; ++t)
          for (int r = 0; r < p; ++r) x(r, t) = draw_innov(gamma, rng);
        x = root * x;
        const TimeSeriesMatrix ts(std::move(x));
        const double g = g_q(ts, 1);
        const auto est = estimate_s1_s2(ts);
        const double ps1 = p * est.s1_hat * est.s1_hat;
        sg += g;
        ss += ps1;
        sgg += g * g;
        sss += ps1 * ps1;
        sgs += g * ps1;
      }
      bg[b] = sg / per_batch;
      bs[b] = ss / per_batch;
      bgg[b] = sgg / per_batch;
      bss[b] = sss / per_batch;
      bgs[b] = sgs / per_batch;
    }
    auto reduce = [&](const std::vector<double>& v) {
      MeanSe o;
      for (double x : v) o.mean += x;
      o.mean /= batches;
      double var = 0;
      for (double x : v) var += (x - o.mean) * (x - o.mean);
      o.se = std::sqrt(var / (batches - 1) / batches);
      return o;
    };
    const auto mg = reduce(bg), ms = reduce(bs), mgg = reduce(bgg),
               mss = reduce(bss), mgs = reduce(bgs);

    INFO("law " << (gamma ? "gamma" : "gaussian"));
    CHECK(std::abs(mg.mean - gq.mean) < 4.0 * mg.se);
    CHECK(std::abs(ms.mean - s1.mean) < 4.0 * ms.se);
    // Var and Cov through second moments; delta-method SE folded into 4x.
    const double mc_var_g = mgg.mean - mg.mean * mg.mean;
    const double se_var_g = std::hypot(mgg.se, 2 * mg.mean * mg.se);
    CHECK(std::abs(mc_var_g - gq.var) < 4.0 * se_var_g);
    const double mc_var_s = mss.mean - ms.mean * ms.mean;
    const double se_var_s = std::hypot(mss.se, 2 * ms.mean * ms.se);
    CHECK(std::abs(mc_var_s - s1.var) < 4.0 * se_var_s);
    const double mc_cov = mgs.mean - mg.mean * ms.mean;
    const double se_cov = std::sqrt(mgs.se * mgs.se +
                                    std::pow(ms.mean * mg.se, 2) +
                                    std::pow(mg.mean * ms.se, 2));
    CHECK(std::abs(mc_cov - cov) < 4.0 * se_cov);
  }
}

TEST_CASE("q=2 variance: within-lag part exact, cross-lag part leading order") {
  // For q >= 2 the cross-lag covariance omits O(p/T^3) families; verify the
  // formula is right to a few percent rather than to MC precision.
  const int p = 3, T = 20;
  const Matrix s = random_psd(p, 35);
  const Matrix root = psd_sqrt(s);
  const auto gq = exact_gq_moments(s, InnovationMoments::gaussian(), 2, T);

  const int n = 400000;
  double sg = 0, sgg = 0;
  Rng rng(36, 0);
  for (int i = 0; i < n; ++i) {
    Matrix x(p, T);
    for (int t = 0; t < T; ++t)
      for (int r = 0; r < p; ++r) x(r, t) = rng.normal();
    x = root * x;
    const double g = g_q(TimeSeriesMatrix(std::move(x)), 2);
    sg += g;
    sgg += g * g;
  }
  const double mean = sg / n;
  const double var = sgg / n - mean * mean;
  CHECK(std::abs(mean - gq.mean) / gq.mean < 0.01);
  CHECK(std::abs(var - gq.var) / gq.var < 0.08);
}

TEST_CASE("exact identity-case reductions") {
  const int p = 5, T = 40, q = 1;
  const Matrix eye = Matrix::Identity(p, p);
  const auto g = exact_gq_moments(eye, InnovationMoments::gaussian(), q, T);
  CHECK(g.mean == doctest::Approx(static_cast<double>(p) * p / T));

  const auto lead = leading_order_moments(eye, InnovationMoments::gaussian(), q, T);
  CHECK(lead.mean_s2hat ==
        doctest::Approx(1.0 + static_cast<double>(p) / T + 1.0 / T));
  // Theorem 2.2 off-diagonal entry at the identity with nu4 = 3: 8 q c^2.
  const double c = static_cast<double>(p) / T;
  CHECK(lead.cov_gq_ps1sq == doctest::Approx(8.0 * q * c * c));
}

TEST_CASE("leading-order moments approach the exact moments as T grows") {
  // Fixed p/T = 0.5, T in {100, 400, 1600}: relative gaps shrink like 1/T.
  const auto m = InnovationMoments::gamma_model_ii();
  double prev_gap_var = 1e9, prev_gap_cov = 1e9;
  for (const int T : {100, 400, 1600}) {
    const int p = T / 2;
    const Matrix eye = Matrix::Identity(p, p);
    const auto exact = exact_gq_moments(eye, m, 1, T);
    const auto s1 = exact_s1sq_moments(eye, m, T);
    const auto cov = exact_cov_gq_s1sq(eye, m, 1, T);
    const auto lead = leading_order_moments(eye, m, 1, T);
    const double gap_var = std::abs(lead.var_gq - exact.var) / exact.var;
    const double gap_cov = std::abs(lead.cov_gq_ps1sq - cov) / cov;
    CHECK(std::abs(lead.mean_gq - exact.mean) / exact.mean < 1e-12);
    CHECK(std::abs(lead.mean_ps1sq - s1.mean) / s1.mean < 1e-12);
    CHECK(gap_var < prev_gap_var);
    CHECK(gap_cov < prev_gap_cov);
    prev_gap_var = gap_var;
    prev_gap_cov = gap_cov;
    if (T == 1600) {
      CHECK(gap_var < 0.01);
      CHECK(gap_cov < 0.01);
    }
    (void)s1;
  }
}

TEST_CASE("T^3-scaled exact variance approaches sigma^2(c): real and complex") {
  // Real case against 2q c^2 s2^2 + 4q^2 c^3 (nu4-3) s1^2 s_d2 + 8q^2 c^3 s1^2 s2,
  // complex proper case against q c^2 s2^2 + 4q^2 c^3 s1^2 ((nu4-2) s_d2 + s2).
  for (const bool complex_law : {false, true}) {
    double prev = 1e9;
    for (const int T : {100, 400, 1600}) {
      const int p = T / 2;
      const double c = 0.5;
      const Matrix eye = Matrix::Identity(p, p);
      const auto m = complex_law ? InnovationMoments::complex_gaussian()
                                 : InnovationMoments::gamma_model_ii();
      const auto g = exact_gq_moments(eye, m, 1, T);
      const SpectralConstants sc{1, 1, 1, m.nu4, c};
      const double limit = complex_law ? sigma2_complex(sc, 1) : sigma2_real(sc, 1);
      const double gap = std::abs(g.var - limit) / limit;
      CHECK(gap < prev);
      prev = gap;
      if (T == 1600) CHECK(gap < 0.02);
    }
  }
}

TEST_CASE("zero covariance matrix gives zero moments") {
  const Matrix z = Matrix::Zero(4, 4);
  const auto v = moments_V(z, InnovationMoments::gaussian());
  CHECK(v.V1 == 0.0);
  CHECK(v.V6 == 0.0);
  const auto s1 = exact_s1sq_moments(z, InnovationMoments::gaussian(), 20);
  CHECK(s1.mean == 0.0);
  CHECK(s1.var == 0.0);
}
