#include "hdwn/simulate.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hdwn/classical.hpp"
#include "hdwn/errors.hpp"
#include "hdwn/nu4.hpp"
#include "hdwn/parallel.hpp"

namespace hdwn {

namespace {

constexpr std::uint64_t kTagSigma0 = 0x7369676d6130ULL;   // "sigma0"
constexpr std::uint64_t kTagVmaCoef = 0x766d6131ULL;      // "vma1"
constexpr std::uint64_t kTagReplicate = 0x726570ULL;      // "rep"
constexpr std::uint64_t kTagNu4 = 0x6e7534ULL;            // "nu4"

Matrix psd_sqrt(const Matrix& m) {
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success)
    throw SingularCovarianceError("psd_sqrt: eigendecomposition failed");
  // PSD up to roundoff; clip stray negative eigenvalues at zero.
  const Eigen::VectorXd root =
      eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

double draw_innovation(Innovation law, Rng& rng) {
  switch (law) {
    case Innovation::GaussianI: return rng.normal();
    case Innovation::GammaII: return rng.gamma(4.0, 0.5) - 2.0;
    case Innovation::Rademacher: return rng.rademacher();
  }
  return 0.0;
}

Matrix draw_panel(Innovation law, int p, int cols, Rng& rng) {
  Matrix z(p, cols);
  for (int t = 0; t < cols; ++t)
    for (int i = 0; i < p; ++i) z(i, t) = draw_innovation(law, rng);
  return z;
}

int nearest_int(double v) { return static_cast<int>(std::lround(v)); }

}  // namespace

double innovation_nu4(Innovation law) {
  switch (law) {
    case Innovation::GaussianI: return 3.0;
    case Innovation::GammaII: return 4.5;
    case Innovation::Rademacher: return 1.0;
  }
  return 3.0;
}

std::string describe(const ModelSpec& m) {
  std::string s;
  switch (m.innovation) {
    case Innovation::GaussianI: s = "gaussian"; break;
    case Innovation::GammaII: s = "gamma"; break;
    case Innovation::Rademacher: s = "rademacher"; break;
  }
  s += m.covariance.kind == CovarianceModel::Kind::Identity
           ? "+identity"
           : "+uniform_cov(seed=" + std::to_string(m.covariance.seed) + ")";
  char buf[64];
  switch (m.alternative.kind) {
    case Alternative::Kind::Null: s += "+null"; break;
    case Alternative::Kind::Var1:
      std::snprintf(buf, sizeof buf, "+var1(a=%g)", m.alternative.a);
      s += buf;
      break;
    case Alternative::Kind::Vma1V:
      std::snprintf(buf, sizeof buf, "+vma1_v(a=%g)", m.alternative.a);
      s += buf;
      break;
    case Alternative::Kind::Vma1VI:
      std::snprintf(buf, sizeof buf, "+vma1_vi(r=%g,seed=%llu)", m.alternative.r,
                    static_cast<unsigned long long>(m.alternative.seed));
      s += buf;
      break;
  }
  return s;
}

Matrix vma_vi_coefficient(int p, double r, std::uint64_t seed) {
  const int d = std::max(1, nearest_int(p * r));
  Rng rng(seed, kTagVmaCoef);
  Matrix e0(p, d);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < d; ++j) e0(i, j) = rng.uniform_pm1();
  return psd_sqrt((4.0 / p) * (e0 * e0.transpose()));
}

PreparedModel::PreparedModel(const ModelSpec& model, int p, int T)
    : model_(model), p_(p), T_(T) {
  if (p < 1 || T < 2) throw DomainError("PreparedModel: need p >= 1, T >= 2");

  Matrix sigma0;
  if (model.covariance.kind == CovarianceModel::Kind::RandomUniform) {
    Rng rng(model.covariance.seed, kTagSigma0);
    Matrix a0(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) a0(i, j) = rng.uniform_pm1();
    sigma0 = (4.0 / p) * (a0 * a0.transpose());
    sigma0_half_ = psd_sqrt(sigma0);
  } else {
    sigma0 = Matrix::Identity(p, p);
  }

  switch (model.alternative.kind) {
    case Alternative::Kind::Null:
    case Alternative::Kind::Vma1V:
      break;
    case Alternative::Kind::Var1:
      if (!(std::abs(model.alternative.a) < 1.0))
        throw DomainError("VAR(1): |a| >= 1 is nonstationary");
      break;
    case Alternative::Kind::Vma1VI:
      a1_ = vma_vi_coefficient(p, model.alternative.r, model.alternative.seed);
      break;
  }

  // The "known parameters" test gets the trace characteristics of the true
  // cross-sectional covariance Var(x_t) of whatever this cell generates;
  // under an alternative that is the stationary covariance, not Sigma0.
  const double a = model.alternative.a;
  const double c_p = static_cast<double>(p) / T;
  const double nu4 = innovation_nu4(model.innovation);
  switch (model.alternative.kind) {
    case Alternative::Kind::Null:
      constants_ = constants_from_sigma0(sigma0, nu4, c_p);
      break;
    case Alternative::Kind::Var1:
      constants_ = constants_from_sigma0(Matrix(sigma0 / (1.0 - a * a)), nu4, c_p);
      break;
    case Alternative::Kind::Vma1V:
      constants_ =
          constants_from_sigma0(Matrix((1.0 + a * a) * sigma0), nu4, c_p);
      break;
    case Alternative::Kind::Vma1VI: {
      const Matrix inner = Matrix::Identity(p, p) + (*a1_) * (*a1_);
      const Matrix varx = sigma0_half_
                              ? Matrix(*sigma0_half_ * inner * *sigma0_half_)
                              : inner;
      constants_ = constants_from_sigma0(varx, nu4, c_p);
      break;
    }
  }
}

TimeSeriesMatrix PreparedModel::generate(Rng& rng) const {
  const Innovation law = model_.innovation;
  Matrix x;
  switch (model_.alternative.kind) {
    case Alternative::Kind::Null:
      x = draw_panel(law, p_, T_, rng);
      break;
    case Alternative::Kind::Var1: {
      const double a = model_.alternative.a;
      Eigen::VectorXd y = Eigen::VectorXd::Zero(p_);
      x.resize(p_, T_);
      for (int t = 0; t < var1_burn_in + T_; ++t) {
        for (int i = 0; i < p_; ++i)
          y[i] = a * y[i] + draw_innovation(law, rng);
        if (t >= var1_burn_in) x.col(t - var1_burn_in) = y;
      }
      break;
    }
    case Alternative::Kind::Vma1V: {
      if (model_.alternative.a == 0.0) {  // A1 = 0 is exactly the null
        x = draw_panel(law, p_, T_, rng);
        break;
      }
      const Matrix z = draw_panel(law, p_, T_ + 1, rng);
      x = z.rightCols(T_) + model_.alternative.a * z.leftCols(T_);
      break;
    }
    case Alternative::Kind::Vma1VI: {
      const Matrix z = draw_panel(law, p_, T_ + 1, rng);
      x = z.rightCols(T_) + (*a1_) * z.leftCols(T_);
      break;
    }
  }
  if (sigma0_half_) x = (*sigma0_half_) * x;
  return TimeSeriesMatrix(std::move(x));
}

TimeSeriesMatrix generate(const ModelSpec& model, int p, int T, Rng& rng) {
  return PreparedModel(model, p, T).generate(rng);
}

namespace {

// Feasibility of a test on a cell; empty string means feasible.
std::string infeasibility(StatisticName test, const GridCell& cell) {
  switch (test) {
    case StatisticName::Hosking:
    case StatisticName::LiMcLeod:
      if (cell.p > cell.T) return "requires p <= T";
      break;
    case StatisticName::Gq1Star:
      if (2 * cell.p >= cell.T) return "requires p < T/2 for nu4 estimation";
      break;
    default:
      break;
  }
  if (cell.q < 1 || cell.q >= cell.T) return "requires 1 <= q < T";
  return "";
}

}  // namespace

std::string SimulationTable::to_csv(bool include_timing) const {
  std::string out = "p,T,q,model,test,alpha,replicates,rejections,errors,"
                    "rejection_rate,mc_se,skipped,skip_reason";
  if (include_timing) out += ",wall_ms";
  out += "\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%s,%s,%.17g,%d,%d,%d,",
                  r.cell.p, r.cell.T, r.cell.q, describe(r.cell.model).c_str(),
                  to_string(r.test), r.alpha, r.replicates, r.rejections,
                  r.errors);
    out += buf;
    if (r.skipped) {
      out += ",,1," + r.skip_reason;
    } else {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,0,", r.rejection_rate, r.mc_se);
      out += buf;
    }
    if (include_timing) {
      std::snprintf(buf, sizeof buf, ",%.3f", r.wall_ms);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

SimulationTable run(const SimulationPlan& plan) {
  if (plan.replicates < 1) throw DomainError("run: need replicates >= 1");
  SimulationTable table;

  for (std::size_t ci = 0; ci < plan.grid.size(); ++ci) {
    const GridCell& cell = plan.grid[ci];
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<StatisticName> active;
    for (StatisticName test : plan.tests) {
      const std::string why = infeasibility(test, cell);
      if (why.empty()) {
        active.push_back(test);
        continue;
      }
      SimulationRow row;
      row.cell = cell;
      row.test = test;
      row.alpha = plan.alpha;
      row.skipped = true;
      row.skip_reason = why;
      table.rows.push_back(std::move(row));
    }
    if (active.empty()) continue;

    const PreparedModel prep(cell.model, cell.p, cell.T);
    const int n = plan.replicates;
    // Per-replicate outcome per test: 1 reject, 0 accept, -1 error.
    std::vector<std::vector<signed char>> outcome(
        active.size(), std::vector<signed char>(n, 0));
    std::vector<std::vector<double>> stats;
    if (plan.collect_statistics)
      stats.assign(active.size(),
                   std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));

    parallel_for(n, plan.threads, [&](std::int64_t rep) {
      Rng rng(plan.seed, Rng::mix(kTagReplicate, ci),
              static_cast<std::uint64_t>(rep));
      const TimeSeriesMatrix x = prep.generate(rng);
      for (std::size_t ti = 0; ti < active.size(); ++ti) {
        try {
          TestReport report;
          switch (active[ti]) {
            case StatisticName::Gq:
              report = test_gq_known_sigma(x, cell.q, plan.alpha,
                                           prep.known_constants());
              break;
            case StatisticName::Gq1:
              report = test_gq1(x, cell.q, plan.alpha);
              break;
            case StatisticName::Gq1Star: {
              SplitConfig cfg = plan.nu4_config;
              cfg.seed = Rng::mix(plan.seed, Rng::mix(kTagNu4, ci));
              cfg.split_seed = Rng::mix(cfg.seed, static_cast<std::uint64_t>(rep));
              cfg.split_seed_set = true;
              cfg.threads = 1;  // already inside the replicate pool
              const Nu4Estimate nu4 = estimate_nu4(x.real_data(), cfg);
              report = test_gq1_star(x, cell.q, plan.alpha, nu4.nu4_hat);
              break;
            }
            case StatisticName::Hosking:
              report = hosking({x.real_data(), cell.q, 0}, plan.alpha);
              break;
            case StatisticName::LiMcLeod:
              report = li_mcleod({x.real_data(), cell.q, 0}, plan.alpha);
              break;
          }
          outcome[ti][rep] = report.reject ? 1 : 0;
          if (plan.collect_statistics) stats[ti][rep] = report.z_or_chi2;
        } catch (const Error&) {
          outcome[ti][rep] = -1;
        }
      }
    });

    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  t0)
            .count();
    for (std::size_t ti = 0; ti < active.size(); ++ti) {
      SimulationRow row;
      row.cell = cell;
      row.test = active[ti];
      row.alpha = plan.alpha;
      for (int rep = 0; rep < n; ++rep) {
        if (outcome[ti][rep] < 0)
          ++row.errors;
        else {
          ++row.replicates;
          row.rejections += outcome[ti][rep];
        }
      }
      if (row.replicates > 0) {
        row.rejection_rate = static_cast<double>(row.rejections) / row.replicates;
        row.mc_se = std::sqrt(row.rejection_rate * (1.0 - row.rejection_rate) /
                              row.replicates);
      } else {
        row.skipped = true;
        row.skip_reason = "all replicates errored";
      }
      row.wall_ms = wall_ms;
      if (plan.collect_statistics) row.statistics = std::move(stats[ti]);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace hdwn
