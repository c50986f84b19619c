#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdwn/nu4.hpp"
#include "hdwn/rng.hpp"
#include "hdwn/stats.hpp"
#include "hdwn/time_series.hpp"

namespace hdwn {

/// Innovation laws: standard Gaussian, the standardized Gamma(4, 0.5) - 2
/// (mean 0, variance 1, nu4 = 4.5), and Rademacher signs.
enum class Innovation { GaussianI, GammaII, Rademacher };

/// Cross-sectional covariance: identity, or Sigma0 = (4/p) A0 A0* with
/// A0 entries i.i.d. U(-1, 1) drawn once from `seed`.
struct CovarianceModel {
  enum class Kind { Identity, RandomUniform } kind = Kind::Identity;
  std::uint64_t seed = 0;
};

/// Serial structure: null white noise, VAR(1) with A = a I (|a| < 1),
/// VMA(1) with A1 = a I, or VMA(1) with A1 = ((4/p) E0 E0*)^{1/2} where E0 is
/// p x d, d = max(1, [p r]), entries U(-1, 1) drawn once from `seed`.
struct Alternative {
  enum class Kind { Null, Var1, Vma1V, Vma1VI } kind = Kind::Null;
  double a = 0.0;
  double r = 0.0;
  std::uint64_t seed = 0;
};

struct ModelSpec {
  Innovation innovation = Innovation::GaussianI;
  CovarianceModel covariance;
  Alternative alternative;
};

double innovation_nu4(Innovation law);
std::string describe(const ModelSpec& model);

/// Model (VI) moving-average coefficient: d = max(1, [p r]) and
/// A1 = ((4/p) E0 E0*)^{1/2} with E0 p x d, entries U(-1,1) drawn from `seed`.
Matrix vma_vi_coefficient(int p, double r, std::uint64_t seed);

/// Per-cell precomputation: covariance square root, VMA coefficient, and the
/// exact spectral constants of Sigma0 for the known-Sigma0 test.
class PreparedModel {
 public:
  PreparedModel(const ModelSpec& model, int p, int T);

  TimeSeriesMatrix generate(Rng& rng) const;
  const SpectralConstants& known_constants() const { return constants_; }
  const ModelSpec& model() const { return model_; }
  int p() const { return p_; }
  int T() const { return T_; }

  static constexpr int var1_burn_in = 200;

 private:
  ModelSpec model_;
  int p_, T_;
  std::optional<Matrix> sigma0_half_;  // empty when Sigma0 = I
  std::optional<Matrix> a1_;           // VMA(1) coefficient when a matrix
  SpectralConstants constants_;
};

/// Convenience one-shot generator.
TimeSeriesMatrix generate(const ModelSpec& model, int p, int T, Rng& rng);

struct GridCell {
  int p = 0;
  int T = 0;
  int q = 1;
  ModelSpec model;
};

struct SimulationPlan {
  std::vector<GridCell> grid;
  int replicates = 2000;
  double alpha = 0.05;
  std::vector<StatisticName> tests;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = default_thread_count()
  bool collect_statistics = false;  // keep per-replicate standardized values
  /// Settings for the nu4 estimator behind Gq1Star; seeds are derived from
  /// the plan seed (calibration per cell, splits per replicate).
  SplitConfig nu4_config;
};

struct SimulationRow {
  GridCell cell;
  StatisticName test = StatisticName::Gq;
  double alpha = 0.05;
  int replicates = 0;  // successful replicates
  int rejections = 0;
  int errors = 0;      // replicates where this test raised an error
  double rejection_rate = 0.0;
  double mc_se = 0.0;  // sqrt(r (1 - r) / n)
  bool skipped = false;
  std::string skip_reason;
  double wall_ms = 0.0;
  std::vector<double> statistics;  // filled when plan.collect_statistics
};

struct SimulationTable {
  std::vector<SimulationRow> rows;

  /// Canonical serialization of the statistical content; excludes wall time
  /// so that identical plans give byte-identical output at any thread count.
  std::string to_csv(bool include_timing = false) const;
};

/// Runs the plan: replicate data is drawn from the stream keyed by
/// (seed, cell index, replicate index), every requested feasible test is
/// applied, rejections are tallied. Output is deterministic for a fixed seed
/// regardless of the number of worker threads. Infeasible cell/test pairs
/// become skipped rows rather than failures.
SimulationTable run(const SimulationPlan& plan);

}  // namespace hdwn
