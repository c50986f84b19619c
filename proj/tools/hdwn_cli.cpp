// hdwn: white-noise tests for high-dimensional panels.
//
// Subcommands: test, simulate, power, calibrate-nu4 (and a hidden `oracle`
// for debugging moment formulas). Exit codes of `test`: 0 = no rejection,
// 2 = at least one test rejected the null, 1 = error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hdwn/classical.hpp"
#include "hdwn/errors.hpp"
#include "hdwn/io.hpp"
#include "hdwn/moments.hpp"
#include "hdwn/nu4.hpp"
#include "hdwn/parallel.hpp"
#include "hdwn/power.hpp"
#include "hdwn/simulate.hpp"
#include "hdwn/stats.hpp"
#include "hdwn/version.hpp"

using nlohmann::json;
using namespace hdwn;

namespace {

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file '" + path + "'");
  out << text;
}

Orientation parse_orientation(const std::string& s) {
  if (s == "rows" || s == "rows-are-time") return Orientation::RowsAreTime;
  if (s == "columns" || s == "columns-are-time")
    return Orientation::ColumnsAreTime;
  throw ParseError("orientation must be rows-are-time or columns-are-time");
}

StatisticName parse_test_name(const std::string& s) {
  if (s == "gq") return StatisticName::Gq;
  if (s == "gq1") return StatisticName::Gq1;
  if (s == "gq1_star" || s == "gq1star") return StatisticName::Gq1Star;
  if (s == "hosking") return StatisticName::Hosking;
  if (s == "li_mcleod" || s == "limcleod") return StatisticName::LiMcLeod;
  throw ParseError("unknown test '" + s + "'");
}

// ---------------------------------------------------------------------- test

struct TestCmd {
  std::string input;
  std::string orientation = "columns-are-time";
  int q = 1;
  double alpha = 0.05;
  std::vector<std::string> tests = {"gq1"};
  std::string sigma0 = "estimate";
  std::string nu4 = "gaussian";
  bool demean = false;
  int dof_adjust = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string format = "json";
  std::string output;
};

int run_test_command(const TestCmd& cmd) {
  TimeSeriesMatrix data = ingest(cmd.input, parse_orientation(cmd.orientation));
  if (cmd.demean) data = data.demeaned();
  std::fprintf(stderr, "hdwn: ingested p=%ld, T=%ld (%s)\n",
               static_cast<long>(data.dim()), static_cast<long>(data.length()),
               data.is_complex() ? "complex" : "real");

  const double c_p = static_cast<double>(data.dim()) / data.length();

  // Resolve sigma0 constants for the known-Sigma0 test.
  std::optional<SpectralConstants> known;
  if (cmd.sigma0 == "identity") {
    known = SpectralConstants{1.0, 1.0, 1.0, 3.0, c_p};
  } else if (cmd.sigma0 != "estimate") {
    const TimeSeriesMatrix m =
        ingest(cmd.sigma0, Orientation::ColumnsAreTime);
    if (m.is_complex() || m.dim() != m.length() || m.dim() != data.dim())
      throw ParseError("--sigma0 file must be a real p x p matrix");
    known = constants_from_sigma0(m.real_data(), 3.0, c_p);
  }

  // Resolve nu4 for tests that need it. A failed estimate (complex data,
  // p >= T/2) only disables those tests, recorded below when they run.
  double nu4_value = 3.0;
  bool nu4_estimated = false;
  std::string nu4_error;
  if (cmd.nu4 == "estimate") {
    try {
      if (data.is_complex())
        throw DomainError("--nu4 estimate requires real data");
      SplitConfig cfg;
      cfg.seed = cmd.seed;
      cfg.threads = cmd.threads;
      const Nu4Estimate est = estimate_nu4(data.real_data(), cfg);
      nu4_value = est.nu4_hat;
      nu4_estimated = true;
      if (est.suspect)
        std::fprintf(stderr, "hdwn: warning: nu4_hat = %g is implausibly large\n",
                     est.nu4_hat);
    } catch (const Error& e) {
      nu4_error = e.what();
      nu4_value = std::nan("");
      std::fprintf(stderr, "hdwn: nu4 estimation failed: %s\n", e.what());
    }
  } else if (cmd.nu4 != "gaussian") {
    nu4_value = std::stod(cmd.nu4);
  }
  if (known) known->nu4 = nu4_value;

  json out;
  out["version"] = version_string;
  out["config"] = {{"input", cmd.input},     {"orientation", cmd.orientation},
                   {"q", cmd.q},             {"alpha", cmd.alpha},
                   {"tests", cmd.tests},     {"sigma0", cmd.sigma0},
                   {"nu4", cmd.nu4},         {"demean", cmd.demean},
                   {"dof_adjust", cmd.dof_adjust},
                   {"seed", cmd.seed},       {"threads", cmd.threads},
                   {"nu4_resolved", std::isfinite(nu4_value)
                                        ? json(nu4_value)
                                        : json(nullptr)},
                   {"nu4_estimated", nu4_estimated}};
  if (!nu4_error.empty()) out["config"]["nu4_error"] = nu4_error;
  out["p"] = data.dim();
  out["T"] = data.length();
  out["complex"] = data.is_complex();
  out["reports"] = json::array();
  out["errors"] = json::array();

  std::string csv =
      "test,statistic,centering,scale,z_or_chi2,p_value,reject,alpha,q\n";

  bool any_reject = false;
  int successes = 0;
  for (const std::string& name : cmd.tests) {
    const StatisticName which = parse_test_name(name);
    try {
      TestReport r;
      switch (which) {
        case StatisticName::Gq:
          if (!known)
            throw DomainError(
                "gq needs known Sigma0: pass --sigma0 identity or a file");
          r = test_gq_known_sigma(data, cmd.q, cmd.alpha, *known);
          break;
        case StatisticName::Gq1:
          r = test_gq1(data, cmd.q, cmd.alpha);
          break;
        case StatisticName::Gq1Star:
          r = test_gq1_star(data, cmd.q, cmd.alpha, nu4_value);
          break;
        case StatisticName::Hosking:
          r = hosking({data.real_data(), cmd.q, cmd.dof_adjust}, cmd.alpha);
          break;
        case StatisticName::LiMcLeod:
          r = li_mcleod({data.real_data(), cmd.q, cmd.dof_adjust}, cmd.alpha);
          break;
      }
      ++successes;
      any_reject = any_reject || r.reject;
      out["reports"].push_back(json::parse(test_report_json(r)));
      char line[256];
      std::snprintf(line, sizeof line, "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%g,%d\n",
                    to_string(r.name), r.statistic, r.centering, r.scale,
                    r.z_or_chi2, r.p_value, r.reject ? 1 : 0, r.alpha, r.q);
      csv += line;
    } catch (const Error& e) {
      out["errors"].push_back({{"test", name}, {"message", e.what()}});
      std::fprintf(stderr, "hdwn: %s: %s\n", name.c_str(), e.what());
    }
  }

  if (cmd.format == "json") {
    write_output(out.dump(2), cmd.output);
  } else {
    std::string header = "# hdwn " + std::string(version_string) + "\n";
    for (auto& [k, v] : out["config"].items())
      header += "# " + k + "=" + v.dump() + "\n";
    write_output(header + csv, cmd.output);
  }
  if (successes == 0) return 1;
  return any_reject ? 2 : 0;
}

// ------------------------------------------------------------------ simulate

ModelSpec model_from_json(const json& cell) {
  ModelSpec model;
  const std::string innov = cell.value("innovation", "gaussian");
  if (innov == "gaussian")
    model.innovation = Innovation::GaussianI;
  else if (innov == "gamma")
    model.innovation = Innovation::GammaII;
  else if (innov == "rademacher")
    model.innovation = Innovation::Rademacher;
  else
    throw ParseError("unknown innovation '" + innov + "'");

  if (cell.contains("covariance")) {
    const auto& cov = cell["covariance"];
    if (cov.is_string()) {
      if (cov != "identity") throw ParseError("unknown covariance");
    } else {
      if (cov.value("kind", "") != "uniform")
        throw ParseError("unknown covariance kind");
      model.covariance = {CovarianceModel::Kind::RandomUniform,
                          cov.value("seed", std::uint64_t{0})};
    }
  }
  if (cell.contains("alternative")) {
    const auto& alt = cell["alternative"];
    if (alt.is_string()) {
      if (alt != "null") throw ParseError("unknown alternative");
    } else {
      const std::string kind = alt.value("kind", "null");
      if (kind == "null") {
      } else if (kind == "var1") {
        model.alternative = {Alternative::Kind::Var1, alt.at("a").get<double>(),
                             0.0, 0};
      } else if (kind == "vma1_v") {
        model.alternative = {Alternative::Kind::Vma1V,
                             alt.at("a").get<double>(), 0.0, 0};
      } else if (kind == "vma1_vi") {
        model.alternative = {Alternative::Kind::Vma1VI, 0.0,
                             alt.at("r").get<double>(),
                             alt.value("seed", std::uint64_t{0})};
      } else {
        throw ParseError("unknown alternative kind '" + kind + "'");
      }
    }
  }
  return model;
}

SimulationPlan plan_from_json(const json& j) {
  SimulationPlan plan;
  plan.seed = j.value("seed", std::uint64_t{0});
  plan.replicates = j.value("replicates", 2000);
  plan.alpha = j.value("alpha", 0.05);
  plan.threads = j.value("threads", 0);
  for (const auto& t : j.value("tests", std::vector<std::string>{"gq1"}))
    plan.tests.push_back(parse_test_name(t));
  if (j.contains("nu4")) {
    plan.nu4_config.B = j["nu4"].value("B", plan.nu4_config.B);
    plan.nu4_config.calibration_reps =
        j["nu4"].value("calibration_reps", plan.nu4_config.calibration_reps);
    plan.nu4_config.T1 = j["nu4"].value("T1", 0);
  }
  if (!j.contains("grid")) throw ParseError("plan needs a 'grid' array");
  for (const auto& cell : j["grid"]) {
    GridCell g;
    g.p = cell.at("p").get<int>();
    g.T = cell.at("T").get<int>();
    g.q = cell.value("q", 1);
    g.model = model_from_json(cell);
    plan.grid.push_back(g);
  }
  return plan;
}

struct SimulateCmd {
  std::string config;
  std::string output;
  std::string json_output;
  std::string curves;
  int threads = -1;
  bool timing = false;
};

int run_simulate_command(const SimulateCmd& cmd) {
  std::ifstream in(cmd.config);
  if (!in) throw ParseError("cannot open plan '" + cmd.config + "'");
  json plan_json;
  try {
    in >> plan_json;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid plan JSON: ") + e.what());
  }
  SimulationPlan plan = plan_from_json(plan_json);
  if (cmd.threads >= 0) plan.threads = cmd.threads;

  const SimulationTable table = run(plan);

  std::string header = "# hdwn " + std::string(version_string) + " simulate\n";
  header += "# plan=" + plan_json.dump() + "\n";
  write_output(header + table.to_csv(cmd.timing), cmd.output);
  if (!cmd.json_output.empty()) {
    json out;
    out["version"] = version_string;
    out["config"] = plan_json;
    out["rows"] = json::parse(simulation_table_json(table, cmd.timing));
    write_output(out.dump(2), cmd.json_output);
  }
  if (!cmd.curves.empty()) {
    // Power-curve export: x is the alternative parameter (a or r).
    std::string curves = "x,test,q,power\n";
    char line[160];
    for (const auto& row : table.rows) {
      if (row.skipped) continue;
      const auto& alt = row.cell.model.alternative;
      if (alt.kind == Alternative::Kind::Null) continue;
      const double x =
          alt.kind == Alternative::Kind::Vma1VI ? alt.r : alt.a;
      std::snprintf(line, sizeof line, "%.17g,%s,%d,%.17g\n", x,
                    to_string(row.test), row.cell.q, row.rejection_rate);
      curves += line;
    }
    write_output(curves, cmd.curves);
  }
  return 0;
}

// --------------------------------------------------------------------- power

struct PowerCmd {
  int p = 0;
  double T = 0;
  double a = -1.0;
  double r = -1.0;
  std::uint64_t coef_seed = 0;
  std::string a0_path, a1_path;
  double nu4 = 3.0;
  double alpha = 0.05;
  std::string output;
};

int run_power_command(const PowerCmd& cmd) {
  std::optional<VmaSpec> spec;
  if (!cmd.a0_path.empty() || !cmd.a1_path.empty()) {
    if (cmd.a0_path.empty() || cmd.a1_path.empty())
      throw ParseError("--a0 and --a1 must be given together");
    const Matrix a0 = ingest(cmd.a0_path, Orientation::ColumnsAreTime).real_data();
    const Matrix a1 = ingest(cmd.a1_path, Orientation::ColumnsAreTime).real_data();
    spec.emplace(a0, a1);
  } else if (cmd.r >= 0.0) {
    // Same A1 draw as `simulate`, so power predictions match the generator.
    spec.emplace(Matrix::Identity(cmd.p, cmd.p),
                 vma_vi_coefficient(cmd.p, cmd.r, cmd.coef_seed));
  } else {
    if (cmd.a < 0.0) throw ParseError("power: need --a, --r, or --a0/--a1");
    spec.emplace(Matrix::Identity(cmd.p, cmd.p),
                 cmd.a * Matrix::Identity(cmd.p, cmd.p));
  }

  const PowerPrediction pred = power_beta(*spec, cmd.T, cmd.nu4, cmd.alpha);
  json out;
  out["version"] = version_string;
  out["config"] = {{"p", cmd.p},     {"T", cmd.T},     {"a", cmd.a},
                   {"r", cmd.r},     {"nu4", cmd.nu4}, {"alpha", cmd.alpha}};
  out["mu_G11"] = pred.mu_G11;
  out["sigma_G11"] = pred.sigma_G11;
  out["xi0"] = pred.xi0;
  out["beta"] = pred.beta;
  write_output(out.dump(2), cmd.output);
  return 0;
}

// ------------------------------------------------------------- calibrate-nu4

struct CalibrateCmd {
  int p = 0, T1 = 0, T2 = 0, reps = 200;
  std::uint64_t seed = 0;
  std::string functions;
  int threads = 0;
  std::string format = "csv";
  std::string output;
};

int run_calibrate_command(const CalibrateCmd& cmd) {
  std::vector<std::pair<double, double>> fns;
  if (cmd.functions.empty()) {
    fns = SplitConfig{}.test_functions;
  } else {
    std::stringstream ss(cmd.functions);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos)
        throw ParseError("--functions expects a:b,a:b,...");
      fns.emplace_back(std::stod(item.substr(0, colon)),
                       std::stod(item.substr(colon + 1)));
    }
  }
  const Calibration cal =
      calibrate_uv(cmd.p, cmd.T1, cmd.T2, fns, cmd.reps, cmd.seed, cmd.threads);

  if (cmd.format == "json") {
    json out;
    out["version"] = version_string;
    out["config"] = {{"p", cmd.p},       {"T1", cmd.T1},   {"T2", cmd.T2},
                     {"reps", cmd.reps}, {"seed", cmd.seed}};
    out["entries"] = json::array();
    for (std::size_t k = 0; k < cal.a.size(); ++k)
      out["entries"].push_back({{"a", cal.a[k]},
                                {"b", cal.b[k]},
                                {"u", cal.u[k]},
                                {"v", cal.v[k]},
                                {"w", cal.w[k]},
                                {"mean_gaussian", cal.mean_gauss[k]},
                                {"mean_rademacher", cal.mean_rademacher[k]},
                                {"mean_heavy", cal.mean_heavy[k]}});
    write_output(out.dump(2), cmd.output);
  } else {
    char line[200];
    std::string csv;
    std::snprintf(line, sizeof line, "# hdwn %s calibrate-nu4 p=%d T1=%d T2=%d reps=%d seed=%llu\n",
                  version_string, cmd.p, cmd.T1, cmd.T2, cmd.reps,
                  static_cast<unsigned long long>(cmd.seed));
    csv += line;
    csv += "a,b,u,v,w,mean_gaussian,mean_rademacher,mean_heavy\n";
    for (std::size_t k = 0; k < cal.a.size(); ++k) {
      std::snprintf(line, sizeof line,
                    "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    cal.a[k], cal.b[k], cal.u[k], cal.v[k], cal.w[k],
                    cal.mean_gauss[k], cal.mean_rademacher[k], cal.mean_heavy[k]);
      csv += line;
    }
    write_output(csv, cmd.output);
  }
  return 0;
}

// -------------------------------------------------------------------- oracle

struct OracleCmd {
  int p = 3;
  std::string sigma0;
  std::string moments = "gaussian";
  int q = 1;
  int T = 20;
  std::string output;
};

int run_oracle_command(const OracleCmd& cmd) {
  Matrix sigma0;
  if (cmd.sigma0.empty())
    sigma0 = Matrix::Identity(cmd.p, cmd.p);
  else
    sigma0 = ingest(cmd.sigma0, Orientation::ColumnsAreTime).real_data();

  InnovationMoments m = InnovationMoments::gaussian();
  if (cmd.moments == "gamma") m = InnovationMoments::gamma_model_ii();
  else if (cmd.moments == "rademacher") m = InnovationMoments::rademacher();
  else if (cmd.moments != "gaussian")
    throw ParseError("--moments must be gaussian, gamma, or rademacher");

  const VSet v = moments_V(sigma0, m);
  const auto gq = exact_gq_moments(sigma0, m, cmd.q, cmd.T);
  const auto s1 = exact_s1sq_moments(sigma0, m, cmd.T);
  const double cov = exact_cov_gq_s1sq(sigma0, m, cmd.q, cmd.T);
  const auto lead = leading_order_moments(sigma0, m, cmd.q, cmd.T);

  json out;
  out["version"] = version_string;
  out["config"] = {{"p", sigma0.rows()}, {"moments", cmd.moments},
                   {"q", cmd.q},         {"T", cmd.T},
                   {"sigma0", cmd.sigma0.empty() ? "identity" : cmd.sigma0}};
  out["V"] = {{"V1", v.V1}, {"V2", v.V2}, {"V3", v.V3},
              {"V3p", v.V3p}, {"V4", v.V4}, {"V4p", v.V4p},
              {"V5", v.V5}, {"V6", v.V6}, {"V7", v.V7}};
  out["exact"] = {{"mean_gq", gq.mean},
                  {"var_gq", gq.var},
                  {"mean_ps1sq", s1.mean},
                  {"var_ps1sq", s1.var},
                  {"cov_gq_ps1sq", cov}};
  out["leading"] = {{"mean_gq", lead.mean_gq},
                    {"var_gq", lead.var_gq},
                    {"mean_ps1sq", lead.mean_ps1sq},
                    {"var_ps1sq", lead.var_ps1sq},
                    {"cov_gq_ps1sq", lead.cov_gq_ps1sq},
                    {"mean_s2hat", lead.mean_s2hat}};
  write_output(out.dump(2), cmd.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"White-noise tests for high-dimensional time series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string);

  TestCmd test_cmd;
  auto* test = app.add_subcommand("test", "Test a data panel for white noise");
  test->add_option("--input,-i", test_cmd.input, "CSV or JSON data file")
      ->required();
  test->add_option("--orientation", test_cmd.orientation,
                   "rows-are-time | columns-are-time");
  test->add_option("--q,-q", test_cmd.q, "number of lags");
  test->add_option("--alpha", test_cmd.alpha, "test level");
  test->add_option("--tests", test_cmd.tests,
                   "subset of gq,gq1,gq1_star,hosking,li_mcleod")
      ->delimiter(',');
  test->add_option("--sigma0", test_cmd.sigma0,
                   "identity | estimate | <matrix file> (for gq)");
  test->add_option("--nu4", test_cmd.nu4,
                   "gaussian | estimate | <value> (for gq, gq1_star)");
  test->add_flag("--demean", test_cmd.demean,
                 "subtract row means first (changes the null law; off by default)");
  test->add_option("--dof-adjust", test_cmd.dof_adjust,
                   "fitted VARMA order u+v for the portmanteau tests");
  test->add_option("--seed", test_cmd.seed, "seed for nu4 estimation");
  test->add_option("--threads", test_cmd.threads, "worker threads (0 = auto)");
  test->add_option("--format", test_cmd.format, "json | csv");
  test->add_option("--output,-o", test_cmd.output, "output path (default stdout)");

  SimulateCmd sim_cmd;
  auto* sim = app.add_subcommand("simulate", "Run a Monte Carlo size/power plan");
  sim->add_option("--config,-c", sim_cmd.config, "plan JSON file")->required();
  sim->add_option("--output,-o", sim_cmd.output, "table CSV path (default stdout)");
  sim->add_option("--json", sim_cmd.json_output, "also write the table as JSON");
  sim->add_option("--curves", sim_cmd.curves,
                  "power-curve CSV (x = a or r, one row per test)");
  sim->add_option("--threads", sim_cmd.threads, "override plan threads");
  sim->add_flag("--timing", sim_cmd.timing, "include wall time per row");

  PowerCmd pow_cmd;
  auto* pow = app.add_subcommand("power",
                                 "Asymptotic power of the q=1 feasible test "
                                 "under a VMA(1) alternative");
  pow->add_option("--p,-p", pow_cmd.p, "dimension")->required();
  pow->add_option("--T,-T", pow_cmd.T, "sample length")->required();
  pow->add_option("--a", pow_cmd.a, "A1 = a I (model V)");
  pow->add_option("--r", pow_cmd.r, "rank ratio for model VI");
  pow->add_option("--coef-seed", pow_cmd.coef_seed, "seed for the model VI draw");
  pow->add_option("--a0", pow_cmd.a0_path, "A0 matrix file");
  pow->add_option("--a1", pow_cmd.a1_path, "A1 matrix file");
  pow->add_option("--nu4", pow_cmd.nu4, "innovation fourth moment");
  pow->add_option("--alpha", pow_cmd.alpha, "test level");
  pow->add_option("--output,-o", pow_cmd.output, "output path (default stdout)");

  CalibrateCmd cal_cmd;
  auto* cal = app.add_subcommand(
      "calibrate-nu4", "Monte Carlo calibration table for the nu4 estimator");
  cal->add_option("--p,-p", cal_cmd.p, "dimension")->required();
  cal->add_option("--T1", cal_cmd.T1, "first-half length")->required();
  cal->add_option("--T2", cal_cmd.T2, "second-half length")->required();
  cal->add_option("--reps", cal_cmd.reps, "calibration replicates");
  cal->add_option("--seed", cal_cmd.seed, "stream seed");
  cal->add_option("--functions", cal_cmd.functions,
                  "test functions as a:b,a:b,... (default built-in set)");
  cal->add_option("--threads", cal_cmd.threads, "worker threads (0 = auto)");
  cal->add_option("--format", cal_cmd.format, "csv | json");
  cal->add_option("--output,-o", cal_cmd.output, "output path (default stdout)");

  OracleCmd ora_cmd;
  auto* ora = app.add_subcommand("oracle",
                                 "Exact finite-sample moment formulas (debug)");
  ora->group("");  // hidden
  ora->add_option("--p", ora_cmd.p, "dimension (identity Sigma0)");
  ora->add_option("--sigma0", ora_cmd.sigma0, "Sigma0 matrix file");
  ora->add_option("--moments", ora_cmd.moments, "gaussian | gamma | rademacher");
  ora->add_option("--q", ora_cmd.q, "lag count");
  ora->add_option("--T", ora_cmd.T, "sample length");
  ora->add_option("--output,-o", ora_cmd.output, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*test) return run_test_command(test_cmd);
    if (*sim) return run_simulate_command(sim_cmd);
    if (*pow) return run_power_command(pow_cmd);
    if (*cal) return run_calibrate_command(cal_cmd);
    if (*ora) return run_oracle_command(ora_cmd);
  } catch (const Error& e) {
    std::fprintf(stderr, "hdwn: error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hdwn: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
