#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <complex>

#include "hdwn/errors.hpp"
#include "hdwn/io.hpp"
#include "hdwn/rng.hpp"
#include "hdwn/stats.hpp"

using namespace hdwn;

TEST_CASE("csv emit/ingest round trip is bit exact") {
  Rng rng(61, 0);
  Matrix x(4, 9);
  for (int t = 0; t < 9; ++t)
    for (int i = 0; i < 4; ++i) x(i, t) = rng.normal() * std::pow(10, t - 4);
  const TimeSeriesMatrix ts(x);
  const std::string csv = emit_csv(ts);
  const TimeSeriesMatrix back = ingest_text(csv, Orientation::ColumnsAreTime, "csv");
  REQUIRE(back.dim() == 4);
  REQUIRE(back.length() == 9);
  CHECK((back.real_data() - x).cwiseAbs().maxCoeff() == 0.0);
  CHECK(emit_csv(back) == csv);
}

TEST_CASE("complex round trip and complex detection") {
  Rng rng(62, 0);
  ComplexMatrix x(3, 5);
  for (int t = 0; t < 5; ++t)
    for (int i = 0; i < 3; ++i)
      x(i, t) = std::complex<double>(rng.normal(), rng.normal());
  const std::string csv = emit_csv(TimeSeriesMatrix(x));
  const TimeSeriesMatrix back = ingest_text(csv, Orientation::ColumnsAreTime, "csv");
  REQUIRE(back.is_complex());
  CHECK((back.complex_data() - x).cwiseAbs().maxCoeff() == 0.0);

  const auto mixed =
      ingest_text("1.0,2.0\n1.5+0.5i,3.0\n", Orientation::RowsAreTime, "csv");
  CHECK(mixed.is_complex());
  CHECK(mixed.complex_data()(0, 1) == std::complex<double>(1.5, 0.5));
}

TEST_CASE("orientation: rows-are-time transposes; header is auto-detected") {
  // 100 rows x 3 columns with a header row.
  std::string csv = "alpha,beta,gamma\n";
  for (int t = 0; t < 100; ++t)
    csv += std::to_string(t) + "," + std::to_string(2 * t) + "," +
           std::to_string(3 * t) + "\n";
  const auto ts = ingest_text(csv, Orientation::RowsAreTime, "csv");
  CHECK(ts.dim() == 3);
  CHECK(ts.length() == 100);
  CHECK(ts.real_data()(1, 7) == doctest::Approx(14.0));
}

TEST_CASE("parse errors carry locations") {
  CHECK_THROWS_WITH_AS(
      ingest_text("1,2\n3\n", Orientation::ColumnsAreTime, "csv"),
      doctest::Contains("ragged row 2"), ParseError);
  CHECK_THROWS_WITH_AS(
      ingest_text("1,2\n3,oops\n", Orientation::ColumnsAreTime, "csv"),
      doctest::Contains("row 2, column 2"), ParseError);
  CHECK_THROWS_AS(ingest_text("", Orientation::ColumnsAreTime, "csv"),
                  ParseError);
  CHECK_THROWS_AS(ingest("/nonexistent/file.csv", Orientation::ColumnsAreTime),
                  ParseError);
}

TEST_CASE("json ingestion accepts numbers and complex strings") {
  const auto ts = ingest_text("[[1, 2.5], [\"1+2i\", 4]]",
                              Orientation::ColumnsAreTime, "json");
  REQUIRE(ts.is_complex());
  CHECK(ts.complex_data()(1, 0) == std::complex<double>(1, 2));
  CHECK_THROWS_AS(
      ingest_text("{\"a\": 1}", Orientation::ColumnsAreTime, "json"),
      ParseError);
  CHECK_THROWS_AS(ingest_text("[[1, [2]]]", Orientation::ColumnsAreTime, "json"),
                  ParseError);
}

TEST_CASE("test report serializes to the documented schema") {
  TestReport r;
  r.name = StatisticName::Gq1;
  r.statistic = 1.5;
  r.centering = 1.0;
  r.scale = 2.0;
  r.z_or_chi2 = 0.25;
  r.p_value = 0.4;
  r.reject = false;
  r.alpha = 0.05;
  r.q = 2;
  r.params = {50, 100, 0.5, 1.01, 0.99, 1.0, std::nan("")};
  const auto j = nlohmann::json::parse(test_report_json(r));
  CHECK(j["test"] == "gq1");
  CHECK(j["statistic"] == 1.5);
  CHECK(j["p_value"] == 0.4);
  CHECK(j["reject"] == false);
  CHECK(j["q"] == 2);
  CHECK(j["params"]["p"] == 50);
  CHECK(j["params"]["T"] == 100);
  CHECK(j["params"]["s1_hat"] == 1.01);
  CHECK(j["params"]["nu4"].is_null());
}

TEST_CASE("simulation table serializes to JSON rows") {
  SimulationPlan plan;
  plan.replicates = 20;
  plan.seed = 5;
  plan.tests = {StatisticName::Gq1, StatisticName::Hosking};
  plan.grid = {GridCell{8, 30, 1, {}}, GridCell{40, 30, 1, {}}};
  const auto table = run(plan);
  const auto j = nlohmann::json::parse(simulation_table_json(table));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == table.rows.size());
  bool saw_skip = false;
  for (const auto& row : j) {
    CHECK(row.contains("rejections"));
    if (row["skipped"] == true) saw_skip = true;
  }
  CHECK(saw_skip);  // hosking at p=40 > T=30
}
