#pragma once

#include <string>

#include "hdwn/simulate.hpp"
#include "hdwn/stats.hpp"
#include "hdwn/time_series.hpp"

namespace hdwn {

enum class Orientation { RowsAreTime, ColumnsAreTime };

/// Reads a rectangular numeric panel from CSV (optional header row,
/// auto-detected) or JSON (array of arrays; .json extension). Complex entries
/// are strings like "1.5+0.5i"; one complex cell makes the whole panel
/// complex. Parse failures carry the row/column location.
TimeSeriesMatrix ingest(const std::string& path, Orientation orientation);

/// Parses the same formats from an in-memory string (format: "csv"/"json").
TimeSeriesMatrix ingest_text(const std::string& text, Orientation orientation,
                             const std::string& format);

/// Serializes columns-are-time CSV with 17 significant digits, so an
/// emit/ingest round trip reproduces every double bit for bit.
std::string emit_csv(const TimeSeriesMatrix& x);

/// One test decision as a JSON object:
/// {test, statistic, centering, scale, z_or_chi2, p_value, reject, alpha, q,
///  params{p,T,c_p,s1_hat,s2_tilde,s_d2_tilde,nu4}}.
std::string test_report_json(const TestReport& report);

/// Simulation table as a JSON array of row objects (timing excluded unless
/// requested, mirroring SimulationTable::to_csv).
std::string simulation_table_json(const SimulationTable& table,
                                  bool include_timing = false);

}  // namespace hdwn
