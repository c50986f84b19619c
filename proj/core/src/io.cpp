#include "hdwn/io.hpp"

#include <cctype>
#include <charconv>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "hdwn/errors.hpp"

namespace hdwn {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  if (begin != end && *begin == '+') ++begin;  // from_chars rejects a leading +
  if (begin == end) return false;
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

// Accepts "1.5", "1.5+0.5i", "2-0.3i", "0.5i", "-i".
bool parse_cell(const std::string& raw, std::complex<double>& out,
                bool& is_complex) {
  const std::string s = trim(raw);
  if (s.empty()) return false;
  if (s.back() != 'i') {
    double re;
    if (!parse_double(s, re)) return false;
    out = {re, 0.0};
    return true;
  }
  is_complex = true;
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last +/- that is not an exponent sign and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') &&
        body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    double im;
    if (body.empty() || body == "+")
      im = 1.0;
    else if (body == "-")
      im = -1.0;
    else if (!parse_double(body, im))
      return false;
    out = {0.0, im};
    return true;
  }
  double re, im;
  if (!parse_double(body.substr(0, split), re)) return false;
  std::string imtxt = body.substr(split);
  if (imtxt == "+")
    im = 1.0;
  else if (imtxt == "-")
    im = -1.0;
  else if (!parse_double(imtxt, im))
    return false;
  out = {re, im};
  return true;
}

TimeSeriesMatrix from_cells(std::vector<std::vector<std::complex<double>>> rows,
                            bool complex_data, Orientation orientation) {
  if (rows.empty() || rows[0].empty()) throw ParseError("ingest: empty input");
  const std::size_t ncol = rows[0].size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != ncol)
      throw ParseError("ingest: ragged row " + std::to_string(r + 1) + " (" +
                       std::to_string(rows[r].size()) + " cells, expected " +
                       std::to_string(ncol) + ")");
  const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index nc = static_cast<Eigen::Index>(ncol);
  if (complex_data) {
    ComplexMatrix m(nr, nc);
    for (Eigen::Index i = 0; i < nr; ++i)
      for (Eigen::Index j = 0; j < nc; ++j) m(i, j) = rows[i][j];
    if (orientation == Orientation::RowsAreTime) m = m.transpose().eval();
    return TimeSeriesMatrix(std::move(m));
  }
  Matrix m(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i)
    for (Eigen::Index j = 0; j < nc; ++j) m(i, j) = rows[i][j].real();
  if (orientation == Orientation::RowsAreTime) m = m.transpose().eval();
  return TimeSeriesMatrix(std::move(m));
}

TimeSeriesMatrix ingest_csv(const std::string& text, Orientation orientation) {
  std::vector<std::vector<std::complex<double>>> rows;
  bool complex_data = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::complex<double>> cells;
    std::stringstream ls(line);
    std::string cell;
    bool ok = true;
    std::size_t col = 0;
    while (std::getline(ls, cell, ',')) {
      ++col;
      std::complex<double> v;
      if (!parse_cell(cell, v, complex_data)) {
        ok = false;
        break;
      }
      cells.push_back(v);
    }
    if (!ok) {
      // A non-numeric first row is a header; anywhere else it is an error.
      if (first_data_line) {
        first_data_line = false;
        continue;
      }
      throw ParseError("ingest: non-numeric cell at row " +
                       std::to_string(lineno) + ", column " +
                       std::to_string(col));
    }
    first_data_line = false;
    rows.push_back(std::move(cells));
  }
  return from_cells(std::move(rows), complex_data, orientation);
}

TimeSeriesMatrix ingest_json(const std::string& text, Orientation orientation) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ingest: invalid JSON: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("ingest: JSON root must be an array of arrays");
  std::vector<std::vector<std::complex<double>>> rows;
  bool complex_data = false;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array())
      throw ParseError("ingest: JSON row " + std::to_string(r + 1) +
                       " is not an array");
    std::vector<std::complex<double>> cells;
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      const auto& v = j[r][c];
      std::complex<double> z;
      if (v.is_number()) {
        z = {v.get<double>(), 0.0};
      } else if (v.is_string()) {
        if (!parse_cell(v.get<std::string>(), z, complex_data))
          throw ParseError("ingest: bad cell at row " + std::to_string(r + 1) +
                           ", column " + std::to_string(c + 1));
      } else {
        throw ParseError("ingest: bad cell at row " + std::to_string(r + 1) +
                         ", column " + std::to_string(c + 1));
      }
      cells.push_back(z);
    }
    rows.push_back(std::move(cells));
  }
  return from_cells(std::move(rows), complex_data, orientation);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json report_json_object(const TestReport& r) {
  auto num = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  nlohmann::json j;
  j["test"] = to_string(r.name);
  j["statistic"] = num(r.statistic);
  j["centering"] = num(r.centering);
  j["scale"] = num(r.scale);
  j["z_or_chi2"] = num(r.z_or_chi2);
  j["p_value"] = num(r.p_value);
  j["reject"] = r.reject;
  j["alpha"] = r.alpha;
  j["q"] = r.q;
  j["params"] = {{"p", r.params.p},
                 {"T", r.params.T},
                 {"c_p", num(r.params.c_p)},
                 {"s1_hat", num(r.params.s1)},
                 {"s2_tilde", num(r.params.s2)},
                 {"s_d2_tilde", num(r.params.s_d2)},
                 {"nu4", num(r.params.nu4)}};
  return j;
}

}  // namespace

TimeSeriesMatrix ingest_text(const std::string& text, Orientation orientation,
                             const std::string& format) {
  if (format == "json") return ingest_json(text, orientation);
  if (format == "csv") return ingest_csv(text, orientation);
  throw ParseError("ingest: unknown format '" + format + "'");
}

TimeSeriesMatrix ingest(const std::string& path, Orientation orientation) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("ingest: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const bool json = path.size() > 5 && path.substr(path.size() - 5) == ".json";
  return ingest_text(buf.str(), orientation, json ? "json" : "csv");
}

std::string emit_csv(const TimeSeriesMatrix& x) {
  std::string out;
  const Eigen::Index p = x.dim();
  const Eigen::Index T = x.length();
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index t = 0; t < T; ++t) {
      if (t) out += ",";
      if (x.is_complex()) {
        const std::complex<double> v = x.complex_data()(i, t);
        out += fmt17(v.real());
        if (v.imag() >= 0.0 || std::isnan(v.imag())) out += "+";
        out += fmt17(v.imag()) + "i";
      } else {
        out += fmt17(x.real_data()(i, t));
      }
    }
    out += "\n";
  }
  return out;
}

std::string test_report_json(const TestReport& report) {
  return report_json_object(report).dump();
}

std::string simulation_table_json(const SimulationTable& table,
                                  bool include_timing) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json j;
    j["p"] = r.cell.p;
    j["T"] = r.cell.T;
    j["q"] = r.cell.q;
    j["model"] = describe(r.cell.model);
    j["test"] = to_string(r.test);
    j["alpha"] = r.alpha;
    j["replicates"] = r.replicates;
    j["rejections"] = r.rejections;
    j["errors"] = r.errors;
    if (r.skipped) {
      j["skipped"] = true;
      j["skip_reason"] = r.skip_reason;
    } else {
      j["skipped"] = false;
      j["rejection_rate"] = r.rejection_rate;
      j["mc_se"] = r.mc_se;
    }
    if (include_timing) j["wall_ms"] = r.wall_ms;
    rows.push_back(std::move(j));
  }
  return rows.dump(2);
}

}  // namespace hdwn
