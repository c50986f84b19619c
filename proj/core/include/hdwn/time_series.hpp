#pragma once

#include <Eigen/Dense>
#include <complex>
#include <variant>

namespace hdwn {

using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// A p x T panel of observations; column t is the observation x_t.
/// Real or complex is a property of the whole panel. Construction validates
/// p >= 1, T >= 2 and that every entry is finite.
class TimeSeriesMatrix {
 public:
  explicit TimeSeriesMatrix(Matrix data);
  explicit TimeSeriesMatrix(ComplexMatrix data);

  Eigen::Index dim() const;     // p
  Eigen::Index length() const;  // T
  bool is_complex() const { return std::holds_alternative<ComplexMatrix>(data_); }

  const Matrix& real_data() const;            // throws if complex
  const ComplexMatrix& complex_data() const;  // throws if real

  /// Subtracts the sample mean from every row. Opt-in: demeaning changes the
  /// null law of the statistics, so nothing in the library does it for you.
  TimeSeriesMatrix demeaned() const;

 private:
  std::variant<Matrix, ComplexMatrix> data_;
};

}  // namespace hdwn
