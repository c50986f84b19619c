#include "hdwn/time_series.hpp"

#include "hdwn/errors.hpp"

namespace hdwn {

namespace {

template <typename M>
void validate(const M& m) {
  if (m.rows() < 1) throw DomainError("TimeSeriesMatrix: dimension p must be >= 1");
  if (m.cols() < 2) throw DomainError("TimeSeriesMatrix: sample length T must be >= 2");
  if (!m.allFinite()) throw DomainError("TimeSeriesMatrix: non-finite entry");
}

}  // namespace

TimeSeriesMatrix::TimeSeriesMatrix(Matrix data) : data_(std::move(data)) {
  validate(std::get<Matrix>(data_));
}

TimeSeriesMatrix::TimeSeriesMatrix(ComplexMatrix data) : data_(std::move(data)) {
  validate(std::get<ComplexMatrix>(data_));
}

Eigen::Index TimeSeriesMatrix::dim() const {
  return std::visit([](const auto& m) { return m.rows(); }, data_);
}

Eigen::Index TimeSeriesMatrix::length() const {
  return std::visit([](const auto& m) { return m.cols(); }, data_);
}

const Matrix& TimeSeriesMatrix::real_data() const {
  if (is_complex()) throw DomainError("TimeSeriesMatrix: data is complex");
  return std::get<Matrix>(data_);
}

const ComplexMatrix& TimeSeriesMatrix::complex_data() const {
  if (!is_complex()) throw DomainError("TimeSeriesMatrix: data is real");
  return std::get<ComplexMatrix>(data_);
}

TimeSeriesMatrix TimeSeriesMatrix::demeaned() const {
  if (is_complex()) {
    ComplexMatrix m = complex_data();
    m.colwise() -= m.rowwise().mean();
    return TimeSeriesMatrix(std::move(m));
  }
  Matrix m = real_data();
  m.colwise() -= m.rowwise().mean();
  return TimeSeriesMatrix(std::move(m));
}

}  // namespace hdwn
