#pragma once

#include <stdexcept>
#include <string>

namespace hdwn {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested lag is out of range for the sample length.
class InvalidLagError : public Error {
  using Error::Error;
};

/// A test scale (asymptotic variance) came out non-positive.
class DegenerateVarianceError : public Error {
  using Error::Error;
};

/// A covariance matrix that must be inverted is singular or nearly so.
class SingularCovarianceError : public Error {
  using Error::Error;
};

/// Dimensions make the requested estimator infeasible (e.g. p >= T/2).
class InfeasibleDimensionError : public Error {
  using Error::Error;
};

/// A moment formula needs innovation moments that were not supplied.
class InsufficientMomentsError : public Error {
  using Error::Error;
};

/// Scalar argument outside the mathematical domain of a function.
class DomainError : public Error {
  using Error::Error;
};

/// Malformed input file; message carries row/column location.
class ParseError : public Error {
  using Error::Error;
};

}  // namespace hdwn
