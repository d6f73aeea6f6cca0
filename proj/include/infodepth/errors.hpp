#pragma once

#include <stdexcept>
#include <string>

namespace infodepth {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments or configuration (CLI exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A mode the model cannot provide, e.g. conditional entropy without a posterior kernel.
class UnsupportedMode : public Error {
 public:
  using Error::Error;
};

/// A quantity requested outside its mathematical domain (r <= 0, empty pmf, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Depth requested at a tolerance finer than the one the records were produced with.
class InsufficientResolution : public Error {
 public:
  using Error::Error;
};

/// Aggregation refused, typically because a record hit the depth cap.
class AggregationError : public Error {
 public:
  using Error::Error;
};

/// Record sets that cannot be paired rep-by-rep.
class PairingError : public Error {
 public:
  using Error::Error;
};

/// Records of the wrong mode handed to a mode-specific estimator.
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

/// Quadrature failed to reach the requested tolerance.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Malformed record file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace infodepth
