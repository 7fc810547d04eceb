#pragma once

#include <stdexcept>
#include <string>

namespace coex {

enum class ErrorKind {
  NonHermitian,
  NotAnEffect,
  DimensionMismatch,
  NegativeRadicand,
  PreconditionViolated,
  NotAProjection,
  DegenerateAngle,
  NotInAlgebra,
  ShapeMismatch,
  RankViolation,
  InvalidRange,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Every failure in the library is reported through this type. `value()`
/// carries the offending quantity (an eigenvalue, a residual, a rank)
/// when one exists, NaN otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double value);
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  double value_;
};

}  // namespace coex
