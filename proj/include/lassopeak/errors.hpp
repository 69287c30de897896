#pragma once

#include <stdexcept>
#include <string>

namespace lassopeak {

// Base of the library's error taxonomy. `kind()` is a stable,
// machine-parsable class name; the CLI prints it verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& message)
      : Error("DimensionMismatch", message) {}
};

class ZeroVarianceColumn : public Error {
 public:
  explicit ZeroVarianceColumn(int column)
      : Error("ZeroVarianceColumn",
              "column " + std::to_string(column) + " is constant"),
        column_(column) {}

  int column() const noexcept { return column_; }

 private:
  int column_;
};

class ConvergenceFailure : public Error {
 public:
  explicit ConvergenceFailure(const std::string& message)
      : Error("ConvergenceFailure", message) {}
};

class DegeneratePath : public Error {
 public:
  explicit DegeneratePath(const std::string& message)
      : Error("DegeneratePath", message) {}
};

class FractionOutOfRange : public Error {
 public:
  explicit FractionOutOfRange(double fraction)
      : Error("FractionOutOfRange",
              "fraction " + std::to_string(fraction) + " not in [0, 1]") {}
};

class InvalidFoldCount : public Error {
 public:
  InvalidFoldCount(int k, int n)
      : Error("InvalidFoldCount", "k = " + std::to_string(k) +
                                      " not in [2, n] for n = " +
                                      std::to_string(n)) {}
};

class FoldTooSmall : public Error {
 public:
  explicit FoldTooSmall(const std::string& message)
      : Error("FoldTooSmall", message) {}
};

class NonpositiveNorm : public Error {
 public:
  explicit NonpositiveNorm(double value)
      : Error("NonpositiveNorm",
              "denominator norm must be > 0, got " + std::to_string(value)) {}
};

class SubsampleExhausted : public Error {
 public:
  explicit SubsampleExhausted(const std::string& message)
      : Error("SubsampleExhausted", message) {}
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& message)
      : Error("EmptyInput", message) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("ParseError",
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error("ValidationError", field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("IoError", message) {}
};

}  // namespace lassopeak
