#pragma once

#include <stdexcept>
#include <string>

namespace antiwick {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A symbol was evaluated on its singular set.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Non-finite accumulation, eigensolver failure and similar.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A grid does not cover the support it is required to resolve.
class CoverageError : public Error {
 public:
  CoverageError(const std::string& what, double required_half_width)
      : Error(what), required_half_width_(required_half_width) {}
  double required_half_width() const noexcept { return required_half_width_; }

 private:
  double required_half_width_;
};

/// Incompatible grid or vector shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Bad input data: coefficient tables, metadata, parameter ranges.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// Malformed run configuration. `field` is a JSON-pointer style path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : Error(field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

std::string format_point(const double* z, std::size_t n);

}  // namespace antiwick
