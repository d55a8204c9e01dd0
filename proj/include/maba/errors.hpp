#pragma once

#include <stdexcept>
#include <string>

namespace maba {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rational kernel was evaluated on its pole. Carries the kernel name and
/// the offending pair so callers can report which genericity assumption broke.
class PoleError : public Error {
 public:
  PoleError(std::string kernel, std::string left, std::string right);

  const std::string& kernel() const noexcept { return kernel_; }
  const std::string& left() const noexcept { return left_; }
  const std::string& right() const noexcept { return right_; }

 private:
  std::string kernel_;
  std::string left_;
  std::string right_;
};

class ExhaustionError : public Error {
 public:
  using Error::Error;
};

class ConstraintError : public Error {
 public:
  using Error::Error;
};

class CardinalityError : public Error {
 public:
  using Error::Error;
};

/// Requested determinant representation is not defined at these arguments
/// (u-side form at z = 1 with a negative power of (1 - z)).
class VariantUndefined : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class CapabilityError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace maba
