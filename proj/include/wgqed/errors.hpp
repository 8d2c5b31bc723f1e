#pragma once

#include <stdexcept>
#include <string>

namespace wgqed {

// Base class for all numerical failures raised by the library.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Evaluation exactly at a pole of a resolvent element.
class PoleError : public NumericError {
 public:
  PoleError(const std::string& what, double pole) : NumericError(what), pole_(pole) {}
  double pole() const { return pole_; }

 private:
  double pole_;
};

// Adaptive quadrature hit its subdivision budget before reaching tolerance.
class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, double worst_a, double worst_b, double worst_err)
      : NumericError(what), worst_a_(worst_a), worst_b_(worst_b), worst_err_(worst_err) {}
  double worst_a() const { return worst_a_; }
  double worst_b() const { return worst_b_; }
  double worst_error() const { return worst_err_; }

 private:
  double worst_a_, worst_b_, worst_err_;
};

// Invalid experiment configuration; key() is the offending key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace wgqed
