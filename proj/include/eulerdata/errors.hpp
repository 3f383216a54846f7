#ifndef EULERDATA_ERRORS_HPP
#define EULERDATA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eulerdata {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Structural misuse: mixed variable tables, bad exponents, malformed input.
struct StructuralError : Error {
  explicit StructuralError(const std::string& what) : Error(what) {}
};

// Division by zero, inversion of zero, and friends.
struct ArithmeticError : Error {
  explicit ArithmeticError(const std::string& what) : Error(what) {}
};

// Evaluation at a point where a denominator vanishes. Carries the
// offending denominator in printable form.
struct PoleError : Error {
  std::string denominator;
  PoleError(const std::string& what, std::string den)
      : Error(what + " [denominator: " + den + "]"), denominator(std::move(den)) {}
};

// An unknown could not be pivoted during elimination.
struct UnderdeterminedError : Error {
  explicit UnderdeterminedError(const std::string& what) : Error(what) {}
};

// Invalid case configuration (rejected before any computation starts).
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// A computation stage failed an internal exactness check.
struct EngineError : Error {
  std::string stage;
  EngineError(std::string stage_, const std::string& what)
      : Error("[" + stage_ + "] " + what), stage(std::move(stage_)) {}
};

}  // namespace eulerdata

#endif
