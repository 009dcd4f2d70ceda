#ifndef IVBMC_ERRORS_HPP
#define IVBMC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ivbmc {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// A constraint uses something the contractor pipeline cannot convert:
// !=, &&, ||, !, typecasts, comparisons nested under arithmetic, or the
// complement of an equality. The pipeline treats this as a skip signal,
// not a hard failure.
struct UnsupportedConstraint : Error {
  std::string op;
  UnsupportedConstraint(std::string op_, const std::string& what_arg)
      : Error(what_arg), op(std::move(op_)) {}
};

struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& what_arg)
      : Error("line " + std::to_string(line_) + ": " + what_arg), line(line_) {}
};

// assume() directives leave some variable with an empty domain.
struct EmptyDomainError : Error {
  using Error::Error;
};

// The nondet policy cannot make the search space finite, or its budget
// ran out before the exploration could conclude.
struct ConfigError : Error {
  using Error::Error;
};

// Concrete execution failed inside the harness (e.g. 64-bit overflow).
struct HarnessError : Error {
  using Error::Error;
};

}  // namespace ivbmc

#endif  // IVBMC_ERRORS_HPP
