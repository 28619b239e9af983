#pragma once

#include <stdexcept>
#include <string>

namespace lo2d {

// Argument outside the mathematical domain of an operation (gamma outside
// (1,3), nonpositive p, negative lambda, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// An integral the library was asked to evaluate does not converge, or the
// adaptive scheme could not bring its error estimate under control.
class DivergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Inputs are individually valid but violate a precondition of a derived
// estimate (e.g. z > a*b2/2 for the analytic stability bound).
class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Malformed or inconsistent run configuration (CLI and JSON input).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace lo2d
