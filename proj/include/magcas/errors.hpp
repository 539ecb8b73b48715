#pragma once

#include <stdexcept>
#include <string>

namespace magcas {

/// A closed-form expression was evaluated at one of its poles.
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

/// A linear matching system was too ill-conditioned to trust.
class ConditioningError : public std::runtime_error {
 public:
  explicit ConditioningError(const std::string& what) : std::runtime_error(what) {}
};

/// A sum or quadrature failed to reach its target tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// The validation oracle itself failed to converge or self-check.
class OracleError : public std::runtime_error {
 public:
  explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace magcas
