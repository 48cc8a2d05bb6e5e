#pragma once

#include <stdexcept>
#include <string>

namespace bp {

// Invalid input data: malformed files, broken invariants, bad parameters.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter outside the domain of a closed-form expression.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// The LP solver could not certify a result.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bp
