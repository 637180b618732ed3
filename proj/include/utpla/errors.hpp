#pragma once

#include <stdexcept>
#include <string>

namespace utpla {

/// Operand shapes or degrees do not agree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Leading coefficient outside the domain of an elementary function, or a
/// non-finite value where finite data is required.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Leading coefficient matrix is (numerically) singular or rank deficient.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs violate a structural precondition: asymmetry, defining-equation
/// residuals, repeated eigenvalues where distinct ones are required.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace utpla
