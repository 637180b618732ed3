#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "utpla/utp_matrix.hpp"
#include "utpla/utp_scalar.hpp"

// Covariance matrix of a constrained least-squares estimate,
//   C = (I, 0) [[J1^T J1, J2^T], [J2, 0]]^{-1} (I, 0)^T,
// computed two ways in Taylor arithmetic: directly from the KKT matrix, and
// through a QR-based nullspace basis of J2.
namespace utpla::covariance {

/// Point and direction for the two-parameter test problem.
struct CovarianceInstance {
  Eigen::Vector2d x;
  Eigen::Vector2d xdot;
};

/// Test Jacobian J1(x), 4 x 2, row-major entries. Generic over double,
/// std::complex<double> and UtpScalar.
template <class T>
std::array<T, 8> j1_entries(const T& x1, const T& x2) {
  using std::cos, std::exp, std::log, std::sin;
  return {sin(x1) * x2,        cos(x2),
          exp(x1),             x1 * x2,
          x1 * log(x2),        log(1.0 + exp(cos(x1))),
          x2 + x1,             x1 * (x2 + cos(x1))};
}

/// Test constraint Jacobian J2(x), 1 x 2.
template <class T>
std::array<T, 2> j2_entries(const T& x1, const T& x2) {
  using std::cos, std::exp, std::log, std::sin;
  return {x1 * log(x2 + 3.0 * sin(x1 * x2)), x2 * exp(sin(x1) + cos(x1 * x2))};
}

/// J1 and J2 along x(T) = x + xdot T.
UtpMatrix j1_utp(const CovarianceInstance& inst, std::size_t degree);
UtpMatrix j2_utp(const CovarianceInstance& inst, std::size_t degree);

Eigen::MatrixXcd j1_complex(const Eigen::Vector2cd& x);
Eigen::MatrixXcd j2_complex(const Eigen::Vector2cd& x);

/// Inverse of a square polynomial matrix with nonsingular leading
/// coefficient: LU-factor K_0 once, then B_d = -K_0^{-1} sum_{k>=1} K_k B_{d-k}.
UtpMatrix lifted_inverse(const UtpMatrix& k);

/// C through the KKT matrix.
UtpMatrix cov_direct(const UtpMatrix& j1, const UtpMatrix& j2);

/// C = Z (Z^T J1^T J1 Z)^{-1} Z^T where Z spans the nullspace of J2, taken
/// as the trailing columns of the square Q of a Taylor QR of J2^T.
UtpMatrix cov_nullspace(const UtpMatrix& j1, const UtpMatrix& j2);

/// KKT route over complex numbers, for the complex-step oracle.
Eigen::MatrixXcd cov_direct_complex(const Eigen::MatrixXcd& j1, const Eigen::MatrixXcd& j2);

/// C(x) flattened column-major, real and complex variants.
Eigen::VectorXd covariance_at(const Eigen::VectorXd& x);
Eigen::VectorXcd covariance_at_complex(const Eigen::VectorXcd& x);

}  // namespace utpla::covariance
