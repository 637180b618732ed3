#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "utpla/utp_matrix.hpp"

// Independent verification machinery: derivative approximations that share no
// code with the Taylor-arithmetic algorithms, the analytic repeated-eigenvalue
// test system, and defining-equation residuals.
namespace utpla::oracles {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using ComplexMap = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

inline constexpr double kDefaultComplexStep = 1e-20;
inline constexpr double kDefaultFdStep = 1e-5;

/// Im(f(x + i eps xdot)) / eps. Throws DomainError for eps <= 0 or
/// non-finite output.
Eigen::VectorXd csda_derivative(const ComplexMap& f, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& xdot,
                                double eps = kDefaultComplexStep);

/// (f(x + h xdot) - f(x - h xdot)) / (2h).
Eigen::VectorXd fd_directional(const RealMap& f, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& xdot, double h = kDefaultFdStep);

/// Second directional derivative by the central three-point stencil.
Eigen::VectorXd fd_second_directional(const RealMap& f, const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& xdot, double h);

/// 4 x 4 test system A(t) = Q(t) Lam(t) Q(t)^T with x(t) = 1 + t,
///   Q(t) = 1/sqrt(3) [[ cos x,  1,     sin x, -1    ],
///                     [-sin x, -1,     cos x, -1    ],
///                     [ 1,     -sin x, 1,     cos x ],
///                     [-1,      cos x, 1,     sin x ]]
///   Lam(t) = diag(x^2 - x + 1/2, 4x^2 - 3x,
///                 delta(-x^3/2 + 2x^2 - 3x/2 + 1) + x^3 + x^2 - 1, 3x - 1).
/// For delta = 0 the second and third eigenvalues agree through t^2.
struct AndrewSystem {
  UtpMatrix a;
  UtpMatrix lam;  // Taylor coefficients of Lam(t)
  UtpMatrix q;
};
AndrewSystem andrew_system(double delta, std::size_t degree);

/// Eigenvalue derivatives d^k lam_i / dt^k at t = 0 written out by hand,
/// row i = eigenvalue, column k = 0..4. Taylor coefficient k equals this
/// entry divided by k!.
Eigen::MatrixXd andrew_eigenvalue_derivatives(double delta);

/// Per-coefficient infinity norms of the QR defining equations.
struct QrResidual {
  std::vector<double> reconstruction;  // QR - A
  std::vector<double> orthogonality;   // Q^T Q - I
  std::vector<double> triangularity;   // P_L o R
  double max() const;
};
QrResidual residual_qr(const UtpMatrix& a, const UtpMatrix& q, const UtpMatrix& r);

/// Per-coefficient infinity norms of the eigendecomposition defining equations.
struct EighResidual {
  std::vector<double> similarity;     // Q^T A Q - Lam
  std::vector<double> orthogonality;  // Q^T Q - I
  std::vector<double> off_diagonal;   // (P_L + P_R) o Lam
  double max() const;
};
EighResidual residual_eigh(const UtpMatrix& a, const UtpMatrix& q, const UtpMatrix& lam);

}  // namespace utpla::oracles
