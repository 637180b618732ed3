#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "utpla/utp_matrix.hpp"
#include "utpla/utp_scalar.hpp"

namespace utpla {

/// Square-Q QR factors of an M x N polynomial matrix, M >= N:
/// q is M x M orthogonal, r is M x N with only the top N rows nonzero.
struct QrFactors {
  UtpMatrix q;
  UtpMatrix r;

  /// First N columns of q (orthonormal columns), M x N.
  UtpMatrix economy_q() const;
  /// Top N x N block of r.
  UtpMatrix economy_r() const;
};

/// Householder QR of a real matrix with the sign convention diag(R) > 0.
/// Returns (Q, R) with Q M x M, R M x N.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> classical_qr(const Eigen::MatrixXd& a);

/// One step d of the sequential lifting, kept for inspection in tests.
struct QrLiftStep {
  Eigen::MatrixXd s;  // symmetric part of Q_0^T Q_d
  Eigen::MatrixXd x;  // antisymmetric part of Q_0^T Q_d
};

/// Taylor-arithmetic QR by sequential Hensel lifting (one coefficient per step).
///
/// A_0 must have full column rank: the smallest |R_{0;ii}| has to be at least
/// 1e-10 * ||A_0||_inf, else SingularError. M < N throws ShapeError.
/// The result satisfies QR = A, Q^T Q = I per coefficient to rounding and
/// has P_L o R exactly zero. If `trace` is non-null it receives the S and X
/// matrices of every step d >= 1.
QrFactors qr_pushforward(const UtpMatrix& a, std::vector<QrLiftStep>* trace = nullptr);

struct PullbackOptions {
  /// Reject inputs whose defining-equation residuals exceed
  /// tolerance * max(1, ||A_0||_inf).
  bool validate = true;
  double tolerance = 1e-8;
};

/// Reverse-mode rule for QR in Taylor arithmetic. Returns
///   abar + Q (Rbar + (P_L o (R Rbar^T - Rbar R^T + Q^T Qbar - Qbar^T Q)) R^{+T})
/// with all products truncated. (a, q, r) must satisfy the defining equations.
UtpMatrix qr_pullback(const UtpMatrix& a, const UtpMatrix& q, const UtpMatrix& r,
                      const UtpMatrix& abar, const UtpMatrix& qbar, const UtpMatrix& rbar,
                      const PullbackOptions& options = {});

/// Householder vector in Taylor arithmetic, transcribed branch for branch from
/// the textbook real algorithm. The sigma == 0 test looks only at the zeroth
/// coefficient, so inputs such as e_1 + e_2 T yield beta = 0 although the
/// higher-order part of x is not a multiple of e_1. Kept to demonstrate that
/// failure mode, not for production use.
struct HouseholderVector {
  std::vector<UtpScalar> v;  // v_1 = 1
  UtpScalar beta;
};
HouseholderVector householder_vector(std::span<const UtpScalar> x);

/// QR by successive Householder reflections in Taylor arithmetic.
/// Inherits the defect of householder_vector().
QrFactors householder_qr(const UtpMatrix& a);

}  // namespace utpla
