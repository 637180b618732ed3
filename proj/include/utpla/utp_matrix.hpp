#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "utpla/structure.hpp"
#include "utpla/utp_scalar.hpp"

namespace utpla {

/// Truncated matrix polynomial [A]_D = A_0 + A_1 T + ... + A_{D-1} T^{D-1}
/// with every coefficient of shape rows x cols.
///
/// This is the carrier of all forward-mode state (inputs, factors, and the
/// adjoints of the reverse sweep). Values are immutable.
class UtpMatrix {
 public:
  /// Throws ShapeError on an empty list or mismatched coefficient shapes,
  /// DomainError on non-finite entries.
  explicit UtpMatrix(std::vector<Eigen::MatrixXd> coeffs);

  static UtpMatrix zeros(std::size_t rows, std::size_t cols, std::size_t degree);
  static UtpMatrix identity(std::size_t n, std::size_t degree);
  /// [m, 0, ..., 0]
  static UtpMatrix constant(const Eigen::MatrixXd& m, std::size_t degree);
  /// Assemble from row-major entry polynomials, all of the same degree.
  static UtpMatrix from_entries(std::size_t rows, std::size_t cols,
                                const std::vector<UtpScalar>& entries);

  std::size_t degree() const { return coeffs_.size(); }
  std::size_t rows() const { return static_cast<std::size_t>(coeffs_.front().rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(coeffs_.front().cols()); }

  const Eigen::MatrixXd& coeff(std::size_t d) const { return coeffs_[d]; }
  const Eigen::MatrixXd& operator[](std::size_t d) const { return coeffs_[d]; }
  std::span<const Eigen::MatrixXd> coeffs() const { return coeffs_; }

  /// Entry (i, j) as a scalar polynomial.
  UtpScalar entry(std::size_t i, std::size_t j) const;

 private:
  std::vector<Eigen::MatrixXd> coeffs_;
};

UtpMatrix madd(const UtpMatrix& a, const UtpMatrix& b);
UtpMatrix msub(const UtpMatrix& a, const UtpMatrix& b);
UtpMatrix scale(const UtpMatrix& a, double s);

/// Truncated product C_d = sum_{k=0}^{d} A_k B_{d-k}.
UtpMatrix mmul(const UtpMatrix& a, const UtpMatrix& b);
UtpMatrix mtranspose(const UtpMatrix& a);

/// Mask every coefficient with a skeletal projector.
UtpMatrix hadamard(const SkeletalProjector& p, const UtpMatrix& a);
/// Entrywise truncated product of two polynomial matrices:
/// (A o B)_{ij} = [A_{ij}] [B_{ij}] as scalar polynomials.
UtpMatrix hadamard(const UtpMatrix& a, const UtpMatrix& b);

/// Inverse of a square polynomial matrix with upper-triangular coefficients:
/// B_0 = R_0^{-1}, B_d = -B_0 sum_{k=1}^{d} R_k B_{d-k}.
///
/// Throws ShapeError for non-square or non-triangular input and SingularError
/// when a diagonal entry of R_0 is below 1e-12 * max(1, ||R_0||_inf).
UtpMatrix tri_inverse(const UtpMatrix& r);

/// Moore-Penrose pseudoinverse (R_top^{-1}, 0) of an M x N polynomial matrix
/// whose only nonzero rows are an upper-triangular top N x N block.
UtpMatrix pinv_tall(const UtpMatrix& r);

/// Coefficients [lo, hi) as a new polynomial of degree hi - lo.
UtpMatrix window(const UtpMatrix& a, std::size_t lo, std::size_t hi);
/// Multiply by T^k: degree grows by k, coefficient d moves to d + k.
UtpMatrix shift(const UtpMatrix& a, std::size_t k);
/// Concatenate coefficient lists: [lo_0..lo_{p-1}, hi_0..hi_{q-1}].
UtpMatrix concat(const UtpMatrix& lo, const UtpMatrix& hi);

UtpMatrix submatrix(const UtpMatrix& a, Slice rows, Slice cols);
/// Copy of `a` with `block` written at (row0, col0).
UtpMatrix write_submatrix(const UtpMatrix& a, std::size_t row0, std::size_t col0,
                          const UtpMatrix& block);

/// tr(X^T Y) lifted to polynomials: coefficient d is
/// sum_k sum_{ij} X_{k;ij} Y_{d-k;ij}.
UtpScalar trace_pair(const UtpMatrix& x, const UtpMatrix& y);

/// Induced infinity norm (max absolute row sum).
double inf_norm(const Eigen::MatrixXd& m);
/// Largest inf_norm over all coefficients.
double max_coeff_norm(const UtpMatrix& a);

inline UtpMatrix operator+(const UtpMatrix& a, const UtpMatrix& b) { return madd(a, b); }
inline UtpMatrix operator-(const UtpMatrix& a, const UtpMatrix& b) { return msub(a, b); }
inline UtpMatrix operator*(const UtpMatrix& a, const UtpMatrix& b) { return mmul(a, b); }
inline UtpMatrix operator*(double s, const UtpMatrix& a) { return scale(a, s); }

}  // namespace utpla
