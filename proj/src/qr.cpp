#include "utpla/qr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "utpla/errors.hpp"
#include "utpla/structure.hpp"

namespace utpla {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;

Eigen::MatrixXd symmetrize(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

double qr_residual(const UtpMatrix& a, const UtpMatrix& q, const UtpMatrix& r) {
  const UtpMatrix rec = msub(mmul(q, r), a);
  const UtpMatrix orth = msub(mmul(mtranspose(q), q), UtpMatrix::identity(q.cols(), q.degree()));
  const UtpMatrix low = hadamard(SkeletalProjector::lower_strict(r.rows(), r.cols()), r);
  return std::max({max_coeff_norm(rec), max_coeff_norm(orth), max_coeff_norm(low)});
}

}  // namespace

UtpMatrix QrFactors::economy_q() const {
  return submatrix(q, {0, q.rows()}, {0, r.cols()});
}

UtpMatrix QrFactors::economy_r() const {
  return submatrix(r, {0, r.cols()}, {0, r.cols()});
}

std::pair<MatrixXd, MatrixXd> classical_qr(const MatrixXd& a) {
  const Index m = a.rows(), n = a.cols();
  if (m < n) throw ShapeError("classical_qr: need rows >= cols");
  Eigen::HouseholderQR<MatrixXd> house(a);
  MatrixXd q = house.householderQ() * MatrixXd::Identity(m, m);
  MatrixXd r = house.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) {
      r.row(i) *= -1.0;
      q.col(i) *= -1.0;
    }
  }
  for (Index j = 0; j < n; ++j) r.col(j).tail(m - j - 1).setZero();
  return {std::move(q), std::move(r)};
}

QrFactors qr_pushforward(const UtpMatrix& a, std::vector<QrLiftStep>* trace) {
  const std::size_t m = a.rows(), n = a.cols(), degree = a.degree();
  if (m < n) throw ShapeError("qr_pushforward: need rows >= cols");
  const auto ni = static_cast<Index>(n);

  auto [q0, r0] = classical_qr(a[0]);
  const double rank_tol = 1e-10 * inf_norm(a[0]);
  for (Index i = 0; i < ni; ++i) {
    if (!(std::abs(r0(i, i)) >= rank_tol) || r0(i, i) == 0.0) {
      throw SingularError("qr_pushforward: A_0 is rank deficient (|R_0(" + std::to_string(i) +
                          "," + std::to_string(i) + ")| = " + std::to_string(std::abs(r0(i, i))) +
                          ")");
    }
  }
  const MatrixXd r0_top_inv =
      r0.topLeftCorner(ni, ni).triangularView<Eigen::Upper>().solve(MatrixXd::Identity(ni, ni));
  const auto lower = SkeletalProjector::lower_strict(m, n);

  std::vector<MatrixXd> q(degree), r(degree);
  q[0] = q0;
  r[0] = r0;
  if (trace) trace->clear();

  for (std::size_t d = 1; d < degree; ++d) {
    MatrixXd delta_f = a[d];
    MatrixXd s = MatrixXd::Zero(m, m);
    for (std::size_t k = 1; k < d; ++k) {
      delta_f.noalias() -= q[d - k] * r[k];
      s.noalias() -= 0.5 * q[d - k].transpose() * q[k];
    }
    s = symmetrize(s);

    const MatrixXd qt_df = q0.transpose() * delta_f;
    // Strictly lower part of X in the first N columns; the remaining columns
    // are the free gauge, fixed to zero before antisymmetrizing.
    MatrixXd x = MatrixXd::Zero(m, m);
    x.leftCols(ni) = lower.apply(qt_df * r0_top_inv - s.leftCols(ni));
    x -= x.transpose().eval();

    const MatrixXd sx = s + x;
    r[d] = qt_df - sx * r0;
    r[d] -= lower.apply(r[d]);  // rounding residue below the diagonal
    q[d] = q0 * sx;
    if (trace) trace->push_back({s, x});
  }
  return {UtpMatrix(std::move(q)), UtpMatrix(std::move(r))};
}

UtpMatrix qr_pullback(const UtpMatrix& a, const UtpMatrix& q, const UtpMatrix& r,
                      const UtpMatrix& abar, const UtpMatrix& qbar, const UtpMatrix& rbar,
                      const PullbackOptions& options) {
  const std::size_t m = a.rows(), n = a.cols();
  if (q.rows() != m || q.cols() != m || r.rows() != m || r.cols() != n ||
      abar.rows() != m || abar.cols() != n || qbar.rows() != m || qbar.cols() != m ||
      rbar.rows() != m || rbar.cols() != n) {
    throw ShapeError("qr_pullback: expected A, R, Abar, Rbar M x N and Q, Qbar M x M");
  }
  const std::size_t degree = a.degree();
  for (const UtpMatrix* p : {&q, &r, &abar, &qbar, &rbar}) {
    if (p->degree() != degree) throw ShapeError("qr_pullback: degree mismatch");
  }
  if (options.validate) {
    const double res = qr_residual(a, q, r);
    if (res > options.tolerance * std::max(1.0, inf_norm(a[0]))) {
      throw ConsistencyError("qr_pullback: (A, Q, R) violate the defining equations (residual " +
                             std::to_string(res) + ")");
    }
  }

  const UtpMatrix qt = mtranspose(q);
  const UtpMatrix rbar_t = mtranspose(rbar);
  const UtpMatrix r_t = mtranspose(r);
  const UtpMatrix qbar_t = mtranspose(qbar);
  const UtpMatrix inner = mmul(r, rbar_t) - mmul(rbar, r_t) + mmul(qt, qbar) - mmul(qbar_t, q);
  const UtpMatrix masked = hadamard(SkeletalProjector::lower_strict(m, m), inner);
  const UtpMatrix r_pinv_t = mtranspose(pinv_tall(r));
  return abar + mmul(q, rbar + mmul(masked, r_pinv_t));
}

HouseholderVector householder_vector(std::span<const UtpScalar> x) {
  if (x.empty()) throw ShapeError("householder_vector: empty input");
  const std::size_t degree = x[0].degree();
  UtpScalar sigma = UtpScalar::constant(0.0, degree);
  for (std::size_t i = 1; i < x.size(); ++i) sigma = sigma + x[i] * x[i];

  std::vector<UtpScalar> v(x.begin(), x.end());
  v[0] = UtpScalar::constant(1.0, degree);

  // Branch on zeroth coefficients only, as any operator-overloading AD tool
  // would when it keeps the control flow of the real algorithm.
  if (sigma[0] == 0.0) return {std::move(v), UtpScalar::constant(0.0, degree)};

  const UtpScalar mu = sqrt(x[0] * x[0] + sigma);
  const UtpScalar v1 = x[0][0] <= 0.0 ? x[0] - mu : -sigma / (x[0] + mu);
  const UtpScalar v1_sq = v1 * v1;
  UtpScalar beta = 2.0 * v1_sq / (sigma + v1_sq);
  v[0] = v1;
  for (auto& vi : v) vi = vi / v1;
  return {std::move(v), std::move(beta)};
}

QrFactors householder_qr(const UtpMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols(), degree = a.degree();
  if (m < n) throw ShapeError("householder_qr: need rows >= cols");

  std::vector<UtpScalar> r, q;
  r.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) r.push_back(a.entry(i, j));
  const UtpScalar zero = UtpScalar::constant(0.0, degree);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) q.push_back(UtpScalar::constant(i == j ? 1.0 : 0.0, degree));

  auto R = [&](std::size_t i, std::size_t j) -> UtpScalar& { return r[i * n + j]; };
  auto Q = [&](std::size_t i, std::size_t j) -> UtpScalar& { return q[i * m + j]; };

  for (std::size_t k = 0; k < n; ++k) {
    std::vector<UtpScalar> x;
    for (std::size_t i = k; i < m; ++i) x.push_back(R(i, k));
    const auto [v, beta] = householder_vector(x);
    // R(k:, k:) -= beta v (v^T R(k:, k:))
    for (std::size_t j = k; j < n; ++j) {
      UtpScalar w = zero;
      for (std::size_t i = k; i < m; ++i) w = w + v[i - k] * R(i, j);
      const UtpScalar bw = beta * w;
      for (std::size_t i = k; i < m; ++i) R(i, j) = R(i, j) - v[i - k] * bw;
    }
    // Q(:, k:) -= (Q(:, k:) v) beta v^T
    for (std::size_t i = 0; i < m; ++i) {
      UtpScalar w = zero;
      for (std::size_t l = k; l < m; ++l) w = w + Q(i, l) * v[l - k];
      const UtpScalar bw = beta * w;
      for (std::size_t l = k; l < m; ++l) Q(i, l) = Q(i, l) - bw * v[l - k];
    }
  }
  return {UtpMatrix::from_entries(m, m, q), UtpMatrix::from_entries(m, n, r)};
}

}  // namespace utpla
