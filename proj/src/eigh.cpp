#include "utpla/eigh.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>

#include "utpla/errors.hpp"

namespace utpla {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd symmetrize(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

Index idx(std::size_t i) { return static_cast<Index>(i); }

// Symmetrized copy of `a`; rejects coefficients that are not symmetric.
std::vector<MatrixXd> symmetric_coeffs(const UtpMatrix& a, const char* op) {
  if (a.rows() != a.cols()) throw ShapeError(std::string(op) + ": matrix must be square");
  const double tol = 1e-12 * std::max(1.0, inf_norm(a[0]));
  std::vector<MatrixXd> c;
  c.reserve(a.degree());
  for (std::size_t d = 0; d < a.degree(); ++d) {
    const double asym = (a[d] - a[d].transpose()).cwiseAbs().maxCoeff();
    if (asym > tol) {
      throw ConsistencyError(std::string(op) + ": coefficient " + std::to_string(d) +
                             " is not symmetric (max |A - A^T| = " + std::to_string(asym) + ")");
    }
    c.push_back(symmetrize(a[d]));
  }
  return c;
}

// Largest |sum_k Q_k^T Q_{d-k} - delta_d0 I|, relative to sum_k |Q_k| |Q_{d-k}|.
double orthogonality_residual(std::span<const MatrixXd> q) {
  const Index n = q[0].cols();
  double worst = 0.0;
  for (std::size_t d = 0; d < q.size(); ++d) {
    MatrixXd g = d == 0 ? MatrixXd(-MatrixXd::Identity(n, n)) : MatrixXd::Zero(n, n);
    double scale = 1.0;
    for (std::size_t k = 0; k <= d; ++k) {
      g.noalias() += q[k].transpose() * q[d - k];
      scale = std::max(scale, inf_norm(q[k]) * inf_norm(q[d - k]));
    }
    worst = std::max(worst, inf_norm(g) / scale);
  }
  return worst;
}

// Degree-0 eigenbasis: either the solver's or a caller-supplied one.
std::pair<VectorXd, MatrixXd> leading_eigenbasis(const MatrixXd& a0, const EighOptions& options) {
  if (!options.initial_basis) return classical_eigh(a0);
  const MatrixXd& q0 = *options.initial_basis;
  const Index n = a0.rows();
  if (q0.rows() != n || q0.cols() != n) throw ShapeError("eigh1: initial basis has wrong shape");
  const double scale = std::max(1.0, inf_norm(a0));
  if (inf_norm(q0.transpose() * q0 - MatrixXd::Identity(n, n)) > 1e-10) {
    throw ConsistencyError("eigh1: initial basis is not orthonormal");
  }
  const MatrixXd lam = q0.transpose() * a0 * q0;
  MatrixXd off = lam;
  off.diagonal().setZero();
  if (inf_norm(off) > 1e-10 * scale) {
    throw ConsistencyError("eigh1: initial basis does not diagonalize A_0");
  }
  VectorXd w = lam.diagonal();
  for (Index i = 1; i < n; ++i) {
    if (w(i) < w(i - 1) - 1e-12 * scale) {
      throw ConsistencyError("eigh1: initial basis must order eigenvalues ascending");
    }
  }
  return {w, q0};
}

}  // namespace

std::pair<VectorXd, MatrixXd> classical_eigh(const MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(symmetrize(a));
  if (solver.info() != Eigen::Success) throw SingularError("classical_eigh: solver failed");
  VectorXd w = solver.eigenvalues();
  MatrixXd q = solver.eigenvectors();
  for (Index j = 0; j < q.cols(); ++j) {
    Index imax = 0;
    q.col(j).cwiseAbs().maxCoeff(&imax);
    if (q(imax, j) < 0.0) q.col(j) *= -1.0;
  }
  return {std::move(w), std::move(q)};
}

BlockVector detect_blocks(const VectorXd& lam0, double tol, std::size_t level) {
  if (lam0.size() == 0) throw ShapeError("detect_blocks: empty spectrum");
  std::vector<std::size_t> b{0};
  for (Index i = 1; i < lam0.size(); ++i) {
    const double gap = lam0(i) - lam0(i - 1);
    if (gap < -tol) throw ConsistencyError("detect_blocks: eigenvalues are not sorted");
    if (!(gap < tol)) b.push_back(static_cast<std::size_t>(i));
  }
  b.push_back(static_cast<std::size_t>(lam0.size()));
  return BlockVector(std::move(b), level);
}

Eigh1Result eigh1(const UtpMatrix& a, const EighOptions& options) {
  const std::vector<MatrixXd> ac = symmetric_coeffs(a, "eigh1");
  const std::size_t n = a.rows(), degree = a.degree();

  auto [w, q0] = leading_eigenbasis(ac[0], options);
  const BlockVector blocks = detect_blocks(w, options.block_tol);
  const MatrixXd lam0 = w.asDiagonal();

  // H = P_b o (1/E), E_ij = lam_j - lam_i; zero inside the blocks.
  const MatrixXd off_block = SkeletalProjector::block_complement(blocks).mask();
  const MatrixXd in_block = SkeletalProjector::block(blocks).mask();
  MatrixXd h = MatrixXd::Zero(idx(n), idx(n));
  for (Index i = 0; i < idx(n); ++i)
    for (Index j = 0; j < idx(n); ++j)
      if (off_block(i, j) != 0.0) h(i, j) = 1.0 / (w(j) - w(i));

  std::vector<MatrixXd> q(degree), lam(degree);
  q[0] = q0;
  lam[0] = lam0;

  for (std::size_t d = 1; d < degree; ++d) {
    // Coefficient d of Q^T A Q over multi-indices (i1, i2, i3) with every
    // component below d; the Q_0^T A_d Q_0 term is added separately.
    MatrixXd delta_f = MatrixXd::Zero(idx(n), idx(n));
    for (std::size_t i1 = 0; i1 < d; ++i1) {
      for (std::size_t i2 = 0; i1 + i2 <= d && i2 < d; ++i2) {
        const std::size_t i3 = d - i1 - i2;
        if (i3 >= d) continue;
        delta_f.noalias() += q[i1].transpose() * ac[i2] * q[i3];
      }
    }
    MatrixXd s = MatrixXd::Zero(idx(n), idx(n));
    for (std::size_t k = 1; k < d; ++k) s.noalias() -= 0.5 * q[d - k].transpose() * q[k];
    s = symmetrize(s);

    MatrixXd k_mat = delta_f + q0.transpose() * ac[d] * q0 + s * lam0 + lam0 * s;
    k_mat = symmetrize(k_mat);

    q[d] = q0 * (s + h.cwiseProduct(k_mat));
    lam[d] = in_block.cwiseProduct(k_mat);
  }
  return {UtpMatrix(std::move(lam)), UtpMatrix(std::move(q)), blocks};
}

UtpMatrix qlift(const UtpMatrix& q, std::size_t degree) {
  if (q.rows() != q.cols()) throw ShapeError("qlift: matrix must be square");
  if (degree < q.degree()) throw ShapeError("qlift: target degree below input degree");
  std::vector<MatrixXd> c(q.coeffs().begin(), q.coeffs().end());
  const double res = orthogonality_residual(c);
  if (res > 1e-10) {
    throw ConsistencyError("qlift: input prefix is not orthogonal (relative residual " +
                           std::to_string(res) + ")");
  }
  for (std::size_t k = q.degree(); k < degree; ++k) {
    MatrixXd acc = MatrixXd::Zero(q[0].rows(), q[0].cols());
    for (std::size_t i = 1; i < k; ++i) acc.noalias() += c[i].transpose() * c[k - i];
    c.push_back(-0.5 * c[0] * symmetrize(acc));
  }
  return UtpMatrix(std::move(c));
}

std::vector<UtpScalar> EighFactors::eigenvalues() const {
  std::vector<UtpScalar> out;
  out.reserve(lam.rows());
  for (std::size_t i = 0; i < lam.rows(); ++i) out.push_back(lam.entry(i, i));
  return out;
}

EighFactors eigh_pushforward(const UtpMatrix& a, const EighOptions& options) {
  const std::size_t n = a.rows(), degree = a.degree();
  UtpMatrix lam(symmetric_coeffs(a, "eigh_pushforward"));
  UtpMatrix q = UtpMatrix::identity(n, degree);
  std::vector<BlockVector> levels{BlockVector::single(n, 0)};

  for (std::size_t d = 0; d < degree && !levels.back().all_singletons(); ++d) {
    const BlockVector& current = levels.back();
    const std::size_t nblocks = current.block_count();

    std::vector<UtpMatrix> lam_hat(nblocks, UtpMatrix::zeros(1, 1, 1));
    std::vector<UtpMatrix> rotation(nblocks, UtpMatrix::zeros(1, 1, 1));
    std::vector<BlockVector> sub(nblocks, BlockVector::single(1, d + 1));
    std::vector<std::exception_ptr> errors(nblocks);

    // Blocks are independent sub-problems.
#pragma omp parallel for schedule(dynamic, 1) if (nblocks > 1 && n >= 32)
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(nblocks); ++bi) {
      const auto b = static_cast<std::size_t>(bi);
      const Slice s = current.block(b);
      const UtpMatrix tail = window(submatrix(lam, s, s), d, degree);
      if (s.size() == 1) {
        lam_hat[b] = tail;
        rotation[b] = UtpMatrix::identity(1, degree);
        continue;
      }
      try {
        EighOptions sub_options{options.block_tol, std::nullopt};
        if (d == 0) sub_options.initial_basis = options.initial_basis;
        Eigh1Result r = eigh1(tail, sub_options);
        lam_hat[b] = std::move(r.lam);
        rotation[b] = qlift(r.q, degree);
        sub[b] = r.blocks;
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    UtpMatrix hat = UtpMatrix::zeros(n, n, degree - d);
    UtpMatrix rot = UtpMatrix::zeros(n, n, degree);
    std::vector<std::size_t> next{0};
    for (std::size_t b = 0; b < nblocks; ++b) {
      const Slice s = current.block(b);
      hat = write_submatrix(hat, s.begin, s.begin, lam_hat[b]);
      rot = write_submatrix(rot, s.begin, s.begin, rotation[b]);
      for (std::size_t k = 1; k < sub[b].boundaries().size(); ++k) {
        next.push_back(s.begin + sub[b].boundaries()[k]);
      }
    }
    lam = d == 0 ? hat : concat(window(lam, 0, d), hat);
    q = mmul(q, rot);
    levels.emplace_back(std::move(next), d + 1);
  }
  return {std::move(lam), std::move(q), std::move(levels)};
}

UtpMatrix eigh_pullback(const UtpMatrix& a, const UtpMatrix& q, const UtpMatrix& lam,
                        const UtpMatrix& abar, const UtpMatrix& qbar, const UtpMatrix& lambar,
                        const EighPullbackOptions& options) {
  const std::size_t n = a.rows(), degree = a.degree();
  for (const UtpMatrix* p : {&a, &q, &lam, &abar, &qbar, &lambar}) {
    if (p->rows() != n || p->cols() != n || p->degree() != degree) {
      throw ShapeError("eigh_pullback: all operands must be N x N of equal degree");
    }
  }
  const VectorXd w = lam[0].diagonal();
  for (Index i = 1; i < w.size(); ++i) {
    if (std::abs(w(i) - w(i - 1)) < options.gap_tol) {
      throw ConsistencyError("eigh_pullback: eigenvalues " + std::to_string(i) + " and " +
                             std::to_string(i + 1) + " are repeated within tolerance");
    }
  }
  if (options.validate) {
    const UtpMatrix sim = mmul(mtranspose(q), mmul(a, q)) - lam;
    const UtpMatrix orth = mmul(mtranspose(q), q) - UtpMatrix::identity(n, degree);
    const double res = std::max(max_coeff_norm(sim), max_coeff_norm(orth));
    if (res > options.tolerance * std::max(1.0, inf_norm(a[0]))) {
      throw ConsistencyError("eigh_pullback: (A, Q, Lam) violate the defining equations (residual " +
                             std::to_string(res) + ")");
    }
  }

  // H_ij = 1 / ([lam_j] - [lam_i]) in Taylor arithmetic, zero on the diagonal.
  const std::vector<UtpScalar> eig = [&] {
    std::vector<UtpScalar> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(lam.entry(i, i));
    return e;
  }();
  std::vector<UtpScalar> h;
  h.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h.push_back(i == j ? UtpScalar::constant(0.0, degree) : 1.0 / (eig[j] - eig[i]));
  const UtpMatrix h_mat = UtpMatrix::from_entries(n, n, h);

  const UtpMatrix core =
      hadamard(SkeletalProjector::diagonal(n, n), lambar) + hadamard(h_mat, mmul(mtranspose(q), qbar));
  return abar + mmul(q, mmul(core, mtranspose(q)));
}

}  // namespace utpla
