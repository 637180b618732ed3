#include "utpla/utp_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "utpla/errors.hpp"
#include "utpla/kernels.hpp"

namespace utpla {
namespace {

std::string shape_str(const UtpMatrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " D=" +
         std::to_string(a.degree());
}

void require_same(const UtpMatrix& a, const UtpMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.degree() != b.degree()) {
    throw ShapeError(std::string(op) + ": operands " + shape_str(a) + " and " + shape_str(b));
  }
}

template <class F>
UtpMatrix map_coeffs(const UtpMatrix& a, F&& f) {
  std::vector<Eigen::MatrixXd> c;
  c.reserve(a.degree());
  for (const auto& m : a.coeffs()) c.push_back(f(m));
  return UtpMatrix(std::move(c));
}

}  // namespace

UtpMatrix::UtpMatrix(std::vector<Eigen::MatrixXd> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ShapeError("UtpMatrix: degree must be at least 1");
  const auto r = coeffs_.front().rows(), c = coeffs_.front().cols();
  for (const auto& m : coeffs_) {
    if (m.rows() != r || m.cols() != c) {
      throw ShapeError("UtpMatrix: coefficients must share one shape");
    }
    if (!m.allFinite()) throw DomainError("UtpMatrix: non-finite coefficient entry");
  }
}

UtpMatrix UtpMatrix::zeros(std::size_t rows, std::size_t cols, std::size_t degree) {
  return UtpMatrix(std::vector<Eigen::MatrixXd>(degree, Eigen::MatrixXd::Zero(rows, cols)));
}

UtpMatrix UtpMatrix::identity(std::size_t n, std::size_t degree) {
  return constant(Eigen::MatrixXd::Identity(n, n), degree);
}

UtpMatrix UtpMatrix::constant(const Eigen::MatrixXd& m, std::size_t degree) {
  std::vector<Eigen::MatrixXd> c(degree, Eigen::MatrixXd::Zero(m.rows(), m.cols()));
  if (!c.empty()) c[0] = m;
  return UtpMatrix(std::move(c));
}

UtpMatrix UtpMatrix::from_entries(std::size_t rows, std::size_t cols,
                                  const std::vector<UtpScalar>& entries) {
  if (entries.size() != rows * cols || entries.empty()) {
    throw ShapeError("from_entries: expected rows*cols entries");
  }
  const std::size_t degree = entries.front().degree();
  std::vector<Eigen::MatrixXd> c(degree, Eigen::MatrixXd(rows, cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const UtpScalar& e = entries[i * cols + j];
      if (e.degree() != degree) throw ShapeError("from_entries: degree mismatch");
      for (std::size_t d = 0; d < degree; ++d) c[d](i, j) = e[d];
    }
  return UtpMatrix(std::move(c));
}

UtpScalar UtpMatrix::entry(std::size_t i, std::size_t j) const {
  if (i >= rows() || j >= cols()) throw ShapeError("entry: index out of range");
  std::vector<double> c(degree());
  for (std::size_t d = 0; d < degree(); ++d) c[d] = coeffs_[d](i, j);
  return UtpScalar(std::move(c));
}

UtpMatrix madd(const UtpMatrix& a, const UtpMatrix& b) {
  require_same(a, b, "madd");
  std::vector<Eigen::MatrixXd> c(a.degree());
  for (std::size_t d = 0; d < a.degree(); ++d) c[d] = a[d] + b[d];
  return UtpMatrix(std::move(c));
}

UtpMatrix msub(const UtpMatrix& a, const UtpMatrix& b) {
  require_same(a, b, "msub");
  std::vector<Eigen::MatrixXd> c(a.degree());
  for (std::size_t d = 0; d < a.degree(); ++d) c[d] = a[d] - b[d];
  return UtpMatrix(std::move(c));
}

UtpMatrix scale(const UtpMatrix& a, double s) {
  return map_coeffs(a, [s](const Eigen::MatrixXd& m) -> Eigen::MatrixXd { return s * m; });
}

UtpMatrix mmul(const UtpMatrix& a, const UtpMatrix& b) {
  if (a.cols() != b.rows() || a.degree() != b.degree()) {
    throw ShapeError("mmul: operands " + shape_str(a) + " and " + shape_str(b));
  }
  std::vector<Eigen::MatrixXd> c(a.degree());
  kernels::convolve(a.coeffs(), b.coeffs(), c);
  return UtpMatrix(std::move(c));
}

UtpMatrix mtranspose(const UtpMatrix& a) {
  return map_coeffs(a, [](const Eigen::MatrixXd& m) -> Eigen::MatrixXd { return m.transpose(); });
}

UtpMatrix hadamard(const SkeletalProjector& p, const UtpMatrix& a) {
  if (p.rows() != a.rows() || p.cols() != a.cols()) {
    throw ShapeError("hadamard: projector shape does not match " + shape_str(a));
  }
  return map_coeffs(a, [&p](const Eigen::MatrixXd& m) { return p.apply(m); });
}

UtpMatrix hadamard(const UtpMatrix& a, const UtpMatrix& b) {
  require_same(a, b, "hadamard");
  std::vector<Eigen::MatrixXd> c(a.degree());
  for (std::size_t d = 0; d < a.degree(); ++d) {
    c[d] = a[0].cwiseProduct(b[d]);
    for (std::size_t k = 1; k <= d; ++k) c[d] += a[k].cwiseProduct(b[d - k]);
  }
  return UtpMatrix(std::move(c));
}

double inf_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double max_coeff_norm(const UtpMatrix& a) {
  double n = 0.0;
  for (const auto& m : a.coeffs()) n = std::max(n, inf_norm(m));
  return n;
}

namespace {

// Inverse of the top-left n x n upper-triangular block of every coefficient,
// lifted order by order.
std::vector<Eigen::MatrixXd> lifted_upper_inverse(const UtpMatrix& r, std::size_t n) {
  const auto ni = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd r0 = r[0].topLeftCorner(ni, ni);
  const double tol = 1e-12 * std::max(1.0, inf_norm(r0));
  for (Eigen::Index i = 0; i < ni; ++i) {
    if (std::abs(r0(i, i)) < tol) {
      throw SingularError("triangular inverse: |R_0(" + std::to_string(i) + "," +
                          std::to_string(i) + ")| below singularity tolerance");
    }
  }
  std::vector<Eigen::MatrixXd> b(r.degree());
  b[0] = r0.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(ni, ni));
  for (std::size_t d = 1; d < r.degree(); ++d) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(ni, ni);
    for (std::size_t k = 1; k <= d; ++k) acc.noalias() += r[k].topLeftCorner(ni, ni) * b[d - k];
    b[d] = -b[0] * acc;
  }
  return b;
}

void require_upper(const UtpMatrix& r, std::size_t n, const char* op) {
  const auto ni = static_cast<Eigen::Index>(n);
  const double tol = 1e-12 * std::max(1.0, inf_norm(r[0]));
  for (std::size_t d = 0; d < r.degree(); ++d) {
    const Eigen::MatrixXd& m = r[d];
    for (Eigen::Index j = 0; j < ni; ++j)
      for (Eigen::Index i = j + 1; i < m.rows(); ++i)
        if (std::abs(m(i, j)) > tol) {
          throw ShapeError(std::string(op) + ": coefficient " + std::to_string(d) +
                           " has nonzero entries below the diagonal");
        }
  }
}

}  // namespace

UtpMatrix tri_inverse(const UtpMatrix& r) {
  if (r.rows() != r.cols()) throw ShapeError("tri_inverse: matrix must be square");
  require_upper(r, r.cols(), "tri_inverse");
  return UtpMatrix(lifted_upper_inverse(r, r.cols()));
}

UtpMatrix pinv_tall(const UtpMatrix& r) {
  const std::size_t m = r.rows(), n = r.cols();
  if (m < n) throw ShapeError("pinv_tall: need rows >= cols");
  require_upper(r, n, "pinv_tall");
  auto top = lifted_upper_inverse(r, n);
  std::vector<Eigen::MatrixXd> c(r.degree(), Eigen::MatrixXd::Zero(n, m));
  for (std::size_t d = 0; d < r.degree(); ++d) {
    c[d].leftCols(static_cast<Eigen::Index>(n)) = top[d];
  }
  return UtpMatrix(std::move(c));
}

UtpMatrix window(const UtpMatrix& a, std::size_t lo, std::size_t hi) {
  if (lo >= hi || hi > a.degree()) {
    throw ShapeError("window: need 0 <= lo < hi <= D (lo=" + std::to_string(lo) +
                     ", hi=" + std::to_string(hi) + ", D=" + std::to_string(a.degree()) + ")");
  }
  return UtpMatrix({a.coeffs().begin() + static_cast<std::ptrdiff_t>(lo),
                    a.coeffs().begin() + static_cast<std::ptrdiff_t>(hi)});
}

UtpMatrix shift(const UtpMatrix& a, std::size_t k) {
  std::vector<Eigen::MatrixXd> c(k, Eigen::MatrixXd::Zero(a.rows(), a.cols()));
  c.insert(c.end(), a.coeffs().begin(), a.coeffs().end());
  return UtpMatrix(std::move(c));
}

UtpMatrix concat(const UtpMatrix& lo, const UtpMatrix& hi) {
  if (lo.rows() != hi.rows() || lo.cols() != hi.cols()) {
    throw ShapeError("concat: shape mismatch");
  }
  std::vector<Eigen::MatrixXd> c(lo.coeffs().begin(), lo.coeffs().end());
  c.insert(c.end(), hi.coeffs().begin(), hi.coeffs().end());
  return UtpMatrix(std::move(c));
}

UtpMatrix submatrix(const UtpMatrix& a, Slice rows, Slice cols) {
  if (rows.begin >= rows.end || cols.begin >= cols.end || rows.end > a.rows() ||
      cols.end > a.cols()) {
    throw ShapeError("submatrix: slice out of bounds for " + shape_str(a));
  }
  return map_coeffs(a, [&](const Eigen::MatrixXd& m) -> Eigen::MatrixXd {
    return m.block(static_cast<Eigen::Index>(rows.begin), static_cast<Eigen::Index>(cols.begin),
                   static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  });
}

UtpMatrix write_submatrix(const UtpMatrix& a, std::size_t row0, std::size_t col0,
                          const UtpMatrix& block) {
  if (block.degree() != a.degree() || row0 + block.rows() > a.rows() ||
      col0 + block.cols() > a.cols()) {
    throw ShapeError("write_submatrix: block " + shape_str(block) + " does not fit in " +
                     shape_str(a));
  }
  std::vector<Eigen::MatrixXd> c(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t d = 0; d < a.degree(); ++d) {
    c[d].block(static_cast<Eigen::Index>(row0), static_cast<Eigen::Index>(col0),
               static_cast<Eigen::Index>(block.rows()), static_cast<Eigen::Index>(block.cols())) =
        block[d];
  }
  return UtpMatrix(std::move(c));
}

UtpScalar trace_pair(const UtpMatrix& x, const UtpMatrix& y) {
  require_same(x, y, "trace_pair");
  std::vector<double> c(x.degree(), 0.0);
  for (std::size_t d = 0; d < x.degree(); ++d)
    for (std::size_t k = 0; k <= d; ++k) c[d] += x[k].cwiseProduct(y[d - k]).sum();
  return UtpScalar(std::move(c));
}

}  // namespace utpla
