#include "utpla/covariance.hpp"

#include <span>
#include <string>

#include "utpla/errors.hpp"
#include "utpla/qr.hpp"

namespace utpla::covariance {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;

template <class T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
MatrixX<T> to_matrix(Index rows, Index cols, std::span<const T> e) {
  MatrixX<T> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = e[static_cast<std::size_t>(i * cols + j)];
  return m;
}

template <class T>
MatrixX<T> kkt_covariance(const MatrixX<T>& j1, const MatrixX<T>& j2) {
  const Index np = j1.cols(), nr = j2.rows();
  MatrixX<T> kkt = MatrixX<T>::Zero(np + nr, np + nr);
  kkt.topLeftCorner(np, np) = j1.transpose() * j1;
  kkt.topRightCorner(np, nr) = j2.transpose();
  kkt.bottomLeftCorner(nr, np) = j2;
  Eigen::PartialPivLU<MatrixX<T>> lu(kkt);
  if (!(lu.rcond() > 1e-14)) throw SingularError("covariance: KKT matrix is singular");
  return lu.inverse().topLeftCorner(np, np);
}

UtpMatrix utp_from(const std::array<UtpScalar, 8>& e) {
  return UtpMatrix::from_entries(4, 2, {e.begin(), e.end()});
}

void require_shapes(const UtpMatrix& j1, const UtpMatrix& j2, const char* op) {
  if (j1.cols() != j2.cols() || j1.degree() != j2.degree() || j2.rows() >= j2.cols()) {
    throw ShapeError(std::string(op) + ": need J1 Nm x Np, J2 Nr x Np with Nr < Np, equal degree");
  }
}

}  // namespace

UtpMatrix j1_utp(const CovarianceInstance& inst, std::size_t degree) {
  const UtpScalar x1 = UtpScalar::variable(inst.x(0), inst.xdot(0), degree);
  const UtpScalar x2 = UtpScalar::variable(inst.x(1), inst.xdot(1), degree);
  return utp_from(j1_entries(x1, x2));
}

UtpMatrix j2_utp(const CovarianceInstance& inst, std::size_t degree) {
  const UtpScalar x1 = UtpScalar::variable(inst.x(0), inst.xdot(0), degree);
  const UtpScalar x2 = UtpScalar::variable(inst.x(1), inst.xdot(1), degree);
  const auto e = j2_entries(x1, x2);
  return UtpMatrix::from_entries(1, 2, {e.begin(), e.end()});
}

Eigen::MatrixXcd j1_complex(const Eigen::Vector2cd& x) {
  return to_matrix<std::complex<double>>(4, 2, j1_entries(x(0), x(1)));
}

Eigen::MatrixXcd j2_complex(const Eigen::Vector2cd& x) {
  return to_matrix<std::complex<double>>(1, 2, j2_entries(x(0), x(1)));
}

UtpMatrix lifted_inverse(const UtpMatrix& k) {
  if (k.rows() != k.cols()) throw ShapeError("lifted_inverse: matrix must be square");
  Eigen::PartialPivLU<MatrixXd> lu(k[0]);
  if (!(lu.rcond() > 1e-14)) throw SingularError("lifted_inverse: leading coefficient is singular");
  std::vector<MatrixXd> b(k.degree());
  b[0] = lu.inverse();
  for (std::size_t d = 1; d < k.degree(); ++d) {
    MatrixXd acc = MatrixXd::Zero(k.rows(), k.cols());
    for (std::size_t j = 1; j <= d; ++j) acc.noalias() += k[j] * b[d - j];
    b[d] = -lu.solve(acc);
  }
  return UtpMatrix(std::move(b));
}

UtpMatrix cov_direct(const UtpMatrix& j1, const UtpMatrix& j2) {
  require_shapes(j1, j2, "cov_direct");
  const std::size_t np = j1.cols(), nr = j2.rows(), degree = j1.degree();
  UtpMatrix kkt = UtpMatrix::zeros(np + nr, np + nr, degree);
  kkt = write_submatrix(kkt, 0, 0, mmul(mtranspose(j1), j1));
  kkt = write_submatrix(kkt, 0, np, mtranspose(j2));
  kkt = write_submatrix(kkt, np, 0, j2);
  return submatrix(lifted_inverse(kkt), {0, np}, {0, np});
}

UtpMatrix cov_nullspace(const UtpMatrix& j1, const UtpMatrix& j2) {
  require_shapes(j1, j2, "cov_nullspace");
  const std::size_t np = j1.cols(), nr = j2.rows();
  const QrFactors f = qr_pushforward(mtranspose(j2));
  const UtpMatrix z = submatrix(f.q, {0, np}, {nr, np});
  const UtpMatrix zt = mtranspose(z);
  const UtpMatrix j1z = mmul(j1, z);
  const UtpMatrix reduced = mmul(mtranspose(j1z), j1z);
  return mmul(z, mmul(lifted_inverse(reduced), zt));
}

Eigen::MatrixXcd cov_direct_complex(const Eigen::MatrixXcd& j1, const Eigen::MatrixXcd& j2) {
  return kkt_covariance<std::complex<double>>(j1, j2);
}

Eigen::VectorXd covariance_at(const Eigen::VectorXd& x) {
  const MatrixXd j1 = to_matrix<double>(4, 2, j1_entries(x(0), x(1)));
  const MatrixXd j2 = to_matrix<double>(1, 2, j2_entries(x(0), x(1)));
  const MatrixXd c = kkt_covariance<double>(j1, j2);
  return c.reshaped();
}

Eigen::VectorXcd covariance_at_complex(const Eigen::VectorXcd& x) {
  const Eigen::Vector2cd xv(x(0), x(1));
  const Eigen::MatrixXcd c = cov_direct_complex(j1_complex(xv), j2_complex(xv));
  return c.reshaped();
}

}  // namespace utpla::covariance
