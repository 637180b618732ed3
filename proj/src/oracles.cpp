#include "utpla/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "utpla/errors.hpp"
#include "utpla/structure.hpp"
#include "utpla/utp_scalar.hpp"

namespace utpla::oracles {

Eigen::VectorXd csda_derivative(const ComplexMap& f, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& xdot, double eps) {
  if (!(eps > 0.0)) throw DomainError("csda_derivative: eps must be positive");
  if (x.size() != xdot.size()) throw ShapeError("csda_derivative: x and xdot differ in size");
  const Eigen::VectorXcd z =
      x.cast<std::complex<double>>() + std::complex<double>(0.0, eps) * xdot.cast<std::complex<double>>();
  const Eigen::VectorXcd y = f(z);
  Eigen::VectorXd out = y.imag() / eps;
  if (!out.allFinite()) throw DomainError("csda_derivative: non-finite result");
  return out;
}

Eigen::VectorXd fd_directional(const RealMap& f, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& xdot, double h) {
  if (!(h > 0.0)) throw DomainError("fd_directional: h must be positive");
  if (x.size() != xdot.size()) throw ShapeError("fd_directional: x and xdot differ in size");
  return (f(x + h * xdot) - f(x - h * xdot)) / (2.0 * h);
}

Eigen::VectorXd fd_second_directional(const RealMap& f, const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& xdot, double h) {
  if (!(h > 0.0)) throw DomainError("fd_second_directional: h must be positive");
  if (x.size() != xdot.size()) throw ShapeError("fd_second_directional: size mismatch");
  return (f(x + h * xdot) - 2.0 * f(x) + f(x - h * xdot)) / (h * h);
}

AndrewSystem andrew_system(double delta, std::size_t degree) {
  const UtpScalar x = UtpScalar::variable(1.0, 1.0, degree);
  const UtpScalar one = UtpScalar::constant(1.0, degree);
  const auto [s, c] = sincos(x);
  const double k = 1.0 / std::sqrt(3.0);

  // clang-format off
  const std::vector<UtpScalar> q_entries = {
       c * k,    one * k,  s * k,   -one * k,
      -s * k,   -one * k,  c * k,   -one * k,
       one * k, -s * k,    one * k,  c * k,
      -one * k,  c * k,    one * k,  s * k,
  };
  // clang-format on
  const UtpMatrix q = UtpMatrix::from_entries(4, 4, q_entries);

  const UtpScalar x2 = x * x;
  const UtpScalar x3 = x2 * x;
  const UtpScalar zero = UtpScalar::constant(0.0, degree);
  const std::vector<UtpScalar> eig = {
      x2 - x + 0.5,
      4.0 * x2 - 3.0 * x,
      delta * (-0.5 * x3 + 2.0 * x2 - 1.5 * x + 1.0) + (x3 + x2 - 1.0),
      3.0 * x - 1.0,
  };
  std::vector<UtpScalar> lam_entries(16, zero);
  for (std::size_t i = 0; i < 4; ++i) lam_entries[i * 4 + i] = eig[i];
  const UtpMatrix lam = UtpMatrix::from_entries(4, 4, lam_entries);

  const UtpMatrix a = mmul(q, mmul(lam, mtranspose(q)));
  return {a, lam, q};
}

Eigen::MatrixXd andrew_eigenvalue_derivatives(double delta) {
  Eigen::MatrixXd m(4, 5);
  // clang-format off
  m << 0.5,         1.0,         2.0,         0.0,               0.0,
       1.0,         5.0,         8.0,         0.0,               0.0,
       1.0 + delta, 5.0 + delta, 8.0 + delta, 6.0 - 3.0 * delta, 0.0,
       2.0,         3.0,         0.0,         0.0,               0.0;
  // clang-format on
  return m;
}

namespace {

std::vector<double> coeff_norms(const UtpMatrix& m) {
  std::vector<double> out;
  out.reserve(m.degree());
  for (const auto& c : m.coeffs()) out.push_back(inf_norm(c));
  return out;
}

double max_of(std::initializer_list<const std::vector<double>*> lists) {
  double m = 0.0;
  for (const auto* l : lists)
    for (double v : *l) m = std::max(m, v);
  return m;
}

}  // namespace

double QrResidual::max() const {
  return max_of({&reconstruction, &orthogonality, &triangularity});
}

QrResidual residual_qr(const UtpMatrix& a, const UtpMatrix& q, const UtpMatrix& r) {
  return {
      coeff_norms(mmul(q, r) - a),
      coeff_norms(mmul(mtranspose(q), q) - UtpMatrix::identity(q.cols(), q.degree())),
      coeff_norms(hadamard(SkeletalProjector::lower_strict(r.rows(), r.cols()), r)),
  };
}

double EighResidual::max() const {
  return max_of({&similarity, &orthogonality, &off_diagonal});
}

EighResidual residual_eigh(const UtpMatrix& a, const UtpMatrix& q, const UtpMatrix& lam) {
  const std::size_t n = lam.rows();
  return {
      coeff_norms(mmul(mtranspose(q), mmul(a, q)) - lam),
      coeff_norms(mmul(mtranspose(q), q) - UtpMatrix::identity(q.cols(), q.degree())),
      coeff_norms(hadamard(SkeletalProjector::lower_strict(n, n), lam) +
                  hadamard(SkeletalProjector::upper_strict(n, n), lam)),
  };
}

}  // namespace utpla::oracles
