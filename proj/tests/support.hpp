#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "utpla/utp_matrix.hpp"
#include "utpla/utp_scalar.hpp"

// Seeded generators and comparison helpers shared by the test binaries.
namespace utpla::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double normal() { return normal_(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  Eigen::MatrixXd matrix(std::size_t r, std::size_t c) {
    return Eigen::MatrixXd::NullaryExpr(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c),
                                        [&] { return normal(); });
  }
  Eigen::MatrixXd symmetric(std::size_t n) {
    const Eigen::MatrixXd m = matrix(n, n);
    return 0.5 * (m + m.transpose());
  }
  Eigen::MatrixXd antisymmetric(std::size_t n) {
    const Eigen::MatrixXd m = matrix(n, n);
    return 0.5 * (m - m.transpose());
  }
  Eigen::MatrixXd orthogonal(std::size_t n) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(matrix(n, n));
    return qr.householderQ();
  }
  // Lower triangular with diagonal bounded away from zero.
  Eigen::MatrixXd lower(std::size_t n) {
    Eigen::MatrixXd m = matrix(n, n).triangularView<Eigen::Lower>();
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, i) = (normal() < 0 ? -1.0 : 1.0) * uniform(0.5, 2.0);
    return m;
  }
  Eigen::VectorXd spread_spectrum(std::size_t n, double min_gap) {
    Eigen::VectorXd lam(static_cast<Eigen::Index>(n));
    double v = uniform(-2.0, 0.0);
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      lam(i) = v;
      v += min_gap + uniform(0.0, 1.0);
    }
    return lam;
  }

  UtpScalar scalar(std::size_t degree) {
    std::vector<double> c(degree);
    for (auto& x : c) x = normal();
    return UtpScalar(c);
  }
  UtpMatrix poly(std::size_t r, std::size_t c, std::size_t degree) {
    std::vector<Eigen::MatrixXd> cs;
    for (std::size_t d = 0; d < degree; ++d) cs.push_back(matrix(r, c));
    return UtpMatrix(cs);
  }
  UtpMatrix symmetric_poly(std::size_t n, std::size_t degree) {
    std::vector<Eigen::MatrixXd> cs;
    for (std::size_t d = 0; d < degree; ++d) cs.push_back(symmetric(n));
    return UtpMatrix(cs);
  }
  // Symmetric polynomial whose zeroth coefficient has eigenvalue gaps >= min_gap.
  UtpMatrix distinct_symmetric_poly(std::size_t n, std::size_t degree, double min_gap) {
    const Eigen::MatrixXd q = orthogonal(n);
    std::vector<Eigen::MatrixXd> cs{q * spread_spectrum(n, min_gap).asDiagonal() * q.transpose()};
    for (std::size_t d = 1; d < degree; ++d) cs.push_back(symmetric(n));
    return UtpMatrix(cs);
  }
  // M x N polynomial with well conditioned zeroth coefficient.
  UtpMatrix full_rank_poly(std::size_t m, std::size_t n, std::size_t degree) {
    std::vector<Eigen::MatrixXd> cs;
    const Eigen::MatrixXd u = orthogonal(m).leftCols(static_cast<Eigen::Index>(n));
    const Eigen::MatrixXd v = orthogonal(n);
    Eigen::VectorXd s(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = uniform(0.5, 3.0);
    cs.push_back(u * s.asDiagonal() * v.transpose());
    for (std::size_t d = 1; d < degree; ++d) cs.push_back(matrix(m, n));
    return UtpMatrix(cs);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const UtpMatrix& a, const UtpMatrix& b) {
  double m = 0.0;
  for (std::size_t d = 0; d < a.degree(); ++d) m = std::max(m, max_abs(a[d] - b[d]));
  return m;
}

inline double max_abs(const UtpMatrix& a) {
  double m = 0.0;
  for (const auto& c : a.coeffs()) m = std::max(m, max_abs(c));
  return m;
}

inline double max_abs_diff(const UtpScalar& a, const UtpScalar& b) {
  double m = 0.0;
  for (std::size_t d = 0; d < a.degree(); ++d) m = std::max(m, std::abs(a[d] - b[d]));
  return m;
}

inline double max_abs(const UtpScalar& a) {
  double m = 0.0;
  for (double v : a.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

// Thin QR by modified Gram-Schmidt with positive diagonal, kept apart from the
// library's Householder path.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> mgs(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.cols();
  Eigen::MatrixXd q = a, r = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      r(i, j) = q.col(i).dot(q.col(j));
      q.col(j) -= r(i, j) * q.col(i);
    }
    r(j, j) = q.col(j).norm();
    q.col(j) /= r(j, j);
  }
  return {q, r};
}

// sum_d A_d t^d
inline Eigen::MatrixXd eval_curve(const UtpMatrix& a, double t) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  double p = 1.0;
  for (const auto& c : a.coeffs()) {
    out += p * c;
    p *= t;
  }
  return out;
}

}  // namespace utpla::testing
