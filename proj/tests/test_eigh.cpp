#include <doctest.h>

#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "duality.hpp"
#include "support.hpp"
#include "utpla/eigh.hpp"
#include "utpla/errors.hpp"
#include "utpla/oracles.hpp"
#include "utpla/structure.hpp"

using namespace utpla;
using utpla::testing::Gen;
using utpla::testing::max_abs;
using utpla::testing::max_abs_diff;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

double factorial(std::size_t k) { return k == 0 ? 1.0 : static_cast<double>(k) * factorial(k - 1); }

// Reconstructed eigenvalue Taylor coefficients against the hand-derived
// derivatives, allowing any assignment within the computed order.
double andrew_error(const EighFactors& f, double delta) {
  const MatrixXd deriv = oracles::andrew_eigenvalue_derivatives(delta);
  std::vector<int> perm{0, 1, 2, 3};
  double best = INFINITY;
  do {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      for (std::size_t d = 0; d < f.lam.degree(); ++d) {
        const double ref = d < 5 ? deriv(i, static_cast<Eigen::Index>(d)) / factorial(d) : 0.0;
        worst = std::max(worst, std::abs(f.lam[d](perm[i], perm[i]) - ref));
      }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("detect_blocks") {
  CHECK(detect_blocks(vec({1.0, 1.0 + 1e-9, 2.0}), 1e-7).one_based() ==
        std::vector<std::size_t>{1, 3, 4});
  CHECK(detect_blocks(vec({-1.0, 0.0, 1.0, 2.5}), 1e-7).all_singletons());
  CHECK(detect_blocks(vec({0.5, 1.0, 1.0, 2.0}), 1e-7).one_based() ==
        std::vector<std::size_t>{1, 2, 4, 5});
  CHECK(detect_blocks(vec({3.0}), 1e-7).block_count() == 1);
  CHECK(detect_blocks(vec({1.0, 2.0}), 1e-7, 3).level() == 3);
  CHECK_THROWS_AS(detect_blocks(vec({2.0, 1.0}), 1e-7), ConsistencyError);
}

TEST_CASE("classical_eigh canonical form") {
  Gen g(71);
  const MatrixXd a = g.symmetric(5);
  const auto [w, q] = classical_eigh(a);
  for (Eigen::Index i = 1; i < w.size(); ++i) CHECK(w(i) >= w(i - 1));
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    Eigen::Index imax = 0;
    q.col(j).cwiseAbs().maxCoeff(&imax);
    CHECK(q(imax, j) > 0.0);
  }
  CHECK(max_abs(q * w.asDiagonal() * q.transpose() - a) <= 1e-13);
}

TEST_CASE("eigh1 on a diagonal input") {
  const UtpMatrix a = UtpMatrix::constant(vec({3.0, 1.0, 2.0}).asDiagonal(), 1);
  const Eigh1Result r = eigh1(a);
  CHECK(r.lam[0].diagonal() == vec({1.0, 2.0, 3.0}));
  CHECK((r.q[0].cwiseAbs().array() == 1.0).count() == 3);
  CHECK(max_abs(r.q[0].transpose() * r.q[0] - MatrixXd::Identity(3, 3)) == 0.0);
  CHECK(r.blocks.all_singletons());
}

TEST_CASE("eigh1 first order matches perturbation theory") {
  Gen g(72);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXd lam0 = g.spread_spectrum(3, 0.2);
    const MatrixXd a1 = g.symmetric(3);
    const Eigh1Result r = eigh1(UtpMatrix({MatrixXd(lam0.asDiagonal()), a1}));
    const MatrixXd q0 = r.q[0];
    CHECK(max_abs(q0 - MatrixXd::Identity(3, 3)) == 0.0);
    // lam_i' = a1_ii, q' = Q0 (h o (Q0^T A1 Q0)), h_ij = 1/(lam_j - lam_i)
    CHECK(max_abs(r.lam[1] - MatrixXd(a1.diagonal().asDiagonal())) <= 1e-12);
    MatrixXd expect = MatrixXd::Zero(3, 3);
    const MatrixXd k = q0.transpose() * a1 * q0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) expect(i, j) = k(i, j) / (lam0(j) - lam0(i));
    CHECK(max_abs(r.q[1] - q0 * expect) <= 1e-12);
  }
}

TEST_CASE("eigh1 residuals and block structure") {
  Gen g(73);
  for (int trial = 0; trial < 30; ++trial) {
    const UtpMatrix a = g.distinct_symmetric_poly(g.index(1, 6), 3, 0.2);
    const Eigh1Result r = eigh1(a);
    CHECK(oracles::residual_eigh(a, r.q, r.lam).max() <= 1e-11 * std::max(1.0, inf_norm(a[0])));
  }

  // With a repeated eigenvalue the higher coefficients are only block diagonal.
  const MatrixXd q = g.orthogonal(4);
  const UtpMatrix a({q * vec({1.0, 1.0, 2.0, 3.0}).asDiagonal() * q.transpose(), g.symmetric(4),
                     g.symmetric(4)});
  const Eigh1Result r = eigh1(a);
  CHECK(r.blocks.one_based() == std::vector<std::size_t>{1, 3, 4, 5});
  const auto off = SkeletalProjector::block_complement(r.blocks);
  for (std::size_t d = 0; d < 3; ++d) CHECK(max_abs(off.apply(r.lam[d])) == 0.0);
  CHECK(max_abs(r.lam[1].block(0, 0, 2, 2) - r.lam[1].block(0, 0, 2, 2).transpose()) <= 1e-14);
  const auto res = oracles::residual_eigh(a, r.q, r.lam);
  for (double v : res.similarity) CHECK(v <= 1e-11 * std::max(1.0, inf_norm(a[0])));
  for (double v : res.orthogonality) CHECK(v <= 1e-11);
}

TEST_CASE("eigh1 input checks") {
  Gen g(74);
  CHECK_THROWS_AS(eigh1(g.poly(3, 3, 2)), ConsistencyError);
  CHECK_THROWS_AS(eigh1(g.poly(3, 2, 2)), ShapeError);
  EighOptions opts;
  opts.initial_basis = g.orthogonal(3);
  CHECK_THROWS_AS(eigh1(g.distinct_symmetric_poly(3, 2, 0.5), opts), ConsistencyError);
  opts.initial_basis = MatrixXd::Identity(3, 3) * 2.0;
  CHECK_THROWS_AS(eigh1(UtpMatrix::identity(3, 2), opts), ConsistencyError);
}

TEST_CASE("qlift") {
  Gen g(75);
  const MatrixXd q0 = g.orthogonal(4);
  const UtpMatrix l1 = qlift(UtpMatrix::constant(q0, 1), 2);
  CHECK(l1.degree() == 2);
  CHECK(max_abs(l1[1]) == 0.0);
  const UtpMatrix li = qlift(UtpMatrix::identity(3, 1), 5);
  for (std::size_t d = 1; d < 5; ++d) CHECK(max_abs(li[d]) == 0.0);

  const UtpMatrix seed({q0, q0 * g.antisymmetric(4)});
  const UtpMatrix lifted = qlift(seed, 4);
  const UtpMatrix gram = mtranspose(lifted) * lifted - UtpMatrix::identity(4, 4);
  for (const auto& c : gram.coeffs()) CHECK(inf_norm(c) <= 1e-12 * std::max(1.0, max_coeff_norm(lifted)));
  CHECK(max_abs_diff(qlift(lifted, 4), lifted) == 0.0);
  CHECK(max_abs_diff(qlift(qlift(seed, 4), 4), qlift(seed, 4)) == 0.0);
  CHECK(max_abs_diff(window(lifted, 0, 2), seed) == 0.0);

  CHECK_THROWS_AS(qlift(UtpMatrix::constant(2.0 * q0, 1), 3), ConsistencyError);
  CHECK_THROWS_AS(qlift(seed, 1), ShapeError);
}

TEST_CASE("pushforward on the splitting system without splitting parameter") {
  const auto sys = oracles::andrew_system(0.0, 5);
  const EighFactors f = eigh_pushforward(sys.a);
  CHECK(andrew_error(f, 0.0) <= 1e-10);

  // d! times the Taylor coefficients gives the listed derivative values.
  const std::vector<std::vector<double>> listed{
      {0.5, 1, 1, 2}, {1, 5, 5, 3}, {2, 8, 8, 0}, {0, 0, 6, 0}, {0, 0, 0, 0}};
  for (std::size_t d = 0; d < 5; ++d) {
    std::vector<double> got;
    for (int i = 0; i < 4; ++i) got.push_back(factorial(d) * f.lam[d](i, i));
    std::vector<double> want = listed[d];
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10).scale(1));
  }

  REQUIRE(f.blocks.size() == 5);
  const std::vector<std::size_t> fused{1, 2, 4, 5};
  CHECK(f.blocks[1].one_based() == fused);
  CHECK(f.blocks[2].one_based() == fused);
  CHECK(f.blocks[3].one_based() == fused);
  CHECK(f.final_blocks().all_singletons());
  CHECK(oracles::residual_eigh(sys.a, f.q, f.lam).max() <= 1e-10 * std::max(1.0, inf_norm(sys.a[0])));
  for (const auto& c : f.lam.coeffs()) CHECK(max_abs(MatrixXd(c) - MatrixXd(c.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("pushforward on the splitting system with delta = 1") {
  const auto sys = oracles::andrew_system(1.0, 5);
  const EighFactors f = eigh_pushforward(sys.a);
  CHECK(andrew_error(f, 1.0) <= 1e-10);
  // lambda_3 and lambda_4 both start at 2 and separate at first order.
  REQUIRE(f.blocks.size() == 3);
  CHECK(f.blocks[1].one_based() == std::vector<std::size_t>{1, 2, 3, 5});
  CHECK(f.blocks[2].all_singletons());
}

TEST_CASE("pushforward at degree 1 is the classical decomposition") {
  Gen g(76);
  const MatrixXd q0 = g.orthogonal(3);
  const EighFactors f =
      eigh_pushforward(UtpMatrix::constant(q0 * vec({1.0, 2.0, 3.0}).asDiagonal() * q0.transpose(), 1));
  CHECK(max_abs(f.lam[0] - MatrixXd(vec({1.0, 2.0, 3.0}).asDiagonal())) <= 1e-14);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(std::abs(f.q[0].col(j).dot(q0.col(j))) - 1.0) <= 1e-14);
}

TEST_CASE("pushforward residuals on random distinct spectra") {
  Gen g(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = g.index(1, 6), D = g.index(1, 5);
    const UtpMatrix a = g.distinct_symmetric_poly(n, D, 0.1);
    const EighFactors f = eigh_pushforward(a);
    CHECK(oracles::residual_eigh(a, f.q, f.lam).max() <= 1e-10 * std::max(1.0, inf_norm(a[0])));
    for (double v : oracles::residual_eigh(a, f.q, f.lam).off_diagonal) CHECK(v == 0.0);
    for (Eigen::Index i = 1; i < f.lam[0].rows(); ++i) CHECK(f.lam[0](i, i) >= f.lam[0](i - 1, i - 1));
  }
}

TEST_CASE("pushforward with repeated eigenvalues of known split pattern") {
  Gen g(78);
  // A(t) = Q(t) diag(1 + t, 1 + 2t, 3, 3 + t^2) Q(t)^T with Q(t) = Q0 exp(t W).
  const MatrixXd q0 = g.orthogonal(4);
  const MatrixXd w = g.antisymmetric(4);
  const std::size_t D = 4;
  std::vector<MatrixXd> qc{q0};
  for (std::size_t d = 1; d < D; ++d) qc.push_back(qc.back() * w / static_cast<double>(d));
  const UtpMatrix q(qc);
  const UtpMatrix lam({MatrixXd(vec({1, 1, 3, 3}).asDiagonal()), MatrixXd(vec({1, 2, 0, 0}).asDiagonal()),
                       MatrixXd(vec({0, 0, 0, 1}).asDiagonal()), MatrixXd::Zero(4, 4)});
  const UtpMatrix a = q * lam * mtranspose(q);
  const EighFactors f = eigh_pushforward(a);
  CHECK(f.blocks[1].one_based() == std::vector<std::size_t>{1, 3, 5});
  CHECK(f.blocks[2].one_based() == std::vector<std::size_t>{1, 2, 3, 5});
  CHECK(f.blocks[3].all_singletons());
  CHECK(oracles::residual_eigh(a, f.q, f.lam).max() <= 1e-10 * std::max(1.0, inf_norm(a[0])));
  const std::vector<double> expect[] = {{1, 1, 3, 3}, {1, 2, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}};
  for (std::size_t d = 0; d < D; ++d)
    for (int i = 0; i < 4; ++i) CHECK(std::abs(f.lam[d](i, i) - expect[d][static_cast<std::size_t>(i)]) <= 1e-10);
}

TEST_CASE("eigenvalue coefficients do not depend on the basis of a degenerate eigenspace") {
  const auto sys = oracles::andrew_system(0.0, 5);
  const EighFactors base = eigh_pushforward(sys.a);
  Gen g(79);
  for (int trial = 0; trial < 5; ++trial) {
    const double th = g.uniform(0.0, 6.28);
    MatrixXd b = MatrixXd::Identity(4, 4);
    b(1, 1) = std::cos(th);
    b(1, 2) = -std::sin(th);
    b(2, 1) = std::sin(th);
    b(2, 2) = std::cos(th);
    EighOptions opts;
    opts.initial_basis = MatrixXd(base.q[0] * b);
    const EighFactors f = eigh_pushforward(sys.a, opts);
    CHECK(max_abs_diff(f.lam, base.lam) <= 1e-10);
  }
}

TEST_CASE("pushforward input checks") {
  Gen g(80);
  CHECK_THROWS_AS(eigh_pushforward(g.poly(3, 3, 2)), ConsistencyError);
  CHECK_THROWS_AS(eigh_pushforward(g.poly(2, 3, 2)), ShapeError);
}

TEST_CASE("pullback simple cases") {
  const UtpMatrix a = UtpMatrix::constant(vec({1.0, 2.0, 4.0}).asDiagonal(), 2);
  const UtpMatrix id = UtpMatrix::identity(3, 2), z = UtpMatrix::zeros(3, 3, 2);
  CHECK(max_abs_diff(eigh_pullback(a, id, a, z, z, id), id) == 0.0);
  Gen g(81);
  const UtpMatrix abar = g.poly(3, 3, 2);
  CHECK(max_abs_diff(eigh_pullback(a, id, a, abar, z, z), abar) == 0.0);
}

TEST_CASE("pullback is dual to pushforward per coefficient") {
  Gen g(82);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = g.index(1, 6), D = g.index(1, 5);
    const UtpMatrix a = g.distinct_symmetric_poly(n, D, 0.2);
    const auto r = testing::eigh_duality(a, g.symmetric_poly(n, D), g.poly(n, n, D), g.poly(n, n, D));
    CHECK(r.relative() <= 1e-9);
  }
}

TEST_CASE("pullback refuses repeated eigenvalues and inconsistent factors") {
  const UtpMatrix a = UtpMatrix::constant(vec({1.0, 1.0, 2.0}).asDiagonal(), 2);
  const UtpMatrix id = UtpMatrix::identity(3, 2), z = UtpMatrix::zeros(3, 3, 2);
  CHECK_THROWS_AS(eigh_pullback(a, id, a, z, z, id), ConsistencyError);
  const UtpMatrix b = UtpMatrix::constant(vec({1.0, 2.0, 3.0}).asDiagonal(), 2);
  CHECK_THROWS_AS(eigh_pullback(b, id, a + a, z, z, id), ConsistencyError);
  CHECK_THROWS_AS(eigh_pullback(b, id, b, z, z, UtpMatrix::identity(3, 1)), ShapeError);
}

TEST_CASE("block sub-problems give the same result on any thread count") {
  Gen g(83);
  const std::size_t n = 40;
  Eigen::VectorXd lam0(n);
  for (std::size_t i = 0; i < n; ++i) lam0(static_cast<Eigen::Index>(i)) = static_cast<double>(i / 4);
  const MatrixXd q = g.orthogonal(n);
  const UtpMatrix a({q * lam0.asDiagonal() * q.transpose(), g.symmetric(n), g.symmetric(n)});
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  const EighFactors serial = eigh_pushforward(a);
#ifdef _OPENMP
  omp_set_num_threads(4);
#endif
  const EighFactors parallel = eigh_pushforward(a);
#ifdef _OPENMP
  omp_set_num_threads(saved);
#endif
  CHECK(serial.blocks[1].block_count() == 10);
  CHECK(max_abs_diff(serial.lam, parallel.lam) == 0.0);
  CHECK(max_abs_diff(serial.q, parallel.q) == 0.0);
  CHECK(oracles::residual_eigh(a, parallel.q, parallel.lam).max() <= 1e-10 * std::max(1.0, inf_norm(a[0])));
}
