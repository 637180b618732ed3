#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"
#include "utpla/structure.hpp"
#include "utpla/utp_matrix.hpp"

// Structural matrix identities used throughout the lifting derivations, each
// as a randomized trial returning a relative residual. Everything is checked
// in truncated polynomial arithmetic, which specializes to plain matrices at
// degree 1.
namespace utpla::testing {

struct LemmaTrial {
  std::string name;
  std::function<double(Gen&)> run;
};

inline double relative(const UtpMatrix& lhs, const UtpMatrix& rhs) {
  return max_abs_diff(lhs, rhs) / std::max({1.0, max_abs(lhs), max_abs(rhs)});
}

inline UtpMatrix lower_poly(Gen& g, std::size_t n, std::size_t degree) {
  std::vector<Eigen::MatrixXd> cs{g.lower(n)};
  for (std::size_t d = 1; d < degree; ++d) cs.push_back(g.matrix(n, n).triangularView<Eigen::Lower>());
  return UtpMatrix(cs);
}

inline std::vector<LemmaTrial> lemma_trials() {
  auto dims = [](Gen& g) { return std::pair{g.index(1, 6), g.index(1, 4)}; };
  std::vector<LemmaTrial> out;

  out.push_back({"antisymmetric split via P_L", [=](Gen& g) {
    const auto [n, D] = dims(g);
    const UtpMatrix a = g.poly(n, n, D);
    const UtpMatrix x = scale(a - mtranspose(a), 0.5);
    const UtpMatrix lx = hadamard(SkeletalProjector::lower_strict(n, n), x);
    return relative(x, lx - mtranspose(lx));
  }});

  out.push_back({"transpose of P_L mask", [=](Gen& g) {
    const auto [n, D] = dims(g);
    const UtpMatrix a = g.poly(n, n, D);
    return relative(mtranspose(hadamard(SkeletalProjector::lower_strict(n, n), a)),
                    hadamard(SkeletalProjector::upper_strict(n, n), mtranspose(a)));
  }});

  out.push_back({"trace of Hadamard product", [=](Gen& g) {
    const std::size_t m = g.index(1, 6), n = g.index(1, 6), D = g.index(1, 4);
    const UtpMatrix a = g.poly(m, n, D), b = g.poly(m, n, D), c = g.poly(m, n, D);
    const UtpScalar lhs = trace_pair(a, hadamard(b, c));
    const UtpScalar rhs = trace_pair(c, hadamard(b, a));
    return max_abs_diff(lhs, rhs) / std::max({1.0, max_abs(lhs), max_abs(rhs)});
  }});

  out.push_back({"diagonal of lower triangular product", [=](Gen& g) {
    const auto [n, D] = dims(g);
    const UtpMatrix a = lower_poly(g, n, D), b = lower_poly(g, n, D);
    const auto pd = SkeletalProjector::diagonal(n, n);
    return relative(hadamard(pd, a * b), hadamard(pd, a) * hadamard(pd, b));
  }});

  out.push_back({"diagonal of transpose", [=](Gen& g) {
    const auto [n, D] = dims(g);
    const UtpMatrix a = g.poly(n, n, D);
    const auto pd = SkeletalProjector::diagonal(n, n);
    return relative(hadamard(pd, mtranspose(a)), hadamard(pd, a));
  }});

  out.push_back({"diagonal of lower triangular inverse", [=](Gen& g) {
    const auto [n, D] = dims(g);
    const UtpMatrix a = lower_poly(g, n, D);
    const auto pd = SkeletalProjector::diagonal(n, n);
    const UtpMatrix inv = mtranspose(tri_inverse(mtranspose(a)));
    return relative(hadamard(pd, inv), tri_inverse(hadamard(pd, a)));
  }});

  out.push_back({"strictly lower times lower", [=](Gen& g) {
    const auto [n, D] = dims(g);
    const UtpMatrix a = hadamard(SkeletalProjector::lower_strict(n, n), g.poly(n, n, D));
    const UtpMatrix c = a * lower_poly(g, n, D);
    return relative(c, hadamard(SkeletalProjector::lower_strict(n, n), c));
  }});

  out.push_back({"strictly lower times diagonal", [=](Gen& g) {
    const auto [n, D] = dims(g);
    const UtpMatrix a = hadamard(SkeletalProjector::lower_strict(n, n), g.poly(n, n, D));
    const UtpMatrix c = a * hadamard(SkeletalProjector::diagonal(n, n), g.poly(n, n, D));
    return relative(c, hadamard(SkeletalProjector::lower_strict(n, n), c));
  }});

  out.push_back({"symmetric plus antisymmetric", [=](Gen& g) {
    const auto [n, D] = dims(g);
    const UtpMatrix a = g.poly(n, n, D);
    const UtpMatrix s = scale(a + mtranspose(a), 0.5), x = scale(a - mtranspose(a), 0.5);
    double r = relative(a, s + x);
    r = std::max(r, relative(s, mtranspose(s)));
    return std::max(r, relative(x, scale(mtranspose(x), -1.0)));
  }});

  return out;
}

}  // namespace utpla::testing
