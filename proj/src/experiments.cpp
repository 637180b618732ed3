#include "utpla/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "utpla/covariance.hpp"
#include "utpla/eigh.hpp"
#include "utpla/oracles.hpp"
#include "utpla/qr.hpp"
#include "utpla/structure.hpp"
#include "utpla/utp_matrix.hpp"

namespace utpla::experiments {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string describe(const char* what, double a, double b) {
  return std::string(what) + " " + format_real(a) + " (limit " + format_real(b) + ")";
}

// Analytic Taylor coefficients of the four eigenvalues, 4 x degree.
MatrixXd andrew_reference(double delta, std::size_t degree) {
  const MatrixXd deriv = oracles::andrew_eigenvalue_derivatives(delta);
  MatrixXd ref = MatrixXd::Zero(4, static_cast<Eigen::Index>(degree));
  double fact = 1.0;
  for (Eigen::Index k = 0; k < std::min<Eigen::Index>(deriv.cols(), ref.cols()); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    ref.col(k) = deriv.col(k) / fact;
  }
  return ref;
}

// Error matrix for the permutation of computed eigenvalues that minimizes the
// largest coefficient error.
MatrixXd best_match(const MatrixXd& computed, const MatrixXd& ref) {
  std::array<int, 4> perm{0, 1, 2, 3};
  MatrixXd best;
  double best_max = std::numeric_limits<double>::infinity();
  do {
    MatrixXd err(ref.rows(), ref.cols());
    for (int i = 0; i < 4; ++i) err.row(i) = (computed.row(perm[i]) - ref.row(i)).cwiseAbs();
    const double m = err.maxCoeff();
    if (m < best_max) {
      best_max = m;
      best = err;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double max_abs_diff(const UtpMatrix& a, const UtpMatrix& b) {
  double m = 0.0;
  for (std::size_t d = 0; d < a.degree(); ++d) m = std::max(m, (a[d] - b[d]).cwiseAbs().maxCoeff());
  return m;
}

double lower_violation(const UtpMatrix& r) {
  const auto pl = SkeletalProjector::lower_strict(r.rows(), r.cols());
  double m = 0.0;
  for (const auto& c : r.coeffs()) m = std::max(m, pl.apply(c).cwiseAbs().maxCoeff());
  return m;
}

double higher_norm(const UtpMatrix& r) {
  double m = 0.0;
  for (std::size_t d = 1; d < r.degree(); ++d) m = std::max(m, r[d].cwiseAbs().maxCoeff());
  return m;
}

HouseholderDemoCase compare_routes(std::string name, const UtpMatrix& a) {
  const QrFactors house = householder_qr(a);
  const QrFactors lift = qr_pushforward(a);
  return {std::move(name), lower_violation(house.r), lower_violation(lift.r),
          max_abs_diff(house.r, lift.r), std::max(higher_norm(house.r), higher_norm(lift.r))};
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.degree == 0) throw std::invalid_argument("degree must be at least 1");
  if (!(config.block_tol > 0.0)) throw std::invalid_argument("block tolerance must be positive");
  if (config.t_count == 0) throw std::invalid_argument("t grid must be nonempty");
  if (!(config.t_lo <= config.t_hi)) throw std::invalid_argument("t grid needs lo <= hi");
  if (config.t_count == 1 && config.t_lo != config.t_hi)
    throw std::invalid_argument("a one-point t grid needs lo == hi");
  for (double d : config.deltas)
    if (!std::isfinite(d) || d < 0.0) throw std::invalid_argument("delta must be finite and >= 0");
}

std::vector<double> default_delta_grid() {
  std::vector<double> out{0.0};
  for (int i = -32; i <= 0; ++i) out.push_back(std::pow(10.0, 0.5 * i));
  return out;
}

std::vector<double> t_grid(double lo, double hi, std::size_t n) {
  if (n == 0) throw std::invalid_argument("t_grid: n must be positive");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  out.back() = hi;
  return out;
}

AndrewResult run_andrew(const ExperimentConfig& config) {
  validate(config);
  const std::vector<double> deltas = config.deltas.empty() ? default_delta_grid() : config.deltas;
  const std::size_t degree = config.degree;
  AndrewResult result;

  std::vector<MatrixXd> errors(deltas.size());
  std::vector<std::string> thrown(deltas.size());
#pragma omp parallel for schedule(dynamic, 1) if (deltas.size() > 4)
  for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(deltas.size()); ++s) {
    const double delta = deltas[static_cast<std::size_t>(s)];
    try {
      const auto sys = oracles::andrew_system(delta, degree);
      EighOptions opts;
      opts.block_tol = config.block_tol;
      const EighFactors f = eigh_pushforward(sys.a, opts);
      MatrixXd computed(4, static_cast<Eigen::Index>(degree));
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t d = 0; d < degree; ++d)
          computed(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = f.lam[d](i, i);
      errors[static_cast<std::size_t>(s)] = best_match(computed, andrew_reference(delta, degree));
    } catch (const std::exception& e) {
      thrown[static_cast<std::size_t>(s)] = e.what();
    }
  }

  for (std::size_t s = 0; s < deltas.size(); ++s) {
    const double delta = deltas[s];
    const std::string tag = "andrew delta=" + format_real(delta);
    if (!thrown[s].empty()) {
      result.failures.push_back(tag + ": " + thrown[s]);
      continue;
    }
    const MatrixXd& err = errors[s];
    const bool strict = delta == 0.0 || delta >= 1e-2;
    const bool merged = delta > 0.0 && delta < config.block_tol;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t d = 0; d < degree; ++d) {
        const double e = err(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d));
        result.rows.push_back({delta, i + 1, d, e});
        double limit = std::numeric_limits<double>::infinity();
        if (strict) limit = kAndrewTolerance;
        if (merged && (i == 1 || i == 2)) limit = std::max(kAndrewMergedFactor * delta, kAndrewTolerance);
        else if (merged) limit = kAndrewTolerance;
        if (!(e <= limit)) {
          result.failures.push_back(tag + " eigenvalue " + std::to_string(i + 1) + " degree " +
                                    std::to_string(d) + ": " + describe("error", e, limit));
        }
      }
    }
  }
  return result;
}

CovarianceResult run_covariance(const ExperimentConfig& config) {
  validate(config);
  const std::vector<double> ts = t_grid(config.t_lo, config.t_hi, config.t_count);
  // Value and first-order coefficient, as compared against the complex step.
  const std::size_t degree = 2;
  CovarianceResult result;

  std::vector<std::array<double, 2>> diffs(ts.size());
  std::vector<std::string> thrown(ts.size());
#pragma omp parallel for schedule(dynamic, 1) if (ts.size() > 4)
  for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(ts.size()); ++s) {
    const double t = ts[static_cast<std::size_t>(s)];
    try {
      const covariance::CovarianceInstance inst{t * Eigen::Vector2d(3.0, 1.0), {5.0, 7.0}};
      const UtpMatrix j1 = covariance::j1_utp(inst, degree);
      const UtpMatrix j2 = covariance::j2_utp(inst, degree);
      const UtpMatrix direct = covariance::cov_direct(j1, j2);
      const UtpMatrix nullspace = covariance::cov_nullspace(j1, j2);
      const VectorXd csda = oracles::csda_derivative(covariance::covariance_at_complex,
                                                     inst.x, inst.xdot);
      const VectorXd first = direct[1].reshaped();
      diffs[static_cast<std::size_t>(s)] = {(csda - first).cwiseAbs().maxCoeff(),
                                            max_abs_diff(direct, nullspace)};
    } catch (const std::exception& e) {
      thrown[static_cast<std::size_t>(s)] = e.what();
    }
  }

  static constexpr std::array<const char*, 2> kinds{"csda-vs-utp", "direct-vs-nullspace"};
  for (std::size_t s = 0; s < ts.size(); ++s) {
    const std::string tag = "covariance t=" + format_real(ts[s]);
    if (!thrown[s].empty()) {
      result.failures.push_back(tag + ": " + thrown[s]);
      continue;
    }
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      result.rows.push_back({ts[s], kinds[k], diffs[s][k]});
      if (!(diffs[s][k] <= kCovarianceTolerance)) {
        result.failures.push_back(tag + " " + kinds[k] + ": " +
                                  describe("difference", diffs[s][k], kCovarianceTolerance));
      }
    }
  }
  return result;
}

HouseholderDemoResult run_householder_demo(const ExperimentConfig& config) {
  validate(config);
  HouseholderDemoResult result;

  // First column e_1 + e_2 T: sigma vanishes at order zero only.
  MatrixXd a1 = MatrixXd::Zero(2, 2);
  a1(1, 0) = 1.0;
  const UtpMatrix patho({MatrixXd::Identity(2, 2), a1});
  result.cases.push_back(compare_routes("pathological", patho));
  const auto& p = result.cases.back();
  if (!(p.householder_lower_violation > 1e-8))
    result.failures.push_back("pathological: reflector route did not show the defect");
  if (p.lifting_lower_violation != 0.0)
    result.failures.push_back("pathological: " +
                              describe("lifting route lower part", p.lifting_lower_violation, 0.0));

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal;
  std::vector<MatrixXd> coeffs;
  for (std::size_t d = 0; d < config.degree; ++d)
    coeffs.push_back(MatrixXd::NullaryExpr(4, 3, [&] { return normal(rng); }));
  result.cases.push_back(compare_routes("generic", UtpMatrix(coeffs)));
  const auto& g = result.cases.back();
  if (!(g.r_difference <= 1e-10))
    result.failures.push_back("generic: " + describe("R difference", g.r_difference, 1e-10));
  if (g.lifting_lower_violation != 0.0)
    result.failures.push_back("generic: " +
                              describe("lifting route lower part", g.lifting_lower_violation, 0.0));

  result.cases.push_back(
      compare_routes("constant", UtpMatrix::constant(coeffs.front(), config.degree)));
  const auto& c = result.cases.back();
  if (c.higher_coeff_norm != 0.0)
    result.failures.push_back("constant: " + describe("higher coefficients", c.higher_coeff_norm, 0.0));
  return result;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<AndrewRow>& rows) {
  os << "delta,eigenvalue,degree,abs_error\n";
  for (const auto& r : rows)
    os << format_real(r.delta) << ',' << r.eigenvalue << ',' << r.degree << ','
       << format_real(r.abs_error) << '\n';
}

void write_csv(std::ostream& os, const std::vector<CovarianceRow>& rows) {
  os << "t,comparison,max_abs_diff\n";
  for (const auto& r : rows)
    os << format_real(r.t) << ',' << r.comparison << ',' << format_real(r.max_abs_diff) << '\n';
}

void write_report(std::ostream& os, const HouseholderDemoResult& result) {
  os << "case,householder_lower_violation,lifting_lower_violation,r_difference,higher_coeff_norm\n";
  for (const auto& c : result.cases)
    os << c.name << ',' << format_real(c.householder_lower_violation) << ','
       << format_real(c.lifting_lower_violation) << ',' << format_real(c.r_difference) << ','
       << format_real(c.higher_coeff_norm) << '\n';
}

}  // namespace utpla::experiments
