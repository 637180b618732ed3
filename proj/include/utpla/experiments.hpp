#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace utpla::experiments {

enum class Experiment { andrew, covariance, householder_demo, selftest };

struct ExperimentConfig {
  Experiment experiment = Experiment::andrew;
  std::size_t degree = 5;
  std::vector<double> deltas;  // empty -> default_delta_grid()
  double t_lo = 0.1;
  double t_hi = 1.0;
  std::size_t t_count = 19;
  double block_tol = 1e-7;
  std::string out_path;  // empty -> no file
  std::uint64_t seed = 42;
};

/// Throws std::invalid_argument on empty sweeps, degree 0, tolerance <= 0.
void validate(const ExperimentConfig& config);

/// delta = 0 followed by 10^-16, 10^-15.5, ..., 10^0.
std::vector<double> default_delta_grid();
std::vector<double> t_grid(double lo, double hi, std::size_t n);

// ---------------------------------------------------------------------------
// Eigenvalue splitting study

struct AndrewRow {
  double delta;
  std::size_t eigenvalue;  // 1-based
  std::size_t degree;      // Taylor coefficient index
  double abs_error;
};

/// Error thresholds: all eigenvalues within 1e-9 when delta is 0 or at least
/// 1e-2; when 0 < delta < block_tol the merged pair (eigenvalues 2 and 3) may
/// be off by up to max(10 * delta, 1e-9). Other deltas are reported without a
/// threshold.
inline constexpr double kAndrewTolerance = 1e-9;
inline constexpr double kAndrewMergedFactor = 10.0;

struct AndrewResult {
  std::vector<AndrewRow> rows;
  std::vector<std::string> failures;
};

AndrewResult run_andrew(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Covariance consistency study

struct CovarianceRow {
  double t;
  std::string comparison;  // "csda-vs-utp" or "direct-vs-nullspace"
  double max_abs_diff;
};

inline constexpr double kCovarianceTolerance = 1e-12;

struct CovarianceResult {
  std::vector<CovarianceRow> rows;
  std::vector<std::string> failures;
};

/// Compares the value and first-order coefficient (degree 2) regardless of
/// config.degree.
CovarianceResult run_covariance(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Householder defect demonstration

struct HouseholderDemoCase {
  std::string name;
  double householder_lower_violation;  // max |P_L o R_d| over d, reflector route
  double lifting_lower_violation;      // same for qr_pushforward
  double r_difference;                 // max |R_house - R_lift| over coefficients
  double higher_coeff_norm;            // max |R_d|, d >= 1, both routes
};

struct HouseholderDemoResult {
  std::vector<HouseholderDemoCase> cases;
  std::vector<std::string> failures;
};

HouseholderDemoResult run_householder_demo(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Output

/// Formats a double with 17 significant digits.
std::string format_real(double v);

void write_csv(std::ostream& os, const std::vector<AndrewRow>& rows);
void write_csv(std::ostream& os, const std::vector<CovarianceRow>& rows);
void write_report(std::ostream& os, const HouseholderDemoResult& result);

}  // namespace utpla::experiments
