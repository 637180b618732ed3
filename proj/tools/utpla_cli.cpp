// utpla: reproduces the eigenvalue splitting and covariance consistency
// studies and the Householder defect demonstration.
//
//   utpla andrew --delta 0 --delta 1e-8 --out andrew.csv
//   utpla covariance --t-grid 0.1:1.0:19
//   utpla householder-demo
//   utpla selftest

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "utpla/experiments.hpp"

namespace ex = utpla::experiments;

namespace {

void parse_t_grid(const std::string& spec, ex::ExperimentConfig& cfg) {
  std::stringstream ss(spec);
  std::string lo, hi, n;
  if (!std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') || !std::getline(ss, n) ||
      lo.empty() || hi.empty() || n.empty()) {
    throw CLI::ValidationError("--t-grid", "expected lo:hi:n");
  }
  try {
    cfg.t_lo = std::stod(lo);
    cfg.t_hi = std::stod(hi);
    const long count = std::stol(n);
    if (count <= 0) throw CLI::ValidationError("--t-grid", "n must be positive");
    cfg.t_count = static_cast<std::size_t>(count);
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--t-grid", "expected lo:hi:n");
  }
}

void emit(const ex::ExperimentConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) return;
  std::ofstream os(cfg.out_path);
  if (!os) throw std::runtime_error("cannot open " + cfg.out_path);
  os << text;
}

int summarize(const std::string& name, std::size_t rows, const std::vector<std::string>& failures) {
  for (const auto& f : failures) std::cout << "  FAIL " << f << '\n';
  std::cout << name << ": " << rows << " rows, " << failures.size() << " failures -> "
            << (failures.empty() ? "PASS" : "FAIL") << '\n';
  return failures.empty() ? 0 : 1;
}

int cmd_andrew(const ex::ExperimentConfig& cfg) {
  const auto r = ex::run_andrew(cfg);
  std::ostringstream csv;
  ex::write_csv(csv, r.rows);
  emit(cfg, csv.str());
  return summarize("andrew", r.rows.size(), r.failures);
}

int cmd_covariance(const ex::ExperimentConfig& cfg) {
  const auto r = ex::run_covariance(cfg);
  std::ostringstream csv;
  ex::write_csv(csv, r.rows);
  emit(cfg, csv.str());
  double worst = 0.0;
  for (const auto& row : r.rows) worst = std::max(worst, row.max_abs_diff);
  std::cout << "covariance: largest difference " << ex::format_real(worst) << '\n';
  return summarize("covariance", r.rows.size(), r.failures);
}

int cmd_householder(const ex::ExperimentConfig& cfg) {
  const auto r = ex::run_householder_demo(cfg);
  std::ostringstream report;
  ex::write_report(report, r);
  emit(cfg, report.str());
  std::cout << report.str();
  return summarize("householder-demo", r.cases.size(), r.failures);
}

int cmd_selftest(ex::ExperimentConfig cfg) {
  cfg.out_path.clear();
  int status = 0;
  ex::ExperimentConfig andrew = cfg;
  if (andrew.deltas.empty()) andrew.deltas = {0.0, 1e-8, 1e-2, 1e-1, 1.0};
  status |= cmd_andrew(andrew);
  status |= cmd_covariance(cfg);
  status |= cmd_householder(cfg);
  std::cout << "selftest: " << (status == 0 ? "PASS" : "FAIL") << '\n';
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taylor-arithmetic QR and symmetric eigendecomposition experiments"};
  app.require_subcommand(1);

  ex::ExperimentConfig cfg;
  std::string t_grid;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--degree", cfg.degree, "Number of Taylor coefficients D")
        ->check(CLI::PositiveNumber);
    sub->add_option("--delta", cfg.deltas, "Splitting parameter (repeatable)")->take_all();
    sub->add_option("--t-grid", t_grid, "Sample grid lo:hi:n");
    sub->add_option("--block-tol", cfg.block_tol, "Eigenvalue block tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_path, "Write CSV to this path");
    sub->add_option("--seed", cfg.seed, "Seed for random instances");
  };

  auto* andrew = app.add_subcommand("andrew", "Eigenvalue splitting study");
  auto* cov = app.add_subcommand("covariance", "Covariance consistency study");
  auto* house = app.add_subcommand("householder-demo", "Reflector QR defect demonstration");
  auto* self = app.add_subcommand("selftest", "Run all studies at their thresholds");
  for (auto* sub : {andrew, cov, house, self}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!t_grid.empty()) parse_t_grid(t_grid, cfg);
    ex::validate(cfg);
    if (andrew->parsed()) return cmd_andrew(cfg);
    if (cov->parsed()) return cmd_covariance(cfg);
    if (house->parsed()) return cmd_householder(cfg);
    return cmd_selftest(cfg);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
