// Timing of the truncated matrix convolution: naive reference loop, serial
// GEMM kernel and the OpenMP kernel, plus a full QR pushforward.
//
//   bench_convolve [n] [degree] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "utpla/kernels.hpp"
#include "utpla/qr.hpp"

namespace {

using Coeffs = std::vector<Eigen::MatrixXd>;
using Kernel = void (*)(std::span<const Eigen::MatrixXd>, std::span<const Eigen::MatrixXd>,
                        std::span<Eigen::MatrixXd>);

Coeffs random_coeffs(std::mt19937_64& rng, Eigen::Index n, std::size_t degree) {
  std::normal_distribution<double> normal;
  Coeffs out;
  for (std::size_t d = 0; d < degree; ++d)
    out.push_back(Eigen::MatrixXd::NullaryExpr(n, n, [&] { return normal(rng); }));
  return out;
}

double seconds_per_call(Kernel k, const Coeffs& a, const Coeffs& b, Coeffs& c, int repeats) {
  k(a, b, c);
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) k(a, b, c);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / repeats;
}

double max_diff(const Coeffs& x, const Coeffs& y) {
  double m = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) m = std::max(m, (x[d] - y[d]).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  const Eigen::Index n = argc > 1 ? std::atol(argv[1]) : 96;
  const std::size_t degree = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 8;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 5;
  if (n <= 0 || degree == 0 || repeats <= 0) {
    std::fprintf(stderr, "usage: bench_convolve [n > 0] [degree > 0] [repeats > 0]\n");
    return 2;
  }

  std::mt19937_64 rng(7);
  const Coeffs a = random_coeffs(rng, n, degree), b = random_coeffs(rng, n, degree);
  Coeffs c_ref(degree), c_ser(degree), c_par(degree);

  const double t_ref = seconds_per_call(utpla::kernels::convolve_reference, a, b, c_ref, repeats);
  const double t_ser = seconds_per_call(utpla::kernels::convolve_serial, a, b, c_ser, repeats);
  const double t_par = seconds_per_call(utpla::kernels::convolve, a, b, c_par, repeats);

  std::printf("n=%ld degree=%zu repeats=%d threads=%d\n", static_cast<long>(n), degree, repeats,
              utpla::kernels::max_threads());
  std::printf("%-10s %12s %10s\n", "kernel", "ms/call", "speedup");
  std::printf("%-10s %12.3f %10.2f\n", "reference", 1e3 * t_ref, 1.0);
  std::printf("%-10s %12.3f %10.2f\n", "serial", 1e3 * t_ser, t_ref / t_ser);
  std::printf("%-10s %12.3f %10.2f\n", "parallel", 1e3 * t_par, t_ref / t_par);

  const double d1 = max_diff(c_ser, c_ref), d2 = max_diff(c_par, c_ref);
  std::printf("max |serial - reference| = %.3g, max |parallel - reference| = %.3g\n", d1, d2);

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Eigen::MatrixXd> ac(a.begin(), a.end());
  for (auto& m : ac) m = m.leftCols(n / 2 + 1).eval();
  ac[0] += 10.0 * Eigen::MatrixXd::Identity(n, n / 2 + 1);
  utpla::qr_pushforward(utpla::UtpMatrix(ac));
  std::printf("qr_pushforward %ldx%ld degree %zu: %.3f ms\n", static_cast<long>(n),
              static_cast<long>(n / 2 + 1), degree,
              1e3 * std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

  const double scale = std::max(1.0, static_cast<double>(n));
  return d1 <= 1e-12 * scale && d2 <= 1e-12 * scale ? 0 : 1;
}
