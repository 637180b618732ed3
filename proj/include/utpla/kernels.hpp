#pragma once

#include <span>

#include <Eigen/Dense>

// Truncated Cauchy product of matrix coefficient sequences,
//   C_d = sum_{k=0}^{d} A_k B_{d-k},   d = 0 .. D-1.
//
// convolve() is the production kernel: Eigen GEMM per term, with the output
// coefficients distributed over OpenMP threads once the problem is large
// enough to amortize the fork. convolve_reference() is the plain serial
// triple loop and serves as the test oracle and benchmark baseline.
namespace utpla::kernels {

/// Work (multiply-adds) above which convolve() goes parallel.
inline constexpr double kParallelThreshold = 1.0e5;

void convolve(std::span<const Eigen::MatrixXd> a, std::span<const Eigen::MatrixXd> b,
              std::span<Eigen::MatrixXd> c);

/// Same contract as convolve(), forced serial. Used by the benchmark.
void convolve_serial(std::span<const Eigen::MatrixXd> a,
                     std::span<const Eigen::MatrixXd> b, std::span<Eigen::MatrixXd> c);

void convolve_reference(std::span<const Eigen::MatrixXd> a,
                        std::span<const Eigen::MatrixXd> b, std::span<Eigen::MatrixXd> c);

/// Number of threads convolve() would use for work above the threshold.
int max_threads();

}  // namespace utpla::kernels
