#include "utpla/kernels.hpp"

#include "utpla/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace utpla::kernels {
namespace {

void check(std::span<const Eigen::MatrixXd> a, std::span<const Eigen::MatrixXd> b,
           std::span<Eigen::MatrixXd> c) {
  if (a.size() != b.size() || a.size() != c.size() || a.empty()) {
    throw ShapeError("convolve: degree mismatch");
  }
  if (a[0].cols() != b[0].rows()) throw ShapeError("convolve: inner dimension mismatch");
}

// One output coefficient; the caller owns c_d exclusively.
void convolve_one(std::span<const Eigen::MatrixXd> a, std::span<const Eigen::MatrixXd> b,
                  Eigen::MatrixXd& c_d, std::size_t d) {
  c_d.noalias() = a[0] * b[d];
  for (std::size_t k = 1; k <= d; ++k) c_d.noalias() += a[k] * b[d - k];
}

}  // namespace

void convolve(std::span<const Eigen::MatrixXd> a, std::span<const Eigen::MatrixXd> b,
              std::span<Eigen::MatrixXd> c) {
  check(a, b, c);
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const double work = static_cast<double>(a[0].rows()) * static_cast<double>(a[0].cols()) *
                      static_cast<double>(b[0].cols()) * static_cast<double>(n * (n + 1) / 2);
  // Later coefficients carry more terms; hand them out first.
#pragma omp parallel for schedule(dynamic, 1) if (work > kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto d = static_cast<std::size_t>(n - 1 - i);
    convolve_one(a, b, c[d], d);
  }
}

void convolve_serial(std::span<const Eigen::MatrixXd> a,
                     std::span<const Eigen::MatrixXd> b, std::span<Eigen::MatrixXd> c) {
  check(a, b, c);
  for (std::size_t d = 0; d < a.size(); ++d) convolve_one(a, b, c[d], d);
}

void convolve_reference(std::span<const Eigen::MatrixXd> a,
                        std::span<const Eigen::MatrixXd> b, std::span<Eigen::MatrixXd> c) {
  check(a, b, c);
  const Eigen::Index m = a[0].rows(), inner = a[0].cols(), n = b[0].cols();
  for (std::size_t d = 0; d < a.size(); ++d) {
    c[d].setZero(m, n);
    for (std::size_t k = 0; k <= d; ++k) {
      const Eigen::MatrixXd& ak = a[k];
      const Eigen::MatrixXd& bk = b[d - k];
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          double s = 0.0;
          for (Eigen::Index l = 0; l < inner; ++l) s += ak(i, l) * bk(l, j);
          c[d](i, j) += s;
        }
    }
  }
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace utpla::kernels
