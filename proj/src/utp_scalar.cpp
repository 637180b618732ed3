#include "utpla/utp_scalar.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "utpla/errors.hpp"

namespace utpla {
namespace {

void require_same_degree(const UtpScalar& a, const UtpScalar& b, const char* op) {
  if (a.degree() != b.degree()) {
    throw ShapeError(std::string(op) + ": degree mismatch (" + std::to_string(a.degree()) +
                     " vs " + std::to_string(b.degree()) + ")");
  }
}

std::vector<double> to_vec(const UtpScalar& a) {
  return {a.coeffs().begin(), a.coeffs().end()};
}

}  // namespace

UtpScalar::UtpScalar(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ShapeError("UtpScalar: degree must be at least 1");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw DomainError("UtpScalar: non-finite coefficient");
  }
}

UtpScalar UtpScalar::constant(double value, std::size_t degree) {
  std::vector<double> c(degree, 0.0);
  if (!c.empty()) c[0] = value;
  return UtpScalar(std::move(c));
}

UtpScalar UtpScalar::variable(double value, double slope, std::size_t degree) {
  std::vector<double> c(degree, 0.0);
  if (!c.empty()) c[0] = value;
  if (c.size() > 1) c[1] = slope;
  return UtpScalar(std::move(c));
}

UtpScalar UtpScalar::operator-() const {
  auto c = coeffs_;
  for (auto& v : c) v = -v;
  return UtpScalar(std::move(c));
}

UtpScalar add(const UtpScalar& a, const UtpScalar& b) {
  require_same_degree(a, b, "add");
  auto c = to_vec(a);
  for (std::size_t d = 0; d < c.size(); ++d) c[d] += b[d];
  return UtpScalar(std::move(c));
}

UtpScalar mul(const UtpScalar& a, const UtpScalar& b) {
  require_same_degree(a, b, "mul");
  const std::size_t n = a.degree();
  std::vector<double> c(n, 0.0);
  for (std::size_t d = 0; d < n; ++d) {
    double s = 0.0;
    for (std::size_t k = 0; k <= d; ++k) s += a[k] * b[d - k];
    c[d] = s;
  }
  return UtpScalar(std::move(c));
}

UtpScalar div(const UtpScalar& a, const UtpScalar& b) {
  require_same_degree(a, b, "div");
  if (b[0] == 0.0) throw DomainError("div: zero leading coefficient in divisor");
  const std::size_t n = a.degree();
  std::vector<double> c(n, 0.0);
  for (std::size_t d = 0; d < n; ++d) {
    double s = a[d];
    for (std::size_t k = 1; k <= d; ++k) s -= b[k] * c[d - k];
    c[d] = s / b[0];
  }
  return UtpScalar(std::move(c));
}

UtpScalar operator+(const UtpScalar& a, const UtpScalar& b) { return add(a, b); }
UtpScalar operator-(const UtpScalar& a, const UtpScalar& b) { return add(a, -b); }
UtpScalar operator*(const UtpScalar& a, const UtpScalar& b) { return mul(a, b); }
UtpScalar operator/(const UtpScalar& a, const UtpScalar& b) { return div(a, b); }

UtpScalar operator+(const UtpScalar& a, double b) {
  auto c = to_vec(a);
  c[0] += b;
  return UtpScalar(std::move(c));
}
UtpScalar operator+(double a, const UtpScalar& b) { return b + a; }
UtpScalar operator-(const UtpScalar& a, double b) { return a + (-b); }
UtpScalar operator-(double a, const UtpScalar& b) { return (-b) + a; }

UtpScalar operator*(const UtpScalar& a, double b) {
  auto c = to_vec(a);
  for (auto& v : c) v *= b;
  return UtpScalar(std::move(c));
}
UtpScalar operator*(double a, const UtpScalar& b) { return b * a; }
UtpScalar operator/(const UtpScalar& a, double b) {
  if (b == 0.0) throw DomainError("div: division by zero");
  return a * (1.0 / b);
}
UtpScalar operator/(double a, const UtpScalar& b) {
  return div(UtpScalar::constant(a, b.degree()), b);
}

SinCos sincos(const UtpScalar& a) {
  // s' = c a', c' = -s a'  =>  d s_d = sum_{k=1}^{d} k a_k c_{d-k}
  const std::size_t n = a.degree();
  std::vector<double> s(n, 0.0), c(n, 0.0);
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (std::size_t d = 1; d < n; ++d) {
    double ss = 0.0, cc = 0.0;
    for (std::size_t k = 1; k <= d; ++k) {
      ss += static_cast<double>(k) * a[k] * c[d - k];
      cc -= static_cast<double>(k) * a[k] * s[d - k];
    }
    s[d] = ss / static_cast<double>(d);
    c[d] = cc / static_cast<double>(d);
  }
  return {UtpScalar(std::move(s)), UtpScalar(std::move(c))};
}

UtpScalar sin(const UtpScalar& a) { return sincos(a).sin; }
UtpScalar cos(const UtpScalar& a) { return sincos(a).cos; }

UtpScalar exp(const UtpScalar& a) {
  // e' = e a'
  const std::size_t n = a.degree();
  std::vector<double> e(n, 0.0);
  e[0] = std::exp(a[0]);
  for (std::size_t d = 1; d < n; ++d) {
    double s = 0.0;
    for (std::size_t k = 1; k <= d; ++k) s += static_cast<double>(k) * a[k] * e[d - k];
    e[d] = s / static_cast<double>(d);
  }
  return UtpScalar(std::move(e));
}

UtpScalar log(const UtpScalar& a) {
  if (!(a[0] > 0.0)) throw DomainError("log: leading coefficient must be positive");
  // a l' = a'
  const std::size_t n = a.degree();
  std::vector<double> l(n, 0.0);
  l[0] = std::log(a[0]);
  for (std::size_t d = 1; d < n; ++d) {
    double s = static_cast<double>(d) * a[d];
    for (std::size_t k = 1; k < d; ++k) s -= static_cast<double>(k) * l[k] * a[d - k];
    l[d] = s / (static_cast<double>(d) * a[0]);
  }
  return UtpScalar(std::move(l));
}

UtpScalar sqrt(const UtpScalar& a) {
  if (!(a[0] > 0.0)) throw DomainError("sqrt: leading coefficient must be positive");
  // r^2 = a
  const std::size_t n = a.degree();
  std::vector<double> r(n, 0.0);
  r[0] = std::sqrt(a[0]);
  for (std::size_t d = 1; d < n; ++d) {
    double s = a[d];
    for (std::size_t k = 1; k < d; ++k) s -= r[k] * r[d - k];
    r[d] = s / (2.0 * r[0]);
  }
  return UtpScalar(std::move(r));
}

UtpScalar pow(const UtpScalar& a, int n) {
  if (n < 0) return 1.0 / pow(a, -n);
  UtpScalar result = UtpScalar::constant(1.0, a.degree());
  UtpScalar base = a;
  for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
    if (e & 1u) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

UtpScalar elem(ElemFn fn, const UtpScalar& a) {
  switch (fn) {
    case ElemFn::sin: return sin(a);
    case ElemFn::cos: return cos(a);
    case ElemFn::exp: return exp(a);
    case ElemFn::log: return log(a);
    case ElemFn::sqrt: return sqrt(a);
  }
  throw DomainError("elem: unknown function");
}

}  // namespace utpla
