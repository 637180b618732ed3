#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace utpla {

/// Truncated univariate Taylor polynomial x_0 + x_1 T + ... + x_{D-1} T^{D-1}
/// over the reals. Immutable; every operation returns a new value.
///
/// Binary operations require equal degree D. Mixing degrees throws
/// ShapeError instead of silently truncating to the shorter operand.
class UtpScalar {
 public:
  /// Throws ShapeError if `coeffs` is empty, DomainError on non-finite entries.
  explicit UtpScalar(std::vector<double> coeffs);

  static UtpScalar constant(double value, std::size_t degree);
  /// value + slope * T, zero-padded to `degree` coefficients.
  static UtpScalar variable(double value, double slope, std::size_t degree);

  std::size_t degree() const { return coeffs_.size(); }
  double operator[](std::size_t d) const { return coeffs_[d]; }
  std::span<const double> coeffs() const { return coeffs_; }

  UtpScalar operator-() const;

  friend UtpScalar operator+(const UtpScalar& a, const UtpScalar& b);
  friend UtpScalar operator-(const UtpScalar& a, const UtpScalar& b);
  friend UtpScalar operator*(const UtpScalar& a, const UtpScalar& b);
  friend UtpScalar operator/(const UtpScalar& a, const UtpScalar& b);

  friend UtpScalar operator+(const UtpScalar& a, double b);
  friend UtpScalar operator+(double a, const UtpScalar& b);
  friend UtpScalar operator-(const UtpScalar& a, double b);
  friend UtpScalar operator-(double a, const UtpScalar& b);
  friend UtpScalar operator*(const UtpScalar& a, double b);
  friend UtpScalar operator*(double a, const UtpScalar& b);
  friend UtpScalar operator/(const UtpScalar& a, double b);
  friend UtpScalar operator/(double a, const UtpScalar& b);

 private:
  std::vector<double> coeffs_;
};

UtpScalar add(const UtpScalar& a, const UtpScalar& b);
UtpScalar mul(const UtpScalar& a, const UtpScalar& b);
/// Throws DomainError when b_0 == 0.
UtpScalar div(const UtpScalar& a, const UtpScalar& b);

enum class ElemFn { sin, cos, exp, log, sqrt };

/// Taylor coefficients of fn(a(t)) through the first-order ODE each fn
/// satisfies. log needs a_0 > 0, sqrt needs a_0 > 0 (the series is not
/// analytic at 0); violations throw DomainError.
UtpScalar elem(ElemFn fn, const UtpScalar& a);

UtpScalar sin(const UtpScalar& a);
UtpScalar cos(const UtpScalar& a);
UtpScalar exp(const UtpScalar& a);
UtpScalar log(const UtpScalar& a);
UtpScalar sqrt(const UtpScalar& a);
/// Integer power by repeated squaring; negative exponents divide (a_0 != 0).
UtpScalar pow(const UtpScalar& a, int n);

/// sin and cos share one coupled recurrence; returns {sin(a), cos(a)}.
struct SinCos {
  UtpScalar sin;
  UtpScalar cos;
};
SinCos sincos(const UtpScalar& a);

}  // namespace utpla
