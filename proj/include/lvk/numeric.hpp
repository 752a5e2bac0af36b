#pragma once

#include "lvk/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace lvk {

/// Arbitrary-precision real; precision is taken from the thread default at
/// construction (see PrecisionScope).
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr int kDefaultDigits = 50;
inline constexpr int kMinimumDigits = 15;

/// Sets the working precision (significant decimal digits) for Reals created
/// while the scope is alive and restores the previous value afterwards.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_;
};

/// Digits from the LVK_PRECISION environment variable, else kDefaultDigits.
int default_digits();

Real to_real(const Rational& value);
Real pi();

/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Real& value, int digits);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const Real& r) : re(r), im(0) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
};

Real abs(const Complex& z);
/// Principal argument in (-pi, pi].
Real arg(const Complex& z);
/// e^{i theta}.
Complex unit_phase(const Real& theta);

}  // namespace lvk
