#include "lvk/numeric.hpp"

#include "lvk/errors.hpp"

#include <cstdlib>
#include <iomanip>
#include <sstream>

namespace lvk {

PrecisionScope::PrecisionScope(int digits) : previous_(Real::default_precision()) {
  if (digits < kMinimumDigits) {
    throw ContractViolation("precision must be at least " + std::to_string(kMinimumDigits) +
                            " digits");
  }
  // Guard digits keep the last printed digit honest.
  Real::default_precision(static_cast<unsigned>(digits + 10));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(previous_); }

int default_digits() {
  if (const char* env = std::getenv("LVK_PRECISION")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= kMinimumDigits && v <= 100000) {
      return static_cast<int>(v);
    }
  }
  return kDefaultDigits;
}

Real to_real(const Rational& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Real n(numerator(value).str());
  Real d(denominator(value).str());
  return n / d;
}

Real pi() { return boost::multiprecision::acos(Real(-1)); }

std::string to_decimal(const Real& value, int digits) {
  std::ostringstream out;
  // Normalizes -0 so that serialized output is stable.
  out << std::setprecision(digits) << std::scientific << (value == 0 ? Real(0) : value);
  return out.str();
}

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }

Real arg(const Complex& z) {
  if (z.re == 0 && z.im == 0) throw ContractViolation("argument of zero");
  return boost::multiprecision::atan2(z.im, z.re);
}

Complex unit_phase(const Real& theta) {
  return {boost::multiprecision::cos(theta), boost::multiprecision::sin(theta)};
}

}  // namespace lvk
