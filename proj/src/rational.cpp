#include "lvk/rational.hpp"

#include "lvk/errors.hpp"

#include <cctype>

namespace lvk {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer to_integer(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) return Rational(to_integer(num));
  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  }
  const Integer d = to_integer(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(to_integer(num), d);
}

std::string to_string(const Rational& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational binomial(long top, long k) {
  if (k < 0) return Rational(0);
  Rational result(1);
  for (long i = 0; i < k; ++i) {
    result *= Rational(top - i);
    result /= Rational(i + 1);
  }
  return result;
}

std::size_t bit_size(const Rational& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::msb;
  using boost::multiprecision::numerator;
  const Integer n = abs(numerator(value));
  const Integer d = denominator(value);
  std::size_t bits = (n == 0 ? 0 : msb(n) + 1);
  bits += msb(d) + 1;
  return bits;
}

}  // namespace lvk
