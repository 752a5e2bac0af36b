#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace lvk {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Parses "P", "-P" or "P/Q" with Q != 0. Throws ParseError otherwise.
Rational parse_rational(std::string_view text);

/// Canonical form: "P" when the denominator is 1, else "P/Q" in lowest terms.
std::string to_string(const Rational& value);

/// Generalized binomial coefficient top(top-1)...(top-k+1)/k! for any integer top.
Rational binomial(long top, long k);

/// Bit length of numerator plus denominator; used as a pivot size measure.
std::size_t bit_size(const Rational& value);

}  // namespace lvk
