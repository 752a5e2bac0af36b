#pragma once

#include "lvk/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace lvk::schottky {

/// Variable names and total-degree cutoff shared by compatible series.
struct SeriesRing {
  std::vector<std::string> variables;
  int cutoff = 0;

  friend bool operator==(const SeriesRing&, const SeriesRing&) = default;
};

using RingPtr = std::shared_ptr<const SeriesRing>;

RingPtr make_ring(std::vector<std::string> variables, int cutoff);

/// Multivariate power series with exact rational coefficients, truncated at a
/// total degree. Terms of degree above the cutoff are discarded by every
/// operation; zero coefficients are never stored.
class TruncatedSeries {
 public:
  using Exponent = std::vector<int>;

  explicit TruncatedSeries(RingPtr ring);
  static TruncatedSeries constant(RingPtr ring, const Rational& value);
  static TruncatedSeries variable(RingPtr ring, std::size_t index);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::map<Exponent, Rational>& terms() const noexcept { return terms_; }
  Rational coefficient(const Exponent& e) const;
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds c * monomial(e); silently drops e when its degree exceeds the cutoff.
  void add_term(const Exponent& e, const Rational& c);

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Rational& s);
  TruncatedSeries operator-() const;

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }
  friend TruncatedSeries operator*(const Rational& s, TruncatedSeries a) { return a *= s; }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  /// Replaces variable `index` by `value` (same ring).
  TruncatedSeries substitute(std::size_t index, const TruncatedSeries& value) const;

  std::string to_string() const;

 private:
  void require_same_ring(const TruncatedSeries& o) const;

  RingPtr ring_;
  std::map<Exponent, Rational> terms_;
};

}  // namespace lvk::schottky
