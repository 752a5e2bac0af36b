#include "lvk/series.hpp"

#include "lvk/errors.hpp"

#include <numeric>
#include <sstream>

namespace lvk::schottky {

RingPtr make_ring(std::vector<std::string> variables, int cutoff) {
  if (cutoff < 0) throw ContractViolation("series cutoff must be non-negative");
  return std::make_shared<const SeriesRing>(SeriesRing{std::move(variables), cutoff});
}

namespace {

int degree(const TruncatedSeries::Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

TruncatedSeries::TruncatedSeries(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw ContractViolation("series needs a ring");
}

TruncatedSeries TruncatedSeries::constant(RingPtr ring, const Rational& value) {
  TruncatedSeries s(ring);
  s.add_term(Exponent(s.ring_->variables.size(), 0), value);
  return s;
}

TruncatedSeries TruncatedSeries::variable(RingPtr ring, std::size_t index) {
  TruncatedSeries s(ring);
  if (index >= s.ring_->variables.size()) throw ContractViolation("variable index out of range");
  Exponent e(s.ring_->variables.size(), 0);
  e[index] = 1;
  s.add_term(e, Rational(1));
  return s;
}

Rational TruncatedSeries::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != ring_->variables.size()) throw ContractViolation("exponent length mismatch");
  if (c == 0 || degree(e) > ring_->cutoff) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void TruncatedSeries::require_same_ring(const TruncatedSeries& o) const {
  if (ring_ != o.ring_ && !(*ring_ == *o.ring_)) {
    throw ContractViolation("series belong to different rings");
  }
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  require_same_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  require_same_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& [e, c] : terms_) c *= s;
  }
  return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.require_same_ring(b);
  TruncatedSeries out(a.ring_);
  const int cutoff = a.ring_->cutoff;
  TruncatedSeries::Exponent e(a.ring_->variables.size());
  for (const auto& [ea, ca] : a.terms_) {
    const int da = degree(ea);
    for (const auto& [eb, cb] : b.terms_) {
      if (da + degree(eb) > cutoff) continue;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.require_same_ring(b);
  return a.terms_ == b.terms_;
}

TruncatedSeries TruncatedSeries::substitute(std::size_t index, const TruncatedSeries& value) const {
  require_same_ring(value);
  if (index >= ring_->variables.size()) throw ContractViolation("variable index out of range");
  std::vector<TruncatedSeries> powers{constant(ring_, Rational(1))};
  TruncatedSeries out(ring_);
  for (const auto& [e, c] : terms_) {
    while (static_cast<int>(powers.size()) <= e[index]) powers.push_back(powers.back() * value);
    Exponent rest = e;
    rest[index] = 0;
    TruncatedSeries mono(ring_);
    mono.add_term(rest, c);
    out += mono * powers[e[index]];
  }
  return out;
}

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << '(' << lvk::to_string(c) << ')';
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out << '*' << ring_->variables[i];
      if (e[i] > 1) out << '^' << e[i];
    }
  }
  return out.str();
}

}  // namespace lvk::schottky
