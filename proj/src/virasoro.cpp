#include "lvk/virasoro.hpp"

#include "lvk/errors.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace lvk::virasoro {

LiouvilleParams LiouvilleParams::from_b(const Rational& b) {
  if (b <= 0) throw DomainError("invalid_parameter", "b must be positive");
  const Rational Q = b + 1 / b;
  return {b, Q, 1 + 6 * Q * Q};
}

Weight weight_from_momentum(const LiouvilleParams& params, const Rational& r) {
  return {params.Q * params.Q / 4 + r * r, r};
}

NumericWeight weight_from_length(const LiouvilleParams& params, const Real& length) {
  if (length <= 0) throw DomainError("invalid_parameter", "length must be positive");
  const Real b = to_real(params.b);
  const Real Q = to_real(params.Q);
  const Real r = length / (4 * pi() * b);
  return {r, Q * Q / 4 + r * r, Q / 2, r};
}

int level(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

namespace {

void partitions_into(int n, int max_part, Partition& prefix, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(prefix);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    prefix.push_back(part);
    partitions_into(n - part, part, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions(int n) {
  if (n < 0) throw ContractViolation("negative level");
  std::vector<Partition> out;
  Partition prefix;
  partitions_into(n, n, prefix, out);
  return out;
}

std::size_t partition_count(int n) {
  if (n < 0) return 0;
  // Counting through parts up to k.
  std::vector<std::size_t> ways(n + 1, 0);
  ways[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int m = k; m <= n; ++m) ways[m] += ways[m - k];
  return ways[n];
}

std::string partition_label(const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out;
}

VermaVector VermaVector::basis(Partition p) {
  VermaVector v;
  v.terms_.emplace(std::move(p), Rational(1));
  return v;
}

Rational VermaVector::coefficient(const Partition& p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

void VermaVector::add(const Partition& p, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

VermaVector& VermaVector::operator+=(const VermaVector& o) {
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

VermaVector& VermaVector::operator-=(const VermaVector& o) {
  for (const auto& [p, c] : o.terms_) add(p, -c);
  return *this;
}

VermaVector& VermaVector::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& [p, c] : terms_) c *= s;
  }
  return *this;
}

VermaVector VermaVector::homogeneous(int lvl) const {
  VermaVector out;
  for (const auto& [p, c] : terms_)
    if (level(p) == lvl) out.terms_.emplace(p, c);
  return out;
}

VermaVector VermaModule::apply(int n, const VermaVector& v) const {
  VermaVector out;
  for (const auto& [p, c] : v.terms()) {
    VermaVector piece = apply_basis(n, p);
    piece *= c;
    out += piece;
  }
  return out;
}

VermaVector VermaModule::apply_basis(int n, const Partition& p) const {
  const auto key = std::make_pair(n, p);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  VermaVector result = compute(n, p);
  std::lock_guard lock(mutex_);
  return memo_.emplace(key, std::move(result)).first->second;
}

VermaVector VermaModule::compute(int n, const Partition& p) const {
  if (n == 0) {
    VermaVector v = VermaVector::basis(p);
    v *= delta_ + level(p);
    return v;
  }
  if (p.empty()) {
    if (n > 0) return {};
    return VermaVector::basis({-n});
  }
  const int a = p.front();
  if (n < 0 && -n >= a) {
    Partition q{-n};
    q.insert(q.end(), p.begin(), p.end());
    return VermaVector::basis(std::move(q));
  }
  // L_n L_{-a} R = L_{-a} (L_n R) + (n + a) L_{n-a} R + delta_{n,a} (c/12)(n^3 - n) R
  const Partition rest(p.begin() + 1, p.end());
  VermaVector out = apply(-a, apply_basis(n, rest));
  VermaVector commutator = apply_basis(n - a, rest);
  commutator *= Rational(n + a);
  out += commutator;
  if (n == a) {
    VermaVector central = VermaVector::basis(rest);
    central *= c_ * Rational(n) * Rational(n * n - 1) / 12;
    out += central;
  }
  return out;
}

Rational VermaModule::shapovalov(const VermaVector& v, const VermaVector& w) const {
  // <L_{-p1} ... L_{-pk} e, w> = <e, L_{pk} ... L_{p1} w>
  Rational total(0);
  for (const auto& [p, c] : v.terms()) {
    VermaVector u = w;
    for (int part : p) {
      u = apply(part, u);
      if (u.is_zero()) break;
    }
    total += c * u.coefficient({});
  }
  return total;
}

VermaVector l_action(const LiouvilleParams& params, const Weight& weight, int n,
                     const VermaVector& v) {
  return VermaModule(params, weight).apply(n, v);
}

Rational shapovalov(const LiouvilleParams& params, const Weight& weight, const VermaVector& v,
                    const VermaVector& w) {
  return VermaModule(params, weight).shapovalov(v, w);
}

linalg::Matrix gram_matrix(const VermaModule& module, int lvl, unsigned threads) {
  const std::vector<Partition> basis = partitions(lvl);
  const std::size_t n = basis.size();
  linalg::Matrix g(n, n);
  // Upper triangle, row-interleaved across workers; every entry is exact, so
  // the schedule cannot change the result.
  auto work = [&](unsigned id, unsigned stride) {
    for (std::size_t i = id; i < n; i += stride)
      for (std::size_t j = i; j < n; ++j)
        g(i, j) = module.shapovalov(VermaVector::basis(basis[i]), VermaVector::basis(basis[j]));
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

linalg::Matrix gram_matrix(const LiouvilleParams& params, const Weight& weight, int lvl,
                           unsigned threads) {
  return gram_matrix(VermaModule(params, weight), lvl, threads);
}

linalg::Matrix gram_inverse(const VermaModule& module, int lvl) {
  const linalg::Matrix g = gram_matrix(module, lvl);
  auto inv = linalg::inverse(g);
  if (!inv) {
    throw DomainError("singular_gram", "Gram matrix at level " + std::to_string(lvl) +
                                           " is singular (determinant " +
                                           to_string(linalg::determinant(g)) + ") at Delta = " +
                                           to_string(module.delta()));
  }
  return *inv;
}

linalg::Matrix gram_inverse(const LiouvilleParams& params, const Weight& weight, int lvl) {
  return gram_inverse(VermaModule(params, weight), lvl);
}

BlockSeries character(const Weight& weight, int order) {
  if (order < 0) throw ContractViolation("negative order");
  BlockSeries s{weight.delta, {}};
  for (int n = 0; n <= order; ++n) s.coefficients.emplace_back(static_cast<long>(partition_count(n)));
  return s;
}

}  // namespace lvk::virasoro
