#include "lvk/blocks.hpp"

#include "lvk/errors.hpp"

#include <algorithm>

namespace lvk::blocks {

using linalg::SparseEliminator;
using linalg::SparseRow;
using virasoro::VermaModule;
using virasoro::VermaVector;

int PartitionTriple::level() const {
  return virasoro::level(at_zero) + virasoro::level(at_one) + virasoro::level(at_infinity);
}

namespace {

struct Mode {
  int index;
  Rational coefficient;
};

// z^{k+1} (z-1)^m d/dz expanded at each puncture as sum_j chi_j z_i^{j+1} d/dz_i,
// keeping modes j <= max_mode (higher modes annihilate the vector they act on).

std::vector<Mode> modes_at_zero(int k, int m, int max_mode) {
  // (z-1)^m = sum_i (-1)^{m+i} binom(m, i) z^i
  std::vector<Mode> out;
  for (int i = 0; k + i <= max_mode; ++i) {
    Rational c = binomial(m, i);
    if (c == 0) {
      if (m >= 0) break;
      continue;
    }
    if ((m + i) % 2 != 0) c = -c;
    out.push_back({k + i, c});
  }
  return out;
}

std::vector<Mode> modes_at_one(int k, int m, int max_mode) {
  // u = z - 1: (1+u)^{k+1} u^m d/du
  std::vector<Mode> out;
  for (int i = 0; m - 1 + i <= max_mode; ++i) {
    const Rational c = binomial(k + 1, i);
    if (c == 0) {
      if (k + 1 >= 0) break;
      continue;
    }
    out.push_back({m - 1 + i, c});
  }
  return out;
}

std::vector<Mode> modes_at_infinity(int k, int m, int max_mode) {
  // w = 1/z, d/dz = -w^2 d/dw: -w^{1-k-m} (1-w)^m d/dw
  std::vector<Mode> out;
  for (int i = 0; -k - m + i <= max_mode; ++i) {
    Rational c = binomial(m, i);
    if (c == 0) {
      if (m >= 0) break;
      continue;
    }
    if (i % 2 == 0) c = -c;
    out.push_back({-k - m + i, c});
  }
  return out;
}

// Largest level increase among the terms of the relation for (k, m).
int level_raise(int k, int m) { return std::max({-k, 1 - m, k + m}); }

class RelationBuilder {
 public:
  RelationBuilder(const LiouvilleParams& params, const std::array<Rational, 3>& deltas, int level)
      : modules_{VermaModule(params.c, deltas[0]), VermaModule(params.c, deltas[1]),
                 VermaModule(params.c, deltas[2])},
        level_(level) {
    for (int t1 = 0; t1 <= level; ++t1)
      for (int t2 = 0; t1 + t2 <= level; ++t2)
        for (int t3 = 0; t1 + t2 + t3 <= level; ++t3)
          for (const Partition& a : virasoro::partitions(t1))
            for (const Partition& b : virasoro::partitions(t2))
              for (const Partition& c : virasoro::partitions(t3)) {
                index_.emplace(PartitionTriple{a, b, c}, triples_.size());
                triples_.push_back({a, b, c});
              }
  }

  const std::vector<PartitionTriple>& triples() const { return triples_; }
  std::size_t column(const PartitionTriple& t) const { return index_.at(t); }
  int level() const { return level_; }

  // Linear form F(rho_chi(v)) for chi = z^{k+1}(z-1)^m d/dz.
  SparseRow row(int k, int m, const PartitionTriple& v) const {
    SparseRow out;
    const Partition* legs[3] = {&v.at_zero, &v.at_one, &v.at_infinity};
    for (int leg = 0; leg < 3; ++leg) {
      const int max_mode = virasoro::level(*legs[leg]);
      std::vector<Mode> modes = leg == 0   ? modes_at_zero(k, m, max_mode)
                                : leg == 1 ? modes_at_one(k, m, max_mode)
                                           : modes_at_infinity(k, m, max_mode);
      for (const Mode& mode : modes) {
        const VermaVector image = modules_[leg].apply_basis(mode.index, *legs[leg]);
        for (const auto& [p, c] : image.terms()) {
          PartitionTriple t = v;
          (leg == 0 ? t.at_zero : leg == 1 ? t.at_one : t.at_infinity) = p;
          auto [it, inserted] = out.try_emplace(index_.at(t), 0);
          it->second += mode.coefficient * c;
          if (it->second == 0) out.erase(it);
        }
      }
    }
    return out;
  }

  // Calls f(k, m, v) for every admissible relation of the family.
  template <class F>
  void for_each_family_relation(const RelationFamily& family, F&& f) const {
    for (int m = family.m_min; m <= family.m_max; ++m)
      for (int k = -level_; k <= level_ - m; ++k) {
        const int raise = level_raise(k, m);
        if (raise > level_) continue;
        for (const PartitionTriple& v : triples_)
          if (v.level() + raise <= level_) f(k, m, v);
      }
  }

 private:
  std::array<VermaModule, 3> modules_;
  int level_;
  std::vector<PartitionTriple> triples_;
  std::map<PartitionTriple, std::size_t> index_;
};

// The relation that expresses `t` through unknowns of smaller
// (level, |at_zero| + |at_infinity|): strip the leading operator at 0, else at
// infinity, else at 1.
struct Stripping {
  int k;
  int m;
  PartitionTriple v;
};

Stripping stripping_relation(const PartitionTriple& t) {
  auto tail = [](const Partition& p) { return Partition(p.begin() + 1, p.end()); };
  if (!t.at_zero.empty()) {
    const int n = t.at_zero.front();
    return {-n, 0, {tail(t.at_zero), t.at_one, t.at_infinity}};
  }
  if (!t.at_infinity.empty()) {
    const int n = t.at_infinity.front();
    return {n, 0, {t.at_zero, t.at_one, tail(t.at_infinity)}};
  }
  const int n = t.at_one.front();
  return {0, 1 - n, {t.at_zero, tail(t.at_one), t.at_infinity}};
}

std::pair<int, int> stripping_key(const PartitionTriple& t) {
  return {t.level(), virasoro::level(t.at_zero) + virasoro::level(t.at_infinity)};
}

}  // namespace

ThreePointBlock::ThreePointBlock(LiouvilleParams params, std::array<Rational, 3> deltas,
                                 Rational normalization, int level,
                                 std::map<PartitionTriple, Rational> values,
                                 std::size_t relations_checked)
    : params_(std::move(params)),
      deltas_(std::move(deltas)),
      normalization_(std::move(normalization)),
      level_(level),
      values_(std::move(values)),
      relations_checked_(relations_checked) {}

const Rational& ThreePointBlock::value(const PartitionTriple& t) const {
  const auto it = values_.find(t);
  if (it == values_.end()) {
    throw ContractViolation("three-point value beyond solved level " + std::to_string(level_));
  }
  return it->second;
}

std::size_t ThreePointBlock::residual_failures(const RelationFamily& family) const {
  const RelationBuilder builder(params_, deltas_, level_);
  std::size_t failures = 0;
  builder.for_each_family_relation(family, [&](int k, int m, const PartitionTriple& v) {
    Rational sum(0);
    for (const auto& [col, c] : builder.row(k, m, v)) sum += c * values_.at(builder.triples()[col]);
    if (sum != 0) ++failures;
  });
  return failures;
}

ThreePointBlock solve_three_point(const LiouvilleParams& params, const std::array<Rational, 3>& deltas,
                                  int level, const Rational& normalization,
                                  const RelationFamily& family) {
  if (level < 0) throw ContractViolation("negative level");
  const RelationBuilder builder(params, deltas, level);
  const std::size_t unknowns = builder.triples().size();
  const std::size_t free_col = builder.column(PartitionTriple{});
  SparseEliminator system(unknowns, free_col);

  std::vector<PartitionTriple> order;
  for (const PartitionTriple& t : builder.triples())
    if (t.level() > 0) order.push_back(t);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return stripping_key(a) < stripping_key(b);
  });

  std::size_t rows = 0;
  auto add = [&](int k, int m, const PartitionTriple& v) {
    ++rows;
    if (system.add_row(builder.row(k, m, v)) == SparseEliminator::Outcome::Inconsistent) {
      throw DomainError("inconsistent_relations",
                        "invariance relations force the block to vanish (k=" + std::to_string(k) +
                            ", m=" + std::to_string(m) + ")");
    }
  };
  for (const PartitionTriple& t : order) {
    const Stripping s = stripping_relation(t);
    add(s.k, s.m, s.v);
  }
  builder.for_each_family_relation(family, add);

  if (system.rank() + 1 != unknowns || system.is_pivot(free_col)) {
    throw DomainError("rank_deficient", "invariance system has rank " + std::to_string(system.rank()) +
                                            " for " + std::to_string(unknowns) +
                                            " unknowns; expected unknowns - 1");
  }

  std::map<PartitionTriple, Rational> values;
  for (const PartitionTriple& t : builder.triples()) {
    const std::size_t col = builder.column(t);
    values.emplace(t, col == free_col ? normalization : system.solve_for(col, normalization));
  }
  return ThreePointBlock(params, deltas, normalization, level, std::move(values), rows);
}

std::pair<std::size_t, std::size_t> family_rank(const LiouvilleParams& params,
                                                const std::array<Rational, 3>& deltas, int level,
                                                const RelationFamily& family) {
  const RelationBuilder builder(params, deltas, level);
  SparseEliminator system(builder.triples().size(), std::nullopt);
  builder.for_each_family_relation(family, [&](int k, int m, const PartitionTriple& v) {
    system.add_row(builder.row(k, m, v));
  });
  return {system.rank(), builder.triples().size()};
}

BlockSeries glue_four_point(const LiouvilleParams& params, const ThreePointBlock& left,
                            const ThreePointBlock& right, const virasoro::Weight& beta, int order) {
  if (order < 0) throw ContractViolation("negative order");
  if (left.deltas()[2] != beta.delta || right.deltas()[0] != beta.delta) {
    throw ContractViolation("glued legs must carry Delta_beta");
  }
  if (left.level() < order || right.level() < order) {
    throw ContractViolation("three-point blocks are not solved to the gluing order");
  }
  const VermaModule module(params.c, beta.delta);
  BlockSeries out{beta.delta, {}};
  for (int n = 0; n <= order; ++n) {
    const std::vector<Partition> basis = virasoro::partitions(n);
    const linalg::Matrix inv = virasoro::gram_inverse(module, n);
    Rational c(0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Rational& l = left.value({{}, {}, basis[i]});
      if (l == 0) continue;
      for (std::size_t j = 0; j < basis.size(); ++j) c += l * inv(i, j) * right.value({basis[j], {}, {}});
    }
    out.coefficients.push_back(c);
  }
  return out;
}

namespace {

BlockSeries trace_contraction(const LiouvilleParams& params, const virasoro::Weight& beta,
                              int order,
                              const std::function<Rational(const Partition&, const Partition&)>& f) {
  if (order < 0) throw ContractViolation("negative order");
  const VermaModule module(params.c, beta.delta);
  BlockSeries out{beta.delta, {}};
  for (int n = 0; n <= order; ++n) {
    const std::vector<Partition> basis = virasoro::partitions(n);
    const linalg::Matrix inv = virasoro::gram_inverse(module, n);
    Rational c(0);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (inv(i, j) == 0) continue;
        c += inv(i, j) * f(basis[j], basis[i]);
      }
    out.coefficients.push_back(c);
  }
  return out;
}

}  // namespace

BlockSeries glue_torus_one_point(const LiouvilleParams& params, const ThreePointBlock& block,
                                 const virasoro::Weight& beta, int order) {
  if (block.deltas()[0] != beta.delta || block.deltas()[2] != beta.delta) {
    throw ContractViolation("both glued legs must carry Delta_beta");
  }
  if (block.level() < 2 * order) {
    throw ContractViolation("torus gluing needs the block solved to level 2 * order");
  }
  return trace_contraction(params, beta, order, [&](const Partition& mu, const Partition& lambda) {
    return block.value({mu, {}, lambda});
  });
}

BlockSeries glue_torus_diagnostic(const LiouvilleParams& params, const virasoro::Weight& beta,
                                  int order) {
  const VermaModule module(params.c, beta.delta);
  return trace_contraction(params, beta, order, [&](const Partition& mu, const Partition& lambda) {
    return module.shapovalov(VermaVector::basis(mu), VermaVector::basis(lambda));
  });
}

Complex twist_factor(const Real& delta, const Complex& z, long winding) {
  if (z.re == 0 && z.im == 0) throw ContractViolation("twist factor at z = 0");
  return unit_phase(delta * (arg(z) + 2 * pi() * Real(winding)));
}

Complex wave_function_eval(const BlockSeries& series, const Complex& q, long winding) {
  if (q.re == 0 && q.im == 0) throw ContractViolation("wave function at q = 0");
  Complex sum;
  for (auto it = series.coefficients.rbegin(); it != series.coefficients.rend(); ++it) {
    sum = sum * q + Complex(to_real(*it));
  }
  return twist_factor(to_real(series.delta), q, winding) * sum;
}

Complex TwistedSeries::phase() const {
  return unit_phase(pi() * to_real(series.delta) * Real(half_twists));
}

Complex TwistedSeries::evaluate(const Complex& q, long winding) const {
  return phase() * wave_function_eval(series, q, winding);
}

TwistedSeries half_dehn_twist(const TwistedSeries& s) {
  TwistedSeries out = s;
  for (std::size_t n = 1; n < out.series.coefficients.size(); n += 2) {
    out.series.coefficients[n] = -out.series.coefficients[n];
  }
  ++out.half_twists;
  return out;
}

TwistedSeries half_dehn_twist(const BlockSeries& series) { return half_dehn_twist(TwistedSeries{series, 0}); }

Rational evaluate_exact(const BlockSeries& series, const Rational& q) {
  Rational sum(0);
  for (auto it = series.coefficients.rbegin(); it != series.coefficients.rend(); ++it) sum = sum * q + *it;
  return sum;
}

}  // namespace lvk::blocks
