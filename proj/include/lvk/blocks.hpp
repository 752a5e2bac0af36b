#pragma once

#include "lvk/numeric.hpp"
#include "lvk/virasoro.hpp"

#include <array>
#include <compare>
#include <functional>
#include <map>

namespace lvk::blocks {

using virasoro::BlockSeries;
using virasoro::LiouvilleParams;
using virasoro::Partition;

/// Descendant labels at the punctures 0, 1 and infinity.
struct PartitionTriple {
  Partition at_zero;
  Partition at_one;
  Partition at_infinity;

  int level() const;
  friend auto operator<=>(const PartitionTriple&, const PartitionTriple&) = default;
};

/// Vector fields z^{k+1} (z-1)^m d/dz used as invariance relations. Every
/// pair (k, m) with m in [m_min, m_max] whose expansions keep all terms at
/// total level <= N is applied to every admissible descendant triple.
struct RelationFamily {
  int m_min = 0;
  int m_max = 2;
};

/// Three-point block with punctures p1 -> 0, p2 -> 1, p3 -> infinity and local
/// coordinates z, z - 1, 1/z. Values are exact and already include the
/// normalization F(e (x) e (x) e).
class ThreePointBlock {
 public:
  ThreePointBlock(LiouvilleParams params, std::array<Rational, 3> deltas, Rational normalization,
                  int level, std::map<PartitionTriple, Rational> values,
                  std::size_t relations_checked);

  const LiouvilleParams& params() const noexcept { return params_; }
  const std::array<Rational, 3>& deltas() const noexcept { return deltas_; }
  const Rational& normalization() const noexcept { return normalization_; }
  int level() const noexcept { return level_; }
  std::size_t unknowns() const noexcept { return values_.size(); }
  std::size_t relations_checked() const noexcept { return relations_checked_; }
  const std::map<PartitionTriple, Rational>& values() const noexcept { return values_; }

  /// Throws ContractViolation beyond the solved level.
  const Rational& value(const PartitionTriple& t) const;

  /// Number of relations from `family` (restricted to the solved level) that
  /// the cached values fail; zero for a consistent block.
  std::size_t residual_failures(const RelationFamily& family) const;

 private:
  LiouvilleParams params_;
  std::array<Rational, 3> deltas_;
  Rational normalization_;
  int level_;
  std::map<PartitionTriple, Rational> values_;
  std::size_t relations_checked_;
};

/// Builds the invariance system over all descendant triples of total level
/// <= N and solves it exactly with F(e, e, e) = normalization. The system is
/// the stripping relations (one per unknown) plus `family` as an
/// over-determination check; throws DomainError("rank_deficient") unless the
/// solution space is exactly one-dimensional.
ThreePointBlock solve_three_point(const LiouvilleParams& params, const std::array<Rational, 3>& deltas,
                                  int level, const Rational& normalization = Rational(1),
                                  const RelationFamily& family = {});

/// Rank of the system built from `family` alone (no stripping relations) and
/// the number of unknowns; exposes whether a family pins the block by itself.
std::pair<std::size_t, std::size_t> family_rank(const LiouvilleParams& params,
                                                const std::array<Rational, 3>& deltas, int level,
                                                const RelationFamily& family);

/// Four-point sphere block: left has legs (Delta1, Delta2, beta) and is glued
/// at infinity, right has legs (beta, Delta3, Delta4) and is glued at 0.
/// c_n = sum_{lambda, mu |- n} L(e, e, lambda) Ginv_{lambda mu} R(mu, e, e).
BlockSeries glue_four_point(const LiouvilleParams& params, const ThreePointBlock& left,
                            const ThreePointBlock& right, const virasoro::Weight& beta, int order);

/// One-point torus block from a block with legs (beta, Delta_ext, beta),
/// solved to level >= 2 * order:
/// c_n = sum_{lambda, mu |- n} Ginv_{lambda mu} F(mu, e, lambda).
BlockSeries glue_torus_one_point(const LiouvilleParams& params, const ThreePointBlock& block,
                                 const virasoro::Weight& beta, int order);

/// The same trace with F replaced by the Shapovalov pairing of the two glued
/// legs; reproduces the Verma character.
BlockSeries glue_torus_diagnostic(const LiouvilleParams& params, const virasoro::Weight& beta,
                                  int order);

/// exp(i Delta (arg z + 2 pi k)) = exp(Delta log z) |z|^{-Delta} on the k-th
/// branch. Throws ContractViolation when z = 0.
Complex twist_factor(const Real& delta, const Complex& z, long winding);

/// twist_factor(Delta_beta, q, k) * sum c_n q^n.
Complex wave_function_eval(const BlockSeries& series, const Complex& q, long winding);

/// Series with the substitution q -> -q applied `half_twists` times and the
/// phase exp(i pi Delta * half_twists) recorded separately.
struct TwistedSeries {
  BlockSeries series;
  long half_twists = 0;

  Complex phase() const;
  Complex evaluate(const Complex& q, long winding) const;
  friend bool operator==(const TwistedSeries&, const TwistedSeries&) = default;
};

TwistedSeries half_dehn_twist(const BlockSeries& series);
TwistedSeries half_dehn_twist(const TwistedSeries& series);

/// sum c_n q^n exactly at rational q (the prefactor is left out).
Rational evaluate_exact(const BlockSeries& series, const Rational& q);

}  // namespace lvk::blocks
