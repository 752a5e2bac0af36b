#pragma once

#include "lvk/graphs.hpp"
#include "lvk/series.hpp"

#include <map>
#include <optional>
#include <vector>

namespace lvk::schottky {

/// 2x2 matrix over a series ring, meaningful up to a unit scalar.
struct ProjectiveMatrix {
  TruncatedSeries a, b, c, d;

  static ProjectiveMatrix identity(const RingPtr& ring);

  TruncatedSeries determinant() const { return a * d - b * c; }
  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }

  friend ProjectiveMatrix operator*(const ProjectiveMatrix& x, const ProjectiveMatrix& y);
};

/// Projective equality: every 2x2 cross product of corresponding entries
/// agrees (six tests). No entry is ever divided.
bool projectively_equal(const ProjectiveMatrix& x, const ProjectiveMatrix& y);

/// alpha_h; nullopt stands for infinity (h in E_inf).
using AlphaValue = std::optional<Rational>;
using AlphaTable = std::map<graphs::OrientedEdge, AlphaValue>;

/// Oriented tailless stable graph, the split of +-E into finite and infinite
/// branches, and the gluing parameters q_e as formal variables "q<e>".
class SchottkyData {
 public:
  /// Throws DomainError("invalid_schottky_data") when the graph has tails, a
  /// branch lacks an alpha value, or the admissibility conditions fail.
  SchottkyData(graphs::StableGraph graph, AlphaTable alpha, int cutoff);

  const graphs::StableGraph& graph() const noexcept { return graph_; }
  const RingPtr& ring() const noexcept { return ring_; }
  int cutoff() const noexcept { return ring_->cutoff; }
  const AlphaValue& alpha(const graphs::OrientedEdge& h) const { return alpha_.at(h); }
  const AlphaTable& alpha_table() const noexcept { return alpha_; }
  TruncatedSeries q(std::size_t edge) const;

 private:
  graphs::StableGraph graph_;
  AlphaTable alpha_;
  RingPtr ring_;
};

/// Violated admissibility condition, or nullopt.
std::optional<std::string> check_alpha(const graphs::StableGraph& graph, const AlphaTable& alpha);

/// alpha = 0, 1, inf on tau_v(0), tau_v(1), tau_v(inf); any remaining branches
/// get distinct values 2, 3, ... in branch order.
AlphaTable alpha_from_rigidification(const graphs::StableGraph& graph,
                                     const graphs::Rigidification& tau);

/// phi_h with the scalar 1/(alpha_h - alpha_{-h}) dropped; the normalized
/// limit forms when one end is infinite.
ProjectiveMatrix phi(const SchottkyData& data, const graphs::OrientedEdge& h);

/// The denominator-cleared fixed-point relation of phi_h evaluated at the
/// rational point z, checked coefficient-wise. Throws ContractViolation when
/// z is a fixed point.
bool verify_cross_ratio(const SchottkyData& data, const graphs::OrientedEdge& h, const Rational& z);

/// phi_{h(l)} ... phi_{h(1)} for a reduced composable path h(1)...h(l).
ProjectiveMatrix path_matrix(const SchottkyData& data, const std::vector<graphs::OrientedEdge>& path);

/// The reason a path is not reduced and composable, or nullopt.
std::optional<std::string> check_path(const graphs::StableGraph& graph,
                                      const std::vector<graphs::OrientedEdge>& path);

/// phi(-h), which is projectively phi(h)^{-1}.
ProjectiveMatrix inverse_via_negation(const SchottkyData& data, const graphs::OrientedEdge& h);

struct FixedPoints {
  Rational attracting;        // alpha_h
  Rational repelling;         // alpha_{-h}
  TruncatedSeries multiplier; // q_h
};

/// Confirms (alpha_h, 1) and (alpha_{-h}, 1) are eigenvectors of phi(h) with
/// eigenvalue ratio q_h; throws DomainError when a check fails or an end is
/// infinite.
FixedPoints fixed_point_multiplier(const SchottkyData& data, const graphs::OrientedEdge& h);

/// Deterministic BFS spanning tree from `base`: tree edge ids in discovery order.
std::vector<std::size_t> spanning_tree(const graphs::StableGraph& graph, std::size_t base);

/// Reduced loop at `base` through each non-tree edge, in edge order.
std::vector<std::vector<graphs::OrientedEdge>> generator_loops(
    const graphs::StableGraph& graph, std::size_t base, const std::vector<std::size_t>& tree);

/// One matrix per non-tree edge; size equals the genus.
std::vector<ProjectiveMatrix> schottky_generators(const SchottkyData& data, std::size_t base,
                                                  std::optional<std::vector<std::size_t>> tree = {});

}  // namespace lvk::schottky
