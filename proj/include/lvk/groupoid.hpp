#pragma once

#include "lvk/graphs.hpp"
#include "lvk/numeric.hpp"
#include "lvk/virasoro.hpp"

#include <map>
#include <utility>
#include <variant>
#include <vector>

namespace lvk::groupoid {

using graphs::StableGraph;

/// A trivalent stable graph with numbered tails.
using PantsDecomposition = StableGraph;

enum class Selector { Left, Right };

/// Re-pairs the outer branches a, b (at the source of `edge`) and c, d (at its
/// target), each pair sorted by (edge id, then tail number): Left gives a|c,
/// b|d and Right gives a|d, b|c.
struct Fusing {
  std::size_t edge = 0;
  Selector selector = Selector::Left;
  friend bool operator==(const Fusing&, const Fusing&) = default;
};

struct Simple {
  std::size_t edge = 0;
  friend bool operator==(const Simple&, const Simple&) = default;
};

struct HalfTwist {
  std::size_t edge = 0;
  friend bool operator==(const HalfTwist&, const HalfTwist&) = default;
};

using Move = std::variant<Fusing, Simple, HalfTwist>;
using MoveWord = std::vector<Move>;

/// Weights on internal edges, keyed by edge index.
using BetaAssignment = std::map<std::size_t, virasoro::Weight>;

/// Throws DomainError("invalid_move") unless `edge` joins two distinct
/// trivalent vertices of a valid trivalent graph. Edge indices are preserved.
PantsDecomposition apply_fusing(const PantsDecomposition& decomp, std::size_t edge, Selector selector);

/// The S-move. At the level of isomorphism classes the one-holed torus is
/// fixed, so the graph is returned unchanged; throws unless `edge` is a loop.
PantsDecomposition apply_simple(const PantsDecomposition& decomp, std::size_t edge);

/// Does not change the graph; throws unless `edge` exists.
PantsDecomposition apply_half_twist(const PantsDecomposition& decomp, std::size_t edge);

PantsDecomposition apply_move(const PantsDecomposition& decomp, const Move& move);

/// Applies moves left to right; the error names the first inapplicable letter.
PantsDecomposition apply_word(const PantsDecomposition& decomp, const MoveWord& word);

/// Isomorphism classes of trivalent graphs of type (g, n) joined by fusing
/// moves. Node i is enumerate_trivalent(g, n)[i]; edges are pairs i < j.
struct MoveGraph {
  std::vector<StableGraph> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  bool connected = false;
};

/// Throws DomainError("parameter_range") when 3g - 3 + n exceeds the
/// enumeration bound.
MoveGraph move_graph(int g, int n);

/// exp(pi i * exponent) with exponent = sum of Delta_beta(e) over the
/// half-twist letters; fusing and simple letters contribute 1.
struct WordPhase {
  Rational exponent;
  Complex value;
};

/// Throws DomainError("missing_beta") when a half-twisted edge has no weight.
/// Numeric precision comes from the current PrecisionScope.
WordPhase word_phase(const MoveWord& word, const BetaAssignment& beta);

std::string move_label(const Move& move);  // "F(e2,left)", "S(e0)", "T(e1)"

}  // namespace lvk::groupoid
