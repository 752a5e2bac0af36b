#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lvk::graphs {

/// Edge stored once with a chosen positive direction source -> target.
/// A loop has source == target.
struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;

  bool is_loop() const noexcept { return source == target; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Tail {
  std::size_t vertex = 0;
  int number = 0;

  friend auto operator<=>(const Tail&, const Tail&) = default;
};

/// h in +-E: +e points from source to target, -e the other way.
struct OrientedEdge {
  std::size_t edge = 0;
  bool positive = true;

  OrientedEdge operator-() const noexcept { return {edge, !positive}; }
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
  // +e sorts before -e.
  friend std::strong_ordering operator<=>(const OrientedEdge& a, const OrientedEdge& b) {
    if (auto c = a.edge <=> b.edge; c != 0) return c;
    return (!a.positive) <=> (!b.positive);
  }
};

struct TailBranch {
  int number = 0;
  friend auto operator<=>(const TailBranch&, const TailBranch&) = default;
};

/// A branch at a vertex: an incoming oriented edge or a tail. Ordered by
/// (edge id, sign with + first), then tail number, edges before tails.
using Branch = std::variant<OrientedEdge, TailBranch>;

std::string branch_id(const Branch& b);             // "e3", "-e3", "t1"
std::optional<Branch> parse_branch_id(const std::string& id);

/// Combinatorial skeleton of a degenerate pointed curve. Construction does not
/// validate; use validate() for the stable-graph invariants.
class StableGraph {
 public:
  StableGraph() = default;
  StableGraph(std::vector<std::string> vertex_names, std::vector<Edge> edges,
              std::vector<Tail> tails);

  std::size_t vertex_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t tail_count() const noexcept { return tails_.size(); }

  const std::vector<std::string>& vertex_names() const noexcept { return names_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Tail>& tails() const noexcept { return tails_; }

  /// Loops count twice, tails once.
  std::size_t degree(std::size_t v) const;

  /// v_h: the terminal vertex of an oriented edge, or the vertex of a tail.
  std::size_t terminal_vertex(const Branch& b) const;

  /// Branches h with v_h = v in canonical branch order.
  std::vector<Branch> branches_at(std::size_t v) const;

  /// Every element of +-E and T in canonical branch order.
  std::vector<Branch> all_branches() const;

  const Tail& tail_by_number(int number) const;

  friend bool operator==(const StableGraph&, const StableGraph&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<Tail> tails_;
};

struct Violation {
  std::string invariant;  // "structure", "connectivity", "stability", "numbering"
  std::string message;
  std::optional<std::size_t> vertex;
  std::optional<int> tail;
};

/// nullopt when the graph is a valid stable graph with numbered tails;
/// otherwise the first violated invariant.
std::optional<Violation> validate(const StableGraph& graph);

/// Throws DomainError("invalid_graph") carrying the violation message.
void require_valid(const StableGraph& graph);

/// First Betti number |E| - |V| + 1.
std::size_t genus(const StableGraph& graph);

bool is_trivalent(const StableGraph& graph);

/// Replaces every tail by an edge to a new vertex carrying a loop.
StableGraph extend_without_tails(const StableGraph& graph);

/// Invariant of a graph under vertex relabeling and edge reordering;
/// tails are distinguished by their numbers.
struct CanonicalForm {
  std::vector<int> code;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const StableGraph& graph);

/// The representative of the isomorphism class whose vertices are named
/// v0, v1, ... in canonical order and whose edges and tails are sorted.
StableGraph canonical_graph(const StableGraph& graph);

/// Connected trivalent stable graphs of genus g with n numbered tails, one per
/// isomorphism class, sorted by canonical form. Requires n >= 1,
/// 2g - 2 + n > 0 and 3g - 3 + n <= kMaxEnumerationEdges.
std::vector<StableGraph> enumerate_trivalent(int g, int n);

inline constexpr int kMaxEnumerationEdges = 6;

/// tau_v(0), tau_v(1), tau_v(inf) for every vertex.
struct Rigidification {
  std::vector<std::array<Branch, 3>> labels;
};

/// nullopt when tau is a rigidification of the (oriented) graph.
std::optional<std::string> check_rigidification(const StableGraph& graph,
                                                const Rigidification& tau);

/// First rigidification found by backtracking in canonical branch order.
Rigidification find_rigidification(const StableGraph& graph);

struct MarkedPoint {
  Branch branch;
  std::optional<std::string> fixed;  // "0", "1", "inf"; nullopt for a free coordinate
};

struct ProjectiveLine {
  std::size_t vertex = 0;
  std::vector<MarkedPoint> marks;
};

struct Identification {
  std::size_t edge = 0;
  MarkedPoint at_terminal;  // alpha_e on P_{v_e}
  std::size_t terminal_line = 0;
  MarkedPoint at_source;    // alpha_{-e} on P_{v_{-e}}
  std::size_t source_line = 0;
};

struct CurveDescription {
  std::vector<ProjectiveLine> lines;
  std::vector<Identification> identifications;
  std::vector<Branch> free_coordinates;

  std::string to_text(const StableGraph& graph) const;
};

CurveDescription degenerate_curve_description(const StableGraph& graph, const Rigidification& tau);

}  // namespace lvk::graphs
