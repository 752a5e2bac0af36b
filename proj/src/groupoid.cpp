#include "lvk/groupoid.hpp"

#include "lvk/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace lvk::groupoid {

using graphs::Edge;
using graphs::Tail;

namespace {

// One end of an edge (end 0 = source, 1 = target) or a tail.
struct HalfEdge {
  bool is_tail = false;
  std::size_t index = 0;  // edge index or tail index
  int end = 0;
  int tail_number = 0;

  std::tuple<bool, std::size_t, int, int> key() const {
    return is_tail ? std::tuple{true, std::size_t{0}, 0, tail_number} : std::tuple{false, index, end, 0};
  }
  friend bool operator<(const HalfEdge& a, const HalfEdge& b) { return a.key() < b.key(); }
};

std::vector<HalfEdge> outer_half_edges(const StableGraph& g, std::size_t vertex, std::size_t skip_edge) {
  std::vector<HalfEdge> out;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (i == skip_edge) continue;
    const Edge& e = g.edges()[i];
    if (e.source == vertex) out.push_back({false, i, 0, 0});
    if (e.target == vertex) out.push_back({false, i, 1, 0});
  }
  for (std::size_t i = 0; i < g.tail_count(); ++i) {
    if (g.tails()[i].vertex == vertex) out.push_back({true, i, 0, g.tails()[i].number});
  }
  std::sort(out.begin(), out.end());
  return out;
}

void reattach(std::vector<Edge>& edges, std::vector<Tail>& tails, const HalfEdge& h, std::size_t vertex) {
  if (h.is_tail) {
    tails[h.index].vertex = vertex;
  } else if (h.end == 0) {
    edges[h.index].source = vertex;
  } else {
    edges[h.index].target = vertex;
  }
}

void require_edge(const StableGraph& g, std::size_t edge) {
  if (edge >= g.edge_count()) {
    throw DomainError("invalid_move", "edge e" + std::to_string(edge) + " does not exist");
  }
}

void require_pants(const StableGraph& g) {
  graphs::require_valid(g);
  if (!graphs::is_trivalent(g)) throw DomainError("invalid_move", "graph is not trivalent");
}

}  // namespace

PantsDecomposition apply_fusing(const PantsDecomposition& decomp, std::size_t edge, Selector selector) {
  require_pants(decomp);
  require_edge(decomp, edge);
  const Edge e = decomp.edges()[edge];
  if (e.is_loop()) {
    throw DomainError("invalid_move", "fusing move needs a non-loop edge, e" + std::to_string(edge) + " is a loop");
  }
  const std::vector<HalfEdge> at_source = outer_half_edges(decomp, e.source, edge);
  const std::vector<HalfEdge> at_target = outer_half_edges(decomp, e.target, edge);
  const HalfEdge& b = at_source[1];
  const HalfEdge& c = at_target[0];
  const HalfEdge& d = at_target[1];

  std::vector<Edge> edges = decomp.edges();
  std::vector<Tail> tails = decomp.tails();
  // a stays at the source; the partner of a moves over, b moves to the target.
  reattach(edges, tails, b, e.target);
  reattach(edges, tails, selector == Selector::Left ? c : d, e.source);
  StableGraph out(decomp.vertex_names(), std::move(edges), std::move(tails));
  graphs::require_valid(out);
  return out;
}

PantsDecomposition apply_simple(const PantsDecomposition& decomp, std::size_t edge) {
  require_pants(decomp);
  require_edge(decomp, edge);
  if (!decomp.edges()[edge].is_loop()) {
    throw DomainError("invalid_move", "simple move needs a loop, e" + std::to_string(edge) + " is not one");
  }
  return decomp;
}

PantsDecomposition apply_half_twist(const PantsDecomposition& decomp, std::size_t edge) {
  require_pants(decomp);
  require_edge(decomp, edge);
  return decomp;
}

PantsDecomposition apply_move(const PantsDecomposition& decomp, const Move& move) {
  return std::visit(
      [&](const auto& m) -> PantsDecomposition {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Fusing>) return apply_fusing(decomp, m.edge, m.selector);
        else if constexpr (std::is_same_v<M, Simple>) return apply_simple(decomp, m.edge);
        else return apply_half_twist(decomp, m.edge);
      },
      move);
}

PantsDecomposition apply_word(const PantsDecomposition& decomp, const MoveWord& word) {
  PantsDecomposition current = decomp;
  for (std::size_t i = 0; i < word.size(); ++i) {
    try {
      current = apply_move(current, word[i]);
    } catch (const DomainError& err) {
      throw DomainError(err.kind(), "letter " + std::to_string(i) + " " + move_label(word[i]) + ": " + err.what());
    }
  }
  return current;
}

MoveGraph move_graph(int g, int n) {
  MoveGraph out;
  out.nodes = graphs::enumerate_trivalent(g, n);
  std::map<graphs::CanonicalForm, std::size_t> index;
  for (std::size_t i = 0; i < out.nodes.size(); ++i) index.emplace(graphs::canonical_form(out.nodes[i]), i);

  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    const StableGraph& node = out.nodes[i];
    for (std::size_t e = 0; e < node.edge_count(); ++e) {
      if (node.edges()[e].is_loop()) continue;
      for (Selector s : {Selector::Left, Selector::Right}) {
        const std::size_t j = index.at(graphs::canonical_form(apply_fusing(node, e, s)));
        if (i != j) edges.emplace(std::min(i, j), std::max(i, j));
      }
    }
  }
  out.edges.assign(edges.begin(), edges.end());

  std::vector<std::vector<std::size_t>> adj(out.nodes.size());
  for (const auto& [a, b] : out.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(out.nodes.size(), false);
  std::deque<std::size_t> queue;
  if (!out.nodes.empty()) {
    seen[0] = true;
    queue.push_back(0);
  }
  std::size_t reached = queue.size();
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      ++reached;
      queue.push_back(w);
    }
  }
  out.connected = reached == out.nodes.size();
  return out;
}

WordPhase word_phase(const MoveWord& word, const BetaAssignment& beta) {
  Rational exponent(0);
  for (const Move& m : word) {
    const auto* t = std::get_if<HalfTwist>(&m);
    if (!t) continue;
    const auto it = beta.find(t->edge);
    if (it == beta.end()) {
      throw DomainError("missing_beta", "no weight assigned to half-twisted edge e" + std::to_string(t->edge));
    }
    exponent += it->second.delta;
  }
  return {exponent, unit_phase(pi() * to_real(exponent))};
}

std::string move_label(const Move& move) {
  return std::visit(
      [](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        const std::string e = "e" + std::to_string(m.edge);
        if constexpr (std::is_same_v<M, Fusing>) {
          return "F(" + e + (m.selector == Selector::Left ? ",left)" : ",right)");
        } else if constexpr (std::is_same_v<M, Simple>) {
          return "S(" + e + ")";
        } else {
          return "T(" + e + ")";
        }
      },
      move);
}

}  // namespace lvk::groupoid
