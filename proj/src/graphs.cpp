#include "lvk/graphs.hpp"

#include "lvk/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace lvk::graphs {

std::string branch_id(const Branch& b) {
  if (const auto* h = std::get_if<OrientedEdge>(&b)) {
    return (h->positive ? "e" : "-e") + std::to_string(h->edge);
  }
  return "t" + std::to_string(std::get<TailBranch>(b).number);
}

std::optional<Branch> parse_branch_id(const std::string& id) {
  auto digits = [](std::string_view s) -> std::optional<long> {
    if (s.empty() || s.size() > 9) return std::nullopt;
    for (char ch : s)
      if (ch < '0' || ch > '9') return std::nullopt;
    return std::stol(std::string(s));
  };
  std::string_view s(id);
  if (s.starts_with("-e")) {
    if (auto n = digits(s.substr(2))) return OrientedEdge{static_cast<std::size_t>(*n), false};
  } else if (s.starts_with("e")) {
    if (auto n = digits(s.substr(1))) return OrientedEdge{static_cast<std::size_t>(*n), true};
  } else if (s.starts_with("t")) {
    if (auto n = digits(s.substr(1))) return TailBranch{static_cast<int>(*n)};
  }
  return std::nullopt;
}

StableGraph::StableGraph(std::vector<std::string> vertex_names, std::vector<Edge> edges,
                         std::vector<Tail> tails)
    : names_(std::move(vertex_names)), edges_(std::move(edges)), tails_(std::move(tails)) {}

std::size_t StableGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (const Edge& e : edges_) d += (e.source == v) + (e.target == v);
  for (const Tail& t : tails_) d += (t.vertex == v);
  return d;
}

std::size_t StableGraph::terminal_vertex(const Branch& b) const {
  if (const auto* h = std::get_if<OrientedEdge>(&b)) {
    const Edge& e = edges_.at(h->edge);
    return h->positive ? e.target : e.source;
  }
  return tail_by_number(std::get<TailBranch>(b).number).vertex;
}

std::vector<Branch> StableGraph::all_branches() const {
  std::vector<Branch> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out.emplace_back(OrientedEdge{i, true});
    out.emplace_back(OrientedEdge{i, false});
  }
  std::vector<int> numbers;
  for (const Tail& t : tails_) numbers.push_back(t.number);
  std::sort(numbers.begin(), numbers.end());
  for (int n : numbers) out.emplace_back(TailBranch{n});
  return out;
}

std::vector<Branch> StableGraph::branches_at(std::size_t v) const {
  std::vector<Branch> out;
  for (const Branch& b : all_branches()) {
    if (terminal_vertex(b) == v) out.push_back(b);
  }
  return out;
}

const Tail& StableGraph::tail_by_number(int number) const {
  for (const Tail& t : tails_)
    if (t.number == number) return t;
  throw ContractViolation("no tail numbered " + std::to_string(number));
}

std::optional<Violation> validate(const StableGraph& graph) {
  const std::size_t nv = graph.vertex_count();
  if (nv == 0) return Violation{"structure", "graph has no vertices", std::nullopt, std::nullopt};
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges()[i];
    if (e.source >= nv || e.target >= nv) {
      return Violation{"structure", "edge " + std::to_string(i) + " has an unknown endpoint",
                       std::nullopt, std::nullopt};
    }
  }
  for (const Tail& t : graph.tails()) {
    if (t.vertex >= nv) {
      return Violation{"structure", "tail " + std::to_string(t.number) + " has an unknown vertex",
                       std::nullopt, t.number};
    }
  }

  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : graph.edges()) parent[find(e.source)] = find(e.target);
  for (std::size_t v = 1; v < nv; ++v) {
    if (find(v) != find(0)) {
      return Violation{"connectivity",
                       "vertex '" + graph.vertex_names()[v] + "' is not connected to '" +
                           graph.vertex_names()[0] + "'",
                       v, std::nullopt};
    }
  }

  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t d = graph.degree(v);
    if (d < 3) {
      return Violation{"stability",
                       "vertex '" + graph.vertex_names()[v] + "' has degree " + std::to_string(d) +
                           " < 3",
                       v, std::nullopt};
    }
  }

  std::vector<int> numbers;
  for (const Tail& t : graph.tails()) numbers.push_back(t.number);
  std::sort(numbers.begin(), numbers.end());
  for (std::size_t i = 0; i < numbers.size(); ++i) {
    const int expected = static_cast<int>(i) + 1;
    if (numbers[i] != expected) {
      const int bad = (i > 0 && numbers[i] == numbers[i - 1]) ? numbers[i] : expected;
      return Violation{"numbering",
                       "tail numbering is not a bijection onto {1,...," +
                           std::to_string(numbers.size()) + "} (offending number " +
                           std::to_string(bad) + ")",
                       std::nullopt, bad};
    }
  }
  return std::nullopt;
}

void require_valid(const StableGraph& graph) {
  if (auto v = validate(graph)) throw DomainError("invalid_graph", v->invariant + ": " + v->message);
}

std::size_t genus(const StableGraph& graph) {
  if (auto v = validate(graph)) throw ContractViolation("genus of invalid graph: " + v->message);
  return graph.edge_count() + 1 - graph.vertex_count();
}

bool is_trivalent(const StableGraph& graph) {
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    if (graph.degree(v) != 3) return false;
  return true;
}

StableGraph extend_without_tails(const StableGraph& graph) {
  std::vector<std::string> names = graph.vertex_names();
  std::vector<Edge> edges = graph.edges();
  std::set<std::string> used(names.begin(), names.end());
  std::vector<Tail> tails = graph.tails();
  std::sort(tails.begin(), tails.end(),
            [](const Tail& a, const Tail& b) { return a.number < b.number; });
  for (const Tail& t : tails) {
    std::string name = "tail" + std::to_string(t.number);
    while (used.count(name)) name += "'";
    used.insert(name);
    const std::size_t w = names.size();
    names.push_back(name);
    edges.push_back({t.vertex, w});
    edges.push_back({w, w});
  }
  return StableGraph(std::move(names), std::move(edges), {});
}

// ---------------------------------------------------------------------------
// Canonical form: individualization-refinement over vertex colorings, taking
// the smallest encoding over all leaves of the search tree.

namespace {

using Coloring = std::vector<int>;

template <class Sig>
Coloring rank_signatures(const std::vector<Sig>& sigs) {
  std::vector<Sig> sorted = sigs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Coloring out(sigs.size());
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
  }
  return out;
}

int count_colors(const Coloring& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

struct Adjacency {
  // multiplicity[u][v] for u != v; loops[v]
  std::vector<std::vector<int>> multiplicity;
  std::vector<int> loops;
};

Adjacency adjacency(const StableGraph& g) {
  const std::size_t n = g.vertex_count();
  Adjacency a{std::vector<std::vector<int>>(n, std::vector<int>(n, 0)), std::vector<int>(n, 0)};
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      ++a.loops[e.source];
    } else {
      ++a.multiplicity[e.source][e.target];
      ++a.multiplicity[e.target][e.source];
    }
  }
  return a;
}

Coloring refine(const Adjacency& adj, Coloring colors) {
  const std::size_t n = colors.size();
  for (;;) {
    std::vector<std::vector<int>> sigs(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::pair<int, int>> nb;
      for (std::size_t u = 0; u < n; ++u)
        if (adj.multiplicity[v][u]) nb.emplace_back(colors[u], adj.multiplicity[v][u]);
      std::sort(nb.begin(), nb.end());
      sigs[v].push_back(colors[v]);
      for (auto [c, m] : nb) {
        sigs[v].push_back(c);
        sigs[v].push_back(m);
      }
    }
    Coloring next = rank_signatures(sigs);
    if (count_colors(next) == count_colors(colors)) return next;
    colors = std::move(next);
  }
}

std::vector<int> encode(const StableGraph& g, const Coloring& label) {
  std::vector<int> code;
  code.push_back(static_cast<int>(g.vertex_count()));
  code.push_back(static_cast<int>(g.edge_count()));
  code.push_back(static_cast<int>(g.tail_count()));
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : g.edges()) {
    int a = label[e.source], b = label[e.target];
    if (a > b) std::swap(a, b);
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) {
    code.push_back(a);
    code.push_back(b);
  }
  std::vector<std::pair<int, int>> tails;
  for (const Tail& t : g.tails()) tails.emplace_back(t.number, label[t.vertex]);
  std::sort(tails.begin(), tails.end());
  for (auto [num, v] : tails) {
    code.push_back(num);
    code.push_back(v);
  }
  return code;
}

void search(const StableGraph& g, const Adjacency& adj, const Coloring& colors,
            std::optional<std::pair<std::vector<int>, Coloring>>& best) {
  const int k = count_colors(colors);
  if (k == static_cast<int>(colors.size())) {
    std::vector<int> code = encode(g, colors);
    if (!best || code < best->first) best.emplace(std::move(code), colors);
    return;
  }
  // First non-singleton cell.
  std::vector<int> size(k, 0);
  for (int c : colors) ++size[c];
  int cell = 0;
  while (size[cell] == 1) ++cell;
  for (std::size_t v = 0; v < colors.size(); ++v) {
    if (colors[v] != cell) continue;
    std::vector<std::pair<int, int>> sigs(colors.size());
    for (std::size_t w = 0; w < colors.size(); ++w) sigs[w] = {colors[w], w == v ? 0 : 1};
    search(g, adj, refine(adj, rank_signatures(sigs)), best);
  }
}

Coloring canonical_labeling(const StableGraph& g, std::vector<int>* code_out) {
  const Adjacency adj = adjacency(g);
  std::vector<std::vector<int>> sigs(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> nums;
    for (const Tail& t : g.tails())
      if (t.vertex == v) nums.push_back(t.number);
    std::sort(nums.begin(), nums.end());
    sigs[v].push_back(static_cast<int>(g.degree(v)));
    sigs[v].push_back(adj.loops[v]);
    sigs[v].insert(sigs[v].end(), nums.begin(), nums.end());
  }
  std::optional<std::pair<std::vector<int>, Coloring>> best;
  search(g, adj, refine(adj, rank_signatures(sigs)), best);
  if (code_out) *code_out = best->first;
  return best->second;
}

}  // namespace

CanonicalForm canonical_form(const StableGraph& graph) {
  if (graph.vertex_count() == 0) return CanonicalForm{{0, 0, 0}};
  CanonicalForm form;
  canonical_labeling(graph, &form.code);
  return form;
}

StableGraph canonical_graph(const StableGraph& graph) {
  const Coloring label = canonical_labeling(graph, nullptr);
  std::vector<std::string> names(graph.vertex_count());
  for (std::size_t v = 0; v < names.size(); ++v) names[v] = "v" + std::to_string(v);
  std::vector<Edge> edges;
  for (const Edge& e : graph.edges()) {
    std::size_t a = label[e.source], b = label[e.target];
    if (a > b) std::swap(a, b);
    edges.push_back({a, b});
  }
  std::sort(edges.begin(), edges.end());
  std::vector<Tail> tails;
  for (const Tail& t : graph.tails()) tails.push_back({static_cast<std::size_t>(label[t.vertex]), t.number});
  std::sort(tails.begin(), tails.end(),
            [](const Tail& a, const Tail& b) { return a.number < b.number; });
  return StableGraph(std::move(names), std::move(edges), std::move(tails));
}

// ---------------------------------------------------------------------------
// Enumeration. Every trivalent (0,n) graph with n >= 4 arises from a (0,n-1)
// graph by inserting tail n on an edge or a tail; every trivalent graph of
// genus g >= 1 has a non-separating edge and so arises from a (g-1,n+2) graph
// by joining tails n+1 and n+2.

namespace {

using ClassMap = std::map<CanonicalForm, StableGraph>;

void insert_class(ClassMap& out, const StableGraph& g) {
  CanonicalForm form = canonical_form(g);
  if (!out.count(form)) out.emplace(std::move(form), canonical_graph(g));
}

std::vector<std::string> fresh_names(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = "v" + std::to_string(i);
  return names;
}

ClassMap insert_tail(const ClassMap& base, int number) {
  ClassMap out;
  for (const auto& [form, g] : base) {
    const std::size_t w = g.vertex_count();
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      std::vector<Edge> edges = g.edges();
      const Edge old = edges[i];
      edges[i] = {old.source, w};
      edges.push_back({w, old.target});
      std::vector<Tail> tails = g.tails();
      tails.push_back({w, number});
      insert_class(out, StableGraph(fresh_names(w + 1), std::move(edges), std::move(tails)));
    }
    for (std::size_t i = 0; i < g.tail_count(); ++i) {
      std::vector<Edge> edges = g.edges();
      std::vector<Tail> tails = g.tails();
      edges.push_back({tails[i].vertex, w});
      tails[i].vertex = w;
      tails.push_back({w, number});
      insert_class(out, StableGraph(fresh_names(w + 1), std::move(edges), std::move(tails)));
    }
  }
  return out;
}

ClassMap join_last_tails(const ClassMap& base, int n) {
  ClassMap out;
  for (const auto& [form, g] : base) {
    const Tail& a = g.tail_by_number(n + 1);
    const Tail& b = g.tail_by_number(n + 2);
    std::vector<Edge> edges = g.edges();
    edges.push_back({a.vertex, b.vertex});
    std::vector<Tail> tails;
    for (const Tail& t : g.tails())
      if (t.number <= n) tails.push_back(t);
    insert_class(out, StableGraph(g.vertex_names(), std::move(edges), std::move(tails)));
  }
  return out;
}

ClassMap classes(int g, int n, std::map<std::pair<int, int>, ClassMap>& memo) {
  if (auto it = memo.find({g, n}); it != memo.end()) return it->second;
  ClassMap out;
  if (g == 0 && n == 3) {
    insert_class(out, StableGraph({"v0"}, {}, {{0, 1}, {0, 2}, {0, 3}}));
  } else if (g == 0) {
    out = insert_tail(classes(0, n - 1, memo), n);
  } else {
    out = join_last_tails(classes(g - 1, n + 2, memo), n);
  }
  memo.emplace(std::make_pair(g, n), out);
  return out;
}

}  // namespace

std::vector<StableGraph> enumerate_trivalent(int g, int n) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) {
    throw DomainError("parameter_range", "enumeration requires g >= 0, n >= 1 and 2g-2+n > 0");
  }
  if (3 * g - 3 + n > kMaxEnumerationEdges) {
    throw DomainError("parameter_range", "enumeration is limited to 3g-3+n <= " +
                                             std::to_string(kMaxEnumerationEdges));
  }
  std::map<std::pair<int, int>, ClassMap> memo;
  const ClassMap found = classes(g, n, memo);
  std::vector<StableGraph> out;
  out.reserve(found.size());
  for (const auto& [form, graph] : found) out.push_back(graph);
  return out;
}

// ---------------------------------------------------------------------------
// Rigidification

std::optional<std::string> check_rigidification(const StableGraph& graph,
                                                const Rigidification& tau) {
  if (tau.labels.size() != graph.vertex_count()) return "one label triple per vertex required";
  const std::vector<Branch> all = graph.all_branches();
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const auto& t = tau.labels[v];
    for (int a = 0; a < 3; ++a) {
      if (std::find(all.begin(), all.end(), t[a]) == all.end()) {
        return "branch " + branch_id(t[a]) + " does not exist";
      }
      if (graph.terminal_vertex(t[a]) != v) {
        return "branch " + branch_id(t[a]) + " is not at vertex '" + graph.vertex_names()[v] + "'";
      }
      for (int b = 0; b < a; ++b)
        if (t[a] == t[b]) return "tau is not injective at vertex '" + graph.vertex_names()[v] + "'";
    }
  }
  static const char* names[] = {"0", "1", "inf"};
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    for (std::size_t w = 0; w < graph.vertex_count(); ++w) {
      if (v == w) continue;
      for (int a = 0; a < 3; ++a) {
        const auto* h = std::get_if<OrientedEdge>(&tau.labels[v][a]);
        const auto* k = std::get_if<OrientedEdge>(&tau.labels[w][a]);
        if (h && k && *h == -*k) {
          return "both ends of edge " + std::to_string(h->edge) + " are labelled " + names[a];
        }
      }
    }
  return std::nullopt;
}

namespace {

bool assign(const StableGraph& graph, std::size_t v, Rigidification& tau) {
  if (v == graph.vertex_count()) return true;
  const std::vector<Branch> br = graph.branches_at(v);
  const std::size_t k = br.size();
  auto clashes = [&](const Branch& b, int a) {
    const auto* h = std::get_if<OrientedEdge>(&b);
    if (!h) return false;
    for (std::size_t w = 0; w < v; ++w) {
      const auto* other = std::get_if<OrientedEdge>(&tau.labels[w][a]);
      if (other && *other == -*h) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < k; ++i) {
    if (clashes(br[i], 0)) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i || clashes(br[j], 1)) continue;
      for (std::size_t l = 0; l < k; ++l) {
        if (l == i || l == j || clashes(br[l], 2)) continue;
        tau.labels[v] = {br[i], br[j], br[l]};
        if (assign(graph, v + 1, tau)) return true;
      }
    }
  }
  return false;
}

}  // namespace

Rigidification find_rigidification(const StableGraph& graph) {
  require_valid(graph);
  Rigidification tau;
  tau.labels.resize(graph.vertex_count(), {TailBranch{}, TailBranch{}, TailBranch{}});
  if (!assign(graph, 0, tau)) {
    throw DomainError("no_rigidification", "backtracking found no rigidification");
  }
  return tau;
}

CurveDescription degenerate_curve_description(const StableGraph& graph, const Rigidification& tau) {
  require_valid(graph);
  if (auto bad = check_rigidification(graph, tau)) {
    throw DomainError("invalid_rigidification", *bad);
  }
  static const char* names[] = {"0", "1", "inf"};
  auto mark_for = [&](const Branch& b) {
    const std::size_t v = graph.terminal_vertex(b);
    for (int a = 0; a < 3; ++a)
      if (tau.labels[v][a] == b) return MarkedPoint{b, std::string(names[a])};
    return MarkedPoint{b, std::nullopt};
  };
  CurveDescription out;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    ProjectiveLine line{v, {}};
    for (const Branch& b : graph.branches_at(v)) {
      line.marks.push_back(mark_for(b));
      if (!line.marks.back().fixed) out.free_coordinates.push_back(b);
    }
    out.lines.push_back(std::move(line));
  }
  std::sort(out.free_coordinates.begin(), out.free_coordinates.end());
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const OrientedEdge plus{i, true};
    const Edge& e = graph.edges()[i];
    out.identifications.push_back(
        {i, mark_for(plus), e.target, mark_for(-plus), e.source});
  }
  return out;
}

std::string CurveDescription::to_text(const StableGraph& graph) const {
  auto show = [](const MarkedPoint& m) {
    return m.fixed ? *m.fixed : "alpha[" + branch_id(m.branch) + "]";
  };
  std::ostringstream out;
  for (const ProjectiveLine& line : lines) {
    out << "P[" << graph.vertex_names()[line.vertex] << "]:";
    for (const MarkedPoint& m : line.marks) out << ' ' << branch_id(m.branch) << '=' << show(m);
    out << '\n';
  }
  for (const Identification& id : identifications) {
    out << "edge " << id.edge << ": " << show(id.at_terminal) << " on P["
        << graph.vertex_names()[id.terminal_line] << "] ~ " << show(id.at_source) << " on P["
        << graph.vertex_names()[id.source_line] << "]\n";
  }
  return out.str();
}

}  // namespace lvk::graphs
