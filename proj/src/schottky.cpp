#include "lvk/schottky.hpp"

#include "lvk/errors.hpp"

#include <deque>
#include <set>

namespace lvk::schottky {

using graphs::OrientedEdge;

ProjectiveMatrix ProjectiveMatrix::identity(const RingPtr& ring) {
  return {TruncatedSeries::constant(ring, 1), TruncatedSeries(ring), TruncatedSeries(ring),
          TruncatedSeries::constant(ring, 1)};
}

ProjectiveMatrix operator*(const ProjectiveMatrix& x, const ProjectiveMatrix& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

bool projectively_equal(const ProjectiveMatrix& x, const ProjectiveMatrix& y) {
  const TruncatedSeries* u[] = {&x.a, &x.b, &x.c, &x.d};
  const TruncatedSeries* v[] = {&y.a, &y.b, &y.c, &y.d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!(*u[i] * *v[j] == *u[j] * *v[i])) return false;
  return true;
}

std::optional<std::string> check_alpha(const graphs::StableGraph& graph, const AlphaTable& alpha) {
  if (graph.tail_count() != 0) return "graph has tails; extend it first";
  for (std::size_t e = 0; e < graph.edge_count(); ++e)
    for (bool pos : {true, false})
      if (!alpha.count(OrientedEdge{e, pos}))
        return "no alpha value for branch " + graphs::branch_id(OrientedEdge{e, pos});
  for (const auto& [h, value] : alpha) {
    if (h.edge >= graph.edge_count()) return "alpha given for unknown branch " + graphs::branch_id(h);
  }
  std::vector<OrientedEdge> infinite;
  for (const auto& [h, value] : alpha)
    if (!value) infinite.push_back(h);
  for (const OrientedEdge& h : infinite) {
    if (!alpha.at(-h)) return "edge " + std::to_string(h.edge) + " has both ends at infinity";
  }
  for (std::size_t i = 0; i < infinite.size(); ++i)
    for (std::size_t j = i + 1; j < infinite.size(); ++j)
      if (graph.terminal_vertex(infinite[i]) == graph.terminal_vertex(infinite[j]))
        return "two infinite branches at vertex '" +
               graph.vertex_names()[graph.terminal_vertex(infinite[i])] + "'";
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const AlphaValue& p = alpha.at(OrientedEdge{e, true});
    const AlphaValue& m = alpha.at(OrientedEdge{e, false});
    if (p && m && *p == *m) return "alpha_e = alpha_-e on edge " + std::to_string(e);
  }
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    std::set<Rational> seen;
    for (const graphs::Branch& b : graph.branches_at(v)) {
      const AlphaValue& value = alpha.at(std::get<OrientedEdge>(b));
      if (value && !seen.insert(*value).second)
        return "repeated alpha value at vertex '" + graph.vertex_names()[v] + "'";
    }
  }
  return std::nullopt;
}

SchottkyData::SchottkyData(graphs::StableGraph graph, AlphaTable alpha, int cutoff)
    : graph_(std::move(graph)), alpha_(std::move(alpha)) {
  if (auto v = graphs::validate(graph_)) {
    throw DomainError("invalid_graph", v->invariant + ": " + v->message);
  }
  if (auto bad = check_alpha(graph_, alpha_)) throw DomainError("invalid_schottky_data", *bad);
  if (cutoff < 0) throw DomainError("invalid_schottky_data", "cutoff must be non-negative");
  std::vector<std::string> names;
  for (std::size_t e = 0; e < graph_.edge_count(); ++e) names.push_back("q" + std::to_string(e));
  ring_ = make_ring(std::move(names), cutoff);
}

TruncatedSeries SchottkyData::q(std::size_t edge) const { return TruncatedSeries::variable(ring_, edge); }

AlphaTable alpha_from_rigidification(const graphs::StableGraph& graph,
                                     const graphs::Rigidification& tau) {
  AlphaTable alpha;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const auto& t = tau.labels.at(v);
    for (int a = 0; a < 3; ++a) {
      const auto* h = std::get_if<OrientedEdge>(&t[a]);
      if (!h) continue;
      alpha[*h] = (a == 2) ? AlphaValue{} : AlphaValue{Rational(a)};
    }
  }
  long next = 2;
  for (const graphs::Branch& b : graph.all_branches()) {
    const auto* h = std::get_if<OrientedEdge>(&b);
    if (h && !alpha.count(*h)) alpha[*h] = Rational(next++);
  }
  return alpha;
}

ProjectiveMatrix phi(const SchottkyData& data, const OrientedEdge& h) {
  const RingPtr& ring = data.ring();
  const TruncatedSeries one = TruncatedSeries::constant(ring, 1);
  const TruncatedSeries q = data.q(h.edge);
  const AlphaValue& ah = data.alpha(h);
  const AlphaValue& am = data.alpha(-h);
  if (!ah && !am) throw ContractViolation("both ends of an edge at infinity");
  if (!ah) {
    return {one, -(*am) * (one - q), TruncatedSeries(ring), q};
  }
  if (!am) {
    return {q, (*ah) * (one - q), TruncatedSeries(ring), one};
  }
  const Rational& x = *ah;
  const Rational& y = *am;
  return {x * one - y * q, -(x * y) * (one - q), one - q, -y * one + x * q};
}

bool verify_cross_ratio(const SchottkyData& data, const OrientedEdge& h, const Rational& z) {
  const ProjectiveMatrix m = phi(data, h);
  const RingPtr& ring = data.ring();
  const TruncatedSeries q = data.q(h.edge);
  const TruncatedSeries zs = TruncatedSeries::constant(ring, z);
  const TruncatedSeries num = m.a * zs + m.b;  // phi(z) = num / den
  const TruncatedSeries den = m.c * zs + m.d;
  const AlphaValue& ah = data.alpha(h);
  const AlphaValue& am = data.alpha(-h);
  if ((ah && z == *ah) || (am && z == *am)) throw ContractViolation("z is a fixed point of phi_h");
  // (phi - a)/(z - a) = q (phi - b)/(z - b), cleared of denominators; a factor
  // with an infinite fixed point degenerates to 1.
  if (!ah) {
    return den * (zs - TruncatedSeries::constant(ring, *am)) == q * (num - *am * den);
  }
  if (!am) {
    return num - *ah * den == q * (zs - TruncatedSeries::constant(ring, *ah)) * den;
  }
  const TruncatedSeries lhs = (num - *ah * den) * (zs - TruncatedSeries::constant(ring, *am));
  const TruncatedSeries rhs = q * (num - *am * den) * (zs - TruncatedSeries::constant(ring, *ah));
  return lhs == rhs;
}

std::optional<std::string> check_path(const graphs::StableGraph& graph,
                                      const std::vector<OrientedEdge>& path) {
  for (const OrientedEdge& h : path)
    if (h.edge >= graph.edge_count()) return "unknown edge " + std::to_string(h.edge);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i + 1] == -path[i]) return "path backtracks at step " + std::to_string(i + 1);
    if (graph.terminal_vertex(path[i]) != graph.terminal_vertex(-path[i + 1]))
      return "path is not composable at step " + std::to_string(i + 1);
  }
  return std::nullopt;
}

ProjectiveMatrix path_matrix(const SchottkyData& data, const std::vector<OrientedEdge>& path) {
  if (auto bad = check_path(data.graph(), path)) throw ContractViolation(*bad);
  ProjectiveMatrix out = ProjectiveMatrix::identity(data.ring());
  for (const OrientedEdge& h : path) out = phi(data, h) * out;
  return out;
}

ProjectiveMatrix inverse_via_negation(const SchottkyData& data, const OrientedEdge& h) {
  return phi(data, -h);
}

FixedPoints fixed_point_multiplier(const SchottkyData& data, const OrientedEdge& h) {
  const AlphaValue& ah = data.alpha(h);
  const AlphaValue& am = data.alpha(-h);
  if (!ah || !am) throw DomainError("degenerate_alpha", "fixed points at infinity");
  const ProjectiveMatrix m = phi(data, h);
  const RingPtr& ring = data.ring();
  // M (x, 1)^T = (x * lambda, lambda) with lambda = c x + d.
  auto eigenvalue = [&](const Rational& x) -> std::optional<TruncatedSeries> {
    const TruncatedSeries top = m.a * TruncatedSeries::constant(ring, x) + m.b;
    const TruncatedSeries bottom = m.c * TruncatedSeries::constant(ring, x) + m.d;
    if (!(top == x * bottom)) return std::nullopt;
    return bottom;
  };
  const auto la = eigenvalue(*ah);
  const auto lm = eigenvalue(*am);
  if (!la || !lm) throw DomainError("fixed_point_check", "alpha values are not fixed by phi_h");
  const TruncatedSeries q = data.q(h.edge);
  if (!(*lm == q * *la)) throw DomainError("fixed_point_check", "eigenvalue ratio differs from q_h");
  return {*ah, *am, q};
}

std::vector<std::size_t> spanning_tree(const graphs::StableGraph& graph, std::size_t base) {
  if (base >= graph.vertex_count()) throw ContractViolation("base vertex out of range");
  std::vector<bool> seen(graph.vertex_count(), false);
  std::vector<std::size_t> tree;
  std::deque<std::size_t> queue{base};
  seen[base] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
      const graphs::Edge& edge = graph.edges()[e];
      if (edge.is_loop()) continue;
      std::size_t other;
      if (edge.source == v) other = edge.target;
      else if (edge.target == v) other = edge.source;
      else continue;
      if (seen[other]) continue;
      seen[other] = true;
      tree.push_back(e);
      queue.push_back(other);
    }
  }
  return tree;
}

namespace {

// Oriented tree path from `from` to `to`.
std::vector<OrientedEdge> tree_path(const graphs::StableGraph& graph,
                                    const std::vector<std::size_t>& tree, std::size_t from,
                                    std::size_t to) {
  std::vector<std::optional<OrientedEdge>> via(graph.vertex_count());
  std::vector<bool> seen(graph.vertex_count(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : tree) {
      const graphs::Edge& edge = graph.edges()[e];
      for (bool pos : {true, false}) {
        const OrientedEdge h{e, pos};
        if (graph.terminal_vertex(-h) != v) continue;
        const std::size_t w = graph.terminal_vertex(h);
        if (seen[w]) continue;
        seen[w] = true;
        via[w] = h;
        queue.push_back(w);
      }
      (void)edge;
    }
  }
  if (!seen[to]) throw ContractViolation("spanning tree does not reach every vertex");
  std::vector<OrientedEdge> path;
  for (std::size_t v = to; v != from; v = graph.terminal_vertex(-*via[v])) path.push_back(*via[v]);
  return {path.rbegin(), path.rend()};
}

}  // namespace

std::vector<std::vector<OrientedEdge>> generator_loops(const graphs::StableGraph& graph,
                                                       std::size_t base,
                                                       const std::vector<std::size_t>& tree) {
  const std::set<std::size_t> in_tree(tree.begin(), tree.end());
  std::vector<std::vector<OrientedEdge>> loops;
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    if (in_tree.count(e)) continue;
    const OrientedEdge h{e, true};
    std::vector<OrientedEdge> loop = tree_path(graph, tree, base, graph.terminal_vertex(-h));
    loop.push_back(h);
    const std::vector<OrientedEdge> back = tree_path(graph, tree, graph.terminal_vertex(h), base);
    loop.insert(loop.end(), back.begin(), back.end());
    loops.push_back(std::move(loop));
  }
  return loops;
}

std::vector<ProjectiveMatrix> schottky_generators(const SchottkyData& data, std::size_t base,
                                                  std::optional<std::vector<std::size_t>> tree) {
  const graphs::StableGraph& graph = data.graph();
  if (graph.tail_count() != 0) {
    throw DomainError("graph_has_tails", "use extend_without_tails before building generators");
  }
  const std::vector<std::size_t> t = tree ? *tree : spanning_tree(graph, base);
  if (t.size() + 1 != graph.vertex_count()) throw ContractViolation("not a spanning tree");
  std::vector<ProjectiveMatrix> out;
  for (const auto& loop : generator_loops(graph, base, t)) out.push_back(path_matrix(data, loop));
  return out;
}

}  // namespace lvk::schottky
