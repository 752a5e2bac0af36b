#pragma once

#include "lvk/schottky.hpp"

#include <optional>
#include <random>
#include <vector>

namespace schottky_fixtures {

using lvk::Rational;
using lvk::graphs::OrientedEdge;
using lvk::graphs::StableGraph;
using lvk::schottky::AlphaTable;
using lvk::schottky::ProjectiveMatrix;

// Two vertices, each with a loop, joined by an edge (genus 2, no tails).
inline StableGraph dumbbell() { return StableGraph({"a", "b"}, {{0, 0}, {0, 1}, {1, 1}}, {}); }
// Two vertices joined by three edges (genus 2, no tails).
inline StableGraph theta() { return StableGraph({"a", "b"}, {{0, 1}, {0, 1}, {0, 1}}, {}); }
// Complete graph on four vertices.
inline StableGraph k4() {
  return StableGraph({"a", "b", "c", "d"}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {});
}

inline std::vector<OrientedEdge> oriented(const StableGraph& g) {
  std::vector<OrientedEdge> out;
  for (const lvk::graphs::Branch& b : g.all_branches()) out.push_back(std::get<OrientedEdge>(b));
  return out;
}

inline AlphaTable random_alpha(const StableGraph& g, std::mt19937_64& rng, bool allow_infinity) {
  for (;;) {
    AlphaTable alpha;
    for (const OrientedEdge& h : oriented(g)) {
      if (allow_infinity && rng() % 6 == 0) {
        alpha[h] = std::nullopt;
      } else {
        alpha[h] = Rational(static_cast<long>(rng() % 11) - 5);
      }
    }
    if (!lvk::schottky::check_alpha(g, alpha)) return alpha;
  }
}

inline std::vector<OrientedEdge> random_reduced_path(const StableGraph& g, std::size_t start,
                                              std::optional<OrientedEdge> previous, std::size_t length,
                                              std::mt19937_64& rng) {
  std::vector<OrientedEdge> path;
  std::size_t at = start;
  while (path.size() < length) {
    std::vector<OrientedEdge> options;
    for (const OrientedEdge& h : oriented(g))
      if (g.terminal_vertex(-h) == at && !(previous && h == -*previous)) options.push_back(h);
    const OrientedEdge h = options[rng() % options.size()];
    path.push_back(h);
    previous = h;
    at = g.terminal_vertex(h);
  }
  return path;
}

inline bool entries_equal(const ProjectiveMatrix& x, const ProjectiveMatrix& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

}  // namespace schottky_fixtures
