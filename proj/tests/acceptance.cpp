// One line per acceptance criterion; exits nonzero when any fails.

#include "cli_cases.hpp"
#include "lvk/blocks.hpp"
#include "lvk/groupoid.hpp"
#include "lvk/schottky.hpp"
#include "lvk/virasoro.hpp"
#include "oracles.hpp"
#include "schottky_fixtures.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace lvk;
using virasoro::LiouvilleParams;
using virasoro::VermaModule;
using virasoro::VermaVector;
using virasoro::Weight;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, double a, double b = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

Rational small_rational(std::mt19937_64& rng, long top = 9, long bottom = 7) {
  return Rational(1 + static_cast<long>(rng() % top), 1 + static_cast<long>(rng() % bottom));
}

LiouvilleParams random_params(std::mt19937_64& rng) { return LiouvilleParams::from_b(small_rational(rng, 5, 5)); }

Weight random_weight(const LiouvilleParams& p, std::mt19937_64& rng) {
  return virasoro::weight_from_momentum(p, small_rational(rng));
}

VermaVector random_vector(std::mt19937_64& rng, int max_level) {
  VermaVector v;
  const int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    const auto basis = virasoro::partitions(static_cast<int>(rng() % (max_level + 1)));
    v.add(basis[rng() % basis.size()], Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 4)));
  }
  return v;
}

Outcome ac1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  int failures = 0;
  int nonzero = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const LiouvilleParams p = random_params(rng);
    const VermaModule m(p, random_weight(p, rng));
    const int n = static_cast<int>(rng() % 13) - 6;
    const int k = static_cast<int>(rng() % 13) - 6;
    const VermaVector v = random_vector(rng, 6);
    const VermaVector lhs = m.apply(n, m.apply(k, v)) - m.apply(k, m.apply(n, v));
    VermaVector rhs = Rational(n - k) * m.apply(n + k, v);
    if (n + k == 0) rhs += p.c / 12 * Rational(n * (n * n - 1)) * v;
    if (!(lhs == rhs)) ++failures;
    nonzero += !lhs.is_zero();
  }
  const double s = seconds_since(t0);
  return {failures == 0 && s < 30,
          fmt("500 exact commutator checks (%.0f with nonzero bracket), ", nonzero) +
              fmt("%.0f failures, %.2f s", failures, s)};
}

Outcome ac2() {
  std::mt19937_64 rng(1002);
  int failures = 0;
  int checks = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const LiouvilleParams p = random_params(rng);
    const VermaModule m(p, random_weight(p, rng));
    const int n = 1 + static_cast<int>(rng() % 5);
    const VermaVector v = random_vector(rng, 5 - n);
    const VermaVector u = random_vector(rng, 5);
    failures += !(m.shapovalov(m.apply(-n, v), u) == m.shapovalov(v, m.apply(n, u)));
    failures += !(m.shapovalov(u, v) == m.shapovalov(v, u));
    checks += 2;
  }
  for (int trial = 0; trial < 3; ++trial) {
    const LiouvilleParams p = random_params(rng);
    const Weight w = random_weight(p, rng);
    oracle::WordExpansion words(p.c, w.delta);
    for (int level = 0; level <= 5; ++level) {
      const linalg::Matrix g = virasoro::gram_matrix(p, w, level);
      failures += !g.is_symmetric();
      ++checks;
      if (level > 4) continue;
      const auto basis = virasoro::partitions(level);
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
          failures += !(g(i, j) == words.pairing(basis[i], basis[j]));
          ++checks;
        }
    }
  }
  return {failures == 0, fmt("%.0f exact adjointness, symmetry and word-oracle checks, %.0f failures", checks, failures)};
}

Outcome ac3() {
  const auto p = oracle::partition_numbers(10);
  bool ok = p[4] == 5 && p[10] == 42;
  for (int n = 0; n <= 10; ++n) {
    ok = ok && virasoro::partitions(n).size() == static_cast<std::size_t>(p[n]);
    ok = ok && oracle::partitions_brute(n).size() == static_cast<std::size_t>(p[n]);
  }
  const virasoro::BlockSeries ch = virasoro::character(Weight::from_delta(Rational(7, 3)), 10);
  ok = ok && ch.coefficients.size() == 11;
  for (int n = 0; ok && n <= 10; ++n) ok = ch.coefficients[n] == p[n];
  return {ok, "level dimensions and character coefficients equal p(n) for n <= 10"};
}

Outcome ac4() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1004);
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const LiouvilleParams p = random_params(rng);
    const Rational d1 = random_weight(p, rng).delta, d2 = random_weight(p, rng).delta,
                   d3 = random_weight(p, rng).delta, d4 = random_weight(p, rng).delta;
    const Weight beta = random_weight(p, rng);
    const int order = 1 + trial % 6;
    const blocks::ThreePointBlock left = blocks::solve_three_point(p, {d1, d2, beta.delta}, order, small_rational(rng));
    const blocks::ThreePointBlock right = blocks::solve_three_point(p, {beta.delta, d3, d4}, order, small_rational(rng));
    const virasoro::BlockSeries s = blocks::glue_four_point(p, left, right, beta, order);
    failures += !(s.coefficients[0] == left.value({}) * right.value({}));
  }
  const double s = seconds_since(t0);
  return {failures == 0 && s < 120, fmt("50 samples at orders 1..6, %.0f failures, %.2f s", failures, s)};
}

Outcome ac5() {
  std::mt19937_64 rng(1005);
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const LiouvilleParams p = random_params(rng);
    const Rational d1 = random_weight(p, rng).delta, d2 = random_weight(p, rng).delta,
                   d3 = random_weight(p, rng).delta, d4 = random_weight(p, rng).delta;
    const Weight beta = random_weight(p, rng);
    const virasoro::BlockSeries s =
        blocks::glue_four_point(p, blocks::solve_three_point(p, {d1, d2, beta.delta}, 1),
                                blocks::solve_three_point(p, {beta.delta, d3, d4}, 1), beta, 1);
    failures += !(s.coefficients[1] == oracle::four_point_c1(d1, d2, d3, d4, beta.delta));
  }
  return {failures == 0, fmt("50 exact level-one coefficients against the oracle, %.0f failures", failures)};
}

Outcome ac6() {
  const LiouvilleParams p = LiouvilleParams::from_b(Rational(3, 5));
  const Weight beta = virasoro::weight_from_momentum(p, Rational(2, 7));
  const virasoro::BlockSeries s = blocks::glue_torus_diagnostic(p, beta, 8);
  const auto pn = oracle::partition_numbers(8);
  bool ok = s.coefficients.size() == 9;
  for (int n = 0; ok && n <= 8; ++n) ok = s.coefficients[n] == pn[n];
  return {ok && s == virasoro::character(beta, 8), "diagnostic trace equals the character through order 8"};
}

// Value at 0 of the interpolating polynomial through (x_i, y_i).
Real neville_at_zero(std::vector<Real> x, std::vector<Real> y) {
  const std::size_t n = x.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 0; i + k < n; ++i) y[i] = (x[i + k] * y[i] - x[i] * y[i + 1]) / (x[i + k] - x[i]);
  return y[0];
}

Outcome ac7() {
  const PrecisionScope scope(50);
  const Real tol("1e-30");
  std::mt19937_64 rng(1007);
  bool ok = true;
  Real worst_phase = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Rational delta = small_rational(rng);
    const virasoro::BlockSeries s{delta, {Rational(1), small_rational(rng), -small_rational(rng)}};
    const blocks::TwistedSeries twice = blocks::half_dehn_twist(blocks::half_dehn_twist(s));
    ok = ok && twice.series == s && twice.half_twists == 2;
    const Complex expected = unit_phase(2 * pi() * to_real(delta));
    const Real err = abs(twice.phase() - expected);
    worst_phase = std::max(worst_phase, err);
    const Complex q(Real("0.013"), Real("-0.021"));
    const Real eval_err = abs(twice.evaluate(q, 0) - blocks::wave_function_eval(s, q, 0) * expected);
    ok = ok && err < tol && eval_err < tol;
  }

  const LiouvilleParams p = LiouvilleParams::from_b(Rational(4, 5));
  const Rational db(5, 4);
  const virasoro::BlockSeries series = blocks::glue_four_point(
      p, blocks::solve_three_point(p, {Rational(1, 3), Rational(1, 2), db}, 5),
      blocks::solve_three_point(p, {db, Rational(2, 3), Rational(3, 4)}, 5), Weight::from_delta(db), 5);
  std::vector<Real> xs, ys;
  bool monotone = true;
  Real previous = -1;
  for (int k = 1; k <= 6; ++k) {
    const Real q = boost::multiprecision::pow(Real(10), -k);
    const Complex v = blocks::wave_function_eval(series, Complex(q), 0);
    const Real gap = boost::multiprecision::abs(v.re - to_real(series.coefficients[0]));
    if (previous >= 0 && !(gap < previous)) monotone = false;
    previous = gap;
    xs.push_back(q);
    ys.push_back(v.re);
  }
  const Real limit_err = boost::multiprecision::abs(neville_at_zero(xs, ys) - to_real(series.coefficients[0]));
  ok = ok && monotone && limit_err < Real("1e-20");
  std::ostringstream detail;
  detail << "double half-twist phase error " << worst_phase.str(3, std::ios::scientific)
         << ", extrapolated c0 error " << limit_err.str(3, std::ios::scientific);
  return {ok, detail.str()};
}

Outcome ac8() {
  using namespace schottky_fixtures;
  using namespace lvk::schottky;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1008);
  const StableGraph graphs_[] = {dumbbell(), theta(), k4()};
  int failures = 0;
  int cross = 0;
  while (cross < 100) {
    const StableGraph& g = graphs_[cross % 3];
    const SchottkyData data(g, random_alpha(g, rng, cross % 2 == 1), 4);
    const auto hs = oriented(g);
    const OrientedEdge h = hs[rng() % hs.size()];
    const Rational z(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 5));
    if ((data.alpha(h) && *data.alpha(h) == z) || (data.alpha(-h) && *data.alpha(-h) == z)) continue;
    failures += !verify_cross_ratio(data, h, z);
    ++cross;
  }
  for (const StableGraph& g : graphs_) {
    for (int trial = 0; trial < 5; ++trial) {
      const SchottkyData data(g, random_alpha(g, rng, trial % 2 == 1), 4);
      const ProjectiveMatrix id = ProjectiveMatrix::identity(data.ring());
      for (const OrientedEdge& h : oriented(g)) {
        const ProjectiveMatrix m = phi(data, h);
        const auto q = data.q(h.edge);
        if (data.alpha(h) && data.alpha(-h)) {
          const Rational d = *data.alpha(h) - *data.alpha(-h);
          failures += !(m.determinant() == (d * d) * q);
        } else {
          failures += !(m.determinant() == q);
        }
        failures += !projectively_equal(inverse_via_negation(data, h) * m, id);
      }
    }
  }
  for (int trial = 0; trial < 50; ++trial) {
    const StableGraph& g = graphs_[trial % 3];
    const SchottkyData d(g, random_alpha(g, rng, trial % 3 == 0), 4);
    const auto first = random_reduced_path(g, rng() % g.vertex_count(), std::nullopt, 1 + rng() % 3, rng);
    const auto second = random_reduced_path(g, g.terminal_vertex(first.back()), first.back(), 1 + rng() % 3, rng);
    std::vector<OrientedEdge> joined = first;
    joined.insert(joined.end(), second.begin(), second.end());
    failures += !projectively_equal(path_matrix(d, joined), path_matrix(d, second) * path_matrix(d, first));
  }
  const double s = seconds_since(t0);
  return {failures == 0 && s < 60,
          fmt("cross-ratio, determinant, inverse and path checks, %.0f failures, %.2f s", failures, s)};
}

Outcome ac9() {
  bool ok = true;
  std::ostringstream detail;
  for (auto [g, n, expected] : std::vector<std::array<int, 3>>{{0, 4, 3}, {0, 5, 15}, {1, 1, 1}, {1, 2, 2}}) {
    const auto classes = graphs::enumerate_trivalent(g, n);
    std::set<oracle::BruteClass> mine;
    for (const auto& c : classes) mine.insert(oracle::brute_canonical(c));
    const bool match = classes.size() == static_cast<std::size_t>(expected) && mine == oracle::brute_trivalent_classes(g, n);
    ok = ok && match;
    detail << "(" << g << "," << n << ")->" << classes.size() << " ";
  }
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {0, 5}, {0, 6}, {1, 1}, {1, 2}, {1, 3}}) {
    ok = ok && groupoid::move_graph(g, n).connected;
  }
  detail << "; move graphs connected for 3g-3+n <= 3";
  return {ok, detail.str()};
}

Outcome ac10() {
  const cli_cases::DataDirectory dir;
  int failures = 0;
  for (const auto& c : cli_cases::documented()) {
    const cli::RunResult first = cli::run(cli_cases::with_flags(c, 1));
    const cli::RunResult second = cli::run(cli_cases::with_flags(c, 1));
    const cli::RunResult wide = cli::run(cli_cases::with_flags(c, 8));
    const bool same = first.out == second.out && first.out == wide.out && first.status == c.status &&
                      first.out == cli_cases::read_file(cli_cases::golden_path(c));
    if (!same) std::fprintf(stderr, "golden mismatch: %s\n", c.name.c_str());
    failures += !same;
  }
  return {failures == 0, fmt("%.0f invocations byte-identical across runs, thread counts 1 and 8 and golden files, "
                             "%.0f mismatches",
                             static_cast<double>(cli_cases::documented().size()), failures)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 ", ac1}, {"AC2 ", ac2}, {"AC3 ", ac3}, {"AC4 ", ac4}, {"AC5 ", ac5},
      {"AC6 ", ac6}, {"AC7 ", ac7}, {"AC8 ", ac8}, {"AC9 ", ac9}, {"AC10", ac10},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %s  %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
