#include "doctest.h"

#include "lvk/blocks.hpp"
#include "lvk/errors.hpp"
#include "oracles.hpp"

#include <random>

using namespace lvk;
using namespace lvk::blocks;
using virasoro::Weight;

namespace {

Rational random_rational(std::mt19937_64& rng, long top = 9, long bottom = 7) {
  return Rational(1 + static_cast<long>(rng() % top), 1 + static_cast<long>(rng() % bottom));
}

LiouvilleParams random_params(std::mt19937_64& rng) { return LiouvilleParams::from_b(random_rational(rng, 4, 4)); }

Rational random_delta(const LiouvilleParams& p, std::mt19937_64& rng) {
  return virasoro::weight_from_momentum(p, random_rational(rng)).delta;
}

Real distance(const Complex& a, const Complex& b) { return abs(a - b); }

}  // namespace

TEST_CASE("three-point values at level one") {
  std::mt19937_64 rng(201);
  for (int trial = 0; trial < 10; ++trial) {
    const LiouvilleParams p = random_params(rng);
    const std::array<Rational, 3> d{random_delta(p, rng), random_delta(p, rng), random_delta(p, rng)};
    const Rational n = random_rational(rng);
    const ThreePointBlock b = solve_three_point(p, d, 1, n);
    const auto expected = oracle::level_one_three_point(d[0], d[1], d[2]);
    CHECK(b.value({}) == n);
    CHECK(b.value({{1}, {}, {}}) == n * expected[0]);
    CHECK(b.value({{}, {1}, {}}) == n * expected[1]);
    CHECK(b.value({{}, {}, {1}}) == n * expected[2]);
    CHECK(b.value({{}, {1}, {}}) == (d[2] - d[0] - d[1]) * n);
    CHECK(b.value({{1}, {}, {}}) == (d[0] + d[1] - d[2]) * n);
  }
}

TEST_CASE("solved blocks satisfy every relation of wider families") {
  std::mt19937_64 rng(203);
  const LiouvilleParams p = random_params(rng);
  const std::array<Rational, 3> d{random_delta(p, rng), random_delta(p, rng), random_delta(p, rng)};
  const ThreePointBlock b = solve_three_point(p, d, 4);
  CHECK(b.unknowns() == 86);
  CHECK(b.residual_failures({0, 2}) == 0);
  CHECK(b.residual_failures({-4, 4}) == 0);
  CHECK(b.value({}) == 1);
  CHECK_THROWS_AS(b.value({{5}, {}, {}}), ContractViolation);
}

TEST_CASE("adding relation generators never changes the solution") {
  std::mt19937_64 rng(205);
  for (int trial = 0; trial < 3; ++trial) {
    const LiouvilleParams p = random_params(rng);
    const std::array<Rational, 3> d{random_delta(p, rng), random_delta(p, rng), random_delta(p, rng)};
    const ThreePointBlock narrow = solve_three_point(p, d, 3, 1, {0, 0});
    const ThreePointBlock standard = solve_three_point(p, d, 3);
    const ThreePointBlock wide = solve_three_point(p, d, 3, 1, {-3, 4});
    CHECK(narrow.values() == standard.values());
    CHECK(wide.values() == standard.values());
    CHECK(wide.relations_checked() > standard.relations_checked());
  }
}

TEST_CASE("regular vector fields alone leave descendants at 1 undetermined") {
  std::mt19937_64 rng(207);
  const LiouvilleParams p = random_params(rng);
  const std::array<Rational, 3> d{random_delta(p, rng), random_delta(p, rng), random_delta(p, rng)};
  const auto [rank1, unknowns1] = family_rank(p, d, 1, {0, 2});
  CHECK(rank1 + 1 == unknowns1);
  for (int level = 2; level <= 4; ++level) {
    const auto [rank, unknowns] = family_rank(p, d, level, {0, 2});
    CHECK(rank + 1 < unknowns);
    const auto [wide_rank, wide_unknowns] = family_rank(p, d, level, {-3, 2});
    CHECK(wide_rank + 1 == wide_unknowns);
  }
}

TEST_CASE("constant-term law and gauge covariance") {
  std::mt19937_64 rng(209);
  for (int trial = 0; trial < 8; ++trial) {
    const LiouvilleParams p = random_params(rng);
    const Rational d1 = random_delta(p, rng), d2 = random_delta(p, rng), d3 = random_delta(p, rng),
                   d4 = random_delta(p, rng);
    const Weight beta = Weight::from_delta(random_delta(p, rng));
    const int order = 1 + static_cast<int>(rng() % 3);
    const Rational n1 = random_rational(rng), n2 = random_rational(rng);
    const ThreePointBlock left = solve_three_point(p, {d1, d2, beta.delta}, order, n1);
    const ThreePointBlock right = solve_three_point(p, {beta.delta, d3, d4}, order, n2);
    const BlockSeries s = glue_four_point(p, left, right, beta, order);
    CHECK(s.delta == beta.delta);
    CHECK(s.coefficients.size() == static_cast<std::size_t>(order + 1));
    CHECK(s.coefficients[0] == left.value({}) * right.value({}));

    const BlockSeries unit = glue_four_point(p, solve_three_point(p, {d1, d2, beta.delta}, order),
                                             solve_three_point(p, {beta.delta, d3, d4}, order), beta, order);
    for (int k = 0; k <= order; ++k) CHECK(s.coefficients[k] == n1 * n2 * unit.coefficients[k]);
  }
}

TEST_CASE("four-point level-one coefficient") {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 10; ++trial) {
    const LiouvilleParams p = random_params(rng);
    const Rational d1 = random_delta(p, rng), d2 = random_delta(p, rng), d3 = random_delta(p, rng),
                   d4 = random_delta(p, rng), db = random_delta(p, rng);
    const Weight beta = Weight::from_delta(db);
    const BlockSeries s = glue_four_point(p, solve_three_point(p, {d1, d2, db}, 1),
                                          solve_three_point(p, {db, d3, d4}, 1), beta, 1);
    CHECK(s.coefficients[1] == oracle::four_point_c1(d1, d2, d3, d4, db));
    CHECK(s.coefficients[1] == (db + d2 - d1) * (db + d3 - d4) / (2 * db));
  }
}

TEST_CASE("four-point series are symmetric under exchanging the external pairs") {
  std::mt19937_64 rng(213);
  for (int trial = 0; trial < 3; ++trial) {
    const LiouvilleParams p = random_params(rng);
    const Rational d1 = random_delta(p, rng), d2 = random_delta(p, rng), d3 = random_delta(p, rng),
                   d4 = random_delta(p, rng), db = random_delta(p, rng);
    const Weight beta = Weight::from_delta(db);
    const int order = 3;
    const BlockSeries s = glue_four_point(p, solve_three_point(p, {d1, d2, db}, order),
                                          solve_three_point(p, {db, d3, d4}, order), beta, order);
    const BlockSeries t = glue_four_point(p, solve_three_point(p, {d4, d3, db}, order),
                                          solve_three_point(p, {db, d2, d1}, order), beta, order);
    CHECK(s == t);
  }
}

TEST_CASE("torus one-point blocks") {
  std::mt19937_64 rng(215);
  for (int trial = 0; trial < 5; ++trial) {
    const LiouvilleParams p = random_params(rng);
    const Rational x = random_delta(p, rng);
    const Weight beta = Weight::from_delta(random_delta(p, rng));
    const ThreePointBlock f = solve_three_point(p, {beta.delta, x, beta.delta}, 4);
    const BlockSeries s = glue_torus_one_point(p, f, beta, 2);
    CHECK(s.coefficients[0] == f.value({}));
    CHECK(s.coefficients[1] == oracle::torus_c1(x, beta.delta));
    CHECK(s.coefficients[1] == 1 + x * (x - 1) / (2 * beta.delta));
  }
  // An external weight with F((1), e, (1)) = 2 Delta_beta gives c_1 = p(1).
  const LiouvilleParams p = LiouvilleParams::from_b(Rational(1, 2));
  const Weight beta = Weight::from_delta(Rational(5, 3));
  for (const Rational& x : {Rational(0), Rational(1)}) {
    const ThreePointBlock f = solve_three_point(p, {beta.delta, x, beta.delta}, 2);
    CHECK(glue_torus_one_point(p, f, beta, 1).coefficients[1] == 1);
  }
  const ThreePointBlock shallow = solve_three_point(p, {beta.delta, Rational(1, 3), beta.delta}, 2);
  CHECK_THROWS_AS(glue_torus_one_point(p, shallow, beta, 2), ContractViolation);
}

TEST_CASE("diagnostic torus trace is the Verma character") {
  const LiouvilleParams p = LiouvilleParams::from_b(Rational(2, 3));
  const Weight beta = virasoro::weight_from_momentum(p, Rational(1, 2));
  const BlockSeries s = glue_torus_diagnostic(p, beta, 8);
  CHECK(s == virasoro::character(beta, 8));
}

TEST_CASE("singular Gram matrices surface as errors") {
  const LiouvilleParams p = LiouvilleParams::from_b(1);
  const Weight zero = Weight::from_delta(0);
  CHECK_THROWS_AS(
      glue_four_point(p, solve_three_point(p, {Rational(1), Rational(1), Rational(0)}, 1),
                      solve_three_point(p, {Rational(0), Rational(1), Rational(1)}, 1), zero, 1),
      DomainError);
}

TEST_CASE("twist factors") {
  const PrecisionScope scope(50);
  const Real tol("1e-45");
  std::mt19937_64 rng(217);
  for (int trial = 0; trial < 20; ++trial) {
    const Real delta = to_real(random_rational(rng));
    const Complex z(to_real(Rational(static_cast<long>(rng() % 21) - 10, 7)),
                    to_real(Rational(static_cast<long>(rng() % 21) - 10, 5)));
    if (z.re == 0 && z.im == 0) continue;
    const long k = static_cast<long>(rng() % 7) - 3;
    CHECK(boost::multiprecision::abs(abs(twist_factor(delta, z, k)) - 1) < tol);
    const Complex full = unit_phase(2 * pi() * delta);
    CHECK(distance(twist_factor(delta, z, k + 1), twist_factor(delta, z, k) * full) < tol);
    CHECK(distance(twist_factor(delta, z, k + 2), twist_factor(delta, z, k + 1) * twist_factor(delta, z, 1) *
                                                       unit_phase(-delta * arg(z))) < tol);
  }
  CHECK(distance(twist_factor(Real(3), Complex(Real(2)), 0), Complex(Real(1))) < tol);
  // Half-turn of the argument multiplies by exp(i pi Delta).
  const Complex z(Real("0.3"), Real("0.4"));
  const Complex rotated(-z.re, -z.im);
  const Real delta("0.7");
  CHECK(distance(twist_factor(delta, rotated, 1), twist_factor(delta, z, 0) * unit_phase(pi() * delta)) < tol);
  CHECK_THROWS_AS(twist_factor(delta, Complex(), 0), ContractViolation);
}

TEST_CASE("wave function evaluation") {
  const PrecisionScope scope(50);
  const Real tol("1e-40");
  const BlockSeries s{Rational(7, 5), {Rational(2), Rational(-3, 4), Rational(5, 9), Rational(1, 11)}};
  // Real positive q: real output equal to the exact polynomial.
  const Rational q(1, 100);
  const Complex v = wave_function_eval(s, Complex(to_real(q)), 0);
  CHECK(boost::multiprecision::abs(v.im) < tol);
  CHECK(boost::multiprecision::abs(v.re - to_real(evaluate_exact(s, q))) < tol);
  const Complex z(Real("0.01"), Real("0.02"));
  CHECK(distance(wave_function_eval(s, z, 1), wave_function_eval(s, z, 0) * unit_phase(2 * pi() * to_real(s.delta))) <
        tol);
  // Approach to the initial value.
  Real previous = 1;
  for (int k = 1; k <= 6; ++k) {
    const Real qk = boost::multiprecision::pow(Real(10), -k);
    const Real err = boost::multiprecision::abs(wave_function_eval(s, Complex(qk), 0).re - 2);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < Real("1e-5"));
  CHECK_THROWS_AS(wave_function_eval(s, Complex(), 0), ContractViolation);
}

TEST_CASE("half-Dehn twists") {
  const PrecisionScope scope(50);
  const Real tol("1e-40");
  const BlockSeries s{Rational(5, 6), {Rational(1), Rational(2, 3), Rational(-1, 7), Rational(3, 2)}};
  const TwistedSeries once = half_dehn_twist(s);
  CHECK(once.half_twists == 1);
  CHECK(once.series.coefficients == std::vector<Rational>{1, Rational(-2, 3), Rational(-1, 7), Rational(-3, 2)});
  const TwistedSeries twice = half_dehn_twist(once);
  CHECK(twice.series == s);
  CHECK(distance(twice.phase(), unit_phase(2 * pi() * to_real(s.delta))) < tol);
  CHECK(distance(half_dehn_twist(BlockSeries{Rational(0), {Rational(1)}}).phase(), Complex(Real(1))) < tol);

  // The twisted series at q equals the original continued to -q through the upper half-plane.
  for (const Complex& q : {Complex(Real("0.02"), Real("0.03")), Complex(Real("-0.01"), Real("0.04")),
                           Complex(Real("0.03"), Real("-0.02"))}) {
    const Complex minus_q(-q.re, -q.im);
    const long winding = q.im > 0 ? 1 : 0;
    CHECK(distance(once.evaluate(q, 0), wave_function_eval(s, minus_q, winding)) < tol);
  }
}

TEST_CASE("numeric and exact evaluation agree") {
  const PrecisionScope scope(50);
  std::mt19937_64 rng(219);
  const LiouvilleParams p = random_params(rng);
  const Rational db = random_delta(p, rng);
  const BlockSeries s = glue_four_point(p, solve_three_point(p, {random_delta(p, rng), random_delta(p, rng), db}, 4),
                                        solve_three_point(p, {db, random_delta(p, rng), random_delta(p, rng)}, 4),
                                        Weight::from_delta(db), 4);
  const Rational q(1, 100);
  const Real exact = to_real(evaluate_exact(s, q));
  const Complex numeric = wave_function_eval(s, Complex(to_real(q)), 0);
  CHECK(boost::multiprecision::abs(numeric.re - exact) < boost::multiprecision::abs(exact) * Real("1e-45"));
}
