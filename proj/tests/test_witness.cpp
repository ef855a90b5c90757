#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vbound/vertex_enum.hpp"
#include "vbound/witness.hpp"

using namespace vbound;

TEST(SampleGaussian, DeterministicPerSeedAndIndex) {
  TrialStream a(42, 7), b(42, 7), c(42, 8);
  auto ya = sample_gaussian(3, a), yb = sample_gaussian(3, b), yc = sample_gaussian(3, c);
  EXPECT_EQ(ya, yb);
  EXPECT_NE(ya, yc);
}

TEST(SampleGaussian, ChiSquareConcentration) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    TrialStream s(seed, 0);
    auto y = sample_gaussian(10000, s);
    double q = 0;
    for (double v : y) q += v * v;
    q /= 10000;
    EXPECT_GE(q, 0.9);
    EXPECT_LE(q, 1.1);
  }
}

TEST(SampleGaussian, FirstCoordinateMean) {
  double sum = 0;
  for (std::uint64_t t = 0; t < 100000; ++t) {
    TrialStream s(5, t);
    sum += sample_gaussian(1, s)[0];
  }
  EXPECT_LT(std::fabs(sum / 100000), 0.02);
}

TEST(Lemma21Bounds, ValuesAndRanges) {
  EXPECT_NEAR(norm_concentration_bound(0.5, 100), std::exp(-6.25), 1e-15);
  EXPECT_DOUBLE_EQ(tail_bound(0, 2), 0.5);
  EXPECT_DOUBLE_EQ(sidak_bound(1, 0), 0);
  EXPECT_LT(sidak_bound(5, 1), sidak_bound(5, 2));
  EXPECT_GT(sidak_bound(5, 1), sidak_bound(6, 1));
}

TEST(Lemma21Empirical, TailAtZeroIsHalf) {
  Lemma21Params p;
  p.a = {1, 0, 0};
  p.tau = 0;
  auto r = lemma21_empirical(Lemma21Kind::tail, p, 20000, 1);
  EXPECT_DOUBLE_EQ(r.bound, 0.5);
  EXPECT_NEAR(r.empirical, 0.5, 4 * std::sqrt(0.25 / 20000));
  EXPECT_TRUE(r.satisfied);
}

TEST(Lemma21Empirical, ZeroWidthSlab) {
  Lemma21Params p;
  p.u = {{1, 0}};
  p.rho = 0;
  auto r = lemma21_empirical(Lemma21Kind::sidak, p, 1000, 3);
  EXPECT_EQ(r.empirical, 0);
  EXPECT_EQ(r.bound, 0);
  EXPECT_TRUE(r.satisfied);
}

TEST(Lemma21Empirical, NormConcentration) {
  Lemma21Params p;
  p.n = 100;
  p.epsilon = 0.5;
  auto r = lemma21_empirical(Lemma21Kind::norm, p, 100000, 11);
  EXPECT_NEAR(r.bound, 1.93e-3, 1e-5);
  EXPECT_TRUE(r.satisfied);
}

TEST(Lemma21Empirical, InvalidParams) {
  Lemma21Params p;
  p.n = 10;
  p.epsilon = 1.5;
  EXPECT_THROW(lemma21_empirical(Lemma21Kind::norm, p, 1000, 0), Error);
  p.epsilon = 0.5;
  EXPECT_THROW(lemma21_empirical(Lemma21Kind::norm, p, 999, 0), Error);
  Lemma21Params t;
  t.a = {0, 0};
  EXPECT_THROW(lemma21_empirical(Lemma21Kind::tail, t, 1000, 0), Error);
  Lemma21Params s;
  s.u = {{1, 1}};
  s.rho = 1;
  try {
    lemma21_empirical(Lemma21Kind::sidak, s, 1000, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_params);
  }
}

TEST(SidakProduct, RandomUnitSystems) {
  for (std::uint64_t sys = 0; sys < 5; ++sys) {
    TrialStream g(1000 + sys, 0);
    const std::size_t n = 2 + sys * 4, m = 4 + sys * 8;
    std::vector<std::vector<double>> u(m);
    for (auto& v : u) {
      v = sample_gaussian(n, g);
      double s = 0;
      for (double x : v) s += x * x;
      for (double& x : v) x /= std::sqrt(s);
    }
    auto r = sidak_product_check(u, 1.5, 10000, sys);
    EXPECT_TRUE(r.satisfied) << "n=" << n << " joint=" << r.joint << " product=" << r.product;
  }
}

TEST(SuccessRateBound, FormulaAndErrors) {
  EXPECT_NEAR(success_rate_bound(1, 10, 3, 0.5), 0.5 * std::pow(1 - std::exp(-4.5), 10), 1e-15);
  EXPECT_NEAR(success_rate_bound(1, 10, 40, 0.5), 0.5, 1e-15);
  EXPECT_THROW(success_rate_bound(1, 10, 0.5, 0.1), Error);
  try {
    success_rate_bound(1, 10, 0.5, 0.1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::rho221_violated);
  }
}

TEST(SuccessRateBound, MatchesHighPrecisionRecompute) {
  const auto g = gamma_of(2, 1);
  const double v = success_rate_bound(2, 50, static_cast<double>(g.rho), static_cast<double>(g.epsilon));
  // Direct power instead of exp(log1p): 100 factors of (1 - e^{-rho^2/2}).
  const Oct rho(static_cast<double>(g.rho));
  Oct prod = 1;
  for (int i = 0; i < 100; ++i) prod *= 1 - exp(-rho * rho / 2);
  EXPECT_GT(v, 0);
  EXPECT_NEAR(v, static_cast<double>(prod / 2), 1e-14);
}

TEST(UnionBound, Examples) {
  VertexSet two(1, {{Rational(1)}, {Rational(-1)}});
  EXPECT_DOUBLE_EQ(union_bound_check(two, 1, 0, 1), 1);
  auto cube5 = enumerate_vertices(make_cube(5));
  EXPECT_NEAR(union_bound_check(cube5, 1, 5, 5), 16 * std::exp(-2.5), 1e-12);
  try {
    union_bound_check(cube5, Rational(1, 2), 5, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::circumradius_violated);
  }
}

TEST(UnionBound, MonteCarloOnCube) {
  // max over the cube of <x, y> is the l1 norm of y.
  const double bound = 16 * std::exp(-2.5);
  std::size_t hits = 0;
  const std::size_t trials = 100000;
  for (std::size_t t = 0; t < trials; ++t) {
    TrialStream s(9, t);
    double l1 = 0;
    for (double v : sample_gaussian(5, s)) l1 += std::fabs(v);
    hits += l1 >= 5;
  }
  const double p = static_cast<double>(hits) / trials;
  EXPECT_LE(p, bound + 3 * binomial_sigma(p, trials));
}

TEST(DefaultTrials, Schedule) {
  EXPECT_EQ(default_trials(3), 10000u);
  EXPECT_EQ(default_trials(12), static_cast<std::size_t>(std::ceil(4.0 * 4096 * 12 * std::log(2.0))));
  EXPECT_EQ(default_trials(30), 1000000u);
}

TEST(Certify, CubeFindsAllVertices) {
  CertifyOptions o;
  o.trials = 500;
  o.seed = 1;
  auto rep = certify_vertex_count(make_cube(3), o);
  EXPECT_EQ(rep.distinct_vertices_found, 8u);
  EXPECT_EQ(rep.vertices, enumerate_vertices(make_cube(3)));
}

TEST(Certify, SquareFindsFour) {
  CertifyOptions o;
  o.trials = 100;
  o.seed = 2;
  EXPECT_EQ(certify_vertex_count(make_cube(2), o).distinct_vertices_found, 4u);
}

TEST(Certify, ReportsOnlyOracleVertices) {
  // Random bounded polytope: every reported point is an active-set vertex.
  TrialStream g(77, 0);
  std::vector<Constraint> rows;
  const std::size_t n = 3;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n, 0), f(n, 0);
    e[i] = 1;
    f[i] = -1;
    rows.push_back({e, 2});
    rows.push_back({f, 2});
  }
  for (int k = 0; k < 12; ++k) {
    RationalVector a(n);
    for (auto& x : a) x = Rational(static_cast<long>(std::lround(g.normal() * 5)), 1);
    rows.push_back({a, 3});
  }
  HalfspaceSystem sys(n, rows);
  std::vector<oracle::Row> orows;
  for (const auto& c : rows) orows.push_back({c.normal, c.offset});
  auto truth = oracle::vertices_by_active_sets(orows, n);
  CertifyOptions o;
  o.trials = 300;
  o.seed = 4;
  auto rep = certify_vertex_count(sys, o);
  for (const auto& v : rep.vertices.points()) EXPECT_TRUE(truth.count(v));
  EXPECT_LE(rep.distinct_vertices_found, truth.size());
}

TEST(Certify, DeterministicAndMonotoneInTrials) {
  CertifyOptions o;
  o.seed = 13;
  o.trials = 40;
  auto a = certify_vertex_count(make_cube(4), o);
  auto b = certify_vertex_count(make_cube(4), o);
  EXPECT_EQ(a.vertices, b.vertices);
  EXPECT_EQ(a.successes, b.successes);
  std::size_t prev = 0;
  for (std::size_t t : {5u, 10u, 20u, 40u, 80u}) {
    o.trials = t;
    auto r = certify_vertex_count(make_cube(4), o);
    EXPECT_GE(r.distinct_vertices_found, prev);
    prev = r.distinct_vertices_found;
    if (t <= 40) {
      for (const auto& v : r.vertices.points()) EXPECT_TRUE(a.vertices.contains(v));
    }
  }
}

TEST(Certify, RejectsDegenerateInput) {
  // Segment in the plane: y = 0, -1 <= x <= 1.
  HalfspaceSystem seg(2, {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 0}, {{0, -1}, 0}});
  CertifyOptions o;
  o.trials = 10;
  EXPECT_THROW(certify_vertex_count(seg, o), Error);
  HalfspaceSystem half(2, {{{1, 0}, 1}});
  EXPECT_THROW(certify_vertex_count(half, o), Error);
}

TEST(Certify, SandwichOnCube) {
  const auto g = gamma_of(1, 1);
  CertifyOptions o;
  o.trials = 10000;
  o.seed = 21;
  o.threshold = threshold_from(g, 1);
  auto rep = certify_vertex_count(make_cube(4), o);
  ASSERT_TRUE(rep.tau && rep.theoretical_lower_rate && rep.union_bound);
  EXPECT_NEAR(*rep.tau, (1 - static_cast<double>(g.epsilon)) * 4 / static_cast<double>(g.rho), 1e-12);
  EXPECT_TRUE(sandwich(*rep.theoretical_lower_rate, rep.empirical_success_rate, *rep.union_bound, rep.trials).holds);
  EXPECT_EQ(rep.distinct_vertices_found, 16u);
}
