#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "vbound/containment.hpp"
#include "vbound/factors.hpp"
#include "vbound/vertex_enum.hpp"

using namespace vbound;

namespace {

std::vector<std::pair<int, int>> oracle_edges(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [u, v] : g.edges()) out.emplace_back(static_cast<int>(u), static_cast<int>(v));
  return out;
}

// Minimum cut over 2 <= |U| <= |V|-2 scanning every subset (both sides of each pair).
std::size_t min_cut_all_subsets(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = SIZE_MAX;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto s = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (s < 2 || s > n - 2) continue;
    std::size_t c = 0;
    for (const auto& [u, v] : g.edges()) c += ((mask >> u) & 1U) != ((mask >> v) & 1U);
    best = std::min(best, c);
  }
  return best;
}

// dim of the degree-zero subspace of a connected graph: |E| - |V| + [bipartite].
std::size_t expected_kernel_dim(const Graph& g) {
  std::vector<int> side(g.vertex_count(), -1);
  side[0] = 0;
  bool bipartite = true;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto e : g.incident(v)) {
      auto w = g.edges()[e].first == v ? g.edges()[e].second : g.edges()[e].first;
      if (side[w] < 0) {
        side[w] = 1 - side[v];
        stack.push_back(w);
      } else if (side[w] == side[v]) {
        bipartite = false;
      }
    }
  }
  return g.edge_count() - g.vertex_count() + (bipartite ? 1 : 0);
}

}  // namespace

TEST(GraphInput, EdgeListAndJson) {
  std::istringstream in("# triangle\n0 1\n1 2\n\n2 0 # closing edge\n");
  Graph g = parse_edge_list(in);
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  Graph h = graph_from_json(graph_to_json(petersen_graph()));
  EXPECT_EQ(h.edges(), petersen_graph().edges());
  std::istringstream with_isolated("vertices 4\n0 1\n");
  EXPECT_EQ(parse_edge_list(with_isolated).vertex_count(), 4u);
}

TEST(GraphInput, RejectsBadGraphs) {
  std::istringstream loop("0 0\n");
  EXPECT_THROW(parse_edge_list(loop), Error);
  std::istringstream multi("0 1\n1 0\n");
  EXPECT_THROW(parse_edge_list(multi), Error);
  std::istringstream junk("0 x\n");
  EXPECT_THROW(parse_edge_list(junk), Error);
  EXPECT_THROW(graph_from_json(nlohmann::json{{"vertices", 2}, {"edges", {{0, 5}}}}), Error);
  EXPECT_FALSE(named_graph("no-such-graph").has_value());
}

TEST(Generators, SizesAndRegularity) {
  struct Case {
    Graph g;
    std::size_t v, e, k;
  };
  std::vector<Case> cases{{complete_graph(4), 4, 6, 3},          {complete_bipartite(3, 3), 6, 9, 3},
                          {cycle_graph(6), 6, 6, 2},             {prism_graph(), 6, 9, 3},
                          {petersen_graph(), 10, 15, 3},         {mobius_kantor_graph(), 16, 24, 3},
                          {circulant_graph(10, {1, 2, 5}), 10, 25, 5}, {two_block_cut_graph(), 8, 12, 3}};
  for (const auto& c : cases) {
    EXPECT_EQ(c.g.vertex_count(), c.v);
    EXPECT_EQ(c.g.edge_count(), c.e);
    EXPECT_TRUE(check_regular(c.g, c.k));
    EXPECT_TRUE(c.g.connected());
  }
  Graph path(3, {{0, 1}, {1, 2}});
  EXPECT_FALSE(check_regular(path, 2));
}

TEST(CutCondition, PetersenPassesGadgetFails) {
  auto p = check_cut_condition(petersen_graph(), 3, 1);
  EXPECT_TRUE(p.ok);
  EXPECT_EQ(p.worst_size, 4u);
  auto gad = check_cut_condition(two_block_cut_graph(), 3, 1);
  EXPECT_FALSE(gad.ok);
  EXPECT_EQ(gad.worst_size, 2u);
  EXPECT_EQ(gad.worst_u.size(), 4u);
}

TEST(CutCondition, SingletonsAreExempt) {
  // In K4 every singleton cut has 3 = k edges, every pair cut has 4.
  auto rep = check_cut_condition(complete_graph(4), 3, 1);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.worst_size, 4u);
}

TEST(CutCondition, ComplementInvariantAgainstFullScan) {
  for (const auto& g : {petersen_graph(), two_block_cut_graph(), prism_graph(), circulant_graph(10, {1, 2, 5}),
                        complete_bipartite(3, 3)}) {
    const std::size_t k = g.degree(0);
    auto rep = check_cut_condition(g, k, 1);
    EXPECT_EQ(rep.worst_size, min_cut_all_subsets(g));
    // The reported U and its complement give the same cut.
    std::uint64_t mask = 0;
    for (auto v : rep.worst_u) mask |= std::uint64_t{1} << v;
    const std::uint64_t comp = ((std::uint64_t{1} << g.vertex_count()) - 1) & ~mask;
    EXPECT_EQ(cut_size(g, mask), cut_size(g, comp));
    EXPECT_EQ(cut_size(g, mask), rep.worst_size);
  }
}

TEST(CutCondition, Errors) {
  EXPECT_THROW(check_cut_condition(complete_graph(25), 24, 1), Error);
  EXPECT_THROW(check_cut_condition(Graph(3, {{0, 1}, {1, 2}}), 2, 1), Error);
}

TEST(Factors, CountsMatchSubsetBruteForce) {
  struct Case {
    Graph g;
    std::size_t r, expected;
  };
  for (const auto& c : std::vector<Case>{{complete_graph(4), 1, 3},
                                         {complete_bipartite(3, 3), 1, 6},
                                         {petersen_graph(), 1, 6},
                                         {cycle_graph(6), 1, 2},
                                         {prism_graph(), 1, 4},
                                         {two_block_cut_graph(), 1, 0}}) {
    auto got = enumerate_r_factors(c.g, c.r);
    auto want = oracle::factors_by_subsets(c.g.vertex_count(), oracle_edges(c.g), static_cast<int>(c.r));
    if (c.expected > 0) {
      EXPECT_EQ(got.size(), c.expected);
    }
    EXPECT_EQ(got, want);
  }
}

TEST(Factors, ComplementBijection) {
  for (const auto& g : {complete_graph(4), petersen_graph(), prism_graph(), complete_bipartite(3, 3),
                        circulant_graph(10, {1, 2, 5}), mobius_kantor_graph()}) {
    const std::size_t k = g.degree(0);
    for (std::size_t r = 1; r < k; ++r) {
      if ((r * g.vertex_count()) % 2) continue;
      auto a = enumerate_r_factors(g, r);
      auto b = enumerate_r_factors(g, k - r);
      ASSERT_EQ(a.size(), b.size());
      for (const auto& h : a) {
        std::vector<std::size_t> comp;
        for (std::size_t e = 0; e < g.edge_count(); ++e)
          if (!std::binary_search(h.begin(), h.end(), e)) comp.push_back(e);
        EXPECT_TRUE(std::binary_search(b.begin(), b.end(), comp));
      }
    }
  }
}

TEST(Factors, Guards) {
  EXPECT_THROW(enumerate_r_factors(complete_graph(3), 1), Error);  // r|V| odd
  EXPECT_THROW(enumerate_r_factors(complete_graph(10), 1), Error);  // 45 edges
}

TEST(FactorPolytope, VerticesAreFactorIndicators) {
  for (const auto& g : {complete_graph(4), complete_bipartite(3, 3), cycle_graph(6), prism_graph()}) {
    auto sys = build_factor_polytope(g, 1);
    auto verts = enumerate_vertices(sys);
    std::vector<RationalVector> ind;
    for (const auto& h : oracle::factors_by_subsets(g.vertex_count(), oracle_edges(g), 1))
      ind.push_back(indicator(g.edge_count(), h));
    EXPECT_EQ(verts, VertexSet(g.edge_count(), ind));
  }
}

TEST(FactorPolytope, ParityFilter) {
  // For r = 2 every kept parity row has |F| odd.
  Graph g = complete_graph(5);
  auto sys = build_factor_polytope(g, 2);
  std::size_t parity_rows = 0;
  for (std::size_t i = 2 * g.edge_count() + 2 * g.vertex_count(); i < sys.size(); ++i) {
    std::size_t f = 0;
    for (const auto& q : sys[i].normal) f += q == 1;
    EXPECT_EQ(f % 2, 1u);
    EXPECT_EQ(sys[i].offset, static_cast<long>(f) - 1);
    ++parity_rows;
  }
  EXPECT_GT(parity_rows, 0u);
  // 2-factors of K5 are its 12 Hamiltonian cycles.
  EXPECT_EQ(enumerate_vertices(sys).size(), 12u);
}

TEST(FactorPolytope, Guards) {
  EXPECT_THROW(build_factor_polytope(complete_graph(13), 1), Error);
  // Two disjoint triangles: an empty cut with |U| = 3 odd.
  Graph two(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  try {
    build_factor_polytope(two, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_polyhedron);
  }
}

TEST(Blossom, GreedyFMatchesSubsetBruteForce) {
  std::mt19937_64 rng(5);
  for (const auto& g : {complete_graph(4), complete_bipartite(3, 3), prism_graph(), two_block_cut_graph(),
                        cycle_graph(8), complete_graph(6)}) {
    const std::size_t k = g.degree(0);
    for (std::size_t r = 1; r < k || r == 1; ++r) {
      if ((r * g.vertex_count()) % 2) continue;
      auto factors = enumerate_r_factors(g, r);
      std::vector<RationalVector> pts;
      pts.push_back(RationalVector(g.edge_count(), ratio(static_cast<long>(r), static_cast<long>(k))));
      for (int t = 0; t < 6 && !factors.empty(); ++t) {
        // Convex combination of two factors and the uniform point.
        const auto& h1 = factors[rng() % factors.size()];
        const auto& h2 = factors[rng() % factors.size()];
        const long w1 = static_cast<long>(rng() % 5), w2 = static_cast<long>(rng() % 5), w0 = 1;
        RationalVector x(g.edge_count(), 0);
        for (std::size_t e = 0; e < g.edge_count(); ++e)
          x[e] = ratio(w0 * static_cast<long>(r), static_cast<long>(k)) * ratio(1, w0 + w1 + w2);
        for (auto e : h1) x[e] += ratio(w1, w0 + w1 + w2);
        for (auto e : h2) x[e] += ratio(w2, w0 + w1 + w2);
        pts.push_back(x);
      }
      for (const auto& x : pts) {
        const std::size_t n = g.vertex_count();
        for (std::uint64_t rest = 0; rest + 1 < (std::uint64_t{1} << (n - 1)); ++rest) {
          const std::uint64_t mask = (rest << 1) | 1U;
          auto got = min_parity_slack(g, r, x, mask);
          auto cut = cut_edges(g, mask);
          auto want = oracle::min_blossom_slack_by_subsets(cut, x, static_cast<int>(r * __builtin_popcountll(mask)));
          ASSERT_EQ(got.has_value(), want.has_value());
          if (got) {
            EXPECT_EQ(got->slack, *want);
          }
        }
        EXPECT_FALSE(blossom_violation(g, r, x).has_value());
      }
      if (r >= k - 1) break;
    }
  }
}

TEST(Blossom, FindsViolations) {
  // Half on both prism triangles: U = one triangle has an empty F and a zero cut sum.
  Graph g = prism_graph();
  RationalVector x(g.edge_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edges()[e];
    if ((u < 3) == (v < 3)) x[e] = ratio(1, 2);
  }
  auto b = blossom_violation(g, 1, x);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->slack, -1);
  EXPECT_TRUE(b->f.empty());
  EXPECT_EQ(b->u.size(), 3u);
  // Uniform point on the 2-cut gadget: the block cut has even |U|, so its rows need |F| odd and
  // 1/3 + (1 - 1/3) - 1 = 0 is tight but not violated.
  RationalVector a(two_block_cut_graph().edge_count(), ratio(1, 3));
  EXPECT_FALSE(blossom_violation(two_block_cut_graph(), 1, a).has_value());
  // Factor indicators satisfy every row.
  for (const auto& h : enumerate_r_factors(petersen_graph(), 1))
    EXPECT_FALSE(blossom_violation(petersen_graph(), 1, indicator(15, h)).has_value());
  EXPECT_THROW(blossom_violation(g, 1, RationalVector(g.edge_count(), 1)), Error);
}

TEST(DeepPoint, ZeroAndAlternatingCycle) {
  auto pet = make_instance(petersen_graph(), 3, 1);
  auto res = deep_point_check(pet, RationalVector(15, 0));
  EXPECT_TRUE(res.fast);
  EXPECT_TRUE(res.slow);

  auto k4 = make_instance(complete_graph(4), 3, 1);
  RationalVector y(6, 0);
  // 4-cycle 0-1-2-3-0 with alternating signs.
  const std::vector<Edge> cyc{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    auto it = std::find(k4.graph.edges().begin(), k4.graph.edges().end(), cyc[i]);
    y[static_cast<std::size_t>(it - k4.graph.edges().begin())] = i % 2 ? -k4.epsilon : k4.epsilon;
  }
  res = deep_point_check(k4, y);
  EXPECT_TRUE(res.in_polytope());
  EXPECT_TRUE(res.agree());

  for (auto& q : y) q *= (k4.epsilon + ratio(1, 1000)) / k4.epsilon;
  try {
    deep_point_check(k4, y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::precondition_violated);
  }
}

TEST(DeepPoint, RandomAdmissiblePointsAgree) {
  for (auto [g, k, r] : {std::tuple{petersen_graph(), 3L, 1L}, std::tuple{circulant_graph(10, {1, 2, 5}), 5L, 2L}}) {
    auto inst = make_instance(g, k, r);
    auto kernel = degree_kernel(inst.graph);
    for (std::uint64_t t = 0; t < 10; ++t) {
      TrialStream rng(3, t);
      auto y = random_admissible_y(inst, kernel, rng);
      auto res = deep_point_check(inst, y);
      EXPECT_TRUE(res.agree());
      EXPECT_TRUE(res.in_polytope());
    }
  }
}

TEST(ReduceToL, DimensionsAndNorms) {
  for (auto [g, k, r] : {std::tuple{complete_graph(4), 3L, 1L}, std::tuple{petersen_graph(), 3L, 1L},
                         std::tuple{complete_bipartite(3, 3), 3L, 1L}, std::tuple{circulant_graph(10, {1, 2, 5}), 5L, 2L}}) {
    auto inst = make_instance(g, k, r);
    auto red = reduce_to_L(inst);
    EXPECT_EQ(red.subspace.dimension(), expected_kernel_dim(g));
    EXPECT_TRUE(red.dimension_ok);
    EXPECT_TRUE(red.projections_ok);
    EXPECT_TRUE(red.norms_ok);
    EXPECT_EQ(red.factor_points.size(), enumerate_r_factors(g, static_cast<std::size_t>(r)).size());
  }
  auto pet = reduce_to_L(make_instance(petersen_graph(), 3, 1));
  EXPECT_EQ(pet.subspace.dimension(), 5u);
  EXPECT_EQ(pet.expected_sq_norm, ratio(10, 3));
}

TEST(ReduceToL, SlabBodyInsideReducedPolytopeOnK4) {
  auto inst = make_instance(complete_graph(4), 3, 1);
  auto red = reduce_to_L(inst);
  auto body = reduced_factor_polytope(inst, red.subspace);
  EXPECT_TRUE(contains_slab_body(body, red.slabs));
  EXPECT_EQ(enumerate_vertices(body), red.factor_points);
  // A band of 2/3 reaches outside x >= 0.
  auto wide = red.slabs;
  for (auto& s : wide) s.bound *= 8;
  EXPECT_FALSE(contains_slab_body(body, wide));
}
