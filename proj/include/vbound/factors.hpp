#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vbound/constants.hpp"
#include "vbound/error.hpp"
#include "vbound/graph.hpp"
#include "vbound/linalg.hpp"
#include "vbound/polytope.hpp"
#include "vbound/random.hpp"
#include "vbound/vertex_enum.hpp"

namespace vbound {

/// A k-regular graph with the factor degree r, the deep point a = (r/k, ..., r/k) and the band
/// half-width epsilon_kr(k, r).
struct FactorInstance {
  Graph graph;
  long k = 0;
  long r = 0;
  RationalVector a;
  Rational epsilon;
};

inline FactorInstance make_instance(Graph g, long k, long r) {
  if (r < 1 || k < 1) throw Error(Errc::invalid_params, "k and r must be positive");
  if (!check_regular(g, static_cast<std::size_t>(k)))
    throw Error(Errc::precondition_violated, "graph is not " + std::to_string(k) + "-regular");
  if (k < 2 * r + 1) throw Error(Errc::degree_condition_violated, "k must be >= 2r + 1");
  if ((static_cast<std::size_t>(r) * g.vertex_count()) % 2 != 0)
    throw Error(Errc::invalid_params, "r |V| must be even");
  FactorInstance inst;
  inst.k = k;
  inst.r = r;
  inst.a.assign(g.edge_count(), ratio(r, k));
  inst.epsilon = epsilon_kr(k, r);
  inst.graph = std::move(g);
  return inst;
}

inline RationalVector indicator(std::size_t edges, const std::vector<std::size_t>& subset) {
  RationalVector x(edges, 0);
  for (auto e : subset) x[e] = 1;
  return x;
}

/// Edge indices of delta(U) for a vertex mask.
inline std::vector<std::size_t> cut_edges(const Graph& g, std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto [u, v] = g.edges()[i];
    if (((mask >> u) & 1U) != ((mask >> v) & 1U)) out.push_back(i);
  }
  return out;
}

inline constexpr std::size_t kMaxPolytopeVertices = 12;
inline constexpr std::size_t kMaxPolytopeRows = 4000000;

namespace detail {

inline void require_polytope_scale(const Graph& g, std::size_t r) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxPolytopeVertices)
    throw Error(Errc::too_large, "factor polytope supports at most " + std::to_string(kMaxPolytopeVertices) + " vertices");
  if (n == 0) throw Error(Errc::invalid_input, "graph has no vertices");
  // Count blossom rows before building any.
  std::size_t rows = 0;
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)) - 1; ++rest) {
    const std::size_t c = cut_size(g, (rest << 1) | 1U);
    if (c > 40) throw Error(Errc::too_large, "a cut has more than 40 edges");
    rows += c == 0 ? 0 : std::size_t{1} << (c - 1);
    if (rows > kMaxPolytopeRows) throw Error(Errc::too_large, "blossom system exceeds the row cap");
  }
  (void)r;
}

}  // namespace detail

/// Calls emit(normal, offset) for every row of the r-factor polytope description:
/// box rows, degree equations as opposite pairs, then the parity rows
///   -sum_{delta(U) \ F} x + sum_F x <= |F| - 1   for r|U| + |F| odd,
/// one U per complementary pair (the side holding vertex 0).
inline void for_each_factor_row(const Graph& g, std::size_t r,
                                const std::function<void(const RationalVector&, const Rational&)>& emit) {
  detail::require_polytope_scale(g, r);
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  RationalVector row(m, 0);
  for (std::size_t e = 0; e < m; ++e) {
    row[e] = 1;
    emit(row, 1);
    row[e] = -1;
    emit(row, 0);
    row[e] = 0;
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (auto e : g.incident(v)) row[e] = 1;
    emit(row, static_cast<long>(r));
    for (auto e : g.incident(v)) row[e] = -1;
    emit(row, -static_cast<long>(r));
    for (auto e : g.incident(v)) row[e] = 0;
  }
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)) - 1; ++rest) {
    const std::uint64_t mask = (rest << 1) | 1U;
    const auto usize = static_cast<std::size_t>(__builtin_popcountll(mask));
    const auto cut = cut_edges(g, mask);
    if (cut.empty()) {
      if ((r * usize) % 2 == 1)
        throw Error(Errc::empty_polyhedron, "an empty cut with r|U| odd admits no r-factor");
      continue;
    }
    for (std::uint64_t f = 0; f < (std::uint64_t{1} << cut.size()); ++f) {
      const auto fsize = static_cast<std::size_t>(__builtin_popcountll(f));
      if ((r * usize + fsize) % 2 == 0) continue;
      for (std::size_t j = 0; j < cut.size(); ++j) row[cut[j]] = ((f >> j) & 1U) ? 1 : -1;
      emit(row, static_cast<long>(fsize) - 1);
      for (auto e : cut) row[e] = 0;
    }
  }
}

/// The r-factor polytope in R^E. Exact duplicate rows are dropped.
inline HalfspaceSystem build_factor_polytope(const Graph& g, std::size_t r) {
  if (r == 0) throw Error(Errc::invalid_params, "r must be >= 1");
  std::vector<Constraint> rows;
  std::map<RationalVector, bool, decltype(&lex_less)> seen(&lex_less);
  for_each_factor_row(g, r, [&](const RationalVector& a, const Rational& b) {
    RationalVector key = a;
    key.push_back(b);
    if (seen.emplace(std::move(key), true).second) rows.push_back({a, b});
  });
  return HalfspaceSystem(g.edge_count(), std::move(rows));
}

/// A parity row (U, F) and its slack sum_{delta(U)\F} x + sum_F (1 - x) - 1 at the tested point.
struct BlossomViolation {
  std::vector<std::size_t> u;      // vertices
  std::vector<std::size_t> f;      // edge indices, subset of delta(U)
  std::vector<std::size_t> cut;    // delta(U)
  Rational slack;                  // negative when violated
};

inline constexpr std::size_t kMaxSeparationVertices = 20;

namespace detail {

inline void require_box_and_degree(const Graph& g, std::size_t r, const RationalVector& x) {
  if (x.size() != g.edge_count()) throw Error(Errc::invalid_input, "point has wrong length");
  for (const auto& q : x)
    if (sgn(q) < 0 || q > 1) throw Error(Errc::precondition_violated, "point violates 0 <= x <= 1");
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    Rational s = 0;
    for (auto e : g.incident(v)) s += x[e];
    if (s != static_cast<long>(r)) throw Error(Errc::precondition_violated, "point violates a degree equation");
  }
}

}  // namespace detail

/// Smallest parity-row slack over F for one U (given as a vertex mask), with the minimizing F.
/// The slack is separable in F membership: take the edges with x > 1/2, then fix the parity by
/// toggling the edge with the smallest |1 - 2x|. Nothing is returned when delta(U) is empty.
inline std::optional<BlossomViolation> min_parity_slack(const Graph& g, std::size_t r, const RationalVector& x,
                                                        std::uint64_t mask) {
  const auto usize = static_cast<std::size_t>(__builtin_popcountll(mask));
  auto cut = cut_edges(g, mask);
  if (cut.empty()) return std::nullopt;
  const Rational half = ratio(1, 2);
  std::vector<bool> in_f(cut.size(), false);
  std::size_t fsize = 0;
  for (std::size_t j = 0; j < cut.size(); ++j) {
    if (x[cut[j]] > half) {
      in_f[j] = true;
      ++fsize;
    }
  }
  if ((r * usize + fsize) % 2 == 0) {
    std::size_t flip = 0;
    Rational best_cost;
    for (std::size_t j = 0; j < cut.size(); ++j) {
      Rational cost = abs(1 - 2 * x[cut[j]]);
      if (j == 0 || cost < best_cost) {
        best_cost = cost;
        flip = j;
      }
    }
    in_f[flip] = !in_f[flip];
  }
  BlossomViolation out{mask_vertices(mask, g.vertex_count()), {}, {}, -1};
  for (std::size_t j = 0; j < cut.size(); ++j) {
    if (in_f[j]) {
      out.slack += 1 - x[cut[j]];
      out.f.push_back(cut[j]);
    } else {
      out.slack += x[cut[j]];
    }
  }
  out.cut = std::move(cut);
  return out;
}

/// Exact separation over all parity rows: the most violated (U, F), or nothing when x satisfies
/// them all. x must already satisfy the box and degree rows.
inline std::optional<BlossomViolation> blossom_violation(const Graph& g, std::size_t r, const RationalVector& x) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxSeparationVertices)
    throw Error(Errc::too_large, "separation supports at most " + std::to_string(kMaxSeparationVertices) + " vertices");
  detail::require_box_and_degree(g, r, x);
  if (n < 2) return std::nullopt;
  std::optional<BlossomViolation> worst;
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)) - 1; ++rest) {
    auto b = min_parity_slack(g, r, x, (rest << 1) | 1U);
    if (b && sgn(b->slack) < 0 && (!worst || b->slack < worst->slack)) worst = std::move(b);
  }
  return worst;
}

struct DeepPointResult {
  bool fast = false;  // box, degree and the F = {} parity rows
  bool slow = false;  // box, degree and full separation
  bool agree() const { return fast == slow; }
  bool in_polytope() const { return fast && slow; }
};

/// Membership of x = a + y in the r-factor polytope, by two independent routes. Requires y in the
/// degree-zero subspace with |y(e)| <= epsilon and a graph satisfying the cut hypothesis.
inline DeepPointResult deep_point_check(const FactorInstance& inst, const RationalVector& y) {
  const Graph& g = inst.graph;
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  const auto r = static_cast<std::size_t>(inst.r);
  if (y.size() != m) throw Error(Errc::invalid_input, "y has wrong length");
  for (const auto& q : y)
    if (abs(q) > inst.epsilon) throw Error(Errc::precondition_violated, "|y(e)| exceeds epsilon");
  for (std::size_t v = 0; v < n; ++v) {
    Rational s = 0;
    for (auto e : g.incident(v)) s += y[e];
    if (sgn(s) != 0) throw Error(Errc::precondition_violated, "y has nonzero degree sum at a vertex");
  }
  if (n > kMaxSeparationVertices)
    throw Error(Errc::too_large, "separation supports at most " + std::to_string(kMaxSeparationVertices) + " vertices");
  if (!check_cut_condition(g, static_cast<std::size_t>(inst.k), r).ok)
    throw Error(Errc::precondition_violated, "graph fails the cut hypothesis");

  RationalVector x(m);
  for (std::size_t e = 0; e < m; ++e) x[e] = inst.a[e] + y[e];

  DeepPointResult res;
  bool box = true;
  for (const auto& q : x) box = box && sgn(q) >= 0 && q <= 1;
  bool degree = true;
  for (std::size_t v = 0; v < n && degree; ++v) {
    Rational s = 0;
    for (auto e : g.incident(v)) s += x[e];
    degree = s == static_cast<long>(r);
  }
  res.fast = box && degree;
  for (std::uint64_t rest = 0; res.fast && rest < (std::uint64_t{1} << (n - 1)) - 1; ++rest) {
    const std::uint64_t mask = (rest << 1) | 1U;
    const auto usize = static_cast<std::size_t>(__builtin_popcountll(mask));
    if ((r * usize) % 2 == 0) continue;
    Rational s = 0;
    for (auto e : cut_edges(g, mask)) s += x[e];
    res.fast = s >= 1;
  }
  res.slow = box && degree && !blossom_violation(g, r, x);
  return res;
}

/// Exact basis of the degree-zero subspace {y : sum_{delta(v)} y = 0 for all v}.
inline RationalMatrix degree_kernel(const Graph& g) {
  RationalMatrix inc(g.vertex_count(), RationalVector(g.edge_count(), 0));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    inc[g.edges()[e].first][e] = 1;
    inc[g.edges()[e].second][e] = 1;
  }
  return kernel_basis(std::move(inc), g.edge_count());
}

/// Random y in the degree-zero subspace with max |y(e)| = s * epsilon, s uniform in (0, 1] on a
/// grid of 1/1000.
inline RationalVector random_admissible_y(const FactorInstance& inst, const RationalMatrix& kernel,
                                          TrialStream& rng) {
  const std::size_t m = inst.graph.edge_count();
  RationalVector y(m, 0);
  if (kernel.empty()) return y;
  for (const auto& b : kernel) {
    const long c = static_cast<long>(std::floor(rng.uniform() * 2001)) - 1000;
    for (std::size_t e = 0; e < m; ++e) y[e] += c * b[e];
  }
  Rational top = 0;
  for (const auto& q : y) top = std::max(top, Rational(abs(q)));
  if (sgn(top) == 0) return y;
  const Rational scale = inst.epsilon * ratio(1 + static_cast<long>(std::floor(rng.uniform() * 1000)), 1000) / top;
  for (auto& q : y) {
    q *= scale;
    q.canonicalize();
  }
  return y;
}

/// The subspace L in exact orthogonal coordinates: x = a + sum_i z_i q_i.
struct SubspaceL {
  RationalMatrix basis;              // q_i, mutually orthogonal, in Q^E
  std::vector<Rational> sq_norms;    // ||q_i||^2
  std::vector<Rational> u_sq_norms;  // ||u_e||^2 = sum_i q_i(e)^2 / ||q_i||^2
  std::size_t dimension() const { return basis.size(); }

  /// Coordinates of w - a for w in a + L: z_i = <w - a, q_i> / ||q_i||^2.
  RationalVector coordinates(const RationalVector& w_minus_a) const {
    RationalVector z(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) z[i] = dot(w_minus_a, basis[i]) / sq_norms[i];
    return z;
  }

  /// Normal of a row <c, x> in z-coordinates.
  RationalVector project_row(const RationalVector& c) const {
    RationalVector out(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) out[i] = dot(c, basis[i]);
    return out;
  }
};

inline SubspaceL build_subspace(const Graph& g) {
  SubspaceL l;
  for (auto v : degree_kernel(g)) {
    for (std::size_t i = 0; i < l.basis.size(); ++i) {
      const Rational c = dot(v, l.basis[i]) / l.sq_norms[i];
      if (sgn(c) == 0) continue;
      for (std::size_t e = 0; e < v.size(); ++e) v[e] -= c * l.basis[i][e];
    }
    Rational nn = squared_norm(v);
    if (sgn(nn) == 0) throw Error(Errc::orthogonalization_failure, "kernel basis is dependent");
    l.basis.push_back(std::move(v));
    l.sq_norms.push_back(std::move(nn));
  }
  for (std::size_t i = 0; i < l.basis.size(); ++i)
    for (std::size_t j = i + 1; j < l.basis.size(); ++j)
      if (sgn(dot(l.basis[i], l.basis[j])) != 0)
        throw Error(Errc::orthogonalization_failure, "basis vectors are not orthogonal");
  l.u_sq_norms.assign(g.edge_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    for (std::size_t i = 0; i < l.basis.size(); ++i)
      l.u_sq_norms[e] += l.basis[i][e] * l.basis[i][e] / l.sq_norms[i];
  return l;
}

/// Result of moving the factor polytope into L.
struct ReducedFactorSpace {
  SubspaceL subspace;
  std::size_t edges = 0, vertices = 0;
  bool dimension_ok = false;             // dim L >= |E| - |V|
  bool projections_ok = false;           // ||u_e|| <= 1 for all e
  std::vector<Slab> slabs;               // {|<u_e, x>| <= epsilon} in z-coordinates
  VertexSet factor_points{1};            // reduced indicators of all r-factors
  std::vector<Rational> factor_sq_norms; // ||[H] - a||^2, from the z-coordinates
  Rational expected_sq_norm;             // r|V|/2 - r^2 |V| / (2k)
  bool norms_ok = false;
};

inline ReducedFactorSpace reduce_to_L(const FactorInstance& inst) {
  const Graph& g = inst.graph;
  ReducedFactorSpace out;
  out.edges = g.edge_count();
  out.vertices = g.vertex_count();
  out.subspace = build_subspace(g);
  const auto& l = out.subspace;
  const std::size_t d = l.dimension();
  if (d == 0) throw Error(Errc::not_full_dimensional, "the degree-zero subspace is trivial");
  out.dimension_ok = d + g.vertex_count() >= g.edge_count();
  out.projections_ok = std::all_of(l.u_sq_norms.begin(), l.u_sq_norms.end(), [](const Rational& q) { return q <= 1; });
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    RationalVector normal(d);
    for (std::size_t i = 0; i < d; ++i) normal[i] = l.basis[i][e];
    out.slabs.push_back({std::move(normal), inst.epsilon});
  }
  out.factor_points = VertexSet(d);
  out.expected_sq_norm = ratio(inst.r * static_cast<long>(g.vertex_count()), 2) -
                         ratio(inst.r * inst.r * static_cast<long>(g.vertex_count()), 2 * inst.k);
  out.norms_ok = true;
  for (const auto& h : enumerate_r_factors(g, static_cast<std::size_t>(inst.r))) {
    RationalVector w = indicator(g.edge_count(), h);
    for (std::size_t e = 0; e < w.size(); ++e) w[e] -= inst.a[e];
    RationalVector z = l.coordinates(w);
    Rational nn = 0;
    for (std::size_t i = 0; i < d; ++i) nn += z[i] * z[i] * l.sq_norms[i];
    out.norms_ok = out.norms_ok && nn == out.expected_sq_norm && nn == squared_norm(w);
    out.factor_sq_norms.push_back(nn);
    out.factor_points.insert(std::move(z));
  }
  return out;
}

/// P_r(G) - a in the z-coordinates of L. Degree rows vanish; duplicate directions keep the
/// tightest offset.
inline HalfspaceSystem reduced_factor_polytope(const FactorInstance& inst, const SubspaceL& l) {
  std::vector<Constraint> rows;
  for_each_factor_row(inst.graph, static_cast<std::size_t>(inst.r), [&](const RationalVector& c, const Rational& b) {
    RationalVector normal = l.project_row(c);
    Rational offset = b - dot(c, inst.a);
    if (is_zero(normal)) {
      if (sgn(offset) < 0) throw Error(Errc::empty_polyhedron, "the shifted system is infeasible");
      return;
    }
    rows.push_back({std::move(normal), std::move(offset)});
  });
  return HalfspaceSystem(l.dimension(), detail::dedupe_rows(rows));
}

}  // namespace vbound
