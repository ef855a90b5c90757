#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vbound/error.hpp"
#include "vbound/linalg.hpp"
#include "vbound/lp.hpp"
#include "vbound/polytope.hpp"

namespace vbound {

struct VertexEnumOptions {
  /// Cap on the dimension of the affine hull (ambient dimension minus independent equations).
  std::size_t max_dimension = 12;
};

/// A system rewritten in coordinates of the affine hull cut out by its equality pairs:
/// x = origin + sum_k z_k * basis[k].
struct AffineReduction {
  RationalVector origin;
  RationalMatrix basis;
  std::vector<Constraint> rows;  // inequalities in z, deduplicated, nonzero normals
  bool empty = false;            // equalities inconsistent or a zero row with negative offset

  std::size_t dimension() const { return basis.size(); }

  RationalVector lift(const RationalVector& z) const {
    RationalVector x = origin;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (sgn(z[k]) == 0) continue;
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (sgn(basis[k][j]) != 0) x[j] += z[k] * basis[k][j];
      }
    }
    return x;
  }
};

namespace detail {

// Scale so the first nonzero normal entry has absolute value 1.
inline Constraint normalized(const Constraint& c) {
  Rational scale;
  for (const auto& q : c.normal) {
    if (sgn(q) != 0) {
      scale = abs(q);
      break;
    }
  }
  Constraint out{c.normal, c.offset / scale};
  for (auto& q : out.normal) q /= scale;
  return out;
}

inline RationalVector row_key(const Constraint& c) {
  RationalVector key = c.normal;
  key.push_back(c.offset);
  return key;
}

// Keeps the tightest offset per normalized direction, in first-seen order.
inline std::vector<Constraint> dedupe_rows(const std::vector<Constraint>& rows) {
  std::map<RationalVector, std::size_t, decltype(&lex_less)> seen(&lex_less);
  std::vector<Constraint> out;
  for (const auto& r : rows) {
    Constraint c = normalized(r);
    auto [it, inserted] = seen.emplace(c.normal, out.size());
    if (inserted) {
      out.push_back(std::move(c));
    } else if (c.offset < out[it->second].offset) {
      out[it->second].offset = c.offset;
    }
  }
  return out;
}

}  // namespace detail

/// Splits `sys` into equality pairs (rows that are exact negatives of each other) and the rest,
/// then re-expresses the rest inside the affine hull of the equalities.
inline AffineReduction reduce_to_affine_hull(const HalfspaceSystem& sys) {
  const std::size_t n = sys.dimension();
  std::vector<Constraint> norm;
  norm.reserve(sys.size());
  for (const auto& c : sys.constraints()) norm.push_back(detail::normalized(c));

  std::map<RationalVector, std::size_t, decltype(&lex_less)> index(&lex_less);
  for (std::size_t i = 0; i < norm.size(); ++i) index.emplace(detail::row_key(norm[i]), i);

  // Row i belongs to an equality pair when its exact negative is also present.
  std::vector<bool> in_pair(norm.size(), false);
  RationalMatrix eq;
  RationalVector rhs;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    Constraint neg = norm[i];
    for (auto& q : neg.normal) q = -q;
    neg.offset = -neg.offset;
    if (!index.count(detail::row_key(neg))) continue;
    in_pair[i] = true;
    eq.push_back(norm[i].normal);
    rhs.push_back(norm[i].offset);
  }

  AffineReduction red;
  if (eq.empty()) {
    red.origin.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      RationalVector e(n, 0);
      e[k] = 1;
      red.basis.push_back(std::move(e));
    }
  } else {
    auto x0 = particular_solution(eq, rhs, n);
    if (!x0) {
      red.empty = true;
      return red;
    }
    red.origin = std::move(*x0);
    red.basis = kernel_basis(eq, n);
  }

  const std::size_t d = red.basis.size();
  std::vector<Constraint> rows;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    if (in_pair[i]) continue;
    const auto& c = norm[i];
    Constraint r;
    r.normal.assign(d, 0);
    for (std::size_t k = 0; k < d; ++k) r.normal[k] = dot(c.normal, red.basis[k]);
    r.offset = c.offset - dot(c.normal, red.origin);
    if (is_zero(r.normal)) {
      if (sgn(r.offset) < 0) red.empty = true;
      continue;
    }
    rows.push_back(std::move(r));
  }
  red.rows = detail::dedupe_rows(rows);
  return red;
}

namespace detail {

class Bitset {
 public:
  explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  Bitset operator&(const Bitset& o) const {
    Bitset r;
    r.words_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  bool subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  RationalVector w;  // (z, t)
  Bitset zeros;
};

inline void normalize_ray(RationalVector& w) {
  const Rational& t = w.back();
  Rational scale;
  if (sgn(t) != 0) {
    scale = abs(t);
  } else {
    for (const auto& q : w) {
      if (sgn(q) != 0) {
        scale = abs(q);
        break;
      }
    }
  }
  if (scale == 1) return;
  for (auto& q : w) q /= scale;
}

// Double description on the homogenized cone {(z,t) : a z - b t <= 0, t >= 0}.
// Returns the extreme rays; the caller checks t > 0.
inline std::vector<Ray> double_description(const std::vector<Constraint>& rows, std::size_t d) {
  const std::size_t dim = d + 1;
  std::vector<RationalVector> h;
  h.reserve(rows.size() + 1);
  {
    RationalVector ht(dim, 0);
    ht[d] = -1;
    h.push_back(std::move(ht));
  }
  for (const auto& r : rows) {
    RationalVector v = r.normal;
    v.push_back(-r.offset);
    h.push_back(std::move(v));
  }
  const std::size_t total = h.size();

  // Initial simplicial cone from `dim` independent rows.
  std::vector<std::size_t> init;
  RationalMatrix echelon;
  for (std::size_t i = 0; i < total && init.size() < dim; ++i) {
    RationalMatrix trial = echelon;
    trial.push_back(h[i]);
    if (rank(trial) > echelon.size()) {
      echelon = std::move(trial);
      init.push_back(i);
    }
  }
  if (init.size() < dim)
    throw Error(Errc::unbounded_polyhedron, "constraint matrix is rank deficient (lineality)");

  RationalMatrix h0;
  for (auto i : init) h0.push_back(h[i]);
  auto inv = inverse(h0);
  if (!inv) throw Error(Errc::internal, "initial basis is singular");

  std::vector<bool> processed(total, false);
  for (auto i : init) processed[i] = true;

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < dim; ++j) {
    Ray r{RationalVector(dim), Bitset(total)};
    for (std::size_t i = 0; i < dim; ++i) r.w[i] = -(*inv)[i][j];
    normalize_ray(r.w);
    for (std::size_t k = 0; k < dim; ++k) {
      if (k != j) r.zeros.set(init[k]);
    }
    rays.push_back(std::move(r));
  }

  for (std::size_t i = 0; i < total; ++i) {
    if (processed[i]) continue;
    processed[i] = true;
    const auto& hi = h[i];
    std::vector<Rational> s(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      s[r] = dot(hi, rays[r].w);
      const int sg = sgn(s[r]);
      if (sg > 0) pos.push_back(r);
      else if (sg < 0) neg.push_back(r);
      else rays[r].zeros.set(i);
    }
    if (pos.empty()) continue;

    std::vector<Ray> next;
    for (auto p : pos) {
      for (auto q : neg) {
        Bitset common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.subset_of(rays[r].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr{RationalVector(dim), std::move(common)};
        for (std::size_t k = 0; k < dim; ++k)
          nr.w[k] = s[p] * rays[q].w[k] - s[q] * rays[p].w[k];
        normalize_ray(nr.w);
        nr.zeros.set(i);
        next.push_back(std::move(nr));
      }
    }
    std::vector<Ray> kept;
    kept.reserve(rays.size() - pos.size() + next.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (sgn(s[r]) <= 0) kept.push_back(std::move(rays[r]));
    }
    for (auto& nr : next) kept.push_back(std::move(nr));
    rays = std::move(kept);
  }
  return rays;
}

// max t s.t. a z + t <= b, t <= 1, in the reduced coordinates.
inline std::optional<Rational> interior_margin(const std::vector<Constraint>& rows, std::size_t d) {
  std::vector<Constraint> ext;
  ext.reserve(rows.size() + 1);
  for (const auto& r : rows) {
    RationalVector a = r.normal;
    a.push_back(1);
    ext.push_back({std::move(a), r.offset});
  }
  RationalVector top(d + 1, 0);
  top[d] = 1;
  ext.push_back({top, 1});
  HalfspaceSystem chebyshev(d + 1, std::move(ext));
  auto sol = solve_lp(chebyshev, top);
  if (sol.status != LpStatus::optimal) return std::nullopt;
  return sol.value;
}

}  // namespace detail

/// All vertices of a bounded polytope, exactly. Equality pairs in `sys` define the affine hull;
/// the polytope must be full-dimensional inside it.
inline VertexSet enumerate_vertices(const HalfspaceSystem& sys, const VertexEnumOptions& opts = {}) {
  const std::size_t n = sys.dimension();
  AffineReduction red = reduce_to_affine_hull(sys);
  if (red.empty) throw Error(Errc::empty_polyhedron, "equality constraints are inconsistent");
  const std::size_t d = red.dimension();

  if (d == 0) {
    if (!sys.contains(red.origin)) throw Error(Errc::empty_polyhedron, "the single candidate point is infeasible");
    return VertexSet(n, {red.origin});
  }
  if (d > opts.max_dimension)
    throw Error(Errc::dimension_too_large, "affine hull dimension " + std::to_string(d) +
                                               " exceeds the cap " +
                                               std::to_string(opts.max_dimension));
  if (red.rows.empty()) throw Error(Errc::unbounded_polyhedron, "no inequalities bound the affine hull");

  auto margin = detail::interior_margin(red.rows, d);
  if (!margin || sgn(*margin) < 0) throw Error(Errc::empty_polyhedron, "no feasible point");
  if (sgn(*margin) == 0)
    throw Error(Errc::not_full_dimensional, "polytope has implicit equalities beyond the explicit pairs");

  auto rays = detail::double_description(red.rows, d);
  VertexSet out(n);
  for (auto& r : rays) {
    if (sgn(r.w.back()) == 0) throw Error(Errc::unbounded_polyhedron, "recession direction found");
    RationalVector z(r.w.begin(), r.w.end() - 1);
    RationalVector x = red.lift(z);
    if (!is_vertex_of(sys, x)) throw Error(Errc::internal, "enumerated point failed the vertex check");
    out.insert(std::move(x));
  }
  return out;
}

/// Rows of `sys` needed to describe conv(vertices): equality pairs plus one row per facet.
/// A row is kept when the vertices tight on it span an affine subspace of codimension one in the
/// affine hull; rows with identical tight sets are collapsed to the first.
inline HalfspaceSystem facet_subsystem(const HalfspaceSystem& sys, const VertexSet& vertices) {
  AffineReduction red = reduce_to_affine_hull(sys);
  const std::size_t d = red.dimension();
  std::vector<Constraint> keep;
  std::map<std::vector<std::size_t>, bool> seen;
  for (const auto& c : sys.constraints()) {
    std::vector<std::size_t> tight;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (dot(c.normal, vertices.points()[v]) == c.offset) tight.push_back(v);
    }
    if (tight.size() == vertices.size()) {
      keep.push_back(c);  // equality row
      continue;
    }
    if (tight.size() < d) continue;
    RationalMatrix diffs;
    const auto& base = vertices.points()[tight.front()];
    for (std::size_t t = 1; t < tight.size(); ++t) {
      RationalVector diff = vertices.points()[tight[t]];
      for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= base[j];
      diffs.push_back(std::move(diff));
    }
    if (rank(std::move(diffs)) + 1 != d) continue;
    if (seen.emplace(tight, true).second) keep.push_back(c);
  }
  return HalfspaceSystem(sys.dimension(), std::move(keep));
}

}  // namespace vbound
