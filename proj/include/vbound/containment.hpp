#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vbound/error.hpp"
#include "vbound/lp.hpp"
#include "vbound/polytope.hpp"
#include "vbound/vertex_enum.hpp"

namespace vbound {

/// True iff every point of the slab body {x : |<u_i, x>| <= bound_i} satisfies `outer`.
/// One LP per outer row: the row's normal is maximized over the slab body.
inline bool contains_slab_body(const HalfspaceSystem& outer, const std::vector<Slab>& slabs) {
  const std::size_t n = outer.dimension();
  for (const auto& s : slabs) {
    if (s.normal.size() != n) throw Error(Errc::invalid_input, "slab dimension mismatch");
  }
  const HalfspaceSystem body = slab_body(n, slabs);
  for (const auto& c : outer.constraints()) {
    LpSolution sol = solve_lp(body, c.normal);
    if (sol.status == LpStatus::unbounded) return false;
    if (sol.status == LpStatus::infeasible) throw Error(Errc::infeasible, "slab body is empty");
    if (sol.value > c.offset) return false;
  }
  return true;
}

/// ||v||^2 <= beta^2 * n for every given squared norm.
inline bool circumradius_ok(std::span<const Rational> squared_norms, std::size_t n,
                            const Rational& beta) {
  const Rational limit = beta * beta * static_cast<unsigned long>(n);
  for (const auto& q : squared_norms) {
    if (q > limit) return false;
  }
  return true;
}

inline bool circumradius_ok(const VertexSet& vs, const Rational& beta) {
  if (vs.empty()) throw Error(Errc::invalid_input, "vertex set is empty");
  std::vector<Rational> norms;
  norms.reserve(vs.size());
  for (const auto& v : vs.points()) norms.push_back(squared_norm(v));
  return circumradius_ok(norms, vs.dimension(), beta);
}

/// Nonempty interior in R^n (exact Chebyshev-style LP).
inline bool is_full_dimensional(const HalfspaceSystem& sys) {
  auto margin = detail::interior_margin(sys.constraints(), sys.dimension());
  return margin && sgn(*margin) > 0;
}

/// No recession direction: every coordinate is bounded above and below.
inline bool is_bounded(const HalfspaceSystem& sys) {
  const std::size_t n = sys.dimension();
  for (std::size_t j = 0; j < n; ++j) {
    for (int s : {1, -1}) {
      RationalVector c(n, 0);
      c[j] = s;
      if (solve_lp(sys, c).status == LpStatus::unbounded) return false;
    }
  }
  return true;
}

}  // namespace vbound
