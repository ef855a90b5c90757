#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "vbound/error.hpp"
#include "vbound/linalg.hpp"
#include "vbound/polytope.hpp"
#include "vbound/rational.hpp"

namespace vbound {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  RationalVector point;
  /// Rows of the system whose dual variables are basic; linearly independent and tight at `point`.
  std::vector<std::size_t> basic_rows;
};

/// max <objective, x> with the optimal basic point and whether it is a vertex.
struct LpResult {
  Rational value;
  RationalVector point;
  bool is_vertex = false;
};

namespace detail {

// Dense tableau for  min cost.w  s.t.  M w = rhs, w >= 0, with Bland's rule.
// Columns [0, structural) are the dual variables, the rest are artificials.
class DualTableau {
 public:
  DualTableau(const HalfspaceSystem& sys, const RationalVector& c)
      : m_(sys.size()), n_(sys.dimension()), cols_(m_ + n_) {
    rows_.assign(n_, RationalVector(cols_, 0));
    rhs_.assign(n_, 0);
    sign_.assign(n_, 1);
    basis_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) sign_[j] = sgn(c[j]) < 0 ? -1 : 1;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& a = sys[i].normal;
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(a[j]) != 0) rows_[j][i] = sign_[j] < 0 ? Rational(-a[j]) : a[j];
      }
    }
    for (std::size_t j = 0; j < n_; ++j) {
      rows_[j][m_ + j] = 1;
      rhs_[j] = sign_[j] < 0 ? Rational(-c[j]) : c[j];
      basis_[j] = m_ + j;
    }
  }

  // Phase 1: drive artificials to zero. Returns false when A^T l = c has no l >= 0.
  bool phase_one() {
    cost_.assign(cols_, 0);
    for (std::size_t j = m_; j < cols_; ++j) cost_[j] = 1;
    price_out();
    run(/*allow_artificial=*/false);
    if (sgn(value_) != 0) return false;
    for (std::size_t r = 0; r < n_; ++r) {
      if (basis_[r] < m_) continue;
      for (std::size_t j = 0; j < m_; ++j) {
        if (sgn(rows_[r][j]) != 0) {
          pivot(r, j);
          break;
        }
      }
      // A row left with an artificial basis is a redundant equation; it stays at level zero.
    }
    return true;
  }

  // Phase 2 with dual cost b. Returns false when the dual is unbounded.
  bool phase_two(const HalfspaceSystem& sys) {
    cost_.assign(cols_, 0);
    for (std::size_t i = 0; i < m_; ++i) cost_[i] = sys[i].offset;
    price_out();
    return run(false);
  }

  // Simplex multipliers, expressed on the unflipped equations: the primal point.
  RationalVector multipliers() const {
    RationalVector x(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      x[j] = -reduced_[m_ + j];
      if (sign_[j] < 0) x[j] = -x[j];
    }
    return x;
  }

  std::vector<std::size_t> basic_structural() const {
    std::vector<std::size_t> out;
    for (auto b : basis_)
      if (b < m_) out.push_back(b);
    return out;
  }

 private:
  void price_out() {
    reduced_ = cost_;
    value_ = 0;
    for (std::size_t r = 0; r < n_; ++r) {
      const Rational& cb = cost_[basis_[r]];
      if (sgn(cb) == 0) continue;
      value_ += cb * rhs_[r];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(rows_[r][j]) != 0) reduced_[j] -= cb * rows_[r][j];
      }
    }
  }

  // Returns false on unboundedness.
  bool run(bool allow_artificial) {
    const std::size_t limit = allow_artificial ? cols_ : m_;
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (sgn(reduced_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = n_;
      Rational best;
      for (std::size_t r = 0; r < n_; ++r) {
        if (sgn(rows_[r][enter]) <= 0) continue;
        Rational ratio = rhs_[r] / rows_[r][enter];
        if (leave == n_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave == n_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    const Rational inv = 1 / rows_[r][col];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (sgn(rows_[r][j]) != 0) {
        rows_[r][j] *= inv;
        nz.push_back(j);
      }
    }
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == r || sgn(rows_[i][col]) == 0) continue;
      const Rational f = rows_[i][col];
      for (auto j : nz) rows_[i][j] -= f * rows_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    if (sgn(reduced_[col]) != 0) {
      const Rational f = reduced_[col];
      for (auto j : nz) reduced_[j] -= f * rows_[r][j];
      value_ += f * rhs_[r];
    }
    basis_[r] = col;
  }

  std::size_t m_, n_, cols_;
  std::vector<RationalVector> rows_;
  RationalVector rhs_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
  RationalVector cost_;
  RationalVector reduced_;
  Rational value_;
};

inline LpSolution solve_dual_form(const HalfspaceSystem& sys, const RationalVector& c) {
  LpSolution out;
  DualTableau t(sys, c);
  if (!t.phase_one()) {
    out.status = LpStatus::unbounded;  // or infeasible; the caller disambiguates
    return out;
  }
  if (!t.phase_two(sys)) {
    out.status = LpStatus::infeasible;
    return out;
  }
  out.status = LpStatus::optimal;
  out.point = t.multipliers();
  out.value = dot(c, out.point);
  out.basic_rows = t.basic_structural();
  return out;
}

}  // namespace detail

/// Exact LP  max <c, x>  s.t.  sys. Never throws on infeasible/unbounded; reports a status.
inline LpSolution solve_lp(const HalfspaceSystem& sys, const RationalVector& objective) {
  if (objective.size() != sys.dimension())
    throw Error(Errc::invalid_input, "objective length does not match the system dimension");
  LpSolution out = detail::solve_dual_form(sys, objective);
  if (out.status == LpStatus::unbounded) {
    // Dual infeasible: the primal is unbounded if feasible, otherwise infeasible.
    const RationalVector zero(sys.dimension(), 0);
    if (detail::solve_dual_form(sys, zero).status != LpStatus::optimal)
      out.status = LpStatus::infeasible;
  }
  return out;
}

/// Rank of the rows of `sys` tight at x.
inline std::size_t active_rank(const HalfspaceSystem& sys, const RationalVector& x) {
  RationalMatrix rows;
  for (auto i : sys.active_set(x)) rows.push_back(sys[i].normal);
  if (rows.empty()) return 0;
  return rank(std::move(rows));
}

inline bool is_vertex_of(const HalfspaceSystem& sys, const RationalVector& x) {
  return sys.contains(x) && active_rank(sys, x) == sys.dimension();
}

inline LpResult lp_maximize(const HalfspaceSystem& sys, const RationalVector& objective) {
  LpSolution s = solve_lp(sys, objective);
  if (s.status == LpStatus::infeasible) throw Error(Errc::infeasible, "feasible region is empty");
  if (s.status == LpStatus::unbounded)
    throw Error(Errc::unbounded, "objective is unbounded above on the feasible region");
  LpResult r;
  r.value = std::move(s.value);
  r.is_vertex = s.basic_rows.size() == sys.dimension() || active_rank(sys, s.point) == sys.dimension();
  r.point = std::move(s.point);
  return r;
}

}  // namespace vbound
