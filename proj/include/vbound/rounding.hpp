#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "vbound/containment.hpp"
#include "vbound/error.hpp"
#include "vbound/linalg.hpp"
#include "vbound/polytope.hpp"

namespace vbound {

struct RoundingOptions {
  double tolerance = 1e-6;       // Khachiyan stop: max leverage <= n (1 + tolerance)
  std::size_t max_iterations = 10000;
};

/// z = transform * x + translation maps P onto `rounded`, which contains the unit ball and lies in
/// the ball of radius sqrt(n) (1 + tolerance).
struct RoundingResult {
  RationalMatrix transform;
  RationalVector translation;
  HalfspaceSystem rounded;
  Ellipsoid inscribed;  // in the original coordinates
  std::size_t iterations = 0;
};

namespace detail {

using DMatrix = std::vector<std::vector<long double>>;

inline DMatrix cholesky(const DMatrix& s) {
  const std::size_t n = s.size();
  DMatrix l(n, std::vector<long double>(n, 0.0L));
  for (std::size_t j = 0; j < n; ++j) {
    long double d = s[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
    if (!(d > 0)) throw Error(Errc::convergence_failure, "shape matrix is not positive definite");
    l[j][j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      long double v = s[i][j];
      for (std::size_t k = 0; k < j; ++k) v -= l[i][k] * l[j][k];
      l[i][j] = v / l[j][j];
    }
  }
  return l;
}

inline DMatrix invert(const DMatrix& m) {
  const std::size_t n = m.size();
  DMatrix a = m;
  DMatrix inv(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    if (a[p][c] == 0) throw Error(Errc::convergence_failure, "singular moment matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const long double d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const long double f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Centrally symmetric pairing: returns, for each row, the index of its mirror (-u, delta).
inline std::vector<std::size_t> symmetric_partners(const HalfspaceSystem& sys) {
  std::map<RationalVector, std::size_t, decltype(&lex_less)> index(&lex_less);
  std::vector<Constraint> norm;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    norm.push_back(detail::normalized(sys[i]));
    index.emplace(detail::row_key(norm.back()), i);
  }
  std::vector<std::size_t> partner(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    Constraint mirror = norm[i];
    for (auto& q : mirror.normal) q = -q;
    auto it = index.find(detail::row_key(mirror));
    if (it == index.end())
      throw Error(Errc::not_centrally_symmetric, "row " + std::to_string(i) + " has no mirror row");
    partner[i] = it->second;
  }
  return partner;
}

/// Maps a centrally symmetric polytope {x : |<u_i, x>| <= delta_i} to one that contains the unit
/// ball and sits inside the sqrt(n) (1 + tol) ball.
///
/// The inscribed ellipsoid is the polar of a Khachiyan minimum-volume enclosing ellipsoid of the
/// points +-u_i / delta_i. For any design weights pi the matrix S = n * sum pi_i w_i w_i^T gives
/// ||T x||^2 = x^T S x <= n on P, so the outer bound holds by construction; the inner bound holds
/// up to the leverage gap, which is then closed exactly by a rational rescale of T.
inline RoundingResult round_polytope(const HalfspaceSystem& sys, const RoundingOptions& opts = {}) {
  const std::size_t n = sys.dimension();
  (void)symmetric_partners(sys);
  for (const auto& c : sys.constraints()) {
    if (sgn(c.offset) <= 0)
      throw Error(Errc::not_full_dimensional, "a symmetric pair with offset <= 0 has empty interior");
  }
  if (!is_bounded(sys)) throw Error(Errc::not_full_dimensional, "polytope is unbounded");

  // Points w_i = u_i / delta_i, one per row (mirrors give the same outer products).
  const std::size_t m = sys.size();
  std::vector<std::vector<long double>> w(m, std::vector<long double>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      w[i][j] = static_cast<long double>(to_double(sys[i].normal[j] / sys[i].offset));

  std::vector<long double> pi(m, 1.0L / static_cast<long double>(m));
  detail::DMatrix moment;
  std::vector<long double> leverage(m);
  std::size_t it = 0;
  for (;; ++it) {
    moment.assign(n, std::vector<long double>(n, 0.0L));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) moment[a][b] += pi[i] * w[i][a] * w[i][b];
    const auto minv = detail::invert(moment);
    std::size_t worst = 0;
    std::size_t weakest = m;
    for (std::size_t i = 0; i < m; ++i) {
      long double k = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) k += w[i][a] * minv[a][b] * w[i][b];
      leverage[i] = k;
      if (k > leverage[worst]) worst = i;
      if (pi[i] > 0 && (weakest == m || k < leverage[weakest])) weakest = i;
    }
    const long double nn = static_cast<long double>(n);
    const long double kmax = leverage[worst];
    const long double kmin = leverage[weakest];
    if (kmax <= nn * (1 + opts.tolerance)) break;
    if (it >= opts.max_iterations)
      throw Error(Errc::convergence_failure,
                  "no convergence to tolerance " + std::to_string(opts.tolerance));
    // Todd-Yildirim: either move weight toward the worst point or away from the weakest one.
    std::size_t j = worst;
    long double step = (kmax / nn - 1) / (kmax - 1);
    if (kmax / nn - 1 < 1 - kmin / nn) {
      j = weakest;
      // Below leverage 1 the line search has no interior optimum: drop the point entirely.
      const long double drop = -pi[j] / (1 - pi[j]);
      step = kmin > 1 ? std::max((kmin / nn - 1) / (kmin - 1), drop) : drop;
    }
    for (auto& p : pi) p *= (1 - step);
    pi[j] += step;
    if (pi[j] < 0) pi[j] = 0;
  }

  // S = n * M, T = L^T where S = L L^T.
  detail::DMatrix s = moment;
  for (auto& row : s)
    for (auto& v : row) v *= static_cast<long double>(n);
  const auto l = detail::cholesky(s);
  RationalMatrix t(n, RationalVector(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = from_double(static_cast<double>(l[j][i]));

  auto tinv = inverse(t);
  if (!tinv) throw Error(Errc::convergence_failure, "rounded transform is singular");

  // Rows in the new coordinates: <u T^{-1}, z> <= delta. Rescale T up so each ||u T^{-1}|| <= delta.
  auto rows_for = [&](const RationalMatrix& inv_t) {
    std::vector<Constraint> rows;
    for (const auto& c : sys.constraints()) rows.push_back({vec_mat(c.normal, inv_t, n), c.offset});
    return rows;
  };
  std::vector<Constraint> rows = rows_for(*tinv);
  auto all_inside = [](const std::vector<Constraint>& rs, const Rational& sc) {
    for (const auto& r : rs) {
      if (squared_norm(r.normal) > r.offset * r.offset * sc * sc) return false;
    }
    return true;
  };
  if (!all_inside(rows, 1)) {
    double worst_ratio = 1;
    for (const auto& r : rows)
      worst_ratio = std::max(worst_ratio, to_double(squared_norm(r.normal) / (r.offset * r.offset)));
    Rational scale = ceil_to_denominator(std::sqrt(worst_ratio) * (1 + 1e-12), 1000000000000L);
    while (!all_inside(rows, scale)) scale *= ratio(1000001, 1000000);
    for (auto& row : t)
      for (auto& q : row) q *= scale;
    tinv = inverse(t);
    rows = rows_for(*tinv);
  }

  RoundingResult out{t, RationalVector(n, 0), HalfspaceSystem(n, std::move(rows)), {}, it};
  out.inscribed.center.assign(n, 0);
  out.inscribed.shape.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k)
        out.inscribed.shape[a][b] += to_double(t[k][a] * t[k][b]);
  return out;
}

/// Exact unit-ball containment: ||normal|| <= offset for every row.
inline bool contains_unit_ball(const HalfspaceSystem& sys) {
  for (const auto& c : sys.constraints()) {
    if (sgn(c.offset) < 0 || squared_norm(c.normal) > c.offset * c.offset) return false;
  }
  return true;
}

}  // namespace vbound
