#pragma once

// Independent brute-force oracles. Nothing here calls into the code paths it is used to check.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;

struct Row {
  Vec a;
  Q b;
};

// Plain Gauss-Jordan on a square system; nullopt when singular.
inline std::optional<Vec> solve(std::vector<Vec> m, Vec rhs) {
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Q f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
      rhs[r] -= f * rhs[c];
    }
  }
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

inline Q dot(const Vec& a, const Vec& b) {
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Every n-subset of rows; keep feasible unique basic solutions.
inline std::set<Vec> vertices_by_active_sets(const std::vector<Row>& rows, std::size_t n) {
  std::set<Vec> out;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == n) {
      std::vector<Vec> m;
      Vec rhs;
      for (auto i : pick) {
        m.push_back(rows[i].a);
        rhs.push_back(rows[i].b);
      }
      auto x = solve(m, rhs);
      if (!x) return;
      for (const auto& r : rows)
        if (dot(r.a, *x) > r.b) return;
      out.insert(*x);
      return;
    }
    for (std::size_t i = start; i < rows.size(); ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

// max <c, s> over sign vectors s in {-1, 1}^n.
inline std::pair<Q, Vec> cube_max_by_signs(const Vec& c) {
  const std::size_t n = c.size();
  Q best;
  Vec arg;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    Vec s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1U ? 1 : -1;
    Q v = dot(c, s);
    if (arg.empty() || v > best) {
      best = v;
      arg = s;
    }
  }
  return {best, arg};
}

// All edge subsets with every vertex degree exactly r, by scanning all 2^|E| subsets.
inline std::vector<std::vector<std::size_t>> factors_by_subsets(
    std::size_t nv, const std::vector<std::pair<int, int>>& edges, int r) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t m = edges.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> deg(nv, 0);
    for (std::size_t e = 0; e < m; ++e) {
      if ((mask >> e) & 1U) {
        ++deg[edges[e].first];
        ++deg[edges[e].second];
      }
    }
    if (std::all_of(deg.begin(), deg.end(), [&](int d) { return d == r; })) {
      std::vector<std::size_t> sub;
      for (std::size_t e = 0; e < m; ++e)
        if ((mask >> e) & 1U) sub.push_back(e);
      out.push_back(sub);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// min over all F subset of cut with parity r|U|+|F| odd of the slack of the parity inequality.
inline std::optional<Q> min_blossom_slack_by_subsets(const std::vector<std::size_t>& cut,
                                                     const Vec& x, int r_times_u) {
  std::optional<Q> best;
  const std::size_t c = cut.size();
  for (std::uint32_t mask = 0; mask < (1U << c); ++mask) {
    const int f = __builtin_popcount(mask);
    if ((r_times_u + f) % 2 == 0) continue;
    Q lhs = 0;
    for (std::size_t i = 0; i < c; ++i) lhs += ((mask >> i) & 1U) ? Q(-x[cut[i]]) : x[cut[i]];
    Q slack = lhs - (1 - f);
    if (!best || slack < *best) best = slack;
  }
  return best;
}

}  // namespace oracle
