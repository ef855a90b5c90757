#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vbound/rational.hpp"

namespace vbound {

using RationalMatrix = std::vector<RationalVector>;  // row-major

/// Reduced row echelon form in place, pivoting only on the first `cols` columns; row operations
/// cover the whole row. Returns the pivot column of each nonzero row.
inline std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const std::size_t width = m[row].size();
    const Rational inv = 1 / m[row][col];
    for (std::size_t j = col; j < width; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || sgn(m[i][col]) == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = col; j < width; ++j) {
        if (sgn(m[row][j]) != 0) m[i][j] -= f * m[row][j];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(RationalMatrix m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  return rref(m, cols).size();
}

/// Basis of {x : M x = 0}; one vector per free column, with a 1 in that column.
inline RationalMatrix kernel_basis(RationalMatrix m, std::size_t cols) {
  const auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of M x = f, or nullopt when the system is inconsistent.
inline std::optional<RationalVector> particular_solution(const RationalMatrix& m,
                                                         const RationalVector& f,
                                                         std::size_t cols) {
  RationalMatrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(f[i]);
  const auto pivots = rref(aug, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  RationalVector x(cols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

/// Unique solution of the square system M x = f, or nullopt when M is singular.
inline std::optional<RationalVector> solve_square(const RationalMatrix& m, const RationalVector& f) {
  const std::size_t n = m.size();
  RationalMatrix aug = m;
  for (std::size_t i = 0; i < n; ++i) aug[i].push_back(f[i]);
  const auto pivots = rref(aug, n);
  if (pivots.size() < n) return std::nullopt;
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix aug(n, RationalVector(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  const auto pivots = rref(aug, n);
  if (pivots.size() < n) return std::nullopt;
  RationalMatrix inv(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline RationalVector mat_vec(const RationalMatrix& m, const RationalVector& x) {
  RationalVector y;
  y.reserve(m.size());
  for (const auto& row : m) y.push_back(dot(row, x));
  return y;
}

/// Row vector times matrix: (v^T M)_j.
inline RationalVector vec_mat(const RationalVector& v, const RationalMatrix& m, std::size_t cols) {
  RationalVector y(cols, 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(m[i][j]) != 0) y[j] += v[i] * m[i][j];
    }
  }
  return y;
}

}  // namespace vbound
