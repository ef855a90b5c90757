#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vbound/error.hpp"
#include "vbound/rational.hpp"

namespace vbound {

/// One halfspace <normal, x> <= offset.
struct Constraint {
  RationalVector normal;
  Rational offset;
};

/// H-representation of a polyhedron in R^n. Immutable once built.
class HalfspaceSystem {
 public:
  HalfspaceSystem(std::size_t dimension, std::vector<Constraint> constraints)
      : dimension_(dimension), constraints_(std::move(constraints)) {
    if (dimension_ == 0) throw Error(Errc::invalid_input, "dimension must be at least 1");
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      for (auto& q : constraints_[i].normal) q.canonicalize();
      constraints_[i].offset.canonicalize();
      if (constraints_[i].normal.size() != dimension_)
        throw Error(Errc::invalid_input, "constraint " + std::to_string(i) + " has length " +
                                             std::to_string(constraints_[i].normal.size()) +
                                             ", expected " + std::to_string(dimension_));
      if (is_zero(constraints_[i].normal))
        throw Error(Errc::invalid_input, "constraint " + std::to_string(i) + " has a zero normal");
    }
  }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return constraints_.size(); }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  const Constraint& operator[](std::size_t i) const { return constraints_[i]; }

  /// Slack offset - <normal, x> of every row; all nonnegative iff x is feasible.
  bool contains(const RationalVector& x) const {
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](const Constraint& c) { return dot(c.normal, x) <= c.offset; });
  }

  /// Indices of the rows tight at x.
  std::vector<std::size_t> active_set(const RationalVector& x) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      if (dot(constraints_[i].normal, x) == constraints_[i].offset) out.push_back(i);
    }
    return out;
  }

 private:
  std::size_t dimension_;
  std::vector<Constraint> constraints_;
};

/// The box [lo, hi]^n.
inline HalfspaceSystem make_box(std::size_t n, const Rational& lo, const Rational& hi) {
  std::vector<Constraint> rows;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n, 0);
    e[i] = 1;
    rows.push_back({e, hi});
    e[i] = -1;
    rows.push_back({e, -lo});
  }
  return HalfspaceSystem(n, std::move(rows));
}

inline HalfspaceSystem make_cube(std::size_t n, const Rational& half_width = 1) {
  return make_box(n, -half_width, half_width);
}

/// A symmetric slab |<normal, x>| <= bound. The pair is stored explicitly.
struct Slab {
  RationalVector normal;
  Rational bound;
};

/// The intersection of slabs as a halfspace system: rows 2i and 2i+1 are +u_i and -u_i.
inline HalfspaceSystem slab_body(std::size_t n, const std::vector<Slab>& slabs) {
  std::vector<Constraint> rows;
  rows.reserve(2 * slabs.size());
  for (const auto& s : slabs) {
    if (s.bound < 0) throw Error(Errc::invalid_input, "slab bound must be nonnegative");
    rows.push_back({s.normal, s.bound});
    RationalVector neg = s.normal;
    for (auto& q : neg) q = -q;
    rows.push_back({std::move(neg), s.bound});
  }
  return HalfspaceSystem(n, std::move(rows));
}

inline bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Finite point set with exact coordinates, kept sorted lexicographically and duplicate-free.
class VertexSet {
 public:
  explicit VertexSet(std::size_t dimension, std::vector<RationalVector> points = {})
      : dimension_(dimension), points_(std::move(points)) {
    for (const auto& p : points_) {
      if (p.size() != dimension_) throw Error(Errc::invalid_input, "point has wrong dimension");
    }
    std::sort(points_.begin(), points_.end(), lex_less);
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<RationalVector>& points() const noexcept { return points_; }

  bool contains(const RationalVector& p) const {
    return std::binary_search(points_.begin(), points_.end(), p, lex_less);
  }

  /// Adds a point; returns false when it was already present.
  bool insert(RationalVector p) {
    auto it = std::lower_bound(points_.begin(), points_.end(), p, lex_less);
    if (it != points_.end() && *it == p) return false;
    points_.insert(it, std::move(p));
    return true;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.dimension_ == b.dimension_ && a.points_ == b.points_;
  }

 private:
  std::size_t dimension_;
  std::vector<RationalVector> points_;
};

/// {x : (x - center)^T shape (x - center) <= 1}.
struct Ellipsoid {
  RationalVector center;
  std::vector<std::vector<double>> shape;
};

}  // namespace vbound
