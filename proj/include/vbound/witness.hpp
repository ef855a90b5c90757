#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vbound/constants.hpp"
#include "vbound/containment.hpp"
#include "vbound/error.hpp"
#include "vbound/lp.hpp"
#include "vbound/polytope.hpp"
#include "vbound/random.hpp"

namespace vbound {

// Gaussian concentration bounds used by the certificate argument.

/// Pr(||y||^2 <= (1 - eps) n) <= exp(-eps^2 n / 4).
inline double norm_concentration_bound(double epsilon, std::size_t n) {
  return std::exp(-epsilon * epsilon * static_cast<double>(n) / 4);
}

/// Pr(<y, a> >= tau) <= exp(-tau^2 / (2 ||a||^2)) / 2.
inline double tail_bound(double tau, double a_norm) {
  return 0.5 * std::exp(-tau * tau / (2 * a_norm * a_norm));
}

/// Pr(|<u_i, y>| <= rho for all i) >= (1 - exp(-rho^2/2))^m when ||u_i|| <= 1.
inline double sidak_bound(std::size_t m, double rho) {
  return std::pow(-std::expm1(-rho * rho / 2), static_cast<double>(m));
}

/// Binomial standard error of an empirical frequency.
inline double binomial_sigma(double p, std::size_t trials) {
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

enum class Lemma21Kind { norm, tail, sidak };

struct Lemma21Params {
  std::size_t n = 0;                 // norm: dimension
  double epsilon = 0;                // norm
  std::vector<double> a;             // tail: direction (dimension = a.size())
  double tau = 0;                    // tail
  std::vector<std::vector<double>> u;  // sidak: slab normals (dimension = u[0].size())
  double rho = 0;                    // sidak
};

struct EmpiricalCheck {
  double empirical = 0;
  double bound = 0;
  double sigma = 0;
  bool satisfied = false;
  std::size_t trials = 0;
};

namespace detail {

inline double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return s;
}

inline double dotd(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void validate_lemma21(Lemma21Kind kind, const Lemma21Params& p, std::size_t trials) {
  if (trials < 1000) throw Error(Errc::invalid_params, "at least 1000 trials are required");
  switch (kind) {
    case Lemma21Kind::norm:
      if (p.n < 1) throw Error(Errc::invalid_params, "n must be >= 1");
      if (!(p.epsilon > 0 && p.epsilon < 1)) throw Error(Errc::invalid_params, "epsilon must lie in (0, 1)");
      break;
    case Lemma21Kind::tail:
      if (!(p.tau >= 0)) throw Error(Errc::invalid_params, "tau must be >= 0");
      if (p.a.empty() || norm2(p.a) == 0) throw Error(Errc::invalid_params, "a must be nonzero");
      break;
    case Lemma21Kind::sidak:
      if (!(p.rho >= 0)) throw Error(Errc::invalid_params, "rho must be >= 0");
      if (p.u.empty()) throw Error(Errc::invalid_params, "need at least one slab");
      for (const auto& v : p.u) {
        if (v.size() != p.u.front().size()) throw Error(Errc::invalid_params, "slab dimension mismatch");
        if (norm2(v) > 1 + 1e-12) throw Error(Errc::invalid_params, "slab normal has norm > 1");
      }
      break;
  }
}

}  // namespace detail

/// Monte Carlo estimate of one of the three Gaussian probabilities next to its bound. Upper bounds
/// (norm, tail) pass when empirical <= bound + 3 sigma; the slab lower bound passes when
/// empirical >= bound - 3 sigma.
inline EmpiricalCheck lemma21_empirical(Lemma21Kind kind, const Lemma21Params& p, std::size_t trials,
                                        std::uint64_t seed) {
  detail::validate_lemma21(kind, p, trials);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    TrialStream rng(seed, t);
    switch (kind) {
      case Lemma21Kind::norm: {
        auto y = sample_gaussian(p.n, rng);
        if (detail::norm2(y) <= (1 - p.epsilon) * static_cast<double>(p.n)) ++hits;
        break;
      }
      case Lemma21Kind::tail: {
        auto y = sample_gaussian(p.a.size(), rng);
        if (detail::dotd(y, p.a) >= p.tau) ++hits;
        break;
      }
      case Lemma21Kind::sidak: {
        auto y = sample_gaussian(p.u.front().size(), rng);
        bool inside = true;
        for (const auto& v : p.u) inside = inside && std::fabs(detail::dotd(v, y)) <= p.rho;
        if (inside) ++hits;
        break;
      }
    }
  }
  EmpiricalCheck out;
  out.trials = trials;
  out.empirical = static_cast<double>(hits) / static_cast<double>(trials);
  out.sigma = binomial_sigma(out.empirical, trials);
  switch (kind) {
    case Lemma21Kind::norm:
      out.bound = norm_concentration_bound(p.epsilon, p.n);
      out.satisfied = out.empirical <= out.bound + 3 * out.sigma;
      break;
    case Lemma21Kind::tail:
      out.bound = tail_bound(p.tau, std::sqrt(detail::norm2(p.a)));
      out.satisfied = out.empirical <= out.bound + 3 * out.sigma;
      break;
    case Lemma21Kind::sidak:
      out.bound = sidak_bound(p.u.size(), p.rho);
      out.satisfied = out.empirical >= out.bound - 3 * out.sigma;
      break;
  }
  return out;
}

struct SidakCorrelation {
  double joint = 0;    // empirical Pr(all slabs)
  double product = 0;  // product of empirical per-slab frequencies
  double sigma = 0;    // standard error of the joint frequency
  bool satisfied = false;
};

/// Positive correlation of symmetric slabs: joint frequency >= product of marginals - 3 sigma.
/// All frequencies come from the same samples.
inline SidakCorrelation sidak_product_check(const std::vector<std::vector<double>>& u, double rho,
                                            std::size_t trials, std::uint64_t seed) {
  Lemma21Params p;
  p.u = u;
  p.rho = rho;
  detail::validate_lemma21(Lemma21Kind::sidak, p, trials);
  std::vector<std::size_t> marginal(u.size(), 0);
  std::size_t joint = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    TrialStream rng(seed, t);
    auto y = sample_gaussian(u.front().size(), rng);
    bool all = true;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const bool in = std::fabs(detail::dotd(u[i], y)) <= rho;
      marginal[i] += in;
      all = all && in;
    }
    joint += all;
  }
  SidakCorrelation out;
  const double tn = static_cast<double>(trials);
  out.joint = static_cast<double>(joint) / tn;
  out.product = 1;
  for (auto c : marginal) out.product *= static_cast<double>(c) / tn;
  out.sigma = binomial_sigma(out.joint, trials);
  out.satisfied = out.joint >= out.product - 3 * out.sigma;
  return out;
}

/// (1 - exp(-rho^2/2))^{alpha n} / 2: lower bound on Pr(y in Q and ||y||^2 >= (1-eps) n).
/// Requires alpha ln(1 - exp(-rho^2/2)) > -eps^2/4.
inline double success_rate_bound(double alpha, std::size_t n, double rho, double epsilon) {
  if (!(alpha >= 1) || !(rho > 0) || !(epsilon > 0 && epsilon < 1))
    throw Error(Errc::invalid_params, "need alpha >= 1, rho > 0, epsilon in (0, 1)");
  if (!check_221<Quad>(Quad(alpha), Quad(epsilon), Quad(rho)))
    throw Error(Errc::rho221_violated, "alpha ln(1 - exp(-rho^2/2)) <= -epsilon^2/4");
  const Quad v = exp(Quad(alpha) * Quad(n) * log_slab_mass(Quad(rho))) / 2;
  return static_cast<double>(v);
}

/// (|W| / 2) exp(-tau^2 / (2 beta^2 n)) without the radius check.
inline double union_bound_value(std::size_t w, const Rational& beta, double tau, std::size_t n) {
  const double b = to_double(beta);
  return static_cast<double>(w) / 2 * std::exp(-tau * tau / (2 * b * b * static_cast<double>(n)));
}

/// (|W| / 2) exp(-tau^2 / (2 beta^2 n)): upper bound on Pr(max_{x in P} <x, y> >= tau).
inline double union_bound_check(const VertexSet& vs, const Rational& beta, double tau, std::size_t n) {
  if (vs.empty()) throw Error(Errc::invalid_input, "vertex set is empty");
  std::vector<Rational> norms;
  for (const auto& v : vs.points()) norms.push_back(squared_norm(v));
  if (!circumradius_ok(norms, n, beta))
    throw Error(Errc::circumradius_violated, "a vertex lies outside the ball of radius beta sqrt(n)");
  return union_bound_value(vs.size(), beta, tau, n);
}

/// Parameters of the threshold argument: containment constant alpha (m <= alpha n), radius
/// constant beta, and the chosen epsilon, rho.
struct ThresholdParams {
  double alpha = 1;
  Rational beta = 1;
  double epsilon = 0.5;
  double rho = 1;
};

inline ThresholdParams threshold_from(const GammaParams& g, const Rational& beta) {
  return {static_cast<double>(g.alpha), beta, static_cast<double>(g.epsilon), static_cast<double>(g.rho)};
}

struct CertifyOptions {
  std::size_t trials = 0;  // 0: default schedule for the dimension
  std::uint64_t seed = 0;
  std::optional<ThresholdParams> threshold;
  /// Diagonal Gram weights g_i when the coordinates are orthogonal but not orthonormal:
  /// ||z||^2 = sum g_i z_i^2. The Gaussian objective is scaled by sqrt(g_i) to stay isotropic.
  /// Empty means the standard metric.
  std::vector<Rational> coordinate_metric;
};

struct WitnessReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t dimension = 0;
  std::optional<double> tau;
  VertexSet vertices{1};
  std::size_t distinct_vertices_found = 0;
  std::size_t non_vertex_skipped = 0;
  std::size_t successes = 0;
  double empirical_success_rate = 0;
  double sigma = 0;
  std::optional<double> theoretical_lower_rate;
  std::optional<double> union_bound;  // evaluated with |W| = distinct_vertices_found
  std::optional<bool> circumradius_ok;
};

/// max(10^4, 4 * 2^n ln 2^n), capped at 10^6.
inline std::size_t default_trials(std::size_t n) {
  const double cover = 4.0 * std::pow(2.0, static_cast<double>(n)) * static_cast<double>(n) * std::log(2.0);
  return static_cast<std::size_t>(std::min(1e6, std::max(1e4, std::ceil(cover))));
}

/// Draws Gaussian objectives, maximizes each exactly over `sys`, and keeps the optimal points that
/// pass the exact rank-n active-set test. The result is a certified lower bound on the vertex count.
inline WitnessReport certify_vertex_count(const HalfspaceSystem& sys, const CertifyOptions& opts) {
  const std::size_t n = sys.dimension();
  if (!opts.coordinate_metric.empty() && opts.coordinate_metric.size() != n)
    throw Error(Errc::invalid_input, "coordinate metric has the wrong length");
  std::vector<double> scale(n, 1.0);
  for (std::size_t i = 0; i < opts.coordinate_metric.size(); ++i) {
    if (sgn(opts.coordinate_metric[i]) <= 0) throw Error(Errc::invalid_input, "coordinate metric must be positive");
    scale[i] = std::sqrt(to_double(opts.coordinate_metric[i]));
  }
  auto sq_norm = [&](const RationalVector& z) {
    if (opts.coordinate_metric.empty()) return squared_norm(z);
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += opts.coordinate_metric[i] * z[i] * z[i];
    return s;
  };
  if (!is_full_dimensional(sys)) throw Error(Errc::not_full_dimensional, "polytope has empty interior");
  if (!is_bounded(sys)) throw Error(Errc::unbounded_polyhedron, "polytope is unbounded");

  WitnessReport rep;
  rep.trials = opts.trials == 0 ? default_trials(n) : opts.trials;
  rep.seed = opts.seed;
  rep.dimension = n;
  rep.vertices = VertexSet(n);
  if (opts.threshold) {
    const auto& th = *opts.threshold;
    rep.tau = (1 - th.epsilon) * static_cast<double>(n) / th.rho;
    rep.theoretical_lower_rate = success_rate_bound(th.alpha, n, th.rho, th.epsilon);
  }
  for (std::size_t t = 0; t < rep.trials; ++t) {
    TrialStream rng(opts.seed, t);
    auto y = sample_gaussian(n, rng);
    for (std::size_t i = 0; i < n; ++i) y[i] *= scale[i];
    RationalVector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = from_double(y[i]);
    LpResult r = lp_maximize(sys, c);
    if (rep.tau && to_double(r.value) >= *rep.tau) ++rep.successes;
    if (!r.is_vertex) {
      ++rep.non_vertex_skipped;
      continue;
    }
    rep.vertices.insert(std::move(r.point));
  }
  rep.distinct_vertices_found = rep.vertices.size();
  rep.empirical_success_rate = static_cast<double>(rep.successes) / static_cast<double>(rep.trials);
  rep.sigma = binomial_sigma(rep.empirical_success_rate, rep.trials);
  if (opts.threshold) {
    std::vector<Rational> norms;
    for (const auto& v : rep.vertices.points()) norms.push_back(sq_norm(v));
    rep.circumradius_ok = circumradius_ok(norms, n, opts.threshold->beta);
    if (*rep.circumradius_ok && !rep.vertices.empty())
      rep.union_bound = union_bound_value(rep.vertices.size(), opts.threshold->beta, *rep.tau, n);
  }
  return rep;
}

struct SandwichCheck {
  double lower = 0, empirical = 0, upper = 0, sigma = 0;
  bool holds = false;
};

/// lower - 3 sigma <= empirical <= upper + 3 sigma.
inline SandwichCheck sandwich(double lower, double empirical, double upper, std::size_t trials) {
  SandwichCheck s{lower, empirical, upper, binomial_sigma(empirical, trials), false};
  s.holds = lower - 3 * s.sigma <= empirical && empirical <= upper + 3 * s.sigma;
  return s;
}

}  // namespace vbound
