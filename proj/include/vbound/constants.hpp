#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "vbound/error.hpp"
#include "vbound/rational.hpp"

namespace vbound {

/// 113-bit mantissa; all transcendental evaluations in this module use it.
using Quad = boost::multiprecision::cpp_bin_float_quad;
/// 237-bit mantissa, used to re-check results at (more than) doubled precision.
using Oct = boost::multiprecision::cpp_bin_float_oct;

template <class Real>
Real to_real(const Rational& q) {
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

/// Smallest rational with the given power-of-ten denominator that is >= x.
template <class Real>
Rational ceil_rational(const Real& x, unsigned decimals) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, decimals);
  const Real scaled = ceil(x * Real(den.get_str()));
  mpz_class num(scaled.str(0, std::ios_base::fixed).substr(0, scaled.str(0, std::ios_base::fixed).find('.')));
  Rational out(num, den);
  out.canonicalize();
  return out;
}

/// ln(1 - exp(-rho^2 / 2)), the per-slab log probability lower bound.
template <class Real>
Real log_slab_mass(const Real& rho) {
  return log1p(-exp(-rho * rho / 2));
}

/// alpha * ln(1 - exp(-rho^2/2)) > -epsilon^2 / 4.
template <class Real = Quad>
bool check_221(const Real& alpha, const Real& epsilon, const Real& rho) {
  return alpha * log_slab_mass(rho) > -(epsilon * epsilon) / 4;
}

namespace detail {

template <class Real>
void validate_gamma_inputs(const Real& alpha, const Real& beta, const Real& epsilon, const Real& rho) {
  if (!(alpha >= 1)) throw Error(Errc::invalid_params, "alpha must be >= 1");
  if (!(beta >= 1)) throw Error(Errc::invalid_params, "beta must be >= 1");
  if (!(epsilon > 0 && epsilon < 1)) throw Error(Errc::invalid_params, "epsilon must lie in (0, 1)");
  if (!(rho > 0)) throw Error(Errc::invalid_params, "rho must be positive");
}

template <class Real>
Real gamma_formula(const Real& alpha, const Real& beta, const Real& epsilon, const Real& rho) {
  const Real slab = -expm1(-rho * rho / 2);  // 1 - exp(-rho^2/2)
  const Real lead = (1 - epsilon) * (1 - epsilon) / (2 * beta * beta * rho * rho);
  return lead * slab + alpha * log1p(-exp(-rho * rho / 2));
}

}  // namespace detail

/// (1-eps)^2 / (2 beta^2 rho^2) * (1 - e^{-rho^2/2}) + alpha ln(1 - e^{-rho^2/2}).
/// Throws Infeasible221 when the side condition on rho fails.
template <class Real = Quad>
Real gamma_value(const Real& alpha, const Real& beta, const Real& epsilon, const Real& rho) {
  detail::validate_gamma_inputs(alpha, beta, epsilon, rho);
  if (!check_221(alpha, epsilon, rho))
    throw Error(Errc::infeasible221, "alpha ln(1 - exp(-rho^2/2)) <= -epsilon^2/4");
  return detail::gamma_formula(alpha, beta, epsilon, rho);
}

struct GammaParams {
  Quad alpha, beta, epsilon, rho, gamma;
};

struct GammaSearchOptions {
  double epsilon_step = 0.01;
  int rho_log2_min = -4;
  int rho_log2_max = 8;
  std::size_t rho_points = 512;
  double relative_tolerance = 1e-9;
  std::size_t max_rounds = 200;
};

/// Best feasible (epsilon, rho) for the given (alpha, beta): coarse grid, then alternating
/// golden-section refinement in rho and epsilon. Deterministic.
inline GammaParams gamma_of(const Quad& alpha, const Quad& beta, const GammaSearchOptions& opts = {}) {
  if (!(alpha >= 1)) throw Error(Errc::invalid_params, "alpha must be >= 1");
  if (!(beta >= 1)) throw Error(Errc::invalid_params, "beta must be >= 1");

  const Quad neg_inf = -std::numeric_limits<Quad>::max();
  auto objective = [&](const Quad& eps, const Quad& rho) -> Quad {
    if (!(eps > 0 && eps < 1 && rho > 0)) return neg_inf;
    if (!check_221(alpha, eps, rho)) return neg_inf;
    return detail::gamma_formula(alpha, beta, eps, rho);
  };

  // Grid. Per-rho quantities are shared across the epsilon rows.
  std::vector<Quad> rhos(opts.rho_points);
  std::vector<Quad> slab(opts.rho_points), logslab(opts.rho_points);
  const Quad span = Quad(opts.rho_log2_max - opts.rho_log2_min);
  for (std::size_t i = 0; i < opts.rho_points; ++i) {
    rhos[i] = pow(Quad(2), Quad(opts.rho_log2_min) + span * Quad(i) / Quad(opts.rho_points - 1));
    slab[i] = -expm1(-rhos[i] * rhos[i] / 2);
    logslab[i] = log1p(-exp(-rhos[i] * rhos[i] / 2));
  }
  const int eps_count = static_cast<int>(1.0 / opts.epsilon_step + 0.5) - 1;
  bool found = false;
  Quad best = neg_inf, best_eps, best_rho;
  std::size_t best_i = 0;
  int best_e = 0;
  for (int e = 1; e <= eps_count; ++e) {
    const Quad eps = Quad(e) * Quad(opts.epsilon_step);
    const Quad lead_num = (1 - eps) * (1 - eps) / (2 * beta * beta);
    for (std::size_t i = 0; i < opts.rho_points; ++i) {
      if (!(alpha * logslab[i] > -(eps * eps) / 4)) continue;
      const Quad g = lead_num / (rhos[i] * rhos[i]) * slab[i] + alpha * logslab[i];
      if (!found || g > best) {
        found = true;
        best = g;
        best_eps = eps;
        best_rho = rhos[i];
        best_i = i;
        best_e = e;
      }
    }
  }
  if (!found || !(best > 0))
    throw Error(Errc::no_feasible_point, "grid search found no feasible point with gamma > 0");

  // Refinement brackets: one grid cell on each side.
  const Quad eps_lo = Quad(best_e - 1) * Quad(opts.epsilon_step);
  const Quad eps_hi = Quad(best_e + 1) * Quad(opts.epsilon_step);
  const Quad rho_lo = rhos[best_i == 0 ? 0 : best_i - 1];
  const Quad rho_hi = rhos[best_i + 1 < rhos.size() ? best_i + 1 : best_i];

  const Quad golden = (sqrt(Quad(5)) - 1) / 2;
  auto golden_max = [&](auto&& f, Quad lo, Quad hi, Quad& arg, Quad& val) {
    Quad a = lo, b = hi;
    Quad c = b - golden * (b - a), d = a + golden * (b - a);
    Quad fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > Quad(opts.relative_tolerance) * abs(b); ++it) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - golden * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + golden * (b - a);
        fd = f(d);
      }
      for (auto [x, fx] : {std::pair<Quad, Quad>{c, fc}, std::pair<Quad, Quad>{d, fd}}) {
        if (fx > val) {
          val = fx;
          arg = x;
        }
      }
    }
  };

  for (std::size_t round = 0; round < opts.max_rounds; ++round) {
    const Quad before = best;
    golden_max([&](const Quad& r) { return objective(best_eps, r); }, rho_lo, rho_hi, best_rho, best);
    golden_max([&](const Quad& e) { return objective(e, best_rho); }, eps_lo, eps_hi, best_eps, best);
    if (best - before <= Quad(opts.relative_tolerance) * abs(best)) break;
  }

  // gamma decreases in epsilon, so for fixed rho the best epsilon is the smallest feasible one:
  // search rho along that boundary curve as well (coordinate steps stall on it).
  auto boundary_eps = [&](const Quad& rho) {
    return 2 * sqrt(-alpha * log_slab_mass(rho)) * (Quad(1) + Quad(1e-12));
  };
  {
    const std::size_t lo_i = best_i >= 16 ? best_i - 16 : 0;
    const std::size_t hi_i = std::min(best_i + 16, rhos.size() - 1);
    Quad arg = best_rho, val = best;
    golden_max([&](const Quad& r) { return objective(boundary_eps(r), r); }, rhos[lo_i], rhos[hi_i], arg,
               val);
    if (val > best) {
      best = val;
      best_rho = arg;
      best_eps = boundary_eps(arg);
    }
  }

  // Keep a margin so the side condition also holds at higher precision.
  while (!check_221<Oct>(Oct(alpha), Oct(best_eps), Oct(best_rho))) best_eps *= Quad(1) + Quad(1e-15);

  return {alpha, beta, best_eps, best_rho, detail::gamma_formula(alpha, beta, best_eps, best_rho)};
}

/// min{ r/k - 1/ceil((k+1)/r), 1/(2k) }, exactly.
inline Rational epsilon_kr(long k, long r) {
  if (r < 1) throw Error(Errc::invalid_params, "r must be >= 1");
  if (k < 2 * r + 1) throw Error(Errc::degree_condition_violated, "k must be >= 2r + 1");
  const long ceil_div = (k + 1 + r - 1) / r;
  Rational first = ratio(r, k) - ratio(1, ceil_div);
  const Rational second = ratio(1, 2 * k);
  return first < second ? first : second;
}

/// The constant chain for counting r-factors of k-regular graphs. Implementation-derived values.
struct Corollary13Constants {
  long k = 0, r = 0;
  Rational epsilon_kr;
  Rational n_per_vertex;   // k/2 - 1: lower bound on dim L / |V|
  Rational alpha_eff;      // |E| / n = k / (k - 2)
  Quad radius_per_sqrt_v;  // (||[H]|| + ||a||) / sqrt(|V|)
  Quad beta_exact;         // radius / (epsilon * sqrt(n))
  Rational beta_eff;       // rational upper bound of beta_exact
  GammaParams gamma;       // gamma_of(alpha_eff, beta_eff)
  Quad gamma_graph;        // gamma * n_per_vertex / ln 2
};

inline Corollary13Constants corollary13_constants(long k, long r, const GammaSearchOptions& opts = {}) {
  Corollary13Constants c;
  c.k = k;
  c.r = r;
  c.epsilon_kr = epsilon_kr(k, r);
  c.n_per_vertex = ratio(k, 2) - 1;
  c.n_per_vertex.canonicalize();
  c.alpha_eff = ratio(k, k - 2);
  c.alpha_eff.canonicalize();
  // ||[H]|| = sqrt(r|V|/2), ||a|| = (r/k) sqrt(k|V|/2); triangle inequality bounds ||[H] - a||.
  const Quad kq(k), rq(r);
  c.radius_per_sqrt_v = sqrt(rq / 2) + rq / kq * sqrt(kq / 2);
  c.beta_exact = c.radius_per_sqrt_v / (to_real<Quad>(c.epsilon_kr) * sqrt(to_real<Quad>(c.n_per_vertex)));
  c.beta_eff = ceil_rational(c.beta_exact, 12);
  c.gamma = gamma_of(to_real<Quad>(c.alpha_eff), to_real<Quad>(c.beta_eff), opts);
  c.gamma_graph = c.gamma.gamma * to_real<Quad>(c.n_per_vertex) / log(Quad(2));
  return c;
}

/// Base-2 exponent for centrally symmetric polytopes with at most alpha*n facet pairs.
inline Quad corollary12_gamma(const Quad& alpha, const GammaSearchOptions& opts = {}) {
  return gamma_of(alpha, Quad(1), opts).gamma / log(Quad(2));
}

}  // namespace vbound
