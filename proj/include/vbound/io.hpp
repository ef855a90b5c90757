#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "vbound/constants.hpp"
#include "vbound/error.hpp"
#include "vbound/polytope.hpp"
#include "vbound/rational.hpp"
#include "vbound/witness.hpp"

namespace vbound {

using Json = nlohmann::ordered_json;

namespace detail {

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_number_float()) throw Error(Errc::invalid_input, "use a string such as \"1/3\" for non-integer rationals");
  throw Error(Errc::invalid_input, "expected a rational number");
}

}  // namespace detail

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Json vector_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

/// {"n": N, "constraints": [{"normal": ["1", "-1/2"], "offset": "3"}, ...]}
inline HalfspaceSystem polytope_from_json(const Json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Constraint> rows;
    for (const auto& c : j.at("constraints")) {
      Constraint row;
      for (const auto& q : c.at("normal")) row.normal.push_back(detail::rational_from_json(q));
      row.offset = detail::rational_from_json(c.at("offset"));
      rows.push_back(std::move(row));
    }
    return HalfspaceSystem(n, std::move(rows));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::invalid_input, std::string("polytope JSON: ") + ex.what());
  }
}

inline Json polytope_json(const HalfspaceSystem& sys) {
  Json rows = Json::array();
  for (const auto& c : sys.constraints()) rows.push_back({{"normal", vector_json(c.normal)}, {"offset", to_string(c.offset)}});
  return {{"n", sys.dimension()}, {"constraints", rows}};
}

inline Json vertices_json(const VertexSet& vs) {
  Json out = Json::array();
  for (const auto& p : vs.points()) out.push_back(vector_json(p));
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_input, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::invalid_input, path + ": " + ex.what());
  }
}

/// Decimal string with `digits` significant digits, for high-precision scalars.
template <class Real>
std::string decimal(const Real& x, int digits = 30) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

inline Json gamma_json(const GammaParams& g) {
  return {{"alpha", static_cast<double>(g.alpha)},
          {"beta", static_cast<double>(g.beta)},
          {"epsilon", static_cast<double>(g.epsilon)},
          {"rho", static_cast<double>(g.rho)},
          {"gamma", static_cast<double>(g.gamma)},
          {"gamma_decimal", decimal(g.gamma)}};
}

inline Json corollary13_json(const Corollary13Constants& c) {
  return {{"k", c.k},
          {"r", c.r},
          {"epsilon_kr", to_string(c.epsilon_kr)},
          {"n_per_vertex", to_string(c.n_per_vertex)},
          {"alpha_eff", to_string(c.alpha_eff)},
          {"radius_per_sqrt_v", static_cast<double>(c.radius_per_sqrt_v)},
          {"beta_exact", static_cast<double>(c.beta_exact)},
          {"beta_eff", to_string(c.beta_eff)},
          {"gamma", gamma_json(c.gamma)},
          {"gamma_graph", static_cast<double>(c.gamma_graph)},
          {"gamma_graph_decimal", decimal(c.gamma_graph)}};
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json witness_json(const WitnessReport& r) {
  return {{"seed", r.seed},
          {"trials", r.trials},
          {"dimension", r.dimension},
          {"tau", optional_json(r.tau)},
          {"distinct_vertices_found", r.distinct_vertices_found},
          {"non_vertex_skipped", r.non_vertex_skipped},
          {"vertices", vertices_json(r.vertices)},
          {"successes", r.successes},
          {"empirical_success_rate", r.empirical_success_rate},
          {"sigma", r.sigma},
          {"theoretical_lower_rate", optional_json(r.theoretical_lower_rate)},
          {"union_bound", optional_json(r.union_bound)},
          {"circumradius_ok", optional_json(r.circumradius_ok)}};
}

}  // namespace vbound
