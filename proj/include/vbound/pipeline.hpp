#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vbound/constants.hpp"
#include "vbound/containment.hpp"
#include "vbound/factors.hpp"
#include "vbound/io.hpp"
#include "vbound/vertex_enum.hpp"
#include "vbound/witness.hpp"

namespace vbound {

struct PipelineOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 0;  // 0: default schedule for dim L
};

struct Verdict {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct PipelineReport {
  std::size_t vertices = 0, edges = 0;
  long k = 0, r = 0;
  std::vector<Verdict> hypotheses;  // input conditions, in check order
  std::vector<Verdict> checks;      // derived conditions on the reduced body
  Corollary13Constants constants;
  std::optional<std::size_t> factor_count;
  std::optional<double> count_ratio;  // log2(count) / (gamma_graph |V|)
  std::size_t dim_l = 0;
  std::optional<std::size_t> reduced_rows, reduced_vertices, facets;
  std::optional<WitnessReport> witness;
  std::vector<std::string> skipped;

  bool all_ok() const {
    for (const auto* list : {&hypotheses, &checks})
      for (const auto& v : *list)
        if (!v.ok) return false;
    return true;
  }
};

/// Checks the graph hypotheses in order; the first failure is thrown as hypothesis_failed.
inline std::vector<Verdict> check_hypotheses(const Graph& g, long k, long r) {
  std::vector<Verdict> out;
  auto need = [&](std::string name, bool ok, std::string detail) {
    out.push_back({name, ok, detail});
    if (!ok) throw Error(Errc::hypothesis_failed, name + ": " + detail);
  };
  need("simple_graph", true, "no loops or multiple edges");
  if (k < 1 || r < 1) throw Error(Errc::invalid_params, "k and r must be positive");
  need("connected", g.connected(), "graph must be connected");
  need("check_regular", check_regular(g, static_cast<std::size_t>(k)), "every vertex has degree " + std::to_string(k));
  need("degree_condition", k >= 2 * r + 1, "k >= 2r + 1");
  need("parity", (static_cast<std::size_t>(r) * g.vertex_count()) % 2 == 0, "r |V| even");
  const auto cut = check_cut_condition(g, static_cast<std::size_t>(k), static_cast<std::size_t>(r));
  std::string d = "min cut over 2 <= |U| <= |V|-2 is " + std::to_string(cut.worst_size) + ", need r |delta(U)| > k";
  need("check_cut_condition", cut.ok, d);
  return out;
}

/// Hypotheses, constants, exact factor count, then (at desk scale) the reduced polytope in L,
/// its exact vertices and facets, the hypotheses of the vertex-count theorem on it, and a
/// seeded Gaussian certification run.
inline PipelineReport run_pipeline(const Graph& g, long k, long r, const PipelineOptions& opts = {}) {
  PipelineReport rep;
  rep.vertices = g.vertex_count();
  rep.edges = g.edge_count();
  rep.k = k;
  rep.r = r;
  rep.hypotheses = check_hypotheses(g, k, r);
  rep.constants = corollary13_constants(k, r);

  const auto inst = make_instance(g, k, r);
  if (g.edge_count() <= kMaxFactorEdges) {
    rep.factor_count = enumerate_r_factors(g, static_cast<std::size_t>(r)).size();
    const double denom = static_cast<double>(rep.constants.gamma_graph) * static_cast<double>(g.vertex_count());
    if (*rep.factor_count > 0) rep.count_ratio = std::log2(static_cast<double>(*rep.factor_count)) / denom;
  } else {
    rep.skipped.push_back("factor_count: more than " + std::to_string(kMaxFactorEdges) + " edges");
  }

  if (g.vertex_count() > kMaxPolytopeVertices || !rep.factor_count) {
    rep.skipped.push_back("reduced polytope: more than " + std::to_string(kMaxPolytopeVertices) + " vertices");
    return rep;
  }

  const auto red = reduce_to_L(inst);
  rep.dim_l = red.subspace.dimension();
  const std::size_t n = rep.dim_l;
  rep.checks.push_back({"dim_L_bound", red.dimension_ok,
                        "dim L = " + std::to_string(n) + ", |E| - |V| = " +
                            std::to_string(static_cast<long>(rep.edges) - static_cast<long>(rep.vertices))});
  rep.checks.push_back({"projection_norms", red.projections_ok, "||u_e|| <= 1 for every edge"});
  rep.checks.push_back({"reduced_norms", red.norms_ok,
                        "||[H] - a||^2 = " + to_string(red.expected_sq_norm) + " for every factor"});

  const auto body = reduced_factor_polytope(inst, red.subspace);
  rep.reduced_rows = body.size();
  const auto verts = enumerate_vertices(body);
  rep.reduced_vertices = verts.size();
  rep.checks.push_back({"vertices_are_factors", verts == red.factor_points,
                        "exact vertices of P - a equal the reduced factor indicators"});
  const auto facets = facet_subsystem(body, verts);
  rep.facets = facets.size();

  rep.checks.push_back({"slab_containment", contains_slab_body(facets, red.slabs),
                        "P - a contains {|<u_e, x>| <= epsilon}"});
  const Rational& beta = rep.constants.beta_eff;
  const Rational& eps = inst.epsilon;
  bool radius = true;
  for (const auto& q : red.factor_sq_norms) radius = radius && q <= beta * beta * eps * eps * static_cast<long>(n);
  rep.checks.push_back({"circumradius", radius, "||[H] - a|| / epsilon <= beta_eff sqrt(dim L)"});
  rep.checks.push_back({"slab_count", Rational(static_cast<long>(rep.edges)) <= rep.constants.alpha_eff * static_cast<long>(n),
                        "|E| <= alpha_eff dim L"});

  // Certify on the normalized body (P - a) / epsilon.
  std::vector<Constraint> scaled;
  for (const auto& c : facets.constraints()) scaled.push_back({c.normal, c.offset / eps});
  CertifyOptions copts;
  copts.trials = opts.trials;
  copts.seed = opts.seed;
  copts.coordinate_metric = red.subspace.sq_norms;
  copts.threshold = threshold_from(rep.constants.gamma, beta);
  copts.threshold->alpha = std::max(1.0, to_double(rep.constants.alpha_eff));
  rep.witness = certify_vertex_count(HalfspaceSystem(n, std::move(scaled)), copts);
  rep.checks.push_back({"certified_vertices", rep.witness->distinct_vertices_found <= *rep.factor_count,
                        "certified vertex count is a lower bound on the factor count"});
  return rep;
}

inline Json verdicts_json(const std::vector<Verdict>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back({{"name", v.name}, {"ok", v.ok}, {"detail", v.detail}});
  return out;
}

inline Json pipeline_json(const PipelineReport& r) {
  Json j;
  j["graph"] = {{"vertices", r.vertices}, {"edges", r.edges}};
  j["k"] = r.k;
  j["r"] = r.r;
  j["hypotheses"] = verdicts_json(r.hypotheses);
  j["checks"] = verdicts_json(r.checks);
  j["all_ok"] = r.all_ok();
  j["constants"] = corollary13_json(r.constants);
  j["gamma_graph"] = static_cast<double>(r.constants.gamma_graph);
  j["count"] = optional_json(r.factor_count);
  j["count_ratio"] = optional_json(r.count_ratio);
  j["dim_L"] = r.dim_l;
  j["reduced_rows"] = optional_json(r.reduced_rows);
  j["reduced_vertices"] = optional_json(r.reduced_vertices);
  j["facets"] = optional_json(r.facets);
  j["witness"] = r.witness ? witness_json(*r.witness) : Json(nullptr);
  j["skipped"] = r.skipped;
  return j;
}

}  // namespace vbound
