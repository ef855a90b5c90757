// vbound command-line tool. Every subcommand prints one JSON report (or a flat human/csv view).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "vbound/constants.hpp"
#include "vbound/factors.hpp"
#include "vbound/io.hpp"
#include "vbound/pipeline.hpp"
#include "vbound/rounding.hpp"
#include "vbound/vertex_enum.hpp"
#include "vbound/witness.hpp"

using namespace vbound;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;
constexpr int kExitHypothesis = 4;
constexpr int kSchemaVersion = 1;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::invalid_input:
    case Errc::invalid_params:
    case Errc::degree_condition_violated:
    case Errc::precondition_violated:
    case Errc::too_large:
    case Errc::too_large_for_exhaustive:
    case Errc::not_centrally_symmetric:
    case Errc::infeasible221:
      return kExitValidation;
    case Errc::hypothesis_failed:
    case Errc::circumradius_violated:
    case Errc::rho221_violated:
      return kExitHypothesis;
    default:
      return kExitComputation;
  }
}

struct Output {
  std::string format = "json";
  std::string path;
};

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Top-level scalars only; nested values are left to the JSON view.
void write_flat(std::ostream& os, const Json& report, bool csv) {
  std::vector<std::pair<std::string, std::string>> cells;
  for (const auto& [key, value] : report.items()) {
    if (value.is_structured()) continue;
    cells.emplace_back(key, scalar_text(value));
  }
  if (csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i].first;
    os << "\n";
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i].second;
    os << "\n";
  } else {
    for (const auto& [k, v] : cells) os << k << ": " << v << "\n";
  }
}

void emit(const Output& out, const std::string& command, const Json& config, Json body) {
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = command;
  report["config"] = config;
  for (auto& [key, value] : body.items()) report[key] = std::move(value);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.path.empty()) {
    file.open(out.path);
    if (!file) throw Error(Errc::invalid_input, "cannot write " + out.path);
    os = &file;
  }
  if (out.format == "json") {
    *os << report.dump(2) << "\n";
  } else {
    write_flat(*os, report, out.format == "csv");
  }
}

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "json, csv or human")
      ->check(CLI::IsMember({"json", "csv", "human"}))
      ->capture_default_str();
  cmd->add_option("--out", out.path, "write the report here instead of stdout");
}

RationalVector read_vector_file(const std::string& path) {
  const Json j = read_json_file(path);
  if (!j.is_array()) throw Error(Errc::invalid_input, path + ": expected a JSON array");
  RationalVector v;
  for (const auto& q : j) v.push_back(detail::rational_from_json(q));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex-count bounds for polytopes and r-factor counting tools"};
  app.require_subcommand(1);
  Output out;
  int status = kExitOk;

  // gamma
  double alpha = 1, beta = 1;
  auto* gamma = app.add_subcommand("gamma", "optimize gamma(alpha, beta) over epsilon and rho");
  gamma->add_option("--alpha", alpha, "slab count ratio m / n (>= 1)")->capture_default_str();
  gamma->add_option("--beta", beta, "circumradius constant (>= 1)")->capture_default_str();
  add_output(gamma, out);
  gamma->callback([&] {
    const auto g = gamma_of(Quad(alpha), Quad(beta));
    emit(out, "gamma", {{"alpha", alpha}, {"beta", beta}}, gamma_json(g));
  });

  // gamma-graph
  long gk = 3, gr = 1;
  auto* gamma_graph = app.add_subcommand("gamma-graph", "constant chain for r-factors of k-regular graphs");
  gamma_graph->add_option("--k", gk, "degree")->required();
  gamma_graph->add_option("--r", gr, "factor degree")->required();
  add_output(gamma_graph, out);
  gamma_graph->callback([&] {
    const auto c = corollary13_constants(gk, gr);
    emit(out, "gamma-graph", {{"k", gk}, {"r", gr}}, corollary13_json(c));
  });

  // certify
  std::string polytope_path;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::optional<double> c_alpha, c_beta;
  auto* certify = app.add_subcommand("certify", "certified lower bound on the vertex count via Gaussian objectives");
  certify->add_option("--polytope", polytope_path, "polytope JSON file")->required();
  certify->add_option("--seed", seed, "random seed")->required();
  certify->add_option("--trials", trials, "number of objectives (default: schedule by dimension)");
  certify->add_option("--alpha", c_alpha, "with --beta: report threshold rates for gamma_of(alpha, beta)");
  certify->add_option("--beta", c_beta, "with --alpha: circumradius constant");
  add_output(certify, out);
  certify->callback([&] {
    if (c_alpha.has_value() != c_beta.has_value())
      throw Error(Errc::invalid_params, "--alpha and --beta go together");
    const auto sys = polytope_from_json(read_json_file(polytope_path));
    CertifyOptions o;
    o.seed = seed;
    o.trials = trials;
    Json config{{"polytope", polytope_path}, {"seed", seed}, {"trials", trials}};
    if (c_alpha) {
      const auto g = gamma_of(Quad(*c_alpha), Quad(*c_beta));
      o.threshold = threshold_from(g, from_double(*c_beta));
      o.threshold->alpha = *c_alpha;
      config["alpha"] = *c_alpha;
      config["beta"] = *c_beta;
    }
    emit(out, "certify", config, witness_json(certify_vertex_count(sys, o)));
  });

  // vertices
  auto* vertices = app.add_subcommand("vertices", "exact vertex enumeration");
  vertices->add_option("--polytope", polytope_path, "polytope JSON file")->required();
  add_output(vertices, out);
  vertices->callback([&] {
    const auto sys = polytope_from_json(read_json_file(polytope_path));
    const auto vs = enumerate_vertices(sys);
    emit(out, "vertices", {{"polytope", polytope_path}},
         {{"count", vs.size()}, {"vertices", vertices_json(vs)}});
  });

  // round
  auto* round = app.add_subcommand("round", "map a centrally symmetric polytope between the unit and sqrt(n) balls");
  round->add_option("--polytope", polytope_path, "polytope JSON file")->required();
  add_output(round, out);
  round->callback([&] {
    const auto sys = polytope_from_json(read_json_file(polytope_path));
    const auto r = round_polytope(sys);
    Json t = Json::array();
    for (const auto& row : r.transform) t.push_back(vector_json(row));
    emit(out, "round", {{"polytope", polytope_path}},
         {{"iterations", r.iterations},
          {"contains_unit_ball", contains_unit_ball(r.rounded)},
          {"transform", t},
          {"rounded", polytope_json(r.rounded)}});
  });

  // lemma21
  std::string kind = "norm";
  std::size_t dim = 100, slabs = 30;
  double eps = 0.5, tau = 0, rho = 2;
  std::string u_path;
  auto* lemma = app.add_subcommand("lemma21", "Monte Carlo check of the Gaussian norm, tail and slab bounds");
  lemma->add_option("--kind", kind, "norm, tail or sidak")->check(CLI::IsMember({"norm", "tail", "sidak"}))->capture_default_str();
  lemma->add_option("--seed", seed, "random seed")->required();
  std::size_t lemma_trials = 100000;
  lemma->add_option("--trials", lemma_trials, "Monte Carlo trials (>= 1000)")->capture_default_str();
  lemma->add_option("--n", dim, "dimension")->capture_default_str();
  lemma->add_option("--epsilon", eps, "norm: epsilon in (0, 1)")->capture_default_str();
  lemma->add_option("--tau", tau, "tail: threshold for a = e_1")->capture_default_str();
  lemma->add_option("--rho", rho, "sidak: slab half-width")->capture_default_str();
  lemma->add_option("--m", slabs, "sidak: number of random unit slabs")->capture_default_str();
  lemma->add_option("--u", u_path, "sidak: JSON array of slab normals instead of random ones");
  add_output(lemma, out);
  lemma->callback([&] {
    Lemma21Params p;
    Lemma21Kind k = Lemma21Kind::norm;
    Json config{{"kind", kind}, {"seed", seed}, {"trials", lemma_trials}};
    if (kind == "norm") {
      p.n = dim;
      p.epsilon = eps;
      config["n"] = dim;
      config["epsilon"] = eps;
    } else if (kind == "tail") {
      k = Lemma21Kind::tail;
      p.a.assign(dim, 0.0);
      if (dim > 0) p.a[0] = 1;
      p.tau = tau;
      config["n"] = dim;
      config["tau"] = tau;
    } else {
      k = Lemma21Kind::sidak;
      p.rho = rho;
      if (!u_path.empty()) {
        for (const auto& row : read_json_file(u_path)) p.u.push_back(row.get<std::vector<double>>());
        config["u"] = u_path;
      } else {
        // Slab normals come from a stream disjoint from the trial streams.
        TrialStream g(splitmix64(seed ^ 0x5eedULL), 0);
        for (std::size_t i = 0; i < slabs; ++i) {
          auto v = sample_gaussian(dim, g);
          double s = 0;
          for (double x : v) s += x * x;
          for (double& x : v) x /= std::sqrt(s) * (1 + 1e-15);
          p.u.push_back(std::move(v));
        }
        config["n"] = dim;
        config["m"] = slabs;
      }
      config["rho"] = rho;
    }
    const auto r = lemma21_empirical(k, p, lemma_trials, seed);
    emit(out, "lemma21", config,
         {{"empirical", r.empirical}, {"bound", r.bound}, {"sigma", r.sigma}, {"satisfied", r.satisfied}});
  });

  // factors count | polytope
  std::string graph_spec;
  long fk = 3, fr = 1;
  auto* factors = app.add_subcommand("factors", "r-factor enumeration and the r-factor polytope");
  factors->require_subcommand(1);
  auto* fcount = factors->add_subcommand("count", "enumerate all r-factors");
  fcount->add_option("--graph", graph_spec, "graph file or built-in name")->required();
  fcount->add_option("--r", fr, "factor degree")->required();
  add_output(fcount, out);
  fcount->callback([&] {
    const Graph g = load_graph(graph_spec);
    const auto fs = enumerate_r_factors(g, static_cast<std::size_t>(fr));
    Json list = Json::array();
    for (const auto& f : fs) list.push_back(f);
    emit(out, "factors count", {{"graph", graph_spec}, {"r", fr}},
         {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"count", fs.size()}, {"factors", list}});
  });
  auto* fpoly = factors->add_subcommand("polytope", "H-description of the r-factor polytope");
  fpoly->add_option("--graph", graph_spec, "graph file or built-in name")->required();
  fpoly->add_option("--r", fr, "factor degree")->required();
  add_output(fpoly, out);
  fpoly->callback([&] {
    const Graph g = load_graph(graph_spec);
    const auto sys = build_factor_polytope(g, static_cast<std::size_t>(fr));
    emit(out, "factors polytope", {{"graph", graph_spec}, {"r", fr}},
         {{"rows", sys.size()}, {"polytope", polytope_json(sys)}});
  });

  // graph check
  auto* graph = app.add_subcommand("graph", "graph hypotheses");
  graph->require_subcommand(1);
  auto* gcheck = graph->add_subcommand("check", "regularity, degree, parity and cut conditions");
  gcheck->add_option("--graph", graph_spec, "graph file or built-in name")->required();
  gcheck->add_option("--k", fk, "degree")->required();
  gcheck->add_option("--r", fr, "factor degree")->required();
  add_output(gcheck, out);
  gcheck->callback([&] {
    const Graph g = load_graph(graph_spec);
    Json body{{"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
    body["connected"] = g.connected();
    body["regular"] = check_regular(g, static_cast<std::size_t>(fk));
    body["degree_condition"] = fk >= 2 * fr + 1;
    body["parity"] = (static_cast<std::size_t>(fr) * g.vertex_count()) % 2 == 0;
    bool ok = body["connected"].get<bool>() && body["regular"].get<bool>() && body["degree_condition"].get<bool>() &&
              body["parity"].get<bool>();
    if (body["regular"].get<bool>()) {
      const auto cut = check_cut_condition(g, static_cast<std::size_t>(fk), static_cast<std::size_t>(fr));
      body["cut_condition"] = cut.ok;
      body["worst_cut"] = {{"u", cut.worst_u}, {"size", cut.worst_size}};
      ok = ok && cut.ok;
    } else {
      body["cut_condition"] = nullptr;
    }
    body["all_ok"] = ok;
    emit(out, "graph check", {{"graph", graph_spec}, {"k", fk}, {"r", fr}}, body);
    if (!ok) status = kExitHypothesis;
  });

  // deep-point
  std::string y_path;
  std::size_t samples = 0;
  auto* deep = app.add_subcommand("deep-point", "membership of a + y in the r-factor polytope");
  deep->add_option("--graph", graph_spec, "graph file or built-in name")->required();
  deep->add_option("--k", fk, "degree")->required();
  deep->add_option("--r", fr, "factor degree")->required();
  deep->add_option("--y", y_path, "JSON array of rationals (default: y = 0)");
  deep->add_option("--samples", samples, "additionally test this many random admissible y")->capture_default_str();
  deep->add_option("--seed", seed, "random seed (required with --samples)");
  add_output(deep, out);
  deep->callback([&] {
    if (samples > 0 && deep->count("--seed") == 0) throw Error(Errc::invalid_params, "--samples needs --seed");
    const auto inst = make_instance(load_graph(graph_spec), fk, fr);
    RationalVector y = y_path.empty() ? RationalVector(inst.graph.edge_count(), 0) : read_vector_file(y_path);
    const auto res = deep_point_check(inst, y);
    Json config{{"graph", graph_spec}, {"k", fk}, {"r", fr}, {"y", y_path.empty() ? Json("zero") : Json(y_path)}};
    Json body{{"epsilon_kr", to_string(inst.epsilon)}, {"fast", res.fast}, {"slow", res.slow},
              {"agree", res.agree()}, {"in_polytope", res.in_polytope()}};
    if (samples > 0) {
      config["samples"] = samples;
      config["seed"] = seed;
      const auto kernel = degree_kernel(inst.graph);
      std::size_t inside = 0, agree = 0;
      for (std::size_t t = 0; t < samples; ++t) {
        TrialStream rng(seed, t);
        const auto s = deep_point_check(inst, random_admissible_y(inst, kernel, rng));
        inside += s.in_polytope();
        agree += s.agree();
      }
      body["samples"] = {{"count", samples}, {"in_polytope", inside}, {"agree", agree}};
    }
    emit(out, "deep-point", config, body);
  });

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "hypotheses, constants, counts and certification for a graph");
  pipeline->add_option("--graph", graph_spec, "graph file or built-in name")->required();
  pipeline->add_option("--k", fk, "degree")->required();
  pipeline->add_option("--r", fr, "factor degree")->required();
  pipeline->add_option("--seed", seed, "random seed")->required();
  pipeline->add_option("--trials", trials, "certification trials (default: schedule by dim L)");
  add_output(pipeline, out);
  pipeline->callback([&] {
    PipelineOptions o;
    o.seed = seed;
    o.trials = trials;
    const auto rep = run_pipeline(load_graph(graph_spec), fk, fr, o);
    emit(out, "pipeline", {{"graph", graph_spec}, {"k", fk}, {"r", fr}, {"seed", seed}, {"trials", trials}},
         pipeline_json(rep));
    if (!rep.all_ok()) status = kExitHypothesis;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return status;
}
