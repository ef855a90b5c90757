#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "vbound/error.hpp"

namespace vbound {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph; edges are stored with u < v in the order given.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t vertices, std::vector<Edge> edges) : n_(vertices), edges_(std::move(edges)) {
    std::vector<Edge> seen;
    for (auto& e : edges_) {
      if (e.first >= n_ || e.second >= n_) throw Error(Errc::invalid_input, "edge endpoint out of range");
      if (e.first == e.second) throw Error(Errc::invalid_input, "loops are not allowed");
      if (e.first > e.second) std::swap(e.first, e.second);
      seen.push_back(e);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw Error(Errc::invalid_input, "multiple edges are not allowed");
    incident_.assign(n_, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      incident_[edges_[i].first].push_back(i);
      incident_[edges_[i].second].push_back(i);
    }
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_.at(v); }
  std::size_t degree(std::size_t v) const { return incident_.at(v).size(); }

  bool connected() const {
    if (n_ == 0) return true;
    std::vector<bool> seen(n_, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto e : incident_[v]) {
        const auto w = edges_[e].first == v ? edges_[e].second : edges_[e].first;
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

// Generators.

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph(a + b, std::move(e));
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error(Errc::invalid_input, "a cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e));
}

/// Circulant graph on n vertices: i ~ i + s (mod n) for each offset s.
inline Graph circulant_graph(std::size_t n, const std::vector<std::size_t>& offsets) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto s : offsets) {
      if (s == 0 || s >= n) throw Error(Errc::invalid_input, "circulant offset out of range");
      const std::size_t j = (i + s) % n;
      Edge ed{std::min(i, j), std::max(i, j)};
      if (std::find(e.begin(), e.end(), ed) == e.end()) e.push_back(ed);
    }
  }
  return Graph(n, std::move(e));
}

/// Generalized Petersen graph GP(n, k): outer cycle, spokes, inner star polygon.
inline Graph generalized_petersen(std::size_t n, std::size_t k) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, n + i);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n + (i + k) % n;
    Edge ed{std::min(n + i, j), std::max(n + i, j)};
    if (std::find(e.begin(), e.end(), ed) == e.end()) e.push_back(ed);
  }
  return Graph(2 * n, std::move(e));
}

inline Graph petersen_graph() { return generalized_petersen(5, 2); }
inline Graph mobius_kantor_graph() { return generalized_petersen(8, 3); }

/// Prism over the m-cycle (m = 3 gives the triangular prism).
inline Graph prism_graph(std::size_t m = 3) { return generalized_petersen(m, 1); }

/// Two copies of K4 minus an edge; the degree-2 vertices of one copy are joined to those of the
/// other. Cubic on 8 vertices with a 2-edge cut between the copies.
inline Graph two_block_cut_graph() {
  std::vector<Edge> e;
  for (std::size_t base : {0u, 4u}) {
    // K4 on base..base+3 without the edge {base, base+1}.
    e.emplace_back(base, base + 2);
    e.emplace_back(base, base + 3);
    e.emplace_back(base + 1, base + 2);
    e.emplace_back(base + 1, base + 3);
    e.emplace_back(base + 2, base + 3);
  }
  e.emplace_back(0, 4);
  e.emplace_back(1, 5);
  return Graph(8, std::move(e));
}

/// Names accepted by named_graph.
inline std::vector<std::string> graph_names() {
  return {"k4", "k33", "c6", "prism", "petersen", "mobius-kantor", "circulant10", "cut-gadget",
          "complete:N", "bipartite:A,B", "cycle:N"};
}

inline std::optional<Graph> named_graph(const std::string& name) {
  auto number = [](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    const auto v = std::stoul(s, &pos);
    if (pos != s.size()) throw Error(Errc::invalid_input, "bad number in graph name: " + s);
    return v;
  };
  if (name == "k4") return complete_graph(4);
  if (name == "k33") return complete_bipartite(3, 3);
  if (name == "c6") return cycle_graph(6);
  if (name == "prism") return prism_graph();
  if (name == "petersen") return petersen_graph();
  if (name == "mobius-kantor") return mobius_kantor_graph();
  if (name == "circulant10") return circulant_graph(10, {1, 2, 5});
  if (name == "cut-gadget") return two_block_cut_graph();
  const auto colon = name.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const std::string kind = name.substr(0, colon), arg = name.substr(colon + 1);
  try {
    if (kind == "complete") return complete_graph(number(arg));
    if (kind == "cycle") return cycle_graph(number(arg));
    if (kind == "bipartite") {
      const auto comma = arg.find(',');
      if (comma == std::string::npos) throw Error(Errc::invalid_input, "bipartite:A,B expected");
      return complete_bipartite(number(arg.substr(0, comma)), number(arg.substr(comma + 1)));
    }
  } catch (const std::logic_error&) {
    throw Error(Errc::invalid_input, "bad graph name: " + name);
  }
  return std::nullopt;
}

// Parsing.

/// Edge list: one "u v" pair per line, 0-indexed; '#' starts a comment. An optional
/// "vertices N" line fixes the vertex count (otherwise max index + 1).
inline Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::optional<std::size_t> declared;
  std::size_t max_index = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "vertices") {
      std::size_t n;
      if (!(ls >> n)) throw Error(Errc::invalid_input, "line " + std::to_string(lineno) + ": bad vertex count");
      declared = n;
      continue;
    }
    long long u, v;
    std::istringstream fs(first);
    if (!(fs >> u) || !fs.eof() || !(ls >> v) || u < 0 || v < 0)
      throw Error(Errc::invalid_input, "line " + std::to_string(lineno) + ": expected two vertex indices");
    std::string rest;
    if (ls >> rest) throw Error(Errc::invalid_input, "line " + std::to_string(lineno) + ": trailing tokens");
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    max_index = std::max({max_index, edges.back().first, edges.back().second});
  }
  const std::size_t n = declared ? *declared : (edges.empty() ? 0 : max_index + 1);
  return Graph(n, std::move(edges));
}

/// {"vertices": N, "edges": [[u, v], ...]}
inline Graph graph_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("vertices").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::invalid_input, "each edge must be a pair");
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return Graph(n, std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::invalid_input, std::string("graph JSON: ") + ex.what());
  }
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"vertices", g.vertex_count()}, {"edges", edges}};
}

/// A built-in name, a .json file, or an edge-list file.
inline Graph load_graph(const std::string& spec) {
  if (auto g = named_graph(spec)) return *g;
  std::ifstream in(spec);
  if (!in) throw Error(Errc::invalid_input, "cannot open graph file or unknown graph name: " + spec);
  if (spec.size() >= 5 && spec.substr(spec.size() - 5) == ".json") {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& ex) {
      throw Error(Errc::invalid_input, std::string("graph JSON: ") + ex.what());
    }
    return graph_from_json(j);
  }
  return parse_edge_list(in);
}

// Hypotheses.

inline bool check_regular(const Graph& g, std::size_t k) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != k) return false;
  return true;
}

inline std::size_t cut_size(const Graph& g, std::uint64_t mask) {
  std::size_t c = 0;
  for (const auto& [u, v] : g.edges()) c += ((mask >> u) & 1U) != ((mask >> v) & 1U);
  return c;
}

inline std::vector<std::size_t> mask_vertices(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n; ++v)
    if ((mask >> v) & 1U) out.push_back(v);
  return out;
}

struct CutReport {
  bool ok = true;
  std::vector<std::size_t> worst_u;  // smallest cut among 2 <= |U| <= |V|-2 (empty if none exist)
  std::size_t worst_size = 0;
  std::size_t subsets_scanned = 0;
};

inline constexpr std::size_t kMaxExhaustiveCutVertices = 24;

/// Every cut with 2 <= |U| <= |V| - 2 must satisfy r |delta(U)| > k. Scans one side of each
/// complementary pair (the side containing vertex 0).
inline CutReport check_cut_condition(const Graph& g, std::size_t k, std::size_t r) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxExhaustiveCutVertices)
    throw Error(Errc::too_large_for_exhaustive,
                "exhaustive cut scan supports at most " + std::to_string(kMaxExhaustiveCutVertices) + " vertices");
  if (r == 0) throw Error(Errc::invalid_params, "r must be >= 1");
  if (!check_regular(g, k)) throw Error(Errc::precondition_violated, "graph is not " + std::to_string(k) + "-regular");
  CutReport rep;
  if (n < 4) return rep;
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  bool have = false;
  std::uint64_t best_mask = 0;
  // Masks over vertices 1..n-1; vertex 0 is always in U.
  for (std::uint64_t rest = 0; rest < half; ++rest) {
    const std::uint64_t mask = (rest << 1) | 1U;
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size < 2 || size > n - 2) continue;
    ++rep.subsets_scanned;
    const std::size_t c = cut_size(g, mask);
    if (!have || c < rep.worst_size) {
      have = true;
      rep.worst_size = c;
      best_mask = mask;
    }
  }
  rep.ok = r * rep.worst_size > k;
  rep.worst_u = mask_vertices(best_mask, n);
  return rep;
}

// r-factors.

inline constexpr std::size_t kMaxFactorEdges = 40;

/// All spanning r-regular edge subsets, as sorted edge-index lists in lexicographic order.
inline std::vector<std::vector<std::size_t>> enumerate_r_factors(const Graph& g, std::size_t r) {
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  if (m > kMaxFactorEdges)
    throw Error(Errc::too_large, "factor enumeration supports at most " + std::to_string(kMaxFactorEdges) + " edges");
  if ((r * n) % 2 != 0) throw Error(Errc::invalid_params, "r |V| must be even");
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t v = 0; v < n; ++v)
    if (g.degree(v) < r) return out;

  std::vector<std::size_t> deg(n, 0), remaining(n, 0);
  for (std::size_t v = 0; v < n; ++v) remaining[v] = g.degree(v);
  std::vector<std::size_t> chosen;
  // Include-first recursion over edges in index order yields lexicographic output.
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == m) {
      out.push_back(chosen);
      return;
    }
    const auto [u, v] = g.edges()[i];
    --remaining[u];
    --remaining[v];
    if (deg[u] < r && deg[v] < r) {
      ++deg[u];
      ++deg[v];
      chosen.push_back(i);
      if (deg[u] + remaining[u] >= r && deg[v] + remaining[v] >= r) self(self, i + 1);
      chosen.pop_back();
      --deg[u];
      --deg[v];
    }
    if (deg[u] + remaining[u] >= r && deg[v] + remaining[v] >= r) self(self, i + 1);
    ++remaining[u];
    ++remaining[v];
  };
  rec(rec, 0);
  return out;
}

}  // namespace vbound
