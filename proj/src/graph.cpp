#include "leeyang/graph.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "leeyang/errors.hpp"

namespace leeyang {

CouplingGraph::CouplingGraph(int n, std::vector<Edge> edges,
                             std::optional<std::pair<int, int>> varying_edge)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw ConfigError("graph: vertex count must be >= 1, got " + std::to_string(n_));

  for (Edge& e : edges_) {
    if (e.u == e.v)
      throw ConfigError("graph: self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n_)
      throw ConfigError("graph: vertex index out of range in edge (" + std::to_string(e.u) +
                        "," + std::to_string(e.v) + ") for n=" + std::to_string(n_));
    if (e.coupling < 0.0)
      throw ConfigError("graph: negative coupling on edge (" + std::to_string(e.u) + "," +
                        std::to_string(e.v) + "): couplings must be ferromagnetic (J >= 0)");
  }
  std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
      throw ConfigError("graph: duplicate edge (" + std::to_string(edges_[i].u) + "," +
                        std::to_string(edges_[i].v) + ")");
  }

  if (varying_edge) {
    auto [u0, v0] = *varying_edge;
    if (u0 > v0) std::swap(u0, v0);
    for (size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i].u == u0 && edges_[i].v == v0) {
        varying_index_ = static_cast<int>(i);
        break;
      }
    }
    if (!varying_index_)
      throw ConfigError("graph: varying edge (" + std::to_string(u0) + "," +
                        std::to_string(v0) + ") is not in the edge list");
  }
}

const Edge& CouplingGraph::varying_edge() const {
  if (!varying_index_) throw ConfigError("graph: no varying edge set");
  return edges_[static_cast<size_t>(*varying_index_)];
}

double CouplingGraph::effective_coupling(int edge_index, double t) const {
  double j = edges_[static_cast<size_t>(edge_index)].coupling;
  if (varying_index_ && *varying_index_ == edge_index) j += t;
  return j;
}

CouplingGraph build_graph(int n, std::vector<Edge> edges,
                          std::optional<std::pair<int, int>> varying_edge) {
  return CouplingGraph(n, std::move(edges), varying_edge);
}

PositiveSubgraph positive_subgraph(const CouplingGraph& g, double t) {
  PositiveSubgraph s{g.n(), {}};
  for (size_t i = 0; i < g.edges().size(); ++i) {
    if (g.effective_coupling(static_cast<int>(i), t) > 0.0)
      s.edges.emplace_back(g.edges()[i].u, g.edges()[i].v);
  }
  return s;
}

bool is_connected(const PositiveSubgraph& s) {
  if (s.n <= 1) return true;
  std::vector<std::vector<int>> adj(static_cast<size_t>(s.n));
  for (auto [u, v] : s.edges) {
    adj[static_cast<size_t>(u)].push_back(v);
    adj[static_cast<size_t>(v)].push_back(u);
  }
  std::vector<char> seen(static_cast<size_t>(s.n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<size_t>(u)]) {
      if (!seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == s.n;
}

CouplingGraph complete_graph(int n, double coupling) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n) * static_cast<size_t>(n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, coupling});
  return CouplingGraph(n, std::move(edges));
}

CouplingGraph graph_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("graph json: parse failure: ") + e.what());
  }
  try {
    if (doc.value("schema", std::string("leeyang-graph/1")) != "leeyang-graph/1")
      throw ConfigError("graph json: unsupported schema \"" +
                        doc["schema"].get<std::string>() + "\"");
    int n = doc.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 3)
        throw ConfigError("graph json: each edge must be [u, v, J]");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    std::optional<std::pair<int, int>> varying;
    if (doc.contains("varying_edge") && !doc["varying_edge"].is_null()) {
      const auto& ve = doc["varying_edge"];
      if (!ve.is_array() || ve.size() != 2)
        throw ConfigError("graph json: varying_edge must be [u0, v0]");
      varying = std::pair(ve[0].get<int>(), ve[1].get<int>());
    }
    return build_graph(n, std::move(edges), varying);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("graph json: ") + e.what());
  }
}

std::string graph_to_json_text(const CouplingGraph& g) {
  nlohmann::json doc;
  doc["schema"] = "leeyang-graph/1";
  doc["n"] = g.n();
  auto edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.coupling});
  doc["edges"] = edges;
  if (g.has_varying_edge()) {
    const Edge& e = g.varying_edge();
    doc["varying_edge"] = {e.u, e.v};
  }
  return doc.dump(2);
}

}  // namespace leeyang
