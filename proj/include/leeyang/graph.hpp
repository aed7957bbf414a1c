#ifndef LEEYANG_GRAPH_HPP
#define LEEYANG_GRAPH_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace leeyang {

struct Edge {
  int u;
  int v;
  double coupling;
};

// Finite graph with ferromagnetic couplings and an optional distinguished
// edge that carries the extra coupling t. Immutable after construction.
class CouplingGraph {
 public:
  CouplingGraph(int n, std::vector<Edge> edges,
                std::optional<std::pair<int, int>> varying_edge = std::nullopt);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<int> varying_index() const { return varying_index_; }
  bool has_varying_edge() const { return varying_index_.has_value(); }
  const Edge& varying_edge() const;

  // Effective coupling of edge i once the varying edge carries the extra t.
  double effective_coupling(int edge_index, double t) const;

 private:
  int n_;
  std::vector<Edge> edges_;          // canonical u < v, sorted, unique
  std::optional<int> varying_index_;
};

// Validates and canonicalizes; throws ConfigError with a distinct diagnostic
// per violation (self-loop, duplicate edge, negative coupling, vertex out of
// range, varying edge not present).
CouplingGraph build_graph(int n, std::vector<Edge> edges,
                          std::optional<std::pair<int, int>> varying_edge = std::nullopt);

struct PositiveSubgraph {
  int n;
  std::vector<std::pair<int, int>> edges;  // edges with strictly positive effective coupling
};

PositiveSubgraph positive_subgraph(const CouplingGraph& g, double t);

bool is_connected(const PositiveSubgraph& s);

// All n(n-1)/2 edges with the given uniform coupling.
CouplingGraph complete_graph(int n, double coupling = 0.0);

// JSON document schema "leeyang-graph/1":
//   { "schema": "leeyang-graph/1", "n": int, "edges": [[u, v, J], ...],
//     "varying_edge": [u0, v0] }  (varying_edge optional)
CouplingGraph graph_from_json_text(const std::string& text);
std::string graph_to_json_text(const CouplingGraph& g);

}  // namespace leeyang

#endif
