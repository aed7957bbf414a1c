#include <doctest.h>

#include "leeyang/errors.hpp"
#include "leeyang/graph.hpp"

using namespace leeyang;

TEST_CASE("build_graph validates and canonicalizes") {
  CouplingGraph g = build_graph(2, {{0, 1, 0.0}}, std::pair(0, 1));
  CHECK(g.n() == 2);
  CHECK(g.has_varying_edge());
  CHECK(g.varying_index().value() == 0);

  // Edges stored u < v regardless of input order.
  CouplingGraph h = build_graph(3, {{2, 0, 1.0}, {2, 1, 0.5}});
  CHECK(h.edges()[0].u == 0);
  CHECK(h.edges()[0].v == 2);

  CHECK_THROWS_AS(build_graph(3, {{0, 1, 1.0}, {0, 1, 2.0}}), ConfigError);  // duplicate
  CHECK_THROWS_AS(build_graph(3, {{1, 1, 1.0}}), ConfigError);               // self-loop
  CHECK_THROWS_AS(build_graph(3, {{0, 1, -0.5}}), ConfigError);              // negative J
  CHECK_THROWS_AS(build_graph(3, {{0, 5, 1.0}}), ConfigError);               // out of range
  CHECK_THROWS_AS(build_graph(3, {{0, 1, 1.0}}, std::pair(0, 2)), ConfigError);
  CHECK_THROWS_AS(build_graph(0, {}), ConfigError);
}

TEST_CASE("positive_subgraph applies t to the varying edge before thresholding") {
  CouplingGraph g = build_graph(2, {{0, 1, 0.0}}, std::pair(0, 1));
  CHECK(positive_subgraph(g, 0.0).edges.empty());
  CHECK(positive_subgraph(g, 0.5).edges.size() == 1);

  CouplingGraph h = build_graph(3, {{0, 1, 1.0}, {1, 2, 0.0}});
  auto s = positive_subgraph(h, 0.0);
  REQUIRE(s.edges.size() == 1);
  CHECK(s.edges[0] == std::pair(0, 1));
}

TEST_CASE("is_connected") {
  CHECK(is_connected({1, {}}));
  CHECK_FALSE(is_connected({3, {{0, 1}}}));
  CouplingGraph k4 = complete_graph(4, 1.0);
  CHECK(is_connected(positive_subgraph(k4, 0.0)));

  // Monotone under edge addition.
  PositiveSubgraph s{4, {{0, 1}, {2, 3}}};
  CHECK_FALSE(is_connected(s));
  s.edges.emplace_back(1, 2);
  CHECK(is_connected(s));
}

TEST_CASE("complete_graph edge count") {
  CHECK(complete_graph(2).edges().size() == 1);
  CHECK(complete_graph(4).edges().size() == 6);
  CHECK(complete_graph(1).edges().empty());
}

TEST_CASE("graph json round trip and diagnostics") {
  CouplingGraph g = build_graph(3, {{0, 1, 1.5}, {1, 2, 0.25}}, std::pair(1, 2));
  CouplingGraph back = graph_from_json_text(graph_to_json_text(g));
  CHECK(back.n() == 3);
  REQUIRE(back.edges().size() == 2);
  CHECK(back.edges()[1].coupling == 0.25);
  CHECK(back.varying_edge().u == 1);

  CHECK_THROWS_AS(graph_from_json_text("{not json"), ConfigError);
  CHECK_THROWS_AS(graph_from_json_text(R"({"schema":"other/9","n":2,"edges":[]})"),
                  ConfigError);
  CHECK_THROWS_AS(graph_from_json_text(R"({"n":2,"edges":[[0,1]]})"), ConfigError);
}
