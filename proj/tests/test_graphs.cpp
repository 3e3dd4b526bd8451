#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "vgsynth/error.hpp"
#include "vgsynth/graphs.hpp"
#include "vgsynth/kernels.hpp"

using namespace vgsynth;
using Pairs = std::vector<std::pair<NodeId, NodeId>>;

namespace {

bool has_consecutive_edges(const Graph& g, std::size_t length) {
  for (NodeId i = 0; i + 1 < length; ++i)
    if (!g.has_edge(i, i + 1)) return false;
  return true;
}

bool subset(const Pairs& a, const Pairs& b) {
  return std::all_of(a.begin(), a.end(),
                     [&](const auto& p) { return std::find(b.begin(), b.end(), p) != b.end(); });
}

}  // namespace

TEST_CASE("NVG on hand-checked windows") {
  // Collinear: at k=1 the sight line from (0,1) to (2,3) is exactly 2, so (0,2) is blocked.
  CHECK(build_nvg(testing::prescaled({0.0, 0.5, 1.0})).graph.visibility_pairs() == Pairs{{0, 1}, {1, 2}});
  CHECK(nvg_edges(std::vector<double>{1, 2, 3}) == Pairs{{0, 1}, {1, 2}});
  // [3,1,2]: sight line at k=1 is 2.5 > 1.
  CHECK(nvg_edges(std::vector<double>{3, 1, 2}) == Pairs{{0, 1}, {0, 2}, {1, 2}});
  CHECK(build_nvg(testing::scaled_window({3, 1, 2})).graph.edges().size() == 3);
  CHECK(nvg_edges(std::vector<double>{0.2, 0.9}) == Pairs{{0, 1}});
}

TEST_CASE("HVG on hand-checked windows") {
  CHECK(hvg_edges(std::vector<double>{2, 1, 2}) == Pairs{{0, 1}, {0, 2}, {1, 2}});
  CHECK(hvg_edges(std::vector<double>{1, 2, 3}) == Pairs{{0, 1}, {1, 2}});
  // Plateau: strict inequality leaves only consecutive edges.
  CHECK(hvg_edges(std::vector<double>{2, 2, 2}) == Pairs{{0, 1}, {1, 2}});
  CHECK(build_hvg(testing::scaled_window({5, 6})).graph.visibility_pairs() == Pairs{{0, 1}});
}

TEST_CASE("visibility graphs reject short or unscaled windows") {
  CHECK_THROWS_AS(build_nvg(testing::prescaled({0.5})), InvalidWindow);
  CHECK_THROWS_AS(build_hvg(testing::prescaled({0.5})), InvalidWindow);
  Window unscaled;
  unscaled.raw_values = {1, 2, 3};
  unscaled.length = 3;
  CHECK_THROWS_AS(build_nvg(unscaled), InvalidWindow);
}

TEST_CASE("brute-force oracles agree with the fast builders") {
  CHECK(nvg_bruteforce(testing::scaled_window({3, 1, 2})).graph.edges() ==
        build_nvg(testing::scaled_window({3, 1, 2})).graph.edges());
  // Strictly decreasing: collinear points see only their neighbours, convex
  // ones see further; either way the oracle decides.
  for (const auto& v : {std::vector<double>{5, 4, 3, 2, 1}, std::vector<double>{16, 8, 4, 2, 1},
                        std::vector<double>{10, 9.9, 9, 5, 0}}) {
    const auto w = testing::scaled_window(v);
    CHECK(build_nvg(w).graph.edges() == nvg_bruteforce(w).graph.edges());
    CHECK(build_hvg(w).graph.edges() == hvg_bruteforce(w).graph.edges());
  }
  CHECK(nvg_edges(std::vector<double>{5, 4, 3, 2, 1}) == Pairs{{0, 1}, {1, 2}, {2, 3}, {3, 4}});

  vgsynth::Rng rng(77);
  for (std::size_t length : {20u, 60u}) {
    for (int i = 0; i < 200; ++i) {
      const auto w = testing::scaled_window(testing::random_values(rng, length));
      const auto nvg = build_nvg(w);
      const auto hvg = build_hvg(w);
      REQUIRE(nvg.graph.edges() == nvg_bruteforce(w).graph.edges());
      REQUIRE(hvg.graph.edges() == hvg_bruteforce(w).graph.edges());
      CHECK(subset(hvg.graph.visibility_pairs(), nvg.graph.visibility_pairs()));
      CHECK(has_consecutive_edges(nvg.graph, length));
      CHECK(has_consecutive_edges(hvg.graph, length));
    }
  }
}

TEST_CASE("oracle equivalence also holds with ties from quantised prices") {
  vgsynth::Rng rng(78);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> v(20);
    for (auto& x : v) x = static_cast<double>(uniform_index(rng, 5));
    CHECK(nvg_edges(v) == nvg_edges_bruteforce(v));
    CHECK(hvg_edges(v) == hvg_edges_bruteforce(v));
  }
}

TEST_CASE("graph nodes carry window positions and values") {
  const auto g = build_nvg(testing::scaled_window({2, 4, 3}, "TK", 60));
  CHECK(g.kind == VisibilityKind::NVG);
  CHECK(g.source.ticker == "TK");
  CHECK(g.source.start_index == 60);
  REQUIRE(g.graph.node_count() == 3);
  CHECK(g.graph.node(1).time_indices == std::vector<std::int64_t>{1});
  CHECK(g.graph.node(1).values == std::vector<double>{1.0});
  CHECK(g.graph.start_node() == 0);
}

TEST_CASE("Graph canonicalises edges and folds parallel edges") {
  std::vector<GraphNode> nodes(3);
  for (auto& n : nodes) n.values = {0.5};
  const Graph g(nodes, {{1, 0, EdgeKind::visibility, 1},
                        {0, 1, EdgeKind::visibility, 2},
                        {2, 2, EdgeKind::visibility, 1},
                        {0, 1, EdgeKind::co_occurrence, 1}});
  REQUIRE(g.edges().size() == 2);
  CHECK(g.multiplicity(0, 1, EdgeKind::visibility) == 3);
  CHECK(g.multiplicity(1, 0, EdgeKind::co_occurrence) == 1);
  const auto nb = g.neighbors(0);
  REQUIRE(nb.size() == 1);
  CHECK(nb[0].weight == 4);
  CHECK(nb[0].visibility);
  CHECK(nb[0].cross);
  CHECK(g.neighbors(2).empty());

  std::ostringstream dump;
  g.dump(dump);
  CHECK(dump.str().find("0 1 visibility 3") != std::string::npos);
}

TEST_CASE("multigraph of a single ticker equals its NVG") {
  const auto w = testing::scaled_window({3, 1, 4, 1.5, 5, 9, 2, 6}, "A");
  const auto mg = build_multigraph(std::span<const Window>(&w, 1));
  const auto nvg = build_nvg(w);
  CHECK(mg.graph.edges() == nvg.graph.edges());
  CHECK(mg.graph.node_count() == nvg.graph.node_count());
}

TEST_CASE("identical tickers merge node by node") {
  const std::vector<Window> ws = {testing::scaled_window({1, 2}, "A"), testing::scaled_window({1, 2}, "B")};
  const auto mg = build_multigraph(ws);
  REQUIRE(mg.graph.node_count() == 2);
  REQUIRE(mg.graph.edges().size() == 1);
  CHECK(mg.graph.multiplicity(0, 1, EdgeKind::visibility) == 2);
  CHECK(mg.graph.node(0).values == std::vector<double>{0.0, 0.0});
  CHECK(mg.graph.node(0).ticker_tags == std::vector<std::string>{"A", "B"});
  CHECK(mg.ticker_start("B") == 0);
}

TEST_CASE("similar-value and co-occurrence links") {
  const std::vector<Window> ws = {testing::prescaled({0.0, 1.0}, "A"), testing::prescaled({0.999, 0.5}, "B")};
  const auto mg = build_multigraph(ws, 0.01);
  // Canonical numbering: A0=0, A1=1, B0=2, B1=3.
  REQUIRE(mg.graph.node_count() == 4);
  CHECK(mg.graph.multiplicity(1, 2, EdgeKind::similar_value) == 1);
  CHECK(mg.graph.multiplicity(0, 3, EdgeKind::similar_value) == 0);
  CHECK(mg.graph.multiplicity(0, 2, EdgeKind::co_occurrence) == 1);
  CHECK(mg.graph.multiplicity(1, 3, EdgeKind::co_occurrence) == 1);
  CHECK(mg.graph.multiplicity(0, 1, EdgeKind::visibility) == 1);
  CHECK(mg.graph.multiplicity(2, 3, EdgeKind::visibility) == 1);
  CHECK(mg.graph.edges().size() == 5);
  CHECK(mg.per_ticker.at("B") == std::vector<NodeId>{2, 3});
}

TEST_CASE("multigraph rejects windows from different segments") {
  const std::vector<Window> shifted = {testing::prescaled({0, 1, 0.5}, "A", 0),
                                       testing::prescaled({0, 1, 0.5}, "B", 3)};
  CHECK_THROWS_AS(build_multigraph(shifted), SegmentMismatch);
  const std::vector<Window> shorter = {testing::prescaled({0, 1, 0.5}, "A"), testing::prescaled({0, 1}, "B")};
  CHECK_THROWS_AS(build_multigraph(shorter), SegmentMismatch);
}

TEST_CASE("multigraph invariants on random segments") {
  vgsynth::Rng rng(91);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t tickers = 1 + uniform_index(rng, 6);
    const std::size_t length = 2 + uniform_index(rng, 20);
    std::vector<Window> ws;
    std::vector<double> inputs;
    for (std::size_t t = 0; t < tickers; ++t) {
      std::vector<double> v(length);
      // Coarse grid so that merges and similar values actually happen.
      for (auto& x : v) x = static_cast<double>(uniform_index(rng, 6));
      ws.push_back(testing::scaled_window(v, "T" + std::to_string(t)));
      inputs.insert(inputs.end(), ws.back().scaled_values.begin(), ws.back().scaled_values.end());
    }
    const auto mg = build_multigraph(ws, 0.05);
    const auto again = build_multigraph(ws, 0.05);
    CHECK(mg.graph.edges() == again.graph.edges());

    std::vector<double> stored;
    for (const auto& n : mg.graph.nodes()) {
      CHECK_FALSE(n.values.empty());
      stored.insert(stored.end(), n.values.begin(), n.values.end());
    }
    std::sort(stored.begin(), stored.end());
    std::sort(inputs.begin(), inputs.end());
    CHECK(stored == inputs);

    for (const auto& e : mg.graph.edges()) {
      CHECK(e.u < e.v);
      const auto& a = mg.graph.node(e.u);
      const auto& b = mg.graph.node(e.v);
      if (e.kind == EdgeKind::co_occurrence) CHECK(a.time_indices == b.time_indices);
    }
    for (const auto& w : ws) {
      for (std::size_t k = 0; k + 1 < length; ++k) {
        const auto a = mg.merge_map.at({w.ticker, static_cast<std::int64_t>(k)});
        const auto b = mg.merge_map.at({w.ticker, static_cast<std::int64_t>(k + 1)});
        CHECK(mg.graph.multiplicity(a, b, EdgeKind::visibility) >= 1);
      }
    }
  }
}

TEST_CASE("similar-value sweep matches the pairwise reference") {
  vgsynth::Rng rng(92);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = 2 + uniform_index(rng, 400);
    std::vector<double> v(n);
    std::vector<std::uint32_t> g(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = trial % 2 ? static_cast<double>(uniform_index(rng, 50)) / 50.0 : uniform01(rng);
      g[i] = static_cast<std::uint32_t>(uniform_index(rng, 4));
    }
    CHECK(kernels::similar_value_pairs(v, g, 0.02) == kernels::serial::similar_value_pairs(v, g, 0.02));
  }
}
