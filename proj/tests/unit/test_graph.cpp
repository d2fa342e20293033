/*
 * Copyright (c) 2026, The egoproto Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <algorithm>
#include <cmath>

#include "brute_force.hpp"
#include "doctest.h"
#include "egoproto/error.hpp"
#include "egoproto/graph.hpp"
#include "egoproto/rng.hpp"

using namespace egoproto;

namespace {

WeightedGraph path_graph(std::initializer_list<const char*> ids) {
  std::vector<EdgeRecord> recs;
  const std::vector<std::string> v(ids.begin(), ids.end());
  for (std::size_t i = 0; i + 1 < v.size(); ++i) recs.push_back({v[i], v[i + 1], 1.0});
  return build_graph(recs);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

std::vector<std::string> edge_ids(const WeightedGraph& g) {
  std::vector<std::string> out;
  for (const auto& e : g.edges()) out.push_back(g.id(e.u) + g.id(e.v));
  return out;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("build_graph merges reversed duplicates") {
    const std::vector<EdgeRecord> recs{{"a", "b", 1.0}, {"b", "a", 2.0}};
    const auto g = build_graph(recs);
    CHECK(g.node_count() == 2);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges()[0].weight == 3.0);
  }

  TEST_CASE("build_graph keeps disjoint edges apart") {
    const std::vector<EdgeRecord> recs{{"a", "b", 1.0}, {"c", "d", 2.0}};
    const auto g = build_graph(recs);
    CHECK(g.node_count() == 4);
    CHECK(g.edge_count() == 2);
  }

  TEST_CASE("build_graph rejects self loops and bad weights with the record index") {
    const std::vector<EdgeRecord> loop{{"x", "y", 1.0}, {"a", "a", 1.0}};
    CHECK(code_of([&] { build_graph(loop); }) == ErrorCode::SelfLoop);
    try {
      build_graph(loop);
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("record 1") != std::string::npos);
    }
    const std::vector<EdgeRecord> zero{{"a", "b", 0.0}};
    CHECK(code_of([&] { build_graph(zero); }) == ErrorCode::NegativeOrZeroWeight);
    const std::vector<EdgeRecord> neg{{"a", "b", -1.0}};
    CHECK(code_of([&] { build_graph(neg); }) == ErrorCode::NegativeOrZeroWeight);
  }

  TEST_CASE("build_graph does not depend on record order") {
    Rng rng(7);
    std::vector<EdgeRecord> recs;
    for (int i = 0; i < 200; ++i) {
      const auto a = std::to_string(rng.index(30));
      auto b = std::to_string(rng.index(30));
      if (a == b) continue;
      recs.push_back({a, b, rng.uniform(0.1, 3.0)});
    }
    const auto g = build_graph(recs);
    for (int trial = 0; trial < 5; ++trial) {
      rng.shuffle(recs.begin(), recs.end());
      CHECK(build_graph(recs) == g);
    }
  }

  TEST_CASE("order-1 and order-2 ego graphs on a path") {
    const auto g = path_graph({"a", "b", "c", "d", "e"});
    const auto e1 = extract_ego(g, "c", 1);
    CHECK(e1.graph.ids() == std::vector<std::string>{"b", "c", "d"});
    CHECK(edge_ids(e1.graph) == std::vector<std::string>{"bc", "cd"});
    CHECK(e1.graph.id(e1.ego_index) == "c");
    const auto e2 = extract_ego(g, "c", 2);
    CHECK(e2.graph.node_count() == 5);
    CHECK(e2.graph.edge_count() == 4);
  }

  TEST_CASE("isolated node has a one-node ego graph") {
    const std::vector<EdgeRecord> recs{{"a", "b", 1.0}};
    const std::vector<std::string> extra{"x"};
    const auto g = build_graph(recs, extra);
    const auto e = extract_ego(g, "x", 1);
    CHECK(e.graph.node_count() == 1);
    CHECK(e.graph.edge_count() == 0);
  }

  TEST_CASE("unknown ego is reported") {
    const auto g = path_graph({"a", "b"});
    CHECK(code_of([&] { extract_ego(g, "zz", 1); }) == ErrorCode::UnknownNode);
  }

  TEST_CASE("order-1 ego graph is a subgraph of the order-2 one") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto g = oracle::random_graph(s, 25, 0.12, 2);
      for (NodeIndex v = 0; v < g.node_count(); ++v) {
        const auto e1 = extract_ego(g, v, 1);
        const auto e2 = extract_ego(g, v, 2);
        for (const auto& e : e1.graph.edges()) {
          const auto u = e2.graph.find(e1.graph.id(e.u));
          const auto w = e2.graph.find(e1.graph.id(e.v));
          REQUIRE(u);
          REQUIRE(w);
          CHECK(e2.graph.weight(*u, *w) == e.weight);
        }
        // Every order-2 node is within two hops in the parent.
        for (const auto& id : e2.graph.ids()) {
          const NodeIndex x = *g.find(id);
          bool near = x == v || g.has_edge(v, x);
          for (const auto& nb : g.neighbors(v)) near = near || g.has_edge(nb.node, x);
          CHECK(near);
        }
      }
    }
  }

  TEST_CASE("disparity alpha matches the closed form") {
    // Node with degree 5, one edge carrying 0.96 of the strength.
    std::vector<EdgeRecord> recs{{"h", "a", 96.0}, {"h", "b", 1.0}, {"h", "c", 1.0}, {"h", "d", 1.0}, {"h", "e", 1.0}};
    auto g = build_graph(recs);
    const NodeIndex h = *g.find("h");
    CHECK(disparity_alpha(g, h, 96.0) == doctest::Approx(std::pow(0.04, 4)).epsilon(1e-12));
    const auto kept = disparity_filter(g);
    CHECK(kept.has_edge(h, *g.find("a")));
  }

  TEST_CASE("uniform weights at two degree-5 endpoints are dropped") {
    // Two hubs joined by an edge, each with four more equal-weight leaves
    // that are themselves linked to another hub so no leaf is pendant.
    std::vector<EdgeRecord> recs{{"p", "q", 1.0}};
    for (const char* leaf : {"a", "b", "c", "d"}) {
      recs.push_back({"p", leaf, 1.0});
      recs.push_back({"q", std::string(leaf) + "2", 1.0});
    }
    for (const char* leaf : {"a", "b", "c", "d"}) {
      recs.push_back({leaf, std::string(leaf) + "2", 1.0});
    }
    const auto g = build_graph(recs);
    const NodeIndex p = *g.find("p"), q = *g.find("q");
    CHECK(disparity_alpha(g, p, 1.0) == doctest::Approx(std::pow(0.8, 4)));
    const auto kept = disparity_filter(g);
    CHECK_FALSE(kept.has_edge(p, q));
  }

  TEST_CASE("pendant edges always survive") {
    std::vector<EdgeRecord> recs{{"h", "leaf", 0.001}};
    for (int i = 0; i < 10; ++i) recs.push_back({"h", "n" + std::to_string(i), 100.0});
    const auto g = build_graph(recs);
    const auto kept = disparity_filter(g);
    CHECK(kept.has_edge(*g.find("h"), *g.find("leaf")));
  }

  TEST_CASE("disparity filter keeps only significant edges and never adds") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      Rng rng(s);
      auto g = oracle::random_graph(s, 40, 0.15, 2);
      const auto kept = disparity_filter(g);
      CHECK(kept.node_count() == g.node_count());
      for (const auto& e : kept.edges()) {
        REQUIRE(g.weight(e.u, e.v) == e.weight);
        const bool pendant = g.degree(e.u) == 1 || g.degree(e.v) == 1;
        const bool sig = (g.degree(e.u) > 1 && disparity_alpha(g, e.u, e.weight) < 0.05) ||
                         (g.degree(e.v) > 1 && disparity_alpha(g, e.v, e.weight) < 0.05);
        CHECK((pendant || sig));
      }
      const auto again = disparity_filter(kept);
      CHECK(again.edge_count() <= kept.edge_count());
    }
  }

  TEST_CASE("disparity filter rejects an empty graph") {
    CHECK(code_of([] { disparity_filter(WeightedGraph{}); }) == ErrorCode::EmptyGraph);
  }
}
