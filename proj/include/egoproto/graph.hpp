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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace egoproto {

using NodeIndex = std::uint32_t;

struct Neighbor {
  NodeIndex node;
  double weight;
};

struct Edge {
  NodeIndex u;  // u < v
  NodeIndex v;
  double weight;
};

/// One row of an edge list as read from input.
struct EdgeRecord {
  std::string src;
  std::string dst;
  double weight = 1.0;
};

/// Undirected weighted graph with opaque string ids.
///
/// Dense indices follow the sorted order of the ids, so two graphs over the
/// same ids agree on indexing. Adjacency lists are sorted by neighbor index.
/// Immutable once built.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// `ids` must be sorted and unique; edges must satisfy the graph
  /// invariants (u < v, positive weight, no duplicates).
  WeightedGraph(std::vector<std::string> ids, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& id(NodeIndex i) const { return ids_[i]; }
  std::optional<NodeIndex> find(std::string_view id) const;

  std::span<const Neighbor> neighbors(NodeIndex i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeIndex i) const { return offsets_[i + 1] - offsets_[i]; }
  double strength(NodeIndex i) const;
  std::optional<double> weight(NodeIndex u, NodeIndex v) const;
  bool has_edge(NodeIndex u, NodeIndex v) const { return weight(u, v).has_value(); }

  /// Edges with u < v, sorted by (u, v).
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  double total_weight() const;

  bool operator==(const WeightedGraph& other) const;

 private:
  std::vector<std::string> ids_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Induced subgraph around a focal node.
struct EgoGraph {
  std::string ego;
  int order = 1;
  WeightedGraph graph;
  NodeIndex ego_index = 0;  // index of `ego` in `graph`
};

struct BackboneParams {
  double significance = 0.05;
  // Only "either-endpoint" exists: an edge survives if it is significant
  // at one of its endpoints.
};

/// Merges duplicate pairs (weights add). Throws SelfLoop or
/// NegativeOrZeroWeight naming the offending record index. Nodes in
/// `extra_nodes` are added even when they have no edges.
WeightedGraph build_graph(std::span<const EdgeRecord> records,
                          std::span<const std::string> extra_nodes = {});

/// Induced subgraph on the ego and everything within `order` hops (1 or 2).
EgoGraph extract_ego(const WeightedGraph& g, std::string_view ego, int order);
EgoGraph extract_ego(const WeightedGraph& g, NodeIndex ego, int order);

/// Wraps a standalone graph as an ego graph (generated corpora).
EgoGraph make_ego_graph(WeightedGraph g, std::string_view ego, int order);

/// Significance of edge (i, j) seen from endpoint i: (1 - w_ij / s_i)^(k_i - 1).
/// Returns 1 for degree-1 endpoints (never significant on its own).
double disparity_alpha(const WeightedGraph& g, NodeIndex i, double weight);

/// Multiscale backbone. Keeps an edge when its alpha is below the
/// significance level at either endpoint of degree > 1, and keeps every edge
/// touching a degree-1 node. Node set is preserved.
WeightedGraph disparity_filter(const WeightedGraph& g, const BackboneParams& params = {});

/// Sub-graph on `nodes` (parent indices, any order) with all parent edges
/// among them.
WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const NodeIndex> nodes);

}  // namespace egoproto
