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

#include "egoproto/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "egoproto/error.hpp"

namespace egoproto {

WeightedGraph::WeightedGraph(std::vector<std::string> ids, std::vector<Edge> edges)
    : ids_(std::move(ids)), edges_(std::move(edges)) {
  const std::size_t n = ids_.size();
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });

  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges_) {
    if (e.u >= e.v || e.v >= n) throw Error(ErrorCode::InvalidArgument, "malformed edge");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NegativeOrZeroWeight, "edge weight must be positive and finite");
    }
    ++deg[e.u];
    ++deg[e.v];
  }
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw Error(ErrorCode::InvalidArgument, "duplicate edge");
    }
  }

  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.weight};
    adjacency_[fill[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

std::optional<NodeIndex> WeightedGraph::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - ids_.begin());
}

double WeightedGraph::strength(NodeIndex i) const {
  double s = 0.0;
  for (const Neighbor& nb : neighbors(i)) s += nb.weight;
  return s;
}

std::optional<double> WeightedGraph::weight(NodeIndex u, NodeIndex v) const {
  const auto nbs = neighbors(u);
  auto it = std::lower_bound(nbs.begin(), nbs.end(), v,
                             [](const Neighbor& nb, NodeIndex x) { return nb.node < x; });
  if (it == nbs.end() || it->node != v) return std::nullopt;
  return it->weight;
}

double WeightedGraph::total_weight() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.weight;
  return s;
}

bool WeightedGraph::operator==(const WeightedGraph& other) const {
  if (ids_ != other.ids_ || edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& a = edges_[i];
    const Edge& b = other.edges_[i];
    if (a.u != b.u || a.v != b.v || a.weight != b.weight) return false;
  }
  return true;
}

WeightedGraph build_graph(std::span<const EdgeRecord> records,
                          std::span<const std::string> extra_nodes) {
  std::vector<std::string> ids;
  ids.reserve(records.size() * 2 + extra_nodes.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const EdgeRecord& r = records[i];
    if (r.src.empty() || r.dst.empty()) {
      throw Error(ErrorCode::InvalidArgument, "empty node id in record " + std::to_string(i));
    }
    if (r.src == r.dst) {
      throw Error(ErrorCode::SelfLoop, "record " + std::to_string(i) + " (" + r.src + ")");
    }
    if (!(r.weight > 0.0) || !std::isfinite(r.weight)) {
      throw Error(ErrorCode::NegativeOrZeroWeight, "record " + std::to_string(i));
    }
    ids.push_back(r.src);
    ids.push_back(r.dst);
  }
  for (const std::string& id : extra_nodes) {
    if (id.empty()) throw Error(ErrorCode::InvalidArgument, "empty node id");
    ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  auto index_of = [&](const std::string& id) {
    return static_cast<NodeIndex>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  // Summation happens in sorted-key order per pair after collecting, so the
  // merged weight does not depend on record order.
  std::map<std::pair<NodeIndex, NodeIndex>, std::vector<double>> merged;
  for (const EdgeRecord& r : records) {
    NodeIndex a = index_of(r.src);
    NodeIndex b = index_of(r.dst);
    if (a > b) std::swap(a, b);
    merged[{a, b}].push_back(r.weight);
  }
  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (auto& [key, ws] : merged) {
    std::sort(ws.begin(), ws.end());
    double w = 0.0;
    for (double x : ws) w += x;
    edges.push_back({key.first, key.second, w});
  }
  return WeightedGraph(std::move(ids), std::move(edges));
}

WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const NodeIndex> nodes) {
  std::vector<NodeIndex> keep(nodes.begin(), nodes.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  constexpr NodeIndex kAbsent = static_cast<NodeIndex>(-1);
  // Sparse lookup: ego graphs are small relative to the parent.
  auto local_of = [&](NodeIndex parent) -> NodeIndex {
    auto it = std::lower_bound(keep.begin(), keep.end(), parent);
    return (it != keep.end() && *it == parent) ? static_cast<NodeIndex>(it - keep.begin()) : kAbsent;
  };

  std::vector<std::string> ids;
  ids.reserve(keep.size());
  for (NodeIndex p : keep) ids.push_back(g.id(p));

  std::vector<Edge> edges;
  for (NodeIndex lu = 0; lu < keep.size(); ++lu) {
    for (const Neighbor& nb : g.neighbors(keep[lu])) {
      if (nb.node <= keep[lu]) continue;
      const NodeIndex lv = local_of(nb.node);
      if (lv != kAbsent) edges.push_back({lu, lv, nb.weight});
    }
  }
  return WeightedGraph(std::move(ids), std::move(edges));
}

EgoGraph extract_ego(const WeightedGraph& g, NodeIndex ego, int order) {
  if (order != 1 && order != 2) throw Error(ErrorCode::InvalidArgument, "ego order must be 1 or 2");
  if (ego >= g.node_count()) throw Error(ErrorCode::UnknownNode, "node index out of range");

  std::vector<NodeIndex> ball{ego};
  for (const Neighbor& nb : g.neighbors(ego)) ball.push_back(nb.node);
  if (order == 2) {
    const std::size_t first = ball.size();
    for (std::size_t i = 1; i < first; ++i) {
      for (const Neighbor& nb : g.neighbors(ball[i])) ball.push_back(nb.node);
    }
  }

  EgoGraph out;
  out.ego = g.id(ego);
  out.order = order;
  out.graph = induced_subgraph(g, ball);
  out.ego_index = *out.graph.find(out.ego);
  return out;
}

EgoGraph extract_ego(const WeightedGraph& g, std::string_view ego, int order) {
  const auto idx = g.find(ego);
  if (!idx) throw Error(ErrorCode::UnknownNode, std::string(ego));
  return extract_ego(g, *idx, order);
}

EgoGraph make_ego_graph(WeightedGraph g, std::string_view ego, int order) {
  const auto idx = g.find(ego);
  if (!idx) throw Error(ErrorCode::UnknownNode, std::string(ego));
  EgoGraph out;
  out.ego = std::string(ego);
  out.order = order;
  out.ego_index = *idx;
  out.graph = std::move(g);
  return out;
}

double disparity_alpha(const WeightedGraph& g, NodeIndex i, double weight) {
  const std::size_t k = g.degree(i);
  if (k <= 1) return 1.0;
  const double p = weight / g.strength(i);
  return std::pow(1.0 - p, static_cast<double>(k - 1));
}

WeightedGraph disparity_filter(const WeightedGraph& g, const BackboneParams& params) {
  if (g.empty()) throw Error(ErrorCode::EmptyGraph, "disparity filter needs a nonempty graph");
  if (!(params.significance > 0.0 && params.significance < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "significance must lie in (0, 1)");
  }
  const std::size_t n = g.node_count();
  std::vector<double> strength(n);
  for (NodeIndex i = 0; i < n; ++i) strength[i] = g.strength(i);

  auto significant_at = [&](NodeIndex i, double w) {
    const std::size_t k = g.degree(i);
    if (k <= 1) return false;
    const double alpha = std::pow(1.0 - w / strength[i], static_cast<double>(k - 1));
    return alpha < params.significance;
  };

  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    const bool pendant = g.degree(e.u) == 1 || g.degree(e.v) == 1;
    if (pendant || significant_at(e.u, e.weight) || significant_at(e.v, e.weight)) kept.push_back(e);
  }
  return WeightedGraph(g.ids(), std::move(kept));
}

}  // namespace egoproto
