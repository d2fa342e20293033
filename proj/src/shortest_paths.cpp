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

#include "shortest_paths.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

namespace egoproto::detail {

Adjacency adjacency_of(const WeightedGraph& g) {
  Adjacency a;
  const std::size_t n = g.node_count();
  a.offsets.resize(n + 1);
  a.offsets[0] = 0;
  for (NodeIndex i = 0; i < n; ++i) a.offsets[i + 1] = a.offsets[i] + g.degree(i);
  a.items.reserve(a.offsets[n]);
  for (NodeIndex i = 0; i < n; ++i) {
    const auto nbs = g.neighbors(i);
    a.items.insert(a.items.end(), nbs.begin(), nbs.end());
  }
  return a;
}

std::size_t PathWorkspace::run(const Adjacency& g, NodeIndex source, bool track_paths) {
  const std::size_t n = g.node_count();
  dist_.assign(n, kInf);
  settled_.assign(n, 0);
  order_.clear();
  if (track_paths) {
    sigma_.assign(n, 0.0);
    pred_count_.assign(n, 0);
    // A node's predecessors are among its neighbors, so max degree bounds
    // the per-node list.
    std::size_t max_deg = 0;
    for (NodeIndex i = 0; i < n; ++i) max_deg = std::max(max_deg, g.neighbors(i).size());
    stride_ = max_deg;
    if (pred_.size() < n * stride_) pred_.resize(n * stride_);
    sigma_[source] = 1.0;
  }

  using Item = std::pair<double, NodeIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist_[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled_[u] || d > dist_[u]) continue;
    settled_[u] = 1;
    order_.push_back(u);
    for (const Neighbor& nb : g.neighbors(u)) {
      const NodeIndex v = nb.node;
      if (settled_[v]) continue;
      const double nd = d + 1.0 / nb.weight;
      if (dist_[v] != kInf && same_length(nd, dist_[v])) {
        if (track_paths) {
          sigma_[v] += sigma_[u];
          pred_[v * stride_ + pred_count_[v]++] = u;
        }
      } else if (nd < dist_[v]) {
        dist_[v] = nd;
        heap.push({nd, v});
        if (track_paths) {
          sigma_[v] = sigma_[u];
          pred_count_[v] = 0;
          pred_[v * stride_ + pred_count_[v]++] = u;
        }
      }
    }
  }
  return order_.size();
}

AllPairsSummary all_pairs_summary(const Adjacency& g, NodeIndex focus) {
  const std::size_t n = g.node_count();
  AllPairsSummary out;
  PathWorkspace ws;
  std::vector<double> delta(n);
  for (NodeIndex s = 0; s < n; ++s) {
    ws.run(g, s, true);
    const auto dist = ws.distances();
    const auto sigma = ws.path_counts();
    const auto order = ws.order();
    for (NodeIndex t : order) {
      if (t != s) out.inverse_distance_sum += 1.0 / dist[t];
    }
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeIndex w = *it;
      for (NodeIndex v : ws.predecessors(w)) {
        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
    }
    if (s != focus) out.focus_betweenness += delta[focus];
  }
  // Each unordered pair was seen from both ends.
  out.focus_betweenness /= 2.0;
  return out;
}

double inverse_distance_sum(const Adjacency& g, PathWorkspace& ws) {
  double sum = 0.0;
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    ws.run(g, s, false);
    const auto dist = ws.distances();
    for (NodeIndex t : ws.order()) {
      if (t != s) sum += 1.0 / dist[t];
    }
  }
  return sum;
}

}  // namespace egoproto::detail
