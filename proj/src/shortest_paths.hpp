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

// Weighted shortest paths with edge length 1 / weight. Internal to the
// feature code.

#include <limits>
#include <span>
#include <vector>

#include "egoproto/graph.hpp"

namespace egoproto::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Two path lengths closer than this (relative) count as equal when
/// counting shortest paths.
inline constexpr double kTieTolerance = 1e-12;

inline bool same_length(double a, double b) {
  const double scale = a > b ? a : b;
  return (a > b ? a - b : b - a) <= kTieTolerance * (scale > 1.0 ? scale : 1.0);
}

/// Compact adjacency over dense indices [0, n).
struct Adjacency {
  std::vector<std::size_t> offsets{0};
  std::vector<Neighbor> items;

  std::size_t node_count() const { return offsets.size() - 1; }
  std::span<const Neighbor> neighbors(NodeIndex i) const {
    return {items.data() + offsets[i], items.data() + offsets[i + 1]};
  }
};

Adjacency adjacency_of(const WeightedGraph& g);

/// Reusable buffers for repeated single-source runs on graphs of one size.
class PathWorkspace {
 public:
  /// Dijkstra from `source`; fills distances. Returns the number of nodes
  /// reached (including the source).
  std::size_t run(const Adjacency& g, NodeIndex source, bool track_paths);

  std::span<const double> distances() const { return dist_; }
  std::span<const double> path_counts() const { return sigma_; }
  /// Settled nodes in nondecreasing distance order.
  std::span<const NodeIndex> order() const { return order_; }
  /// Predecessors of v on shortest paths from the last source.
  std::span<const NodeIndex> predecessors(NodeIndex v) const {
    return {pred_.data() + v * stride_, pred_count_[v]};
  }

 private:
  std::vector<double> dist_;
  std::vector<double> sigma_;
  std::vector<NodeIndex> order_;
  std::vector<NodeIndex> pred_;
  std::vector<std::size_t> pred_count_;
  std::vector<char> settled_;
  std::size_t stride_ = 0;
};

struct AllPairsSummary {
  /// Fraction-weighted count of unordered pairs {s, t} (s, t != focus)
  /// whose shortest paths pass through `focus`.
  double focus_betweenness = 0.0;
  /// Sum over ordered pairs (i != j) of 1 / d_ij; unreachable pairs add 0.
  double inverse_distance_sum = 0.0;
};

/// One Brandes sweep serving both betweenness of `focus` and global
/// efficiency.
AllPairsSummary all_pairs_summary(const Adjacency& g, NodeIndex focus);

/// Sum over ordered pairs of 1 / d_ij.
double inverse_distance_sum(const Adjacency& g, PathWorkspace& ws);

}  // namespace egoproto::detail
