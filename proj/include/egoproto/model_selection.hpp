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
#include <functional>
#include <span>
#include <vector>

#include "egoproto/clustering.hpp"
#include "egoproto/matrix.hpp"

namespace egoproto {

/// Partitions of `points` into k = 1, 2, ..., k_max clusters (element k-1
/// holds k clusters). May stop early when fewer clusters are possible.
using Clusterer =
    std::function<std::vector<std::vector<int>>(const Matrix& points, std::size_t k_max, std::uint64_t seed)>;

/// Clusterer backed by k-means (one run per k) or by cutting a single Ward
/// dendrogram. Affinity propagation picks its own k and has no clusterer.
Clusterer make_clusterer(Algorithm algorithm, const KMeansOptions& kmeans_opts = {});

enum class GapSeRule {
  Standard,  // s_k = sd * sqrt(1 + 1/B)
  Printed,   // s_k = sd * sqrt(2/B)
};

struct GapOptions {
  std::size_t k_max = 12;
  std::size_t references = 50;  // B
  GapSeRule se_rule = GapSeRule::Standard;
  unsigned threads = 0;
};

struct GapRow {
  std::size_t k = 0;
  double log_wk = 0.0;
  double expected_log_wk = 0.0;
  double gap = 0.0;
  double sd = 0.0;
  double s_k = 0.0;
};

struct GapReport {
  std::vector<GapRow> rows;  // k = 1, 2, ...
  std::size_t chosen_k = 1;
  std::size_t references = 0;
  bool degenerate = false;   // all points identical; rows left empty
};

/// Within-cluster dispersion: sum over clusters of pairwise squared
/// distances divided by twice the cluster size (the within-cluster sum of
/// squares).
double dispersion(const Matrix& points, const std::vector<int>& assignments);

/// Gap statistic against references drawn uniformly from the per-column
/// bounding box. Picks the smallest k with Gap(k) >= Gap(k+1) - s_{k+1},
/// or the largest k tried when no k qualifies.
GapReport gap_statistic(const Matrix& points, const Clusterer& clusterer, std::uint64_t seed,
                        const GapOptions& opts = {});

struct CurvePoint {
  double k = 0.0;
  double value = 0.0;
};

struct KneeReport {
  std::vector<CurvePoint> curve;
  std::size_t chosen_k = 0;
  double fit_rmse_left = 0.0;
  double fit_rmse_right = 0.0;
  double total_rmse = 0.0;  // size-weighted sum of the two
};

/// Knee of a "number of clusters vs metric" curve: the split into two
/// least-squares lines (each over at least two points) with the smallest
/// size-weighted RMSE. The knee is the last point of the left segment.
/// Splits within a tolerance relative to the value range tie, and the
/// smallest k wins.
KneeReport l_method(std::span<const CurvePoint> curve);

/// Merge height that leaves k clusters, for k = 2..max_k.
std::vector<CurvePoint> merge_height_curve(const Dendrogram& tree, std::size_t max_k);

/// Within-cluster sum of squares for k = 1..max_k from a clusterer.
std::vector<CurvePoint> dispersion_curve(const Matrix& points, const Clusterer& clusterer, std::size_t max_k,
                                         std::uint64_t seed);

/// Mean silhouette width over points; members of singleton clusters score 0.
/// Throws SingleCluster when fewer than two clusters are present.
double silhouette(const Matrix& points, const std::vector<int>& assignments);

/// Per-point silhouette values.
std::vector<double> silhouette_samples(const Matrix& points, const std::vector<int>& assignments);

/// Adjusted Rand index between two labelings of the same items.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace egoproto
