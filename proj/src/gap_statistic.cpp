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
#include <limits>

#include "egoproto/error.hpp"
#include "egoproto/model_selection.hpp"
#include "egoproto/rng.hpp"
#include "parallel.hpp"

namespace egoproto {
namespace {

double safe_log(double w) { return std::log(std::max(w, std::numeric_limits<double>::min())); }

std::size_t distinct_count(const Matrix& points, std::size_t cap) {
  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < points.rows() && seen.size() < cap; ++i) {
    bool dup = false;
    for (std::size_t j : seen) {
      const auto a = points.row(i);
      const auto b = points.row(j);
      if (std::equal(a.begin(), a.end(), b.begin())) {
        dup = true;
        break;
      }
    }
    if (!dup) seen.push_back(i);
  }
  return seen.size();
}

}  // namespace

Clusterer make_clusterer(Algorithm algorithm, const KMeansOptions& kmeans_opts) {
  switch (algorithm) {
    case Algorithm::KMeans:
      return [kmeans_opts](const Matrix& points, std::size_t k_max, std::uint64_t seed) {
        std::vector<std::vector<int>> out;
        k_max = std::min(k_max, distinct_count(points, k_max));
        for (std::size_t k = 1; k <= k_max; ++k) {
          out.push_back(kmeans(points, k, derive_seed(seed, k), kmeans_opts).assignments);
        }
        return out;
      };
    case Algorithm::Hierarchical:
      return [](const Matrix& points, std::size_t k_max, std::uint64_t) {
        const Dendrogram tree = ward_dendrogram(points);
        std::vector<std::vector<int>> out;
        k_max = std::min(k_max, points.rows());
        for (std::size_t k = 1; k <= k_max; ++k) out.push_back(tree.cut(k));
        return out;
      };
    case Algorithm::AffinityPropagation:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "affinity propagation determines k itself");
}

double dispersion(const Matrix& points, const std::vector<int>& assignments) {
  std::size_t k = 0;
  for (int a : assignments) k = std::max(k, static_cast<std::size_t>(a) + 1);
  return within_cluster_ss(points, assignments, k);
}

GapReport gap_statistic(const Matrix& points, const Clusterer& clusterer, std::uint64_t seed,
                        const GapOptions& opts) {
  if (opts.k_max < 2) throw Error(ErrorCode::InvalidArgument, "k_max must be at least 2");
  if (opts.references < 10) throw Error(ErrorCode::InvalidArgument, "at least 10 reference sets are required");
  const std::size_t n = points.rows();
  const std::size_t dim = points.cols();
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "gap statistic needs at least two points");

  GapReport report;
  report.references = opts.references;

  std::vector<double> lo(dim), hi(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    lo[c] = hi[c] = points(0, c);
    for (std::size_t r = 1; r < n; ++r) {
      lo[c] = std::min(lo[c], points(r, c));
      hi[c] = std::max(hi[c], points(r, c));
    }
  }
  if (std::equal(lo.begin(), lo.end(), hi.begin())) {
    report.degenerate = true;
    report.chosen_k = 1;
    return report;
  }

  const auto observed = clusterer(points, opts.k_max, seed);
  const std::size_t k_max = observed.size();
  if (k_max == 0) throw Error(ErrorCode::InvalidArgument, "clusterer returned no partitions");

  const std::size_t b_count = opts.references;
  // log W*_kb, one row per reference set.
  std::vector<std::vector<double>> ref_log(b_count);
  detail::parallel_for(b_count, opts.threads, [&](std::size_t b) {
    Rng rng(derive_seed(seed, 0x1000 + b));
    Matrix ref(n, dim);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < dim; ++c) ref(r, c) = rng.uniform(lo[c], hi[c]);
    }
    const auto parts = clusterer(ref, k_max, derive_seed(seed, 0x2000 + b));
    ref_log[b].resize(k_max, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < parts.size() && k < k_max; ++k) ref_log[b][k] = safe_log(dispersion(ref, parts[k]));
  });

  const double factor = opts.se_rule == GapSeRule::Standard
                            ? std::sqrt(1.0 + 1.0 / static_cast<double>(b_count))
                            : std::sqrt(2.0 / static_cast<double>(b_count));
  for (std::size_t k = 0; k < k_max; ++k) {
    GapRow row;
    row.k = k + 1;
    row.log_wk = safe_log(dispersion(points, observed[k]));
    double mean = 0.0;
    for (const auto& r : ref_log) mean += r[k];
    mean /= static_cast<double>(b_count);
    double var = 0.0;
    for (const auto& r : ref_log) var += (r[k] - mean) * (r[k] - mean);
    var /= static_cast<double>(b_count);
    row.expected_log_wk = mean;
    row.gap = mean - row.log_wk;
    row.sd = std::sqrt(var);
    row.s_k = row.sd * factor;
    report.rows.push_back(row);
  }

  report.chosen_k = k_max;
  for (std::size_t k = 0; k + 1 < k_max; ++k) {
    if (report.rows[k].gap >= report.rows[k + 1].gap - report.rows[k + 1].s_k) {
      report.chosen_k = k + 1;
      break;
    }
  }
  return report;
}

}  // namespace egoproto
