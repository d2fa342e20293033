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
#include <limits>
#include <numeric>

#include "egoproto/clustering.hpp"
#include "egoproto/error.hpp"
#include "egoproto/rng.hpp"
#include "egoproto/simd.hpp"

namespace egoproto {
namespace {

// First row index of each distinct point, ascending.
std::vector<std::size_t> distinct_rows(const Matrix& points) {
  std::vector<std::size_t> idx(points.rows());
  std::iota(idx.begin(), idx.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    const auto ra = points.row(a);
    const auto rb = points.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  std::stable_sort(idx.begin(), idx.end(), less);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i == 0 || less(idx[i - 1], idx[i])) out.push_back(idx[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Run {
  std::vector<int> assignments;
  Matrix centers;
  std::vector<double> history;
  std::size_t iterations = 0;
  bool converged = false;
  double inertia = 0.0;
};

Run lloyd(const Matrix& points, std::size_t k, std::vector<std::size_t> init, std::size_t max_iter) {
  const std::size_t n = points.rows();
  const std::size_t dim = points.cols();
  const auto& kern = simd::active();

  Run run;
  run.centers = points.select_rows(init);
  run.assignments.assign(n, -1);
  std::vector<double> dist(k);
  std::vector<double> own(n);
  std::vector<std::size_t> counts(k);

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    run.iterations = iter;
    bool changed = false;
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      kern.squared_distances_to_rows(points.row(i).data(), run.centers.data().data(), k, dim, dim, dist.data());
      const auto best = static_cast<int>(std::min_element(dist.begin(), dist.end()) - dist.begin());
      if (best != run.assignments[i]) changed = true;
      run.assignments[i] = best;
      own[i] = dist[static_cast<std::size_t>(best)];
      inertia += own[i];
    }
    run.history.push_back(inertia);
    if (!changed) {
      run.converged = true;
      break;
    }

    std::fill(counts.begin(), counts.end(), 0);
    for (int a : run.assignments) ++counts[static_cast<std::size_t>(a)];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[static_cast<std::size_t>(run.assignments[i])] > 1 && (far == n || own[i] > own[far])) far = i;
      }
      --counts[static_cast<std::size_t>(run.assignments[far])];
      run.assignments[far] = static_cast<int>(c);
      counts[c] = 1;
      own[far] = 0.0;
    }
    run.centers = cluster_means(points, run.assignments, k);
  }
  run.inertia = within_cluster_ss(points, run.assignments, k);
  return run;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::KMeans: return "kmeans";
    case Algorithm::Hierarchical: return "hierarchical";
    case Algorithm::AffinityPropagation: return "ap";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "kmeans") return Algorithm::KMeans;
  if (name == "hierarchical") return Algorithm::Hierarchical;
  if (name == "ap") return Algorithm::AffinityPropagation;
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm: " + std::string(name));
}

double within_cluster_ss(const Matrix& points, const std::vector<int>& assignments, std::size_t k) {
  const Matrix means = cluster_means(points, assignments, k);
  const auto& kern = simd::active();
  double s = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    s += kern.squared_distance(points.row(i).data(), means.row(static_cast<std::size_t>(assignments[i])).data(),
                               points.cols());
  }
  return s;
}

Matrix cluster_means(const Matrix& points, const std::vector<int>& assignments, std::size_t k) {
  if (assignments.size() != points.rows()) throw Error(ErrorCode::InvalidArgument, "assignment count mismatch");
  Matrix means(k, points.cols(), 0.0);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    const auto c = static_cast<std::size_t>(assignments[i]);
    if (c >= k) throw Error(ErrorCode::InvalidArgument, "cluster index out of range");
    ++counts[c];
    auto dst = means.row(c);
    const auto src = points.row(i);
    for (std::size_t j = 0; j < src.size(); ++j) dst[j] += src[j];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    for (double& x : means.row(c)) x /= static_cast<double>(counts[c]);
  }
  return means;
}

std::size_t relabel_dense(std::vector<int>& assignments) {
  std::vector<int> map;
  int next = 0;
  for (int& a : assignments) {
    const auto key = static_cast<std::size_t>(a);
    if (key >= map.size()) map.resize(key + 1, -1);
    if (map[key] < 0) map[key] = next++;
    a = map[key];
  }
  return static_cast<std::size_t>(next);
}

ClusteringResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed, const KMeansOptions& opts) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (opts.restarts == 0) throw Error(ErrorCode::InvalidArgument, "restarts must be positive");
  const std::vector<std::size_t> distinct = distinct_rows(points);
  if (k > distinct.size()) {
    throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds " + std::to_string(distinct.size()) +
                                          " distinct points");
  }

  Run best;
  bool have = false;
  for (std::size_t r = 0; r < opts.restarts; ++r) {
    Rng rng(derive_seed(seed, r));
    std::vector<std::size_t> pool = distinct;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.index(pool.size() - i)]);
    pool.resize(k);
    Run run = lloyd(points, k, pool, opts.max_iterations);
    if (!have || run.inertia < best.inertia) {
      best = std::move(run);
      have = true;
    }
  }

  ClusteringResult out;
  out.algorithm = Algorithm::KMeans;
  out.seed = seed;
  out.assignments = best.assignments;
  out.k = relabel_dense(out.assignments);
  out.centers = cluster_means(points, out.assignments, out.k);
  out.inertia = best.inertia;
  out.inertia_history = std::move(best.history);
  out.iterations = best.iterations;
  out.converged = best.converged;
  return out;
}

}  // namespace egoproto
