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
#include <cmath>
#include <limits>
#include <numeric>

#include "egoproto/clustering.hpp"
#include "egoproto/error.hpp"

namespace egoproto {

std::vector<int> Dendrogram::cut(std::size_t k) const {
  if (k == 0 || k > n) throw Error(ErrorCode::KTooLarge, "cut must leave between 1 and n clusters");
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t m = 0; m < n - k; ++m) parent[merges[m].b] = merges[m].a;
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(root(i));
  relabel_dense(labels);
  return labels;
}

Dendrogram ward_dendrogram(const Matrix& points) {
  const std::size_t n = points.rows();
  if (n == 0) throw Error(ErrorCode::TooFewPoints, "no points to cluster");
  Dendrogram tree;
  tree.n = n;
  if (n == 1) return tree;

  // Lance-Williams updates on squared Euclidean distance.
  CondensedDistances d = pairwise_squared_distances(points);
  std::vector<std::size_t> size(n, 1);
  std::vector<char> active(n, 1);
  std::vector<std::size_t> nn(n, 0);
  std::vector<double> nnd(n, std::numeric_limits<double>::infinity());

  auto rescan = [&](std::size_t i) {
    nnd[i] = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !active[j]) continue;
      const double v = d.at(i, j);
      if (v < nnd[i]) {
        nnd[i] = v;
        nn[i] = j;
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) rescan(i);

  tree.merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    // The first minimum in index order is the smallest pair (a, b), and its
    // partner is necessarily the larger index.
    std::size_t a = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i] && (a == n || nnd[i] < nnd[a])) a = i;
    }
    const std::size_t b = nn[a];
    const double dab = nnd[a];
    const double na = static_cast<double>(size[a]);
    const double nb = static_cast<double>(size[b]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      const double nk = static_cast<double>(size[k]);
      d.at(a, k) = ((na + nk) * d.at(a, k) + (nb + nk) * d.at(b, k) - nk * dab) / (na + nb + nk);
    }
    active[b] = 0;
    size[a] += size[b];
    tree.merges.push_back({a, b, std::sqrt(std::max(dab, 0.0)), size[a]});

    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k]) continue;
      if (k == a || nn[k] == a || nn[k] == b) {
        rescan(k);
      } else {
        const double v = d.at(k, a);
        if (v < nnd[k] || (v == nnd[k] && a < nn[k])) {
          nnd[k] = v;
          nn[k] = a;
        }
      }
    }
  }
  return tree;
}

ClusteringResult hierarchical(const Matrix& points, const Dendrogram& tree, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (k > points.rows()) throw Error(ErrorCode::KTooLarge, "k exceeds the number of points");
  if (tree.n != points.rows()) throw Error(ErrorCode::InvalidArgument, "dendrogram does not match points");
  ClusteringResult out;
  out.algorithm = Algorithm::Hierarchical;
  out.assignments = tree.cut(k);
  out.k = k;
  out.centers = cluster_means(points, out.assignments, k);
  out.inertia = within_cluster_ss(points, out.assignments, k);
  out.iterations = points.rows() - k;
  return out;
}

ClusteringResult hierarchical(const Matrix& points, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (k > points.rows()) throw Error(ErrorCode::KTooLarge, "k exceeds the number of points");
  return hierarchical(points, ward_dendrogram(points), k);
}

}  // namespace egoproto
