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
#include "datasets.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "egoproto/rng.hpp"

namespace oracle {

Labeled gaussian_blobs(std::uint64_t seed, const std::vector<std::vector<double>>& centers, std::size_t per,
                       double sd) {
  egoproto::Rng rng(seed);
  const std::size_t dim = centers.front().size();
  Labeled out;
  out.points = egoproto::Matrix(centers.size() * per, dim);
  for (std::size_t c = 0; c < centers.size(); ++c) {
    for (std::size_t i = 0; i < per; ++i) {
      const std::size_t r = c * per + i;
      for (std::size_t j = 0; j < dim; ++j) out.points(r, j) = rng.normal(centers[c][j], sd);
      out.labels.push_back(static_cast<int>(c));
    }
  }
  return out;
}

Labeled three_blobs(std::uint64_t seed, std::size_t per, double sd) {
  return gaussian_blobs(seed, {{0.0, 0.0}, {1.5, 0.2}, {0.6, 1.4}}, per, sd);
}

egoproto::FeatureMatrix planted_features(std::uint64_t seed, std::size_t clusters, std::size_t per,
                                         double copy_noise) {
  egoproto::Rng rng(seed);
  constexpr std::size_t kSeparating = 4;
  std::vector<std::vector<double>> centers(clusters, std::vector<double>(kSeparating));
  for (auto& c : centers) {
    for (double& x : c) x = rng.uniform(0.0, 3.0);
  }
  egoproto::FeatureMatrix m;
  m.subset = egoproto::all_features_subset();
  m.values = egoproto::Matrix(clusters * per, egoproto::kFeatureCount);
  for (std::size_t r = 0; r < clusters * per; ++r) {
    char id[24];
    std::snprintf(id, sizeof id, "r%04zu", r);
    m.egos.push_back(id);
    const auto& c = centers[r / per];
    for (std::size_t j = 0; j < kSeparating; ++j) m.values(r, j) = rng.normal(c[j], 0.2);
    for (std::size_t j = kSeparating; j < egoproto::kFeatureCount; ++j) {
      m.values(r, j) = m.values(r, j % kSeparating) + rng.normal(0.0, copy_noise);
    }
  }
  return m;
}

std::vector<egoproto::EdgeRecord> community_graph(std::uint64_t seed, std::size_t nodes, std::size_t edges,
                                                  std::size_t communities, double inside) {
  egoproto::Rng rng(seed);
  const std::size_t size = nodes / communities;
  std::set<std::pair<std::size_t, std::size_t>> chosen;
  while (chosen.size() < edges) {
    std::size_t a = 0, b = 0;
    if (rng.bernoulli(inside)) {
      const std::size_t c = rng.index(communities);
      const std::size_t lo = c * size, hi = c + 1 == communities ? nodes : lo + size;
      a = lo + rng.index(hi - lo);
      b = lo + rng.index(hi - lo);
    } else {
      a = rng.index(nodes);
      b = rng.index(nodes);
    }
    if (a == b) continue;
    chosen.emplace(std::min(a, b), std::max(a, b));
  }
  std::vector<egoproto::EdgeRecord> out;
  out.reserve(edges);
  char u[24], v[24];
  for (const auto& [a, b] : chosen) {
    std::snprintf(u, sizeof u, "n%05zu", a);
    std::snprintf(v, sizeof v, "n%05zu", b);
    out.push_back({u, v, 1.0 + std::floor(std::exp(rng.normal(0.0, 1.2)))});
  }
  return out;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [x, inserted_x] = ab.emplace(a[i], b[i]);
    auto [y, inserted_y] = ba.emplace(b[i], a[i]);
    if (x->second != b[i] || y->second != a[i]) return false;
  }
  return true;
}

}  // namespace oracle
