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
#include <map>

#include "egoproto/error.hpp"
#include "egoproto/model_selection.hpp"

namespace egoproto {

std::vector<double> silhouette_samples(const Matrix& points, const std::vector<int>& assignments) {
  const std::size_t n = points.rows();
  if (assignments.size() != n) throw Error(ErrorCode::InvalidArgument, "assignment count mismatch");
  std::size_t k = 0;
  for (int a : assignments) {
    if (a < 0) throw Error(ErrorCode::InvalidArgument, "negative cluster index");
    k = std::max(k, static_cast<std::size_t>(a) + 1);
  }
  std::vector<std::size_t> size(k, 0);
  for (int a : assignments) ++size[static_cast<std::size_t>(a)];
  if (std::count_if(size.begin(), size.end(), [](std::size_t s) { return s > 0; }) < 2) {
    throw Error(ErrorCode::SingleCluster, "silhouette needs at least two clusters");
  }

  const CondensedDistances d = pairwise_distances(points);
  std::vector<double> out(n, 0.0);
  std::vector<double> sum(k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto own = static_cast<std::size_t>(assignments[i]);
    if (size[own] < 2) continue;
    std::fill(sum.begin(), sum.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum[static_cast<std::size_t>(assignments[j])] += d.at(i, j);
    }
    const double a = sum[own] / static_cast<double>(size[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c != own && size[c] > 0) b = std::min(b, sum[c] / static_cast<double>(size[c]));
    }
    const double m = std::max(a, b);
    out[i] = m > 0.0 ? (b - a) / m : 0.0;
  }
  return out;
}

double silhouette(const Matrix& points, const std::vector<int>& assignments) {
  const auto s = silhouette_samples(points, assignments);
  double total = 0.0;
  for (double v : s) total += v;
  return total / static_cast<double>(s.size());
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "labelings differ in length");
  const double n = static_cast<double>(a.size());
  std::map<std::pair<int, int>, double> table;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  auto c2 = [](double x) { return 0.5 * x * (x - 1.0); };
  double index = 0.0, sa = 0.0, sb = 0.0;
  for (const auto& [key, v] : table) index += c2(v);
  for (const auto& [key, v] : rows) sa += c2(v);
  for (const auto& [key, v] : cols) sb += c2(v);
  const double expected = n > 1.0 ? sa * sb / c2(n) : 0.0;
  const double max_index = 0.5 * (sa + sb);
  // Identical trivial partitions (all one cluster or all singletons).
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace egoproto
