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

#include "egoproto/clustering.hpp"
#include "egoproto/error.hpp"

namespace egoproto {
namespace {

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

ClusteringResult finish(const Matrix& points, const Matrix& s, std::vector<std::size_t> exemplars) {
  const std::size_t n = points.rows();
  ClusteringResult out;
  out.algorithm = Algorithm::AffinityPropagation;
  out.assignments.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    for (std::size_t e = 0; e < exemplars.size(); ++e) {
      if (exemplars[e] == i) {
        best = e;
        break;
      }
      if (s(i, exemplars[e]) > s(i, exemplars[best])) best = e;
    }
    out.assignments[i] = static_cast<int>(best);
  }
  // Dense relabel by first appearance; exemplars follow their clusters.
  std::vector<int> order(exemplars.size(), -1);
  int next = 0;
  for (int& a : out.assignments) {
    if (order[static_cast<std::size_t>(a)] < 0) order[static_cast<std::size_t>(a)] = next++;
    a = order[static_cast<std::size_t>(a)];
  }
  out.k = static_cast<std::size_t>(next);
  out.exemplars.assign(out.k, 0);
  for (std::size_t e = 0; e < exemplars.size(); ++e) {
    if (order[e] >= 0) out.exemplars[static_cast<std::size_t>(order[e])] = exemplars[e];
  }
  out.centers = points.select_rows(out.exemplars);
  out.inertia = within_cluster_ss(points, out.assignments, out.k);
  return out;
}

}  // namespace

ClusteringResult affinity_propagation(const Matrix& points, const AffinityOptions& opts) {
  const std::size_t n = points.rows();
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "affinity propagation needs at least two points");
  if (!(opts.damping >= 0.5 && opts.damping < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "damping must lie in [0.5, 1)");
  }
  if (opts.max_iterations == 0 || opts.convergence_window == 0) {
    throw Error(ErrorCode::InvalidArgument, "iteration limits must be positive");
  }

  const CondensedDistances d2 = pairwise_squared_distances(points);
  Matrix s(n, n, 0.0);
  std::vector<double> off;
  off.reserve(d2.data().size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      s(i, j) = s(j, i) = -d2.at(i, j);
      off.push_back(-d2.at(i, j));
    }
  }
  const double preference =
      opts.preference == ApPreference::Median ? median(off) : *std::min_element(off.begin(), off.end());
  for (std::size_t i = 0; i < n; ++i) s(i, i) = preference;

  // With every similarity equal the messages never break the symmetry:
  // identical points form one cluster, otherwise every point is as good an
  // exemplar for itself as any other, so each stands alone.
  const auto [lo, hi] = std::minmax_element(off.begin(), off.end());
  if (*lo == *hi) {
    std::vector<std::size_t> ex;
    if (*hi == 0.0) {
      ex = {0};
    } else {
      for (std::size_t i = 0; i < n; ++i) ex.push_back(i);
    }
    ClusteringResult out = finish(points, s, ex);
    out.iterations = 0;
    return out;
  }

  Matrix r(n, n, 0.0);
  Matrix a(n, n, 0.0);
  const double lambda = opts.damping;
  std::vector<char> exemplar(n, 0);
  std::vector<char> previous(n, 0);
  std::size_t stable = 0;
  std::size_t iter = 0;
  bool converged = false;
  std::vector<double> colsum(n);

  while (iter < opts.max_iterations) {
    ++iter;
    for (std::size_t i = 0; i < n; ++i) {
      double max1 = -std::numeric_limits<double>::infinity();
      double max2 = max1;
      std::size_t arg = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const double v = a(i, k) + s(i, k);
        if (v > max1) {
          max2 = max1;
          max1 = v;
          arg = k;
        } else if (v > max2) {
          max2 = v;
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        const double target = s(i, k) - (k == arg ? max2 : max1);
        r(i, k) = lambda * r(i, k) + (1.0 - lambda) * target;
      }
    }

    std::fill(colsum.begin(), colsum.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) colsum[k] += i == k ? r(i, k) : std::max(r(i, k), 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double own = i == k ? r(i, k) : std::max(r(i, k), 0.0);
        double target = colsum[k] - own;
        if (i != k) target = std::min(target, 0.0);
        a(i, k) = lambda * a(i, k) + (1.0 - lambda) * target;
      }
    }

    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      exemplar[i] = r(i, i) + a(i, i) > 0.0;
      any = any || exemplar[i];
    }
    stable = (any && exemplar == previous) ? stable + 1 : 0;
    previous = exemplar;
    if (stable >= opts.convergence_window) {
      converged = true;
      break;
    }
  }

  std::vector<std::size_t> ex;
  for (std::size_t i = 0; i < n; ++i) {
    if (exemplar[i]) ex.push_back(i);
  }
  if (ex.empty()) {
    // No point claims itself; fall back to the strongest candidate.
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (r(i, i) + a(i, i) > r(best, best) + a(best, best)) best = i;
    }
    ex = {best};
    converged = false;
  }
  ClusteringResult out = finish(points, s, ex);
  out.iterations = iter;
  out.converged = converged;
  return out;
}

}  // namespace egoproto
