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

#include "egoproto/error.hpp"
#include "egoproto/model_selection.hpp"

namespace egoproto {
namespace {

// Root mean squared residual of the least-squares line through pts.
double line_rmse(std::span<const CurvePoint> pts) {
  const double n = static_cast<double>(pts.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    mx += p.k;
    my += p.value;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    sxx += (p.k - mx) * (p.k - mx);
    sxy += (p.k - mx) * (p.value - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  double sse = 0.0;
  for (const auto& p : pts) {
    const double e = p.value - (my + slope * (p.k - mx));
    sse += e * e;
  }
  return std::sqrt(sse / n);
}

}  // namespace

KneeReport l_method(std::span<const CurvePoint> curve) {
  if (curve.size() < 4) throw Error(ErrorCode::TooFewPoints, "the L-method needs at least four curve points");
  KneeReport out;
  out.curve.assign(curve.begin(), curve.end());
  std::stable_sort(out.curve.begin(), out.curve.end(),
                   [](const CurvePoint& a, const CurvePoint& b) { return a.k < b.k; });
  const auto& pts = out.curve;
  const std::size_t n = pts.size();

  double ymin = pts[0].value, ymax = pts[0].value;
  for (const auto& p : pts) {
    ymin = std::min(ymin, p.value);
    ymax = std::max(ymax, p.value);
  }
  const double tol = 1e-9 * (ymax - ymin);

  bool have = false;
  const std::span<const CurvePoint> all(pts);
  for (std::size_t c = 2; c + 2 <= n; ++c) {
    const double left = line_rmse(all.first(c));
    const double right = line_rmse(all.subspan(c));
    const double total = (static_cast<double>(c) * left + static_cast<double>(n - c) * right) / static_cast<double>(n);
    if (!have || total < out.total_rmse - tol) {
      have = true;
      out.total_rmse = total;
      out.fit_rmse_left = left;
      out.fit_rmse_right = right;
      out.chosen_k = static_cast<std::size_t>(std::llround(pts[c - 1].k));
    }
  }
  return out;
}

std::vector<CurvePoint> merge_height_curve(const Dendrogram& tree, std::size_t max_k) {
  std::vector<CurvePoint> out;
  for (std::size_t k = 2; k <= std::min(max_k, tree.n); ++k) {
    // Merge n-k takes k clusters down to k-1.
    out.push_back({static_cast<double>(k), tree.merges[tree.n - k].height});
  }
  return out;
}

std::vector<CurvePoint> dispersion_curve(const Matrix& points, const Clusterer& clusterer, std::size_t max_k,
                                         std::uint64_t seed) {
  const auto parts = clusterer(points, max_k, seed);
  std::vector<CurvePoint> out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    out.push_back({static_cast<double>(k + 1), dispersion(points, parts[k])});
  }
  return out;
}

}  // namespace egoproto
