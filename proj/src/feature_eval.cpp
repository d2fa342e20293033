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

#include "egoproto/feature_eval.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "egoproto/error.hpp"

namespace egoproto {
namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

Eigen::MatrixXd covariance(const Matrix& points) {
  const auto n = static_cast<Eigen::Index>(points.rows());
  const auto d = static_cast<Eigen::Index>(points.cols());
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) x(r, c) = points(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  }
  x.rowwise() -= x.colwise().mean();
  return (x.transpose() * x) / static_cast<double>(n - 1);
}

}  // namespace

double dataset_entropy(const Matrix& points) {
  const std::size_t n = points.rows();
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "entropy needs at least two rows");
  const CondensedDistances dist = pairwise_distances(points);
  const auto d = dist.data();
  double mean = 0.0;
  for (double x : d) mean += x;
  mean /= static_cast<double>(d.size());
  if (!(mean > 0.0)) return 0.0;
  const double alpha = std::numbers::ln2 / mean;
  double acc = 0.0;
  for (double x : d) {
    const double s = std::exp(-alpha * x);
    acc += xlogx(s) + xlogx(1.0 - s);
  }
  return -acc / static_cast<double>(d.size());
}

double dataset_entropy(const FeatureMatrix& m) { return dataset_entropy(m.values); }

std::vector<double> normalized_covariance_spectrum(const Matrix& points) {
  if (points.rows() < 2 || points.cols() < 1) {
    throw Error(ErrorCode::TooFewPoints, "covariance needs at least two rows and one column");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance(points), Eigen::EigenvaluesOnly);
  std::vector<double> lambda(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  for (double& l : lambda) l = std::max(l, 0.0);
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  double total = 0.0;
  for (double l : lambda) total += l;
  if (!(total > std::numeric_limits<double>::min())) return {};
  for (double& l : lambda) l /= total;
  return lambda;
}

double representation_entropy(const Matrix& points) {
  double h = 0.0;
  for (double l : normalized_covariance_spectrum(points)) h -= xlogx(l);
  return std::max(h, 0.0);
}

double representation_entropy(const FeatureMatrix& m) { return representation_entropy(m.values); }

SubsetScore score_subset(const FeatureMatrix& normalized, const FeatureSubset& subset) {
  const FeatureMatrix sub = normalized.restrict_to(subset);
  return {subset, dataset_entropy(sub.values), representation_entropy(sub.values)};
}

Matrix feature_dissimilarity(const Matrix& points, FeatureSimilarity similarity) {
  const std::size_t d = points.cols();
  const Eigen::MatrixXd cov = covariance(points);
  Matrix out(d, d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double vi = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
      const double vj = cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
      const double cij = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      // A constant column is treated as uncorrelated with everything.
      const double rho = (vi > 0.0 && vj > 0.0) ? std::clamp(cij / std::sqrt(vi * vj), -1.0, 1.0) : 0.0;
      double value = 0.0;
      if (similarity == FeatureSimilarity::AbsCorrelation) {
        value = 1.0 - std::abs(rho);
      } else {
        // Smallest eigenvalue of the 2x2 covariance of the pair.
        const double sum = vi + vj;
        const double disc = sum * sum - 4.0 * vi * vj * (1.0 - rho * rho);
        value = 0.5 * (sum - std::sqrt(std::max(disc, 0.0)));
      }
      // Rounding leaves exact duplicates a hair apart; snap them together.
      out(i, j) = out(j, i) = value < 1e-12 ? 0.0 : value;
    }
  }
  return out;
}

FeatureSubset fsfs_select(const FeatureMatrix& m, const FsfsOptions& opts) {
  const std::size_t d = m.cols();
  if (d < 3) return {"fsfs", m.subset.members};
  if (opts.k_init < 1) throw Error(ErrorCode::InvalidArgument, "k_init must be positive");
  const Matrix dis = feature_dissimilarity(m.values, opts.similarity);

  std::vector<std::size_t> kept(d);
  for (std::size_t i = 0; i < d; ++i) kept[i] = i;

  // Dissimilarity from `f` to each other kept feature, ascending (ties by
  // column index).
  auto neighbors_of = [&](std::size_t f) {
    std::vector<std::pair<double, std::size_t>> nb;
    for (std::size_t g : kept) {
      if (g != f) nb.push_back({dis(f, g), g});
    }
    std::sort(nb.begin(), nb.end());
    return nb;
  };
  // Feature with the smallest k-th neighbor dissimilarity.
  auto tightest = [&](std::size_t k) {
    std::size_t best = kept.front();
    double best_r = std::numeric_limits<double>::infinity();
    for (std::size_t f : kept) {
      const double r = neighbors_of(f)[k - 1].first;
      if (r < best_r) {
        best_r = r;
        best = f;
      }
    }
    return std::pair{best, best_r};
  };
  auto discard = [&](std::size_t f, std::size_t count) {
    const auto nb = neighbors_of(f);
    count = std::min(count, kept.size() - 2);
    for (std::size_t i = 0; i < count; ++i) std::erase(kept, nb[i].second);
  };

  std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(opts.k_init), d - 1);
  double epsilon = 0.0;
  while (k > 1 && kept.size() > 2) {
    const auto [centre, r] = tightest(k);
    epsilon = r;
    discard(centre, k);
    if (kept.size() <= 2) break;
    k = std::min(k, kept.size() - 1);
    // Shrink the neighborhood until some feature again has k neighbors
    // within epsilon.
    while (k > 1 && tightest(k).second > epsilon) --k;
  }
  // k = 1: drop nearest neighbors that are at least as redundant as the
  // last accepted neighborhood.
  while (kept.size() > 2) {
    const auto [centre, r] = tightest(1);
    if (r > epsilon) break;
    discard(centre, 1);
  }

  FeatureSubset out{"fsfs", {}};
  for (std::size_t c : kept) out.members.push_back(m.subset.members[c]);
  return out;
}

}  // namespace egoproto
