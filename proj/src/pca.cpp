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
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "egoproto/clustering.hpp"
#include "egoproto/error.hpp"

namespace egoproto {

Matrix ReducedMatrix::project(const Matrix& rows) const {
  if (rows.cols() != mean.size()) throw Error(ErrorCode::InvalidArgument, "column count mismatch");
  Matrix out(rows.rows(), components.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    for (std::size_t c = 0; c < components.rows(); ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < mean.size(); ++j) s += (rows(r, j) - mean[j]) * components(c, j);
      out(r, c) = s;
    }
  }
  return out;
}

ReducedMatrix pca_reduce(const Matrix& m, const PcaOptions& opts) {
  const std::size_t n = m.rows();
  const std::size_t d = m.cols();
  if (n < 2 || d < 1) throw Error(ErrorCode::TooFewPoints, "PCA needs at least two rows and one column");
  if (!(opts.variance_target > 0.0 && opts.variance_target <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "variance target must lie in (0, 1]");
  }

  ReducedMatrix out;
  out.mean.assign(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) out.mean[c] += m(r, c);
  }
  for (double& x : out.mean) x /= static_cast<double>(n);

  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c) - out.mean[c];
    }
  }
  const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::InvalidArgument, "eigendecomposition failed");

  // Eigen returns ascending eigenvalues.
  std::vector<double> lambda(d);
  for (std::size_t i = 0; i < d; ++i) {
    lambda[i] = std::max(solver.eigenvalues()(static_cast<Eigen::Index>(d - 1 - i)), 0.0);
  }
  double total = 0.0;
  for (double l : lambda) total += l;
  out.total_variance = total;

  if (!(total > 0.0)) {
    out.points = Matrix(n, 1, 0.0);
    out.components = Matrix(1, d, 0.0);
    out.components(0, 0) = 1.0;
    out.explained_variance = {0.0};
    out.explained_variance_ratio = {0.0};
    return out;
  }

  std::size_t keep = 0;
  double cumulative = 0.0;
  while (keep < d) {
    cumulative += lambda[keep] / total;
    ++keep;
    // Slack absorbs rounding in the running sum.
    if (cumulative >= opts.variance_target - 1e-12) break;
  }
  keep = std::min(std::max(keep, opts.min_components), d);

  out.components = Matrix(keep, d);
  for (std::size_t c = 0; c < keep; ++c) {
    const auto col = solver.eigenvectors().col(static_cast<Eigen::Index>(d - 1 - c));
    std::size_t arg = 0;
    for (std::size_t j = 1; j < d; ++j) {
      if (std::abs(col(static_cast<Eigen::Index>(j))) > std::abs(col(static_cast<Eigen::Index>(arg)))) arg = j;
    }
    const double sign = col(static_cast<Eigen::Index>(arg)) < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < d; ++j) out.components(c, j) = sign * col(static_cast<Eigen::Index>(j));
    out.explained_variance.push_back(lambda[c]);
    out.explained_variance_ratio.push_back(lambda[c] / total);
  }
  out.points = out.project(m);
  return out;
}

}  // namespace egoproto
