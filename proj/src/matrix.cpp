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

#include "egoproto/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "egoproto/error.hpp"
#include "egoproto/simd.hpp"

namespace egoproto {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) {
      throw Error(ErrorCode::InvalidArgument, "ragged rows in matrix literal");
    }
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> indices) const {
  Matrix out(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < indices.size(); ++c) out(r, c) = (*this)(r, indices[c]);
  }
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const auto src = row(indices[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

CondensedDistances pairwise_squared_distances(const Matrix& points) {
  const std::size_t n = points.rows();
  CondensedDistances out(n);
  if (n < 2) return out;
  const auto& k = simd::active();
  auto data = out.data();
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t count = n - i - 1;
    k.squared_distances_to_rows(points.row(i).data(), points.row(i + 1).data(), count, points.cols(),
                                points.cols(), data.data() + pos);
    pos += count;
  }
  return out;
}

CondensedDistances pairwise_distances(const Matrix& points) {
  CondensedDistances out = pairwise_squared_distances(points);
  for (double& d : out.data()) d = std::sqrt(d);
  return out;
}

}  // namespace egoproto
