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
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "egoproto/pipeline.hpp"

namespace egoproto {

/// One subset and algorithm pair run over the same prepared data.
struct CompareCell {
  std::string subset;
  Algorithm algorithm = Algorithm::KMeans;
  std::size_t k = 0;
  std::vector<Prototype> labels;  // distinct detected prototypes, sorted
  std::size_t unmatched = 0;      // clusters no prototype rule matched
  double entropy = 0.0;
  double representation_entropy = 0.0;
  std::optional<double> silhouette;
  /// Agreement with the listed ground-truth labels, when every ego has one.
  std::optional<double> ari;
};

struct CompareOptions {
  std::vector<std::string> subsets{"i", "ii", "iii", "iv", "v", "vi", "vii", "viii"};
  std::vector<Algorithm> algorithms{Algorithm::KMeans, Algorithm::Hierarchical, Algorithm::AffinityPropagation};
};

/// Runs analyze() for every subset and algorithm in `opts`, reusing
/// `data`. Other settings come from `cfg`.
std::vector<CompareCell> compare_grid(const PreparedData& data, const RunConfig& cfg, const CompareOptions& opts = {});

std::string compare_csv(const std::vector<CompareCell>& cells);
std::string compare_json(const std::vector<CompareCell>& cells);

}  // namespace egoproto
