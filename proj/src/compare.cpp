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
#include "egoproto/compare.hpp"

#include <algorithm>

#include "egoproto/io.hpp"
#include "egoproto/model_selection.hpp"
#include "json.hpp"

namespace egoproto {

std::vector<CompareCell> compare_grid(const PreparedData& data, const RunConfig& cfg, const CompareOptions& opts) {
  std::optional<std::vector<int>> truth;
  if (!data.truth.empty() && std::all_of(data.truth.begin(), data.truth.end(), [](const auto& t) { return t.has_value(); })) {
    truth.emplace();
    for (const auto& t : data.truth) truth->push_back(static_cast<int>(*t));
  }

  std::vector<CompareCell> cells;
  for (const std::string& subset : opts.subsets) {
    for (Algorithm algorithm : opts.algorithms) {
      RunConfig c = cfg;
      c.subset = subset;
      c.algorithm = algorithm;
      const Analysis a = analyze(data, c);
      CompareCell cell;
      cell.subset = a.subset.id;
      cell.algorithm = algorithm;
      cell.k = a.clustering.k;
      for (const auto& l : a.labels) {
        if (l.label == Prototype::Unmatched) {
          ++cell.unmatched;
        } else {
          cell.labels.push_back(l.label);
        }
      }
      std::sort(cell.labels.begin(), cell.labels.end());
      cell.labels.erase(std::unique(cell.labels.begin(), cell.labels.end()), cell.labels.end());
      cell.entropy = a.score.entropy;
      cell.representation_entropy = a.score.representation_entropy;
      cell.silhouette = a.silhouette;
      if (truth) cell.ari = adjusted_rand_index(*truth, a.clustering.assignments);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::string compare_csv(const std::vector<CompareCell>& cells) {
  std::string out = "subset,algorithm,k,labels,unmatched,entropy,representation_entropy,silhouette,ari\n";
  for (const auto& c : cells) {
    std::string labels;
    for (Prototype p : c.labels) {
      if (!labels.empty()) labels += ';';
      labels += prototype_name(p);
    }
    out += c.subset + "," + std::string(algorithm_name(c.algorithm)) + "," + std::to_string(c.k) + "," + labels + "," +
           std::to_string(c.unmatched) + "," + io::format_number(c.entropy) + "," + io::format_number(c.representation_entropy) + "," +
           (c.silhouette ? io::format_number(*c.silhouette) : "") + "," + (c.ari ? io::format_number(*c.ari) : "") + "\n";
  }
  return out;
}

std::string compare_json(const std::vector<CompareCell>& cells) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    nlohmann::ordered_json j;
    j["subset"] = c.subset;
    j["algorithm"] = algorithm_name(c.algorithm);
    j["k"] = c.k;
    auto labels = nlohmann::ordered_json::array();
    for (Prototype p : c.labels) labels.push_back(prototype_name(p));
    j["labels"] = labels;
    j["unmatched"] = c.unmatched;
    j["entropy"] = c.entropy;
    j["representation_entropy"] = c.representation_entropy;
    j["silhouette"] = c.silhouette ? nlohmann::ordered_json(*c.silhouette) : nlohmann::ordered_json(nullptr);
    j["ari"] = c.ari ? nlohmann::ordered_json(*c.ari) : nlohmann::ordered_json(nullptr);
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

}  // namespace egoproto
