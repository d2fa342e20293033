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
#include "egoproto/prototypes.hpp"

#include <algorithm>
#include <array>

#include "egoproto/error.hpp"

namespace egoproto {
namespace {

constexpr std::array<std::string_view, 9> kNames = {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "unmatched"};

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// Ego whose neighbors have no edges among themselves.
bool is_star(const EgoGraph& e) {
  const WeightedGraph& g = e.graph;
  const auto nbs = g.neighbors(e.ego_index);
  if (nbs.size() < 2) return false;
  for (std::size_t i = 0; i < nbs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbs.size(); ++j) {
      if (g.has_edge(nbs[i].node, nbs[j].node)) return false;
    }
  }
  return true;
}

}  // namespace

std::string_view prototype_name(Prototype p) { return kNames[static_cast<std::size_t>(p)]; }

std::optional<Prototype> parse_prototype(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Prototype>(i);
  }
  return std::nullopt;
}

std::vector<Prototype> all_prototypes() {
  std::vector<Prototype> out;
  for (std::size_t i = 0; i < kPrototypeCount; ++i) out.push_back(static_cast<Prototype>(i));
  return out;
}

ClusterProfile profile_cluster(std::span<const EgoGraph> members, std::span<const FeatureVector> features) {
  if (members.empty()) throw Error(ErrorCode::EmptyCluster, "cannot profile an empty cluster");
  if (members.size() != features.size()) throw Error(ErrorCode::InvalidArgument, "member and feature counts differ");
  ClusterProfile p;
  p.members = members.size();
  const double n = static_cast<double>(members.size());
  std::vector<double> sizes;
  p.density_low = 1.0;
  p.density_high = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) p.mean_features[f] += features[i].values[f];
    const double density = features[i][Feature::EgoDensity];
    p.density_low = std::min(p.density_low, density);
    p.density_high = std::max(p.density_high, density);
    p.star_score += is_star(members[i]);
    p.completeness += density >= 1.0 - 1e-12;
    p.mean_triangles += static_cast<double>(triangle_count(members[i].graph));
    sizes.push_back(static_cast<double>(members[i].graph.node_count()));
  }
  for (double& m : p.mean_features) m /= n;
  p.mean_density = p.mean_features[static_cast<std::size_t>(Feature::EgoDensity)];
  p.star_score /= n;
  p.completeness /= n;
  p.mean_triangles /= n;
  p.size.min = *std::min_element(sizes.begin(), sizes.end());
  p.size.max = *std::max_element(sizes.begin(), sizes.end());
  double total = 0.0;
  for (double s : sizes) total += s;
  p.size.mean = total / n;
  p.size.median = median_of(sizes);
  return p;
}

PrototypeLabel label_cluster(const ClusterProfile& p, const LabelRules& r) {
  PrototypeLabel out;
  const double d = p.mean_density;
  auto band = [&](Prototype label, double lo, double hi) {
    if (d >= lo && d < hi) out.evidence.push_back({std::string(prototype_name(label)) + ":density", d});
  };
  if (p.completeness >= r.completeness_min) out.evidence.push_back({"C8:completeness", p.completeness});
  if (p.star_score >= r.star_min) out.evidence.push_back({"C2:star_score", p.star_score});
  band(Prototype::C7, r.c7_low, r.c7_high);
  band(Prototype::C4, r.c4_low, r.c4_high);
  band(Prototype::C1, r.c1_low, r.c1_high);
  band(Prototype::C3, r.c3_low, r.c3_high);
  const double closeness = p.mean(Feature::ClosenessC);
  const double eigen = p.mean(Feature::EigenvectorC);
  if (closeness >= r.median_closeness && eigen >= r.median_eigenvector && d < r.c5_density_max) {
    out.evidence.push_back({"C5:closeness", closeness});
    out.evidence.push_back({"C5:eigenvector", eigen});
  }
  if (p.size.mean < r.median_size && d < r.c6_density_max && p.mean_triangles >= r.c6_triangles_min &&
      p.mean_triangles <= r.c6_triangles_max) {
    out.evidence.push_back({"C6:size", p.size.mean});
    out.evidence.push_back({"C6:triangles", p.mean_triangles});
  }
  if (out.evidence.empty()) {
    out.evidence.push_back({"unmatched:density", d});
    return out;
  }
  out.label = *parse_prototype(out.evidence.front().rule.substr(0, 2));
  out.confidence = 1.0;
  return out;
}

PrototypeLabel label_ego(const EgoGraph& e, const FeatureVector& f, const LabelRules& rules) {
  return label_cluster(profile_cluster(std::span(&e, 1), std::span(&f, 1)), rules);
}

std::vector<PrototypeLabel> label_clusters(std::span<const EgoGraph> egos, std::span<const FeatureVector> features,
                                           const std::vector<int>& assignments, std::size_t k,
                                           const LabelRules& rules) {
  if (egos.size() != features.size() || egos.size() != assignments.size()) {
    throw Error(ErrorCode::InvalidArgument, "ego, feature and assignment counts differ");
  }
  std::vector<std::vector<std::size_t>> groups(k);
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    const auto c = static_cast<std::size_t>(assignments[i]);
    if (c >= k) throw Error(ErrorCode::InvalidArgument, "cluster index out of range");
    groups[c].push_back(i);
  }
  std::vector<PrototypeLabel> out;
  for (const auto& members : groups) {
    std::vector<EgoGraph> g;
    std::vector<FeatureVector> f;
    for (std::size_t i : members) {
      g.push_back(egos[i]);
      f.push_back(features[i]);
    }
    PrototypeLabel label = label_cluster(profile_cluster(g, f), rules);
    double agree = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) agree += label_ego(g[i], f[i], rules).label == label.label;
    label.confidence = agree / static_cast<double>(g.size());
    out.push_back(std::move(label));
  }
  return out;
}

LabelRules with_corpus_medians(LabelRules rules, std::span<const EgoGraph> egos,
                               std::span<const FeatureVector> features) {
  if (egos.empty() || egos.size() != features.size()) {
    throw Error(ErrorCode::InvalidArgument, "corpus medians need matching, nonempty egos and features");
  }
  std::vector<double> closeness, eigen, size;
  for (std::size_t i = 0; i < egos.size(); ++i) {
    closeness.push_back(features[i][Feature::ClosenessC]);
    eigen.push_back(features[i][Feature::EigenvectorC]);
    size.push_back(static_cast<double>(egos[i].graph.node_count()));
  }
  rules.median_closeness = median_of(closeness);
  rules.median_eigenvector = median_of(eigen);
  rules.median_size = median_of(size);
  return rules;
}

}  // namespace egoproto
