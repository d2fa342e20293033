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

#include "egoproto/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "egoproto/error.hpp"
#include "parallel.hpp"
#include "shortest_paths.hpp"

namespace egoproto {
namespace {

constexpr std::array<std::string_view, kFeatureCount> kNames = {
    "degree_c",    "betweenness_c", "closeness_c",   "eigenvector_c", "global_eff",
    "local_eff",   "nodal_eff",     "global_trans",  "local_trans",   "ego_density",
    "ego_neighbors", "dominant_edges", "ego_weight"};

constexpr int kPowerIterations = 5000;
constexpr double kPowerTolerance = 1e-13;

// Edges among the neighbors of `u`, counted with a scratch marker array.
std::size_t closed_neighbor_pairs(const WeightedGraph& g, NodeIndex u, std::vector<char>& mark) {
  const auto nbs = g.neighbors(u);
  for (const Neighbor& a : nbs) mark[a.node] = 1;
  std::size_t links = 0;
  for (const Neighbor& a : nbs) {
    for (const Neighbor& b : g.neighbors(a.node)) {
      if (b.node > a.node && mark[b.node]) ++links;
    }
  }
  for (const Neighbor& a : nbs) mark[a.node] = 0;
  return links;
}

double pairs(std::size_t k) { return 0.5 * static_cast<double>(k) * static_cast<double>(k - 1); }
}  // namespace

std::string_view feature_name(Feature f) { return kNames[static_cast<std::size_t>(f)]; }

std::optional<Feature> parse_feature(std::string_view name) {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (kNames[i] == name) return static_cast<Feature>(i);
  }
  return std::nullopt;
}

const std::array<Feature, kFeatureCount>& all_features() {
  static const auto all = [] {
    std::array<Feature, kFeatureCount> a{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) a[i] = static_cast<Feature>(i);
    return a;
  }();
  return all;
}

double eigenvector_centrality(const WeightedGraph& g, NodeIndex node) {
  const std::size_t n = g.node_count();
  std::vector<NodeIndex> comp{node};
  std::vector<char> seen(n, 0);
  seen[node] = 1;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    for (const Neighbor& nb : g.neighbors(comp[i])) {
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        comp.push_back(nb.node);
      }
    }
  }
  std::vector<double> x(n, 0.0), y(n, 0.0);
  for (NodeIndex v : comp) x[v] = 1.0;
  // The identity shift keeps bipartite components (stars, paths) from
  // oscillating between two vectors.
  for (int it = 0; it < kPowerIterations; ++it) {
    double peak = 0.0;
    for (NodeIndex v : comp) {
      double acc = x[v];
      for (const Neighbor& nb : g.neighbors(v)) acc += nb.weight * x[nb.node];
      y[v] = acc;
      peak = std::max(peak, acc);
    }
    double change = 0.0;
    for (NodeIndex v : comp) {
      y[v] /= peak;
      change = std::max(change, std::abs(y[v] - x[v]));
      x[v] = y[v];
    }
    if (change < kPowerTolerance) break;
  }
  return x[node];
}

namespace {

struct PathMeasures {
  Centralities centrality;
  double global_efficiency = 0.0;
  double nodal_efficiency = 0.0;
};

// Everything derived from shortest paths, sharing one all-pairs sweep.
PathMeasures path_measures(const EgoGraph& e, const FeatureOptions& opts) {
  const WeightedGraph& g = e.graph;
  const std::size_t n = g.node_count();
  PathMeasures out;
  if (n <= 1) return out;
  const double others = static_cast<double>(n - 1);

  const auto adj = detail::adjacency_of(g);
  const auto summary = detail::all_pairs_summary(adj, e.ego_index);

  detail::PathWorkspace ws;
  ws.run(adj, e.ego_index, false);
  double dist_sum = 0.0;
  double inverse_sum = 0.0;
  std::size_t reached = 0;
  for (NodeIndex v : ws.order()) {
    if (v == e.ego_index) continue;
    dist_sum += ws.distances()[v];
    inverse_sum += 1.0 / ws.distances()[v];
    ++reached;
  }

  Centralities& c = out.centrality;
  const double degree = static_cast<double>(g.degree(e.ego_index));
  if (opts.normalize_centrality) {
    c.degree = degree / others;
    c.betweenness = n > 2 ? summary.focus_betweenness / pairs(n - 1) : 0.0;
    if (reached > 0) {
      // Closeness inside the reachable part, scaled down by the share of
      // nodes actually reachable.
      const double r = static_cast<double>(reached);
      c.closeness = (r / dist_sum) * (r / others);
    }
  } else {
    c.degree = degree;
    c.betweenness = summary.focus_betweenness;
    c.closeness = reached > 0 ? 1.0 / dist_sum : 0.0;
  }
  c.eigenvector = eigenvector_centrality(g, e.ego_index);
  out.global_efficiency = summary.inverse_distance_sum / (static_cast<double>(n) * others);
  out.nodal_efficiency = inverse_sum / others;
  return out;
}

}  // namespace

Centralities centralities(const EgoGraph& e, const FeatureOptions& opts) {
  return path_measures(e, opts).centrality;
}

double global_efficiency(const EgoGraph& e) {
  const std::size_t n = e.graph.node_count();
  if (n < 2) return 0.0;
  detail::PathWorkspace ws;
  const double sum = detail::inverse_distance_sum(detail::adjacency_of(e.graph), ws);
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double local_efficiency(const EgoGraph& e) {
  const WeightedGraph& g = e.graph;
  const std::size_t n = g.node_count();
  if (n == 0) return 0.0;
  std::vector<std::int64_t> local(n, -1);
  detail::PathWorkspace ws;
  detail::Adjacency sub;
  double total = 0.0;
  for (NodeIndex i = 0; i < n; ++i) {
    const auto nbs = g.neighbors(i);
    const std::size_t k = nbs.size();
    if (k < 2) continue;
    for (std::size_t a = 0; a < k; ++a) local[nbs[a].node] = static_cast<std::int64_t>(a);
    sub.offsets.assign(1, 0);
    sub.items.clear();
    for (std::size_t a = 0; a < k; ++a) {
      for (const Neighbor& b : g.neighbors(nbs[a].node)) {
        if (local[b.node] >= 0) sub.items.push_back({static_cast<NodeIndex>(local[b.node]), b.weight});
      }
      sub.offsets.push_back(sub.items.size());
    }
    for (const Neighbor& a : nbs) local[a.node] = -1;
    // An ideal neighborhood (all pairs linked at unit length) has efficiency 1.
    if (!sub.items.empty()) {
      total += detail::inverse_distance_sum(sub, ws) /
               (static_cast<double>(k) * static_cast<double>(k - 1));
    }
  }
  return total / static_cast<double>(n);
}

double nodal_efficiency(const EgoGraph& e) {
  const std::size_t n = e.graph.node_count();
  if (n < 2) return 0.0;
  detail::PathWorkspace ws;
  ws.run(detail::adjacency_of(e.graph), e.ego_index, false);
  double sum = 0.0;
  for (NodeIndex v : ws.order()) {
    if (v != e.ego_index) sum += 1.0 / ws.distances()[v];
  }
  return sum / static_cast<double>(n - 1);
}

std::size_t triangle_count(const WeightedGraph& g) {
  std::vector<char> mark(g.node_count(), 0);
  std::size_t closed = 0;
  for (NodeIndex u = 0; u < g.node_count(); ++u) closed += closed_neighbor_pairs(g, u, mark);
  return closed / 3;
}

Transitivities transitivities(const EgoGraph& e) {
  const WeightedGraph& g = e.graph;
  std::vector<char> mark(g.node_count(), 0);
  double closed = 0.0;
  double triples = 0.0;
  Transitivities t;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    const std::size_t k = g.degree(u);
    if (k < 2) continue;
    const double links = static_cast<double>(closed_neighbor_pairs(g, u, mark));
    closed += links;
    triples += pairs(k);
    if (u == e.ego_index) t.local = links / pairs(k);
  }
  // Each triangle closes one triple at each of its corners, so the sum of
  // closed neighbor pairs is already 3 x triangles.
  t.global = triples > 0.0 ? closed / triples : 0.0;
  return t;
}

ActorMeasures actor_measures(const EgoGraph& e) {
  const WeightedGraph& g = e.graph;
  const std::size_t n = g.node_count();
  ActorMeasures a;
  if (n >= 2) a.density = 2.0 * static_cast<double>(g.edge_count()) / (static_cast<double>(n) * static_cast<double>(n - 1));
  a.neighbors = static_cast<double>(g.degree(e.ego_index));
  if (!g.edges().empty()) {
    double sum = 0.0, peak = 0.0;
    for (const Edge& ed : g.edges()) {
      sum += ed.weight;
      peak = std::max(peak, ed.weight);
    }
    const double deviation = peak - sum / static_cast<double>(g.edge_count());
    // ln(x) is negative or undefined for x <= 1; floor at 0.
    a.dominant_edges = deviation > 1.0 ? std::log(deviation) : 0.0;
    a.weight = sum;
  }
  return a;
}

FeatureVector compute_features(const EgoGraph& e, const FeatureOptions& opts) {
  FeatureVector fv;
  fv.ego = e.ego;
  const PathMeasures p = path_measures(e, opts);
  const Centralities& c = p.centrality;
  const Transitivities t = transitivities(e);
  const ActorMeasures a = actor_measures(e);
  fv[Feature::DegreeC] = c.degree;
  fv[Feature::BetweennessC] = c.betweenness;
  fv[Feature::ClosenessC] = c.closeness;
  fv[Feature::EigenvectorC] = c.eigenvector;
  fv[Feature::GlobalEff] = p.global_efficiency;
  fv[Feature::LocalEff] = local_efficiency(e);
  fv[Feature::NodalEff] = p.nodal_efficiency;
  fv[Feature::GlobalTrans] = t.global;
  fv[Feature::LocalTrans] = t.local;
  fv[Feature::EgoDensity] = a.density;
  fv[Feature::EgoNeighbors] = a.neighbors;
  fv[Feature::DominantEdges] = a.dominant_edges;
  fv[Feature::EgoWeight] = a.weight;
  return fv;
}

std::vector<std::string> FeatureSubset::names() const {
  std::vector<std::string> out;
  out.reserve(members.size());
  for (Feature f : members) out.emplace_back(feature_name(f));
  return out;
}

FeatureSubset standard_subset(std::string_view id) {
  using F = Feature;
  const std::vector<F> centrality{F::DegreeC, F::BetweennessC, F::ClosenessC, F::EigenvectorC};
  const std::vector<F> efficiency{F::GlobalEff, F::LocalEff, F::NodalEff};
  const std::vector<F> transitivity{F::GlobalTrans, F::LocalTrans};
  const std::vector<F> actor{F::EgoDensity, F::EgoNeighbors, F::DominantEdges, F::EgoWeight};
  auto join = [](std::vector<F> a, const std::vector<F>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  if (id == "i") return {"i", centrality};
  if (id == "ii") return {"ii", efficiency};
  if (id == "iii") return {"iii", transitivity};
  if (id == "iv") return {"iv", join(centrality, efficiency)};
  if (id == "v") return {"v", join(centrality, transitivity)};
  if (id == "vi") return {"vi", join(efficiency, transitivity)};
  if (id == "vii") return {"vii", actor};
  if (id == "viii") return all_features_subset();
  throw Error(ErrorCode::InvalidArgument, "unknown feature subset '" + std::string(id) + "'");
}

std::vector<FeatureSubset> standard_subsets() {
  std::vector<FeatureSubset> out;
  for (std::string_view id : {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii"}) {
    out.push_back(standard_subset(id));
  }
  return out;
}

FeatureSubset all_features_subset() {
  const auto& all = all_features();
  return {"viii", std::vector<Feature>(all.begin(), all.end())};
}

FeatureMatrix FeatureMatrix::restrict_to(const FeatureSubset& target) const {
  std::vector<std::size_t> cols;
  for (Feature f : target.members) {
    auto it = std::find(subset.members.begin(), subset.members.end(), f);
    if (it == subset.members.end()) {
      throw Error(ErrorCode::InvalidArgument,
                  "feature " + std::string(feature_name(f)) + " missing from matrix");
    }
    cols.push_back(static_cast<std::size_t>(it - subset.members.begin()));
  }
  return {egos, target, values.select_columns(cols)};
}

namespace {

FeatureMatrix assemble(std::vector<FeatureVector> rows, const FeatureSubset& subset) {
  std::sort(rows.begin(), rows.end(),
            [](const FeatureVector& a, const FeatureVector& b) { return a.ego < b.ego; });
  FeatureMatrix m;
  m.subset = subset;
  m.values = Matrix(rows.size(), subset.members.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    m.egos.push_back(rows[r].ego);
    for (std::size_t c = 0; c < subset.members.size(); ++c) m.values(r, c) = rows[r][subset.members[c]];
  }
  return m;
}

}  // namespace

FeatureMatrix feature_matrix(const WeightedGraph& g, const FeatureSubset& subset, int order,
                             const FeatureOptions& opts, std::span<const std::string> egos) {
  if (g.empty()) throw Error(ErrorCode::EmptyGraph, "feature extraction needs a nonempty graph");
  std::vector<NodeIndex> targets;
  if (egos.empty()) {
    targets.resize(g.node_count());
    std::iota(targets.begin(), targets.end(), NodeIndex{0});
  } else {
    for (const std::string& id : egos) {
      const auto idx = g.find(id);
      if (!idx) throw Error(ErrorCode::UnknownNode, id);
      targets.push_back(*idx);
    }
  }
  std::vector<FeatureVector> rows(targets.size());
  detail::parallel_for(targets.size(), opts.threads, [&](std::size_t i) {
    rows[i] = compute_features(extract_ego(g, targets[i], order), opts);
  });
  return assemble(std::move(rows), subset);
}

FeatureMatrix feature_matrix(std::span<const EgoGraph> egos, const FeatureSubset& subset,
                             const FeatureOptions& opts) {
  std::vector<FeatureVector> rows(egos.size());
  detail::parallel_for(egos.size(), opts.threads, [&](std::size_t i) { rows[i] = compute_features(egos[i], opts); });
  return assemble(std::move(rows), subset);
}

MinMaxScaler MinMaxScaler::fit(const Matrix& m) {
  MinMaxScaler s;
  s.lo.assign(m.cols(), 0.0);
  s.hi.assign(m.cols(), 0.0);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double lo = m.rows() ? m(0, c) : 0.0, hi = lo;
    for (std::size_t r = 1; r < m.rows(); ++r) {
      lo = std::min(lo, m(r, c));
      hi = std::max(hi, m(r, c));
    }
    s.lo[c] = lo;
    s.hi[c] = hi;
  }
  return s;
}

Matrix MinMaxScaler::transform(const Matrix& m, bool clamp) const {
  if (m.cols() != lo.size()) throw Error(ErrorCode::InvalidArgument, "scaler column mismatch");
  Matrix out(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const double range = hi[c] - lo[c];
    for (std::size_t r = 0; r < m.rows(); ++r) {
      double v = range > 0.0 ? (m(r, c) - lo[c]) / range : 0.0;
      if (clamp) v = std::clamp(v, 0.0, 1.0);
      out(r, c) = v;
    }
  }
  return out;
}

FeatureMatrix minmax_normalize(const FeatureMatrix& m) {
  if (m.rows() == 0) throw Error(ErrorCode::InvalidArgument, "cannot normalize an empty matrix");
  FeatureMatrix out = m;
  out.values = MinMaxScaler::fit(m.values).transform(m.values);
  return out;
}

}  // namespace egoproto
