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
// Acceptance suite. Prints one PASS/FAIL line per criterion and exits 1
// when any selected criterion fails. "--only N" runs a single criterion.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "brute_force.hpp"
#include "datasets.hpp"
#include "egoproto/compare.hpp"
#include "egoproto/io.hpp"
#include "egoproto/pipeline.hpp"
#include "egoproto/rng.hpp"

using namespace egoproto;
namespace fs = std::filesystem;

namespace {

// Pinned thresholds.
constexpr double kOracleTolerance = 1e-9;
constexpr double kOracleSeconds = 60.0;
constexpr std::size_t kOracleGraphs = 200;
constexpr std::size_t kOracleMaxNodes = 12;

constexpr std::size_t kCorpusPerLabel = 50;
constexpr double kCorpusNoise = 0.05;
constexpr std::uint64_t kCorpusSeeds = 10;
constexpr double kMinAri = 0.8;
constexpr double kRoundTripSeconds = 300.0;
constexpr double kMinSilhouette = 0.38;

constexpr std::uint64_t kGapSeeds = 20;
constexpr int kGapMinHits = 19;
constexpr double kGapSeconds = 120.0;

constexpr std::size_t kCapK = 8;
constexpr std::uint64_t kCapSeed = 1;

constexpr std::uint64_t kSubsetSeeds = 20;
constexpr int kSubsetMinHits = 15;

constexpr std::size_t kDisparityGraphs = 50;
constexpr double kDisparityAlpha = 0.05;

constexpr std::size_t kScaleNodes = 4357;
constexpr std::size_t kScaleEdges = 259110;
constexpr double kScaleSeconds = 600.0;
constexpr double kScaleMemoryBytes = 4.0 * 1024 * 1024 * 1024;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "egoproto_acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunConfig corpus_config(const fs::path& dir, std::uint64_t seed) {
  const Corpus c = generate_corpus(kCorpusPerLabel, seed, kCorpusNoise);
  io::write_file((dir / "edges.csv").string(), io::edges_csv(build_graph(c.edges, c.nodes)));
  io::write_file((dir / "egos.csv").string(), io::ego_list_csv(c));
  RunConfig cfg;
  cfg.input = (dir / "edges.csv").string();
  cfg.egos = (dir / "egos.csv").string();
  cfg.prune = false;  // generated egos are already sparse backbones
  cfg.seed = seed;
  cfg.subset = "v";
  cfg.algorithm = Algorithm::Hierarchical;
  cfg.k_selection = KSelection::Gap;
  return cfg;
}

std::vector<int> truth_of(const PreparedData& d) {
  std::vector<int> t;
  for (const auto& l : d.truth) t.push_back(static_cast<int>(l.value()));
  return t;
}

Outcome feature_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::size_t egos = 0;
  std::string where;
  for (std::uint64_t s = 0; s < kOracleGraphs; ++s) {
    Rng rng(derive_seed(1, s));
    const std::size_t n = 2 + rng.index(kOracleMaxNodes - 1);
    const double p = rng.uniform(0.15, 0.8);
    const auto g = oracle::random_graph(derive_seed(2, s), n, p, static_cast<int>(s % 3));
    for (NodeIndex v = 0; v < n; ++v) {
      const auto got = compute_features(make_ego_graph(g, g.id(v), 2));
      const auto want = oracle::features(g, v);
      ++egos;
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const double err = std::abs(got.values[f] - want[f]);
        if (!(err <= worst)) {
          worst = std::isnan(err) ? INFINITY : err;
          where = fmt("graph %llu node %zu %s", static_cast<unsigned long long>(s), v,
                      std::string(feature_name(static_cast<Feature>(f))).c_str());
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= kOracleTolerance && secs < kOracleSeconds,
          fmt("%zu egos on %zu graphs, max error %.2e at %s (tol %.0e), %.1f s (limit %.0f)", egos, kOracleGraphs,
              worst, where.c_str(), kOracleTolerance, secs, kOracleSeconds)};
}

struct RoundTrip {
  std::size_t k = 0;
  double ari = 0.0;
  double silhouette = 0.0;
};

std::vector<RoundTrip> round_trips(double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<RoundTrip> out;
  for (std::uint64_t s = 1; s <= kCorpusSeeds; ++s) {
    const auto dir = scratch(fmt("corpus%llu", static_cast<unsigned long long>(s)));
    const RunConfig cfg = corpus_config(dir, s);
    const PreparedData data = prepare(cfg);
    const Analysis a = analyze(data, cfg);
    out.push_back({a.clustering.k, adjusted_rand_index(truth_of(data), a.clustering.assignments),
                   a.silhouette.value_or(-1.0)});
    fs::remove_all(dir);
  }
  secs = seconds_since(t0);
  return out;
}

Outcome prototype_round_trip() {
  double secs = 0.0;
  const auto runs = round_trips(secs);
  std::size_t ok = 0, k_lo = 99, k_hi = 0;
  double ari_min = 1.0;
  for (const auto& r : runs) {
    ok += (r.k + 1 >= kCapK && r.k <= kCapK + 1 && r.ari >= kMinAri);
    k_lo = std::min(k_lo, r.k);
    k_hi = std::max(k_hi, r.k);
    ari_min = std::min(ari_min, r.ari);
  }
  return {ok == runs.size() && secs < kRoundTripSeconds,
          fmt("%zu/%zu seeds with k in [7, 9] and ARI >= %.1f; k in [%zu, %zu], min ARI %.3f, %.1f s (limit %.0f)", ok,
              runs.size(), kMinAri, k_lo, k_hi, ari_min, secs, kRoundTripSeconds)};
}

Outcome silhouette_band() {
  double secs = 0.0;
  const auto runs = round_trips(secs);
  double lo = 1.0, hi = -1.0;
  for (const auto& r : runs) {
    lo = std::min(lo, r.silhouette);
    hi = std::max(hi, r.silhouette);
  }
  return {lo >= kMinSilhouette, fmt("silhouette over %zu seeds in [%.3f, %.3f] (need >= %.2f)", runs.size(), lo, hi,
                                     kMinSilhouette)};
}

Outcome gap_sanity() {
  const auto t0 = std::chrono::steady_clock::now();
  GapOptions opts;
  opts.k_max = 8;
  opts.references = 50;
  int three = 0, one = 0;
  for (std::uint64_t s = 0; s < kGapSeeds; ++s) {
    const auto blobs = oracle::three_blobs(derive_seed(3, s));
    three += gap_statistic(blobs.points, make_clusterer(Algorithm::KMeans), s, opts).chosen_k == 3;
    const auto single = oracle::gaussian_blobs(derive_seed(4, s), {{0.0, 0.0}}, 90, 0.3);
    one += gap_statistic(single.points, make_clusterer(Algorithm::KMeans), s, opts).chosen_k == 1;
  }
  const double secs = seconds_since(t0);
  return {three >= kGapMinHits && one >= kGapMinHits && secs < kGapSeconds,
          fmt("three blobs -> 3 in %d/%llu, one blob -> 1 in %d/%llu (need %d), %.1f s (limit %.0f)", three,
              static_cast<unsigned long long>(kGapSeeds), one, static_cast<unsigned long long>(kGapSeeds),
              kGapMinHits, secs, kGapSeconds)};
}

Outcome cluster_cap() {
  const auto dir = scratch("cap");
  const RunConfig cfg = corpus_config(dir, kCapSeed);
  const PreparedData data = prepare(cfg);
  const auto cells = compare_grid(data, cfg);
  std::string over;
  std::size_t worst = 0;
  for (const auto& c : cells) {
    worst = std::max(worst, c.k);
    if (c.k > kCapK) over += fmt(" %s/%s=%zu", c.subset.c_str(), std::string(algorithm_name(c.algorithm)).c_str(), c.k);
  }
  fs::remove_all(dir);
  return {over.empty(), fmt("%zu cells, max k %zu (cap %zu)%s%s", cells.size(), worst, kCapK,
                            over.empty() ? "" : "; over cap:", over.c_str())};
}

Outcome subset_ordering() {
  int hits = 0, entropy_hits = 0, hr_hits = 0;
  const FeatureSubset separating{"separating", {Feature::DegreeC, Feature::BetweennessC, Feature::ClosenessC,
                                                Feature::EigenvectorC}};
  for (std::uint64_t s = 0; s < kSubsetSeeds; ++s) {
    const FeatureMatrix m = oracle::planted_features(derive_seed(6, s));
    const FeatureMatrix all = minmax_normalize(m);
    const SubsetScore all_score = score_subset(all, all.subset);
    const SubsetScore sep_score = score_subset(all.restrict_to(separating), separating);
    const FeatureSubset chosen = fsfs_select(all);
    const SubsetScore fsfs_score = score_subset(all.restrict_to(chosen), chosen);
    // Representation entropy is bounded by ln(d), so the all-features value
    // is rescaled to the size of the selected set.
    const double scaled_all = all_score.representation_entropy * std::log(static_cast<double>(chosen.members.size())) /
                              std::log(static_cast<double>(kFeatureCount));
    const bool e_ok = sep_score.entropy < all_score.entropy;
    const bool hr_ok = fsfs_score.representation_entropy >= scaled_all;
    entropy_hits += e_ok;
    hr_hits += hr_ok;
    hits += e_ok && hr_ok;
  }
  return {hits >= kSubsetMinHits,
          fmt("%d/%llu seeds (need %d); entropy ordering %d, representation entropy %d", hits,
              static_cast<unsigned long long>(kSubsetSeeds), kSubsetMinHits, entropy_hits, hr_hits)};
}

Outcome disparity() {
  std::size_t kept = 0, dropped = 0, pendants = 0, bad = 0;
  for (std::uint64_t s = 0; s < kDisparityGraphs; ++s) {
    // Heavy-tailed weights, so some edges are significant and some are not.
    Rng rng(derive_seed(7, s));
    const std::size_t n = 20 + rng.index(41);
    const double p = rng.uniform(0.05, 0.3);
    std::vector<EdgeRecord> recs;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng.bernoulli(p)) recs.push_back({fmt("v%zu", i), fmt("v%zu", j), std::exp(rng.normal(0.0, 1.5))});
      }
    }
    if (recs.empty()) continue;
    const auto g = build_graph(recs);
    const auto b = disparity_filter(g, {kDisparityAlpha});
    // Alpha recomputed from the original graph, independently of the filter.
    auto alpha = [&](NodeIndex i, double w) {
      double strength = 0.0;
      for (const auto& nb : g.neighbors(i)) strength += nb.weight;
      const double k = static_cast<double>(g.neighbors(i).size());
      return k <= 1.0 ? 1.0 : std::pow(1.0 - w / strength, k - 1.0);
    };
    for (const Edge& e : g.edges()) {
      const bool pendant = g.degree(e.u) == 1 || g.degree(e.v) == 1;
      const bool in_b = b.weight(e.u, e.v).has_value();
      if (pendant) {
        ++pendants;
        bad += !in_b;
      } else if (in_b) {
        ++kept;
        bad += !(alpha(e.u, e.weight) < kDisparityAlpha || alpha(e.v, e.weight) < kDisparityAlpha);
      } else {
        ++dropped;
      }
    }
  }
  return {bad == 0 && kept > 0, fmt("%zu graphs: %zu non-pendant edges kept, %zu dropped, %zu pendant edges, %zu violations",
                                   kDisparityGraphs, kept, dropped, pendants, bad)};
}

double peak_rss_bytes() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return static_cast<double>(u.ru_maxrss) * 1024.0;
}

Outcome scale() {
  const auto dir = scratch("scale");
  const auto t0 = std::chrono::steady_clock::now();
  const auto edges = oracle::community_graph(8, kScaleNodes, kScaleEdges, 60, 0.8);
  io::write_file((dir / "edges.csv").string(), io::edges_csv(build_graph(edges)));
  RunConfig cfg;
  cfg.input = (dir / "edges.csv").string();
  cfg.seed = 8;
  cfg.out_dir = (dir / "out").string();
  const RunResult r = run_pipeline(cfg);
  const double secs = seconds_since(t0);
  const double rss = peak_rss_bytes();
  fs::remove_all(dir);
  return {secs < kScaleSeconds && rss < kScaleMemoryBytes,
          fmt("%zu nodes, %zu edges (%zu after pruning), order-%d egos, k = %zu, %.1f s (limit %.0f), peak RSS %.0f MB "
              "(limit %.0f)",
              r.data.graph.node_count(), kScaleEdges, r.data.graph.edge_count(), cfg.ego_order, r.analysis.clustering.k,
              secs, kScaleSeconds, rss / 1048576.0, kScaleMemoryBytes / 1048576.0)};
}

Outcome determinism() {
  const auto dir = scratch("determinism");
  RunConfig cfg = corpus_config(dir, 9);
  std::size_t compared = 0, differing = 0;
  for (Algorithm a : {Algorithm::KMeans, Algorithm::Hierarchical, Algorithm::AffinityPropagation}) {
    cfg.algorithm = a;
    cfg.out_dir = (dir / "a").string();
    const RunResult first = run_pipeline(cfg);
    cfg.out_dir = (dir / "b").string();
    cfg.cache = false;
    run_pipeline(cfg);
    cfg.cache = true;
    for (const auto& name : first.artifacts) {
      ++compared;
      differing += io::read_file((dir / "a" / name).string()) != io::read_file((dir / "b" / name).string());
    }
  }
  fs::remove_all(dir);
  return {compared > 0 && differing == 0, fmt("%zu artifact pairs over three algorithms, %zu differ", compared, differing)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"egoproto acceptance suite"};
  int only = 0;
  app.add_option("--only", only, "Run one criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"feature oracles", feature_oracles}, {"prototype round trip", prototype_round_trip},
      {"silhouette band", silhouette_band},  {"gap statistic sanity", gap_sanity},
      {"cluster count cap", cluster_cap},    {"subset quality ordering", subset_ordering},
      {"disparity filter", disparity},       {"scale", scale},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
