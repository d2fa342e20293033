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
#include <cstdlib>
#include <filesystem>
#include <random>
#include <set>
#include <sys/wait.h>

#include "doctest.h"
#include "egoproto/compare.hpp"
#include "egoproto/error.hpp"
#include "egoproto/io.hpp"
#include "egoproto/pipeline.hpp"

using namespace egoproto;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("egoproto_pipeline_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Writes a generated corpus and returns a config pointing at it.
RunConfig corpus_config(const fs::path& dir, std::size_t per_label, std::uint64_t seed) {
  const Corpus c = generate_corpus(per_label, seed);
  io::write_file((dir / "edges.csv").string(), io::edges_csv(build_graph(c.edges, c.nodes)));
  io::write_file((dir / "egos.csv").string(), io::ego_list_csv(c));
  RunConfig cfg;
  cfg.input = (dir / "edges.csv").string();
  cfg.egos = (dir / "egos.csv").string();
  cfg.prune = false;
  cfg.seed = seed;
  return cfg;
}

std::string slurp(const fs::path& p) { return io::read_file(p.string()); }

int run_cli(const std::string& args) {
  const int status = std::system((std::string(EGOPROTO_CLI) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("config json round trip") {
    RunConfig c;
    c.input = "/data/calls.csv";
    c.format = InputFormat::CallLog;
    c.subset = "vii";
    c.algorithm = Algorithm::KMeans;
    c.k_selection = KSelection::Fixed;
    c.k = 5;
    c.seed = 42;
    c.temporal = TemporalConfig{Granularity::Week, 1000, 2000000, 60};
    const RunConfig back = RunConfig::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
    CHECK(back.k == 5);
    CHECK(back.temporal->utc_offset_minutes == 60);
  }

  TEST_CASE("config rejects unknown keys and bad values") {
    auto code = [](const std::string& text) {
      try {
        RunConfig::from_json(text).validate();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::Io;
    };
    CHECK(code(R"({"input": "x", "seed": 1, "colour": "red"})") == ErrorCode::InvalidArgument);
    CHECK(code(R"({"input": "x", "seed": 1, "subset": "ix"})") == ErrorCode::InvalidArgument);
    CHECK(code(R"({"input": "x", "seed": 1, "algorithm": "dbscan"})") == ErrorCode::InvalidArgument);
    CHECK(code(R"({"input": "x", "seed": "one"})") == ErrorCode::InvalidArgument);
    CHECK(code(R"({"input": "x"})") == ErrorCode::InvalidArgument);
    CHECK(code(R"({"input": "x", "seed": 1, "temporal": {"granularity": "day"}})") == ErrorCode::InvalidArgument);
    CHECK(code("not json") == ErrorCode::InvalidArgument);
    CHECK(code(R"({"input": "x", "seed": 1})") == ErrorCode::Io);  // valid
  }

  TEST_CASE("relative config paths resolve against the config directory") {
    const RunConfig c = RunConfig::from_json(R"({"input": "edges.csv", "egos": "/abs/egos.csv", "out": "run"})", "/tmp/cfg");
    CHECK(c.input == "/tmp/cfg/edges.csv");
    CHECK(c.egos == "/abs/egos.csv");
    CHECK(c.out_dir == "/tmp/cfg/run");
  }

  TEST_CASE("generated corpus recovers eight prototypes") {
    const auto dir = scratch("roundtrip");
    const RunConfig cfg = corpus_config(dir, 50, 11);
    const RunResult r = run_pipeline(cfg);
    CHECK(r.analysis.clustering.k == 8);
    std::set<Prototype> seen;
    for (const auto& l : r.analysis.labels) seen.insert(l.label);
    for (Prototype p : all_prototypes()) CHECK(seen.count(p) == 1);
    REQUIRE(r.analysis.gap);
    CHECK(r.analysis.gap->chosen_k == 8);
    CHECK(r.artifacts.empty());
    fs::remove_all(dir);
  }

  TEST_CASE("same seed gives byte-identical artifacts, cached or not") {
    const auto dir = scratch("determinism");
    RunConfig cfg = corpus_config(dir, 15, 5);
    cfg.out_dir = (dir / "a").string();
    const RunResult first = run_pipeline(cfg);
    CHECK_FALSE(first.data.from_cache);
    const RunResult cached = run_pipeline(cfg);
    CHECK(cached.data.from_cache);
    RunConfig other = cfg;
    other.out_dir = (dir / "b").string();
    other.cache = false;
    run_pipeline(other);
    REQUIRE(first.artifacts == cached.artifacts);
    for (const auto& name : first.artifacts) {
      CAPTURE(name);
      CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
    }
    CHECK(fs::exists(dir / "a" / "cache"));
    CHECK_FALSE(fs::exists(dir / "b" / "cache"));
    fs::remove_all(dir);
  }

  TEST_CASE("changed input misses the cache") {
    const auto dir = scratch("cache_key");
    RunConfig cfg = corpus_config(dir, 5, 2);
    cfg.out_dir = (dir / "out").string();
    run_pipeline(cfg);
    io::write_file(cfg.input, slurp(cfg.input) + "zz1,zz2,1\n");
    CHECK_FALSE(prepare(cfg).from_cache);
    CHECK(prepare(cfg).from_cache);
    cfg.ego_order = 1;
    CHECK_FALSE(prepare(cfg).from_cache);
    fs::remove_all(dir);
  }

  TEST_CASE("fixed k and the l-method") {
    const auto dir = scratch("kselect");
    RunConfig cfg = corpus_config(dir, 10, 3);
    cfg.k_selection = KSelection::Fixed;
    cfg.k = 4;
    const PreparedData data = prepare(cfg);
    CHECK(analyze(data, cfg).clustering.k == 4);
    cfg.k = 1000;
    CHECK_THROWS_AS(analyze(data, cfg), Error);
    cfg.k_selection = KSelection::LMethod;
    const Analysis a = analyze(data, cfg);
    REQUIRE(a.knee);
    CHECK(a.clustering.k == a.knee->chosen_k);
    cfg.algorithm = Algorithm::KMeans;
    CHECK(analyze(data, cfg).knee);
    fs::remove_all(dir);
  }

  TEST_CASE("unknown egos are rejected") {
    const auto dir = scratch("unknown_ego");
    RunConfig cfg = corpus_config(dir, 2, 1);
    io::write_file(cfg.egos, "ego\nnobody\n");
    CHECK_THROWS_AS(prepare(cfg), Error);
    fs::remove_all(dir);
  }

  TEST_CASE("compare grid matches the feature evaluation") {
    const auto dir = scratch("compare");
    const RunConfig cfg = corpus_config(dir, 10, 4);
    const PreparedData data = prepare(cfg);
    CompareOptions opts;
    opts.subsets = {"v", "vii"};
    opts.algorithms = {Algorithm::KMeans, Algorithm::Hierarchical};
    const auto cells = compare_grid(data, cfg, opts);
    REQUIRE(cells.size() == 4);
    for (const auto& c : cells) {
      CHECK_FALSE(c.labels.empty());
      CHECK(c.ari);
      const FeatureSubset s = standard_subset(c.subset);
      const SubsetScore direct = score_subset(minmax_normalize(data.features.restrict_to(s)), s);
      CHECK(c.entropy == direct.entropy);
      CHECK(c.representation_entropy == direct.representation_entropy);
    }
    const auto csv = compare_csv(cells);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    fs::remove_all(dir);
  }

  TEST_CASE("hierarchical detects every prototype k-means does") {
    int hits = 0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
      const auto dir = scratch("superset");
      const RunConfig cfg = corpus_config(dir, 50, s);
      CompareOptions opts;
      opts.subsets = {"v"};
      opts.algorithms = {Algorithm::KMeans, Algorithm::Hierarchical};
      const auto cells = compare_grid(prepare(cfg), cfg, opts);
      const auto& km = cells[0].labels;
      const auto& hc = cells[1].labels;
      hits += std::includes(hc.begin(), hc.end(), km.begin(), km.end());
    }
    CHECK(hits >= 15);
  }

  TEST_CASE("temporal occupancy ignores event order") {
    const auto dir = scratch("temporal");
    const Corpus c = generate_corpus(4, 9);
    std::mt19937_64 rng(9);
    std::vector<std::string> rows;
    for (const auto& e : c.edges) {
      for (int i = 0; i < 3; ++i) {
        const int day = 1 + static_cast<int>(rng() % 10);
        rows.push_back(e.src + "," + e.dst + ",2026-05-" + (day < 10 ? "0" : "") + std::to_string(day) + "T12:00:00Z");
      }
    }
    auto write = [&](const std::string& name) {
      std::string text = "caller,callee,timestamp\n";
      for (const auto& r : rows) text += r + "\n";
      io::write_file((dir / name).string(), text);
    };
    write("calls.csv");
    std::shuffle(rows.begin(), rows.end(), rng);
    write("shuffled.csv");
    io::write_file((dir / "egos.csv").string(), io::ego_list_csv(c));

    RunConfig cfg;
    cfg.input = (dir / "calls.csv").string();
    cfg.format = InputFormat::CallLog;
    cfg.egos = (dir / "egos.csv").string();
    cfg.prune = false;
    cfg.seed = 9;
    cfg.temporal = TemporalConfig{};
    cfg.out_dir = (dir / "a").string();
    const RunResult a = run_pipeline(cfg);
    REQUIRE(a.temporal);
    CHECK(a.temporal->windows.size() == 10);
    CHECK(a.temporal->assignments.size() == 10 * c.egos.size());
    for (const auto& t : a.temporal->assignments) CHECK(t.no_data() == (t.cluster < 0));
    cfg.input = (dir / "shuffled.csv").string();
    cfg.out_dir = (dir / "b").string();
    run_pipeline(cfg);
    CHECK(slurp(dir / "a" / "occupancy.csv") == slurp(dir / "b" / "occupancy.csv"));
    CHECK(slurp(dir / "a" / "sequence.csv") == slurp(dir / "b" / "sequence.csv"));
    cfg.format = InputFormat::EdgeList;
    CHECK_THROWS_AS(cfg.validate(), Error);
    fs::remove_all(dir);
  }

  TEST_CASE("cli exit codes") {
    const auto dir = scratch("cli");
    const std::string out = (dir / "gen").string();
    CHECK(run_cli("--seed 3 generate --per-label 3 --out " + out) == 0);
    CHECK(fs::exists(dir / "gen" / "config.json"));
    CHECK(run_cli("--config " + out + "/config.json --out " + (dir / "run").string() + " run") == 0);
    CHECK(fs::exists(dir / "run" / "labels.csv"));
    CHECK(run_cli("") == 1);
    CHECK(run_cli("frobnicate") == 1);
    CHECK(run_cli("--seed 3 --out " + out + " run --subset ix -i " + out + "/edges.csv") == 1);
    CHECK(run_cli("--seed 3 generate --noise 0.9 --out " + out) == 1);
    io::write_file((dir / "bad.csv").string(), "a,b,2026-01-01\nbroken\n");
    CHECK(run_cli("--strict --out " + out + " ingest -f call-log -i " + (dir / "bad.csv").string()) == 1);
    CHECK(run_cli("--out " + out + " ingest -f call-log -i " + (dir / "bad.csv").string()) == 0);
    // Three nodes cannot support a fixed k of five: a runtime failure.
    io::write_file((dir / "tiny.csv").string(), "a,b,1\nb,c,1\n");
    CHECK(run_cli("--seed 1 --out " + out + " run --no-prune -k 5 -i " + (dir / "tiny.csv").string()) == 2);
    fs::remove_all(dir);
  }
}
