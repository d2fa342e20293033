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
#include <filesystem>

#include "doctest.h"
#include "egoproto/error.hpp"
#include "egoproto/io.hpp"
#include "json.hpp"

using namespace egoproto;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("edge lists round trip exactly") {
    const auto g = build_graph(std::vector<EdgeRecord>{{"a", "b", 0.1}, {"b", "c", 1.0 / 3.0}, {"a", "c", 1e-7}});
    const auto back = build_graph(io::parse_edges_csv(io::edges_csv(g)));
    CHECK(back == g);
  }

  TEST_CASE("numbers use the shortest stable form") {
    CHECK(io::format_number(0.5) == "0.5");
    CHECK(io::format_number(2.0) == "2");
    CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(std::stod(io::format_number(1.0 / 3.0, 17)) == 1.0 / 3.0);
  }

  TEST_CASE("feature tables round trip and recognise subsets") {
    FeatureMatrix m;
    m.egos = {"a", "b"};
    m.subset = standard_subset("v");
    m.values = Matrix(2, m.subset.members.size());
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) m.values(r, c) = 0.1 * static_cast<double>(r + 1) / static_cast<double>(c + 3);
    }
    const auto back = io::parse_features_csv(io::features_csv(m, 17));
    CHECK(back.subset == m.subset);
    CHECK(back.egos == m.egos);
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) CHECK(back.values(r, c) == m.values(r, c));
    }
    CHECK(io::parse_features_csv("ego,ego_density\nx,0.5\n").subset.id == "custom");
    CHECK(code_of([] { io::parse_features_csv("ego,bogus\nx,1\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { io::parse_features_csv("ego,ego_density\nx\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { io::parse_features_csv("ego,ego_density\n"); }) == ErrorCode::EmptyInput);
  }

  TEST_CASE("assignments round trip") {
    const std::vector<std::string> egos{"a", "b", "c"};
    const std::vector<int> a{0, 2, 1};
    const auto rows = io::parse_assignments_csv(io::assignments_csv(egos, a));
    REQUIRE(rows.size() == 3);
    CHECK(rows[1] == std::pair<std::string, int>{"b", 2});
    CHECK(code_of([] { io::parse_assignments_csv("ego,cluster\na,-1\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { io::parse_assignments_csv("ego,cluster\na,1.5\n"); }) == ErrorCode::ParseError);
  }

  TEST_CASE("ego lists take optional labels") {
    const auto rows = io::parse_ego_list_csv("ego,label\na,C3\nb\nc,\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].label == Prototype::C3);
    CHECK_FALSE(rows[1].label);
    CHECK_FALSE(rows[2].label);
    CHECK(code_of([] { io::parse_ego_list_csv("ego,label\na,C9\n"); }) == ErrorCode::ParseError);
  }

  TEST_CASE("labels list their evidence") {
    PrototypeLabel l;
    l.label = Prototype::C8;
    l.confidence = 1.0;
    l.evidence = {{"C8:completeness", 1.0}};
    CHECK(io::labels_csv({l}) == "cluster,label,confidence,evidence\n0,C8,1,C8:completeness=1\n");
  }

  TEST_CASE("json reports parse back") {
    ClusteringResult r;
    r.algorithm = Algorithm::KMeans;
    r.k = 2;
    r.assignments = {0, 1, 1};
    r.centers = Matrix(2, 1);
    const auto j = nlohmann::json::parse(io::clustering_json(r, 0.25));
    CHECK(j["algorithm"] == "kmeans");
    CHECK(j["k"] == 2);
    CHECK(j["silhouette"] == 0.25);
    CHECK(j["cluster_sizes"] == nlohmann::json::array({1, 2}));
    CHECK(nlohmann::json::parse(io::clustering_json(r, std::nullopt))["silhouette"].is_null());
    SubsetScore s{standard_subset("i"), 0.5, 0.75};
    const auto sj = nlohmann::json::parse(io::score_json(s));
    CHECK(sj["representation_entropy"] == 0.75);
  }

  TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "egoproto_io_test";
    std::filesystem::remove_all(dir);
    const std::string path = (dir / "nested" / "x.txt").string();
    io::write_file(path, "hello\n");
    CHECK(io::read_file(path) == "hello\n");
    std::filesystem::remove_all(dir);
    CHECK(code_of([&] { io::read_file(path); }) == ErrorCode::Io);
  }
}
