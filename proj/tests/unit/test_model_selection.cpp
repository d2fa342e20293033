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
#include <cmath>

#include "datasets.hpp"
#include "doctest.h"
#include "egoproto/error.hpp"
#include "egoproto/model_selection.hpp"
#include "egoproto/rng.hpp"

using namespace egoproto;

TEST_SUITE("model_selection") {
  TEST_CASE("dispersion equals half the mean pairwise squared distance per cluster") {
    Rng rng(2);
    Matrix m(12, 3);
    for (double& x : m.data()) x = rng.normal();
    std::vector<int> a(12);
    for (std::size_t i = 0; i < 12; ++i) a[i] = static_cast<int>(i % 3);
    double want = 0.0;
    for (int c = 0; c < 3; ++c) {
      double d = 0.0, nr = 0.0;
      for (std::size_t i = 0; i < 12; ++i) {
        if (a[i] != c) continue;
        nr += 1.0;
        for (std::size_t j = 0; j < 12; ++j) {
          if (a[j] != c) continue;
          for (std::size_t k = 0; k < 3; ++k) d += (m(i, k) - m(j, k)) * (m(i, k) - m(j, k));
        }
      }
      want += d / (2.0 * nr);
    }
    CHECK(dispersion(m, a) == doctest::Approx(want).epsilon(1e-12));
  }

  TEST_CASE("gap statistic picks three for three blobs") {
    int hits = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto data = oracle::three_blobs(s);
      GapOptions opts;
      opts.k_max = 8;
      opts.references = 20;
      const auto rep = gap_statistic(data.points, make_clusterer(Algorithm::KMeans), s, opts);
      hits += rep.chosen_k == 3;
    }
    CHECK(hits >= 19);
  }

  TEST_CASE("gap statistic picks one for a single blob") {
    int hits = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto data = oracle::gaussian_blobs(s, {{0.0, 0.0}}, 60, 0.3);
      GapOptions opts;
      opts.k_max = 6;
      opts.references = 20;
      hits += gap_statistic(data.points, make_clusterer(Algorithm::Hierarchical), s, opts).chosen_k == 1;
    }
    CHECK(hits >= 19);
  }

  TEST_CASE("gap report is internally consistent and reproducible") {
    const auto data = oracle::three_blobs(3);
    GapOptions opts;
    opts.k_max = 6;
    opts.references = 15;
    const auto rep = gap_statistic(data.points, make_clusterer(Algorithm::KMeans), 11, opts);
    REQUIRE(rep.rows.size() == 6);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      CHECK(rep.rows[i].k == i + 1);
      CHECK(rep.rows[i].gap == rep.rows[i].expected_log_wk - rep.rows[i].log_wk);
      CHECK(rep.rows[i].s_k > 0.0);
      CHECK(rep.rows[i].s_k == doctest::Approx(rep.rows[i].sd * std::sqrt(1.0 + 1.0 / 15.0)));
    }
    const auto again = gap_statistic(data.points, make_clusterer(Algorithm::KMeans), 11, opts);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) CHECK(again.rows[i].gap == rep.rows[i].gap);
    opts.se_rule = GapSeRule::Printed;
    const auto printed = gap_statistic(data.points, make_clusterer(Algorithm::KMeans), 11, opts);
    CHECK(printed.rows[1].s_k == doctest::Approx(printed.rows[1].sd * std::sqrt(2.0 / 15.0)));
  }

  TEST_CASE("gap statistic degenerate and invalid inputs") {
    const auto same = Matrix::from_rows({{1, 1}, {1, 1}, {1, 1}});
    const auto rep = gap_statistic(same, make_clusterer(Algorithm::KMeans), 1);
    CHECK(rep.degenerate);
    CHECK(rep.chosen_k == 1);
    GapOptions bad;
    bad.references = 5;
    CHECK_THROWS_AS(gap_statistic(same, make_clusterer(Algorithm::KMeans), 1, bad), Error);
    CHECK_THROWS_AS(make_clusterer(Algorithm::AffinityPropagation), Error);
  }

  TEST_CASE("more references make the choice steadier") {
    // Spread of chosen k over seeds on a weakly structured set.
    auto spread = [](std::size_t b) {
      double sum = 0.0, sq = 0.0;
      for (std::uint64_t s = 0; s < 20; ++s) {
        const auto data = oracle::gaussian_blobs(7, {{0, 0}, {1.2, 0}}, 25, 0.35);
        GapOptions opts;
        opts.k_max = 6;
        opts.references = b;
        const double k = static_cast<double>(
            gap_statistic(data.points, make_clusterer(Algorithm::Hierarchical), s, opts).chosen_k);
        sum += k;
        sq += k * k;
      }
      return sq / 20.0 - (sum / 20.0) * (sum / 20.0);
    };
    CHECK(spread(100) <= spread(10) + 1e-12);
  }

  TEST_CASE("l-method finds an exact breakpoint") {
    std::vector<CurvePoint> curve;
    for (int k = 1; k <= 12; ++k) {
      const double y = k <= 4 ? 100.0 - 20.0 * k : 10.0 - 0.5 * (k - 4);
      curve.push_back({static_cast<double>(k), y});
    }
    const auto rep = l_method(curve);
    CHECK(rep.chosen_k == 4);
    CHECK(rep.total_rmse < 1e-9);
  }

  TEST_CASE("l-method on a straight line takes the smallest split") {
    std::vector<CurvePoint> curve;
    for (int k = 2; k <= 10; ++k) curve.push_back({static_cast<double>(k), 3.0 * k + 1.0});
    CHECK(l_method(curve).chosen_k == 3);
  }

  TEST_CASE("l-method is invariant to affine rescaling of the metric") {
    Rng rng(5);
    std::vector<CurvePoint> curve, scaled;
    for (int k = 2; k <= 15; ++k) {
      const double y = 10.0 / k + rng.uniform(0.0, 0.2);
      curve.push_back({static_cast<double>(k), y});
      scaled.push_back({static_cast<double>(k), -4.0 + 250.0 * y});
    }
    CHECK(l_method(curve).chosen_k == l_method(scaled).chosen_k);
    CHECK_THROWS_AS(l_method(std::vector<CurvePoint>(curve.begin(), curve.begin() + 3)), Error);
  }

  TEST_CASE("l-method on the merge heights of three blobs") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto data = oracle::three_blobs(s);
      const auto curve = merge_height_curve(ward_dendrogram(data.points), 20);
      CHECK(l_method(curve).chosen_k == 3);
    }
  }

  TEST_CASE("silhouette of two far pairs approaches one") {
    const double spread = 0.01;
    const auto m = Matrix::from_rows({{0, 0}, {spread, 0}, {100 * spread, 0}, {101 * spread, 0}});
    CHECK(silhouette(m, {0, 0, 1, 1}) >= 0.98);
    const auto far = Matrix::from_rows({{0, 0}, {spread, 0}, {1000, 0}, {1000 + spread, 0}});
    CHECK(silhouette(far, {0, 0, 1, 1}) >= 0.99);
  }

  TEST_CASE("silhouette degenerate cases") {
    const auto same = Matrix::from_rows({{1, 1}, {1, 1}, {1, 1}, {1, 1}});
    CHECK(silhouette(same, {0, 0, 1, 1}) == 0.0);
    CHECK_THROWS_AS(silhouette(same, {0, 0, 0, 0}), Error);
    // Singletons score 0.
    const auto m = Matrix::from_rows({{0, 0}, {0.1, 0}, {5, 5}});
    CHECK(silhouette_samples(m, {0, 0, 1})[2] == 0.0);
  }

  TEST_CASE("silhouette symmetry and isometry") {
    const auto data = oracle::three_blobs(4, 10, 0.3);
    const double s = silhouette(data.points, data.labels);
    std::vector<int> perm = data.labels;
    for (int& x : perm) x = (x + 1) % 3;
    CHECK(silhouette(data.points, perm) == doctest::Approx(s).epsilon(1e-12));
    Matrix moved = data.points;
    for (std::size_t i = 0; i < moved.rows(); ++i) {
      const double x = moved(i, 0), y = moved(i, 1);
      moved(i, 0) = 0.6 * x - 0.8 * y + 3.0;
      moved(i, 1) = 0.8 * x + 0.6 * y - 1.0;
    }
    CHECK(silhouette(moved, data.labels) == doctest::Approx(s).epsilon(1e-9));
    CHECK(s >= -1.0);
    CHECK(s <= 1.0);
  }

  TEST_CASE("adjusted rand index") {
    CHECK(adjusted_rand_index({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
    // Known value from the standard contingency formula.
    CHECK(adjusted_rand_index({0, 0, 0, 1, 1, 1}, {0, 0, 1, 1, 2, 2}) == doctest::Approx(0.24242424242));
  }
}
