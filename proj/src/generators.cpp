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
#include <cmath>
#include <cstdio>
#include <numeric>

#include "egoproto/error.hpp"
#include "egoproto/prototypes.hpp"
#include "egoproto/rng.hpp"

namespace egoproto {
namespace {

// Local index 0 is the ego, 1..alters are its neighbors, the rest sit two
// hops out.
class Sketch {
 public:
  Sketch(std::size_t n, std::size_t alters) : n_(n), alters_(alters), adj_(n * n, 0) {
    for (std::size_t a = 1; a <= alters; ++a) link(0, a);
  }

  std::size_t size() const { return n_; }
  std::size_t alters() const { return alters_; }
  bool linked(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }
  void link(std::size_t i, std::size_t j, bool on = true) { adj_[i * n_ + j] = adj_[j * n_ + i] = on; }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) m += linked(i, j);
    }
    return m;
  }

  // Alters are anchored by the ego; a second-order node needs an alter.
  bool anchored(std::size_t i) const {
    if (i <= alters_) return true;
    for (std::size_t a = 1; a <= alters_; ++a) {
      if (linked(i, a)) return true;
    }
    return false;
  }

  // Attach every second-order node to a random alter.
  void hang_second_order(Rng& rng) {
    for (std::size_t s = alters_ + 1; s < n_; ++s) link(s, 1 + rng.index(alters_));
  }

  // Add random non-ego pairs until the density reaches `target`.
  void fill_to(double target, Rng& rng) {
    const auto want = static_cast<std::size_t>(std::llround(target * 0.5 * double(n_) * double(n_ - 1)));
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 1; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (!linked(i, j)) free.push_back({i, j});
      }
    }
    rng.shuffle(free.begin(), free.end());
    std::size_t m = edge_count();
    for (const auto& [i, j] : free) {
      if (m >= want) break;
      link(i, j);
      ++m;
    }
  }

  // Move each edge touching a second-order node, with probability p, onto a
  // random absent pair that also touches one. The edge count and the core
  // around the ego are preserved.
  void rewire_outer(double p, Rng& rng) {
    if (p <= 0.0) return;
    std::vector<std::pair<std::size_t, std::size_t>> present;
    for (std::size_t i = 1; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (linked(i, j) && j > alters_) present.push_back({i, j});
      }
    }
    for (const auto& [i, j] : present) {
      if (!rng.bernoulli(p)) continue;
      std::vector<std::pair<std::size_t, std::size_t>> absent;
      for (std::size_t u = 1; u < n_; ++u) {
        for (std::size_t v = u + 1; v < n_; ++v) {
          if (!linked(u, v) && v > alters_) absent.push_back({u, v});
        }
      }
      if (absent.empty()) return;
      const auto [u, v] = absent[rng.index(absent.size())];
      link(i, j, false);
      if (!anchored(i) || !anchored(j)) {
        link(i, j);
        continue;
      }
      link(u, v);
    }
  }

  WeightedGraph realize(const std::string& prefix, double jitter, Rng& rng) const {
    std::vector<std::string> names(n_);
    names[0] = prefix;
    for (std::size_t i = 1; i < n_; ++i) {
      char buf[16];
      std::snprintf(buf, sizeof buf, i <= alters_ ? "_a%02zu" : "_s%02zu", i <= alters_ ? i : i - alters_);
      names[i] = prefix + buf;
    }
    std::vector<EdgeRecord> recs;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (!linked(i, j)) continue;
        double w = rng.uniform(1.0, 1.5);
        if (jitter > 0.0) w *= 1.0 + rng.uniform(-jitter, jitter);
        recs.push_back({names[i], names[j], w});
      }
    }
    return build_graph(recs, names);
  }

 private:
  std::size_t n_;
  std::size_t alters_;
  std::vector<char> adj_;
};

std::size_t minimum_size(Prototype p) {
  switch (p) {
    case Prototype::C8:
    case Prototype::C2:
    case Prototype::C5: return 3;
    case Prototype::C6: return 5;
    default: return 6;
  }
}

Sketch sketch(Prototype label, std::size_t n, Rng& rng) {
  const std::size_t others = n - 1;
  auto alters_for = [&](double share) {
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(share * double(others))), 2, others - 1);
  };
  switch (label) {
    case Prototype::C8: {
      Sketch s(n, others);
      for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) s.link(i, j);
      }
      return s;
    }
    case Prototype::C2:
      return Sketch(n, others);
    case Prototype::C5: {
      // Alters in linked pairs; an odd one out closes a triangle.
      Sketch s(n, others);
      for (std::size_t a = 1; a + 1 <= others; a += 2) s.link(a, a + 1);
      if (others % 2 == 1 && others >= 3) s.link(others, others - 1);
      return s;
    }
    case Prototype::C6: {
      const std::size_t second = std::max<std::size_t>(1, others / 3);
      Sketch s(n, others - second);
      for (std::size_t k = 0; k < second; ++k) s.link(others - second + 1 + k, 1 + k % s.alters());
      // One linked alter pair: a single triangle through the ego.
      const std::size_t i = 1 + rng.index(s.alters());
      std::size_t j = 1 + rng.index(s.alters() - 1);
      if (j >= i) ++j;
      s.link(i, j);
      return s;
    }
    case Prototype::C3: {
      Sketch s(n, 3);
      s.link(1, 2);
      s.link(1, 3);
      s.link(2, 3);
      s.hang_second_order(rng);
      s.fill_to(0.55, rng);
      return s;
    }
    case Prototype::C1:
    case Prototype::C4:
    case Prototype::C7: {
      const double share = label == Prototype::C1 ? 0.55 : label == Prototype::C4 ? 0.7 : 0.9;
      const double target = label == Prototype::C1 ? 0.63 : label == Prototype::C4 ? 0.75 : 0.87;
      Sketch s(n, alters_for(share));
      s.hang_second_order(rng);
      s.fill_to(target, rng);
      return s;
    }
    case Prototype::Unmatched:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "no generator for the unmatched label");
}

}  // namespace

std::size_t default_generator_size(Prototype p) {
  switch (p) {
    case Prototype::C8: return 8;
    case Prototype::C2: return 8;
    case Prototype::C5: return 7;
    case Prototype::C6: return 7;
    case Prototype::C3: return 8;
    case Prototype::C1: return 12;
    case Prototype::C4: return 14;
    case Prototype::C7: return 16;
    case Prototype::Unmatched: break;
  }
  throw Error(ErrorCode::InvalidArgument, "no generator for the unmatched label");
}

EgoGraph generate_prototype(Prototype label, std::uint64_t seed, const GeneratorParams& params,
                            const std::string& prefix, const LabelRules& rules) {
  const std::size_t n = params.nodes == 0 ? default_generator_size(label) : params.nodes;
  if (n < minimum_size(label) || n > 200) {
    throw Error(ErrorCode::InvalidArgument, "generator size out of range for " + std::string(prototype_name(label)));
  }
  if (!(params.noise >= 0.0 && params.noise < 0.5)) throw Error(ErrorCode::InvalidArgument, "noise must lie in [0, 0.5)");
  Rng rng(seed);
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    Sketch s = sketch(label, n, rng);
    s.rewire_outer(params.noise, rng);
    const WeightedGraph g = s.realize(prefix, params.noise, rng);
    EgoGraph e = extract_ego(g, prefix, 2);
    if (label_ego(e, compute_features(e), rules).label == label) return e;
  }
  throw Error(ErrorCode::GenerationFailed,
              std::string(prototype_name(label)) + " after " + std::to_string(params.max_attempts) + " attempts");
}

Corpus generate_corpus(std::size_t per_label, std::uint64_t seed, double noise, const LabelRules& rules) {
  const auto labels = all_prototypes();
  const std::size_t total = per_label * labels.size();
  // Ids carry no hint of the label.
  std::vector<std::size_t> slot(total);
  std::iota(slot.begin(), slot.end(), 0);
  Rng rng(derive_seed(seed, 0xC0));
  rng.shuffle(slot.begin(), slot.end());

  Corpus corpus;
  GeneratorParams params;
  params.noise = noise;
  for (std::size_t l = 0; l < labels.size(); ++l) {
    for (std::size_t i = 0; i < per_label; ++i) {
      char id[16];
      std::snprintf(id, sizeof id, "e%05zu", slot[l * per_label + i]);
      const EgoGraph e = generate_prototype(labels[l], derive_seed(seed, l * 1000003 + i), params, id, rules);
      for (const auto& ed : e.graph.edges()) corpus.edges.push_back({e.graph.id(ed.u), e.graph.id(ed.v), ed.weight});
      corpus.nodes.insert(corpus.nodes.end(), e.graph.ids().begin(), e.graph.ids().end());
      corpus.egos.push_back({id, labels[l]});
    }
  }
  std::sort(corpus.egos.begin(), corpus.egos.end(), [](const CorpusEgo& a, const CorpusEgo& b) { return a.ego < b.ego; });
  std::sort(corpus.nodes.begin(), corpus.nodes.end());
  return corpus;
}

}  // namespace egoproto
