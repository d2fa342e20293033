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
#include "egoproto/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "egoproto/error.hpp"
#include "json.hpp"

namespace egoproto::io {
namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    pos = nl + 1;
  }
  return out;
}

std::vector<std::string> fields_of(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

// Non-finite doubles have no JSON form; they are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::Io, "short write to " + path);
}

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string edges_csv(const WeightedGraph& g) {
  std::string out = "src,dst,weight\n";
  for (const Edge& e : g.edges()) out += g.id(e.u) + "," + g.id(e.v) + "," + format_number(e.weight, 17) + "\n";
  return out;
}

std::vector<EdgeRecord> parse_edges_csv(std::string_view text, bool strict) {
  return to_edge_records(parse_events(text, InputFormat::EdgeList, {.strict = strict}).events);
}

std::string events_csv(const std::vector<Event>& events, InputFormat format) {
  std::string out = format == InputFormat::EdgeList ? "src,dst,weight\n" : "a,b,timestamp\n";
  for (const Event& e : events) {
    out += e.a + "," + e.b + ",";
    out += format == InputFormat::EdgeList ? format_number(e.weight, 17) : format_iso8601(e.time);
    out += "\n";
  }
  return out;
}

std::string features_csv(const FeatureMatrix& m, int digits) {
  std::string out = "ego";
  for (const auto& name : m.subset.names()) out += "," + name;
  out += "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += m.egos[r];
    for (std::size_t c = 0; c < m.cols(); ++c) out += "," + format_number(m.values(r, c), digits);
    out += "\n";
  }
  return out;
}

FeatureMatrix parse_features_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw Error(ErrorCode::EmptyInput, "feature table is empty");
  const auto header = fields_of(lines[0]);
  if (header.empty() || header[0] != "ego") throw Error(ErrorCode::ParseError, "line 1: expected 'ego' column first");
  FeatureMatrix m;
  m.subset.id = "custom";
  for (std::size_t c = 1; c < header.size(); ++c) {
    const auto f = parse_feature(header[c]);
    if (!f) throw Error(ErrorCode::ParseError, "line 1: unknown feature '" + header[c] + "'");
    m.subset.members.push_back(*f);
  }
  for (const auto& s : standard_subsets()) {
    if (s.members == m.subset.members) m.subset.id = s.id;
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = fields_of(lines[i]);
    if (f.size() != header.size()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(i + 1) + ": expected " +
                                             std::to_string(header.size()) + " fields");
    }
    m.egos.push_back(f[0]);
    std::vector<double> row;
    for (std::size_t c = 1; c < f.size(); ++c) row.push_back(to_double(f[c], i + 1));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "feature table has no rows");
  m.values = Matrix::from_rows(rows);
  return m;
}

std::string assignments_csv(const std::vector<std::string>& egos, const std::vector<int>& assignments) {
  if (egos.size() != assignments.size()) throw Error(ErrorCode::InvalidArgument, "ego and assignment counts differ");
  std::string out = "ego,cluster\n";
  for (std::size_t i = 0; i < egos.size(); ++i) out += egos[i] + "," + std::to_string(assignments[i]) + "\n";
  return out;
}

std::vector<std::pair<std::string, int>> parse_assignments_csv(std::string_view text) {
  std::vector<std::pair<std::string, int>> out;
  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty() || (i == 0 && lines[i] == "ego,cluster")) continue;
    const auto f = fields_of(lines[i]);
    const double c = f.size() == 2 ? to_double(f[1], i + 1) : -1.0;
    if (f.size() != 2 || c < 0 || c != std::floor(c)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(i + 1) + ": expected ego,cluster");
    }
    out.emplace_back(f[0], static_cast<int>(c));
  }
  if (out.empty()) throw Error(ErrorCode::EmptyInput, "assignment table has no rows");
  return out;
}

std::string labels_csv(const std::vector<PrototypeLabel>& labels) {
  std::string out = "cluster,label,confidence,evidence\n";
  for (std::size_t c = 0; c < labels.size(); ++c) {
    const auto& l = labels[c];
    out += std::to_string(c) + "," + std::string(prototype_name(l.label)) + "," + format_number(l.confidence) + ",";
    for (std::size_t i = 0; i < l.evidence.size(); ++i) {
      if (i > 0) out += ";";
      out += l.evidence[i].rule + "=" + format_number(l.evidence[i].value);
    }
    out += "\n";
  }
  return out;
}

std::string ego_list_csv(const Corpus& corpus) {
  std::string out = "ego,label\n";
  for (const auto& e : corpus.egos) out += e.ego + "," + std::string(prototype_name(e.label)) + "\n";
  return out;
}

std::vector<EgoListEntry> parse_ego_list_csv(std::string_view text) {
  std::vector<EgoListEntry> out;
  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty() || lines[i].front() == '#') continue;
    const auto f = fields_of(lines[i]);
    if (i == 0 && f[0] == "ego") continue;
    if (f.size() > 2 || f[0].empty()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(i + 1) + ": expected ego[,label]");
    }
    EgoListEntry e{f[0], std::nullopt};
    if (f.size() == 2 && !f[1].empty()) {
      e.label = parse_prototype(f[1]);
      if (!e.label) throw Error(ErrorCode::ParseError, "line " + std::to_string(i + 1) + ": unknown label '" + f[1] + "'");
    }
    out.push_back(std::move(e));
  }
  if (out.empty()) throw Error(ErrorCode::EmptyInput, "ego list has no rows");
  return out;
}

std::string occupancy_csv(const OccupancyReport& r) {
  std::string out = "ego,label,share\n";
  for (const auto& o : r.egos) {
    if (o.no_data) {
      out += o.ego + ",no-data,\n";
      continue;
    }
    for (const auto& [label, share] : o.share) {
      out += o.ego + "," + std::string(prototype_name(label)) + "," + format_number(share) + "\n";
    }
  }
  return out;
}

std::string sequence_csv(const OccupancyReport& r) {
  std::string out = "ego,window,date,label,weekend\n";
  for (const auto& s : r.sequence) {
    out += s.ego + "," + std::to_string(s.window) + "," + s.window_name + "," +
           (s.label ? std::string(prototype_name(*s.label)) : std::string("no-data")) + "," +
           (s.weekend ? "1" : "0") + "\n";
  }
  return out;
}

std::string gap_json(const GapReport& r) {
  Json j;
  j["chosen_k"] = r.chosen_k;
  j["references"] = r.references;
  j["degenerate"] = r.degenerate;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"k", row.k},
                    {"log_wk", number(row.log_wk)},
                    {"expected_log_wk", number(row.expected_log_wk)},
                    {"gap", number(row.gap)},
                    {"sd", number(row.sd)},
                    {"s_k", number(row.s_k)}});
  }
  j["rows"] = std::move(rows);
  return dump(j);
}

std::string knee_json(const KneeReport& r) {
  Json j;
  j["chosen_k"] = r.chosen_k;
  j["fit_rmse_left"] = number(r.fit_rmse_left);
  j["fit_rmse_right"] = number(r.fit_rmse_right);
  j["total_rmse"] = number(r.total_rmse);
  Json curve = Json::array();
  for (const auto& p : r.curve) curve.push_back({{"k", p.k}, {"value", number(p.value)}});
  j["curve"] = std::move(curve);
  return dump(j);
}

std::string clustering_json(const ClusteringResult& r, std::optional<double> silhouette) {
  Json j;
  j["algorithm"] = algorithm_name(r.algorithm);
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["inertia"] = number(r.inertia);
  j["silhouette"] = silhouette ? number(*silhouette) : Json(nullptr);
  std::vector<std::size_t> sizes(r.k, 0);
  for (int a : r.assignments) ++sizes[static_cast<std::size_t>(a)];
  j["cluster_sizes"] = sizes;
  if (!r.exemplars.empty()) j["exemplars"] = r.exemplars;
  return dump(j);
}

std::string score_json(const SubsetScore& s) {
  Json j;
  j["subset"] = s.subset.id;
  j["features"] = s.subset.names();
  j["entropy"] = number(s.entropy);
  j["representation_entropy"] = number(s.representation_entropy);
  return dump(j);
}

}  // namespace egoproto::io
