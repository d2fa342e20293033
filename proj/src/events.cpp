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
#include "egoproto/events.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "egoproto/error.hpp"

namespace egoproto {
namespace {

constexpr std::array<std::string_view, 3> kFormatNames = {"edge-list", "call-log", "proximity"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
bool read_int(std::string_view s, T& out) {
  if (s.empty()) return false;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && end == s.data() + s.size();
}

std::optional<double> read_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  // from_chars for double is missing from older libstdc++.
  std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size()) return std::nullopt;
  return v;
}

bool is_header(const std::vector<std::string_view>& f, InputFormat format) {
  if (f.size() != 3) return false;
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string third = lower(f[2]);
  switch (format) {
    case InputFormat::EdgeList: return third == "weight";
    case InputFormat::CallLog:
    case InputFormat::Proximity: return third.starts_with("time");
  }
  return false;
}

}  // namespace

std::string_view format_name(InputFormat f) { return kFormatNames[static_cast<std::size_t>(f)]; }

std::optional<InputFormat> parse_format(std::string_view name) {
  for (std::size_t i = 0; i < kFormatNames.size(); ++i) {
    if (kFormatNames[i] == name) return static_cast<InputFormat>(i);
  }
  return std::nullopt;
}

std::optional<Timestamp> parse_iso8601(std::string_view s) {
  using namespace std::chrono;
  s = trim(s);
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0;
  unsigned mo = 0, d = 0;
  if (!read_int(s.substr(0, 4), y) || !read_int(s.substr(5, 2), mo) || !read_int(s.substr(8, 2), d)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok()) return std::nullopt;
  Timestamp t = sys_days{ymd}.time_since_epoch().count() * Timestamp{86400};
  s.remove_prefix(10);
  if (s.empty()) return t;
  if (s.front() != 'T' && s.front() != ' ') return std::nullopt;
  s.remove_prefix(1);

  int hh = 0, mm = 0, ss = 0;
  if (s.size() < 5 || s[2] != ':' || !read_int(s.substr(0, 2), hh) || !read_int(s.substr(3, 2), mm)) {
    return std::nullopt;
  }
  s.remove_prefix(5);
  if (!s.empty() && s.front() == ':') {
    if (s.size() < 3 || !read_int(s.substr(1, 2), ss)) return std::nullopt;
    s.remove_prefix(3);
    if (!s.empty() && (s.front() == '.' || s.front() == ',')) {
      std::size_t i = 1;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == 1) return std::nullopt;
      s.remove_prefix(i);
    }
  }
  // 24:00:00 is not accepted; leap seconds are not either.
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
  t += hh * 3600 + mm * 60 + ss;

  if (s.empty() || s == "Z") return t;
  if ((s.front() != '+' && s.front() != '-') || s.size() != 6 || s[3] != ':') return std::nullopt;
  int oh = 0, om = 0;
  if (!read_int(s.substr(1, 2), oh) || !read_int(s.substr(4, 2), om) || oh > 23 || om > 59) return std::nullopt;
  const int offset = (oh * 60 + om) * 60;
  return s.front() == '+' ? t - offset : t + offset;
}

std::string format_iso8601(Timestamp t, int utc_offset_minutes) {
  using namespace std::chrono;
  const Timestamp local = t + Timestamp{utc_offset_minutes} * 60;
  const auto days = static_cast<int>(local >= 0 ? local / 86400 : -((-local + 86399) / 86400));
  const Timestamp rem = local - Timestamp{days} * 86400;
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[48];
  const int h = static_cast<int>(rem / 3600), m = static_cast<int>(rem % 3600 / 60), s = static_cast<int>(rem % 60);
  int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                        static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), h, m, s);
  if (utc_offset_minutes == 0) {
    std::snprintf(buf + n, sizeof buf - static_cast<std::size_t>(n), "Z");
  } else {
    const int a = std::abs(utc_offset_minutes);
    std::snprintf(buf + n, sizeof buf - static_cast<std::size_t>(n), "%c%02d:%02d", utc_offset_minutes < 0 ? '-' : '+',
                  a / 60, a % 60);
  }
  return buf;
}

IngestResult parse_events(std::string_view text, InputFormat format, const IngestOptions& opts) {
  IngestResult out;
  std::size_t line_no = 0;
  bool first_content = true;
  auto reject = [&](const std::string& why) {
    const std::string msg = "line " + std::to_string(line_no) + ": " + why;
    if (opts.strict) throw Error(ErrorCode::ParseError, msg);
    out.warnings.push_back(msg);
    ++out.skipped;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_fields(line);
    if (first_content) {
      first_content = false;
      if (is_header(f, format)) continue;
    }
    if (f.size() != 3) {
      reject("expected 3 fields, found " + std::to_string(f.size()));
      continue;
    }
    if (f[0].empty() || f[1].empty()) {
      reject("empty node id");
      continue;
    }
    if (f[0] == f[1]) {
      reject("self-loop on " + std::string(f[0]));
      continue;
    }
    Event e{std::string(f[0]), std::string(f[1]), 0, 1.0};
    if (format == InputFormat::EdgeList) {
      const auto w = read_double(f[2]);
      if (!w || !(*w > 0.0) || !std::isfinite(*w)) {
        reject("weight must be a positive number");
        continue;
      }
      e.weight = *w;
    } else {
      const auto t = parse_iso8601(f[2]);
      if (!t) {
        reject("bad timestamp '" + std::string(f[2]) + "'");
        continue;
      }
      e.time = *t;
    }
    out.events.push_back(std::move(e));
  }

  if (format == InputFormat::Proximity) {
    // Proximity scans report a contact from both sides; one (pair, time)
    // counts once.
    for (Event& e : out.events) {
      if (e.b < e.a) std::swap(e.a, e.b);
    }
  }
  std::stable_sort(out.events.begin(), out.events.end(), [](const Event& x, const Event& y) {
    return std::tie(x.time, x.a, x.b) < std::tie(y.time, y.a, y.b);
  });
  if (format == InputFormat::Proximity) {
    const auto before = out.events.size();
    out.events.erase(std::unique(out.events.begin(), out.events.end(),
                                 [](const Event& x, const Event& y) {
                                   return x.time == y.time && x.a == y.a && x.b == y.b;
                                 }),
                     out.events.end());
    out.duplicates = before - out.events.size();
  }
  if (out.events.empty()) throw Error(ErrorCode::EmptyInput, "no usable rows");
  return out;
}

IngestResult ingest_events(const std::string& path, InputFormat format, const IngestOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_events(buf.str(), format, opts);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + std::string(e.what()).substr(to_string(e.code()).size() + 2));
  }
}

std::vector<EdgeRecord> to_edge_records(const std::vector<Event>& events) {
  std::vector<EdgeRecord> out;
  out.reserve(events.size());
  for (const Event& e : events) out.push_back({e.a, e.b, e.weight});
  return out;
}

}  // namespace egoproto
