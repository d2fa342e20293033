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
#include "egoproto/temporal.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <set>

#include "egoproto/error.hpp"

namespace egoproto {
namespace {

constexpr std::array<std::string_view, 3> kGranularityNames = {"day", "week", "month"};

using std::chrono::sys_days;
using std::chrono::year_month_day;

constexpr Timestamp kDay = 86400;

Timestamp floor_div(Timestamp a, Timestamp b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

sys_days local_day(Timestamp t, int offset_minutes) {
  return sys_days{std::chrono::days{floor_div(t + Timestamp{offset_minutes} * 60, kDay)}};
}

Timestamp utc_start(sys_days d, int offset_minutes) {
  return Timestamp{d.time_since_epoch().count()} * kDay - Timestamp{offset_minutes} * 60;
}

std::string date_name(sys_days d) {
  const year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace

std::string_view granularity_name(Granularity g) { return kGranularityNames[static_cast<std::size_t>(g)]; }

std::optional<Granularity> parse_granularity(std::string_view name) {
  for (std::size_t i = 0; i < kGranularityNames.size(); ++i) {
    if (kGranularityNames[i] == name) return static_cast<Granularity>(i);
  }
  return std::nullopt;
}

std::vector<Window> WindowSpec::windows() const {
  using namespace std::chrono;
  if (!(start < end)) throw Error(ErrorCode::InvalidArgument, "window range needs start < end");
  if (utc_offset_minutes <= -24 * 60 || utc_offset_minutes >= 24 * 60) {
    throw Error(ErrorCode::InvalidArgument, "UTC offset must lie within a day");
  }
  sys_days day = local_day(start, utc_offset_minutes);
  if (granularity == Granularity::Week) {
    day -= (weekday{day} - Monday);
  } else if (granularity == Granularity::Month) {
    const year_month_day ymd{day};
    day = sys_days{ymd.year() / ymd.month() / 1};
  }
  std::vector<Window> out;
  while (true) {
    const Timestamp s = utc_start(day, utc_offset_minutes);
    if (s >= end) break;
    sys_days next = day;
    switch (granularity) {
      case Granularity::Day: next = day + days{1}; break;
      case Granularity::Week: next = day + days{7}; break;
      case Granularity::Month: {
        const year_month_day ymd{day};
        next = sys_days{(ymd.year() / ymd.month() + months{1}) / 1};
        break;
      }
    }
    const weekday wd{day};
    const bool weekend = granularity == Granularity::Day && (wd == Saturday || wd == Sunday);
    out.push_back({s, utc_start(next, utc_offset_minutes), date_name(day), weekend});
    day = next;
  }
  return out;
}

std::optional<std::size_t> window_of(const std::vector<Window>& windows, Timestamp t) {
  auto it = std::upper_bound(windows.begin(), windows.end(), t,
                             [](Timestamp x, const Window& w) { return x < w.start; });
  if (it == windows.begin()) return std::nullopt;
  --it;
  if (t >= it->end) return std::nullopt;
  return static_cast<std::size_t>(it - windows.begin());
}

std::vector<WeightedGraph> window_graphs(const std::vector<Event>& events, const std::vector<Window>& windows) {
  std::vector<std::vector<EdgeRecord>> per(windows.size());
  for (const Event& e : events) {
    if (const auto w = window_of(windows, e.time)) per[*w].push_back({e.a, e.b, e.weight});
  }
  std::vector<WeightedGraph> out;
  out.reserve(windows.size());
  for (const auto& recs : per) out.push_back(build_graph(recs));
  return out;
}

std::vector<WeightedGraph> window_graphs(const std::vector<Event>& events, const WindowSpec& spec) {
  return window_graphs(events, spec.windows());
}

OccupancyReport occupancy_report(const std::vector<TemporalAssignment>& assignments,
                                 const std::vector<Window>& windows) {
  if (assignments.empty()) throw Error(ErrorCode::InvalidArgument, "occupancy needs assignments");
  std::vector<const TemporalAssignment*> rows;
  for (const auto& a : assignments) {
    if (a.window >= windows.size()) throw Error(ErrorCode::InvalidArgument, "window index out of range");
    rows.push_back(&a);
  }
  std::sort(rows.begin(), rows.end(), [](const TemporalAssignment* x, const TemporalAssignment* y) {
    return std::tie(x->ego, x->window) < std::tie(y->ego, y->window);
  });

  OccupancyReport out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TemporalAssignment& a = *rows[i];
    if (i > 0 && rows[i - 1]->ego == a.ego && rows[i - 1]->window == a.window) {
      throw Error(ErrorCode::InvalidArgument, "repeated window " + std::to_string(a.window) + " for " + a.ego);
    }
    if (out.egos.empty() || out.egos.back().ego != a.ego) out.egos.push_back({a.ego, {}, 0, 0, false});
    EgoOccupancy& o = out.egos.back();
    ++o.windows;
    if (a.label) {
      ++o.windows_with_data;
      o.share[*a.label] += 1.0;
    }
    const Window& w = windows[a.window];
    out.sequence.push_back({a.ego, a.window, w.name, a.label, w.weekend});
  }
  for (EgoOccupancy& o : out.egos) {
    o.no_data = o.windows_with_data == 0;
    for (auto& [label, share] : o.share) share /= static_cast<double>(o.windows_with_data);
  }
  return out;
}

}  // namespace egoproto
