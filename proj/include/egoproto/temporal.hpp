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
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egoproto/events.hpp"
#include "egoproto/graph.hpp"
#include "egoproto/prototypes.hpp"

namespace egoproto {

enum class Granularity { Day, Week, Month };

std::string_view granularity_name(Granularity g);
std::optional<Granularity> parse_granularity(std::string_view name);

struct Window {
  Timestamp start = 0;  // inclusive
  Timestamp end = 0;    // exclusive
  std::string name;     // local calendar date of the start, "YYYY-MM-DD"
  bool weekend = false; // day windows falling on Saturday or Sunday
};

/// Calendar windows over [start, end). The first window opens at the local
/// day, ISO week (Monday) or month boundary at or before `start`; windows
/// follow back to back until one reaches `end`. Local time is UTC shifted
/// by a fixed offset.
struct WindowSpec {
  Granularity granularity = Granularity::Day;
  Timestamp start = 0;
  Timestamp end = 0;
  int utc_offset_minutes = 0;

  /// Throws InvalidArgument unless start < end.
  std::vector<Window> windows() const;
};

/// One graph per window; edge weight is the summed event weight (the event
/// count for timestamped input). Events outside every window are ignored.
/// Windows without events give empty graphs.
std::vector<WeightedGraph> window_graphs(const std::vector<Event>& events, const std::vector<Window>& windows);
std::vector<WeightedGraph> window_graphs(const std::vector<Event>& events, const WindowSpec& spec);

/// Index of the window holding `t`, if any.
std::optional<std::size_t> window_of(const std::vector<Window>& windows, Timestamp t);

struct TemporalAssignment {
  std::string ego;
  std::size_t window = 0;
  std::optional<Prototype> label;  // empty: no edges in the window
  int cluster = -1;                // -1 with no data

  bool no_data() const { return !label.has_value(); }
};

struct EgoOccupancy {
  std::string ego;
  std::map<Prototype, double> share;  // over windows with data; sums to 1
  std::size_t windows_with_data = 0;
  std::size_t windows = 0;
  bool no_data = false;  // every window was empty
};

struct SequenceEntry {
  std::string ego;
  std::size_t window = 0;
  std::string window_name;
  std::optional<Prototype> label;
  bool weekend = false;
};

struct OccupancyReport {
  std::vector<EgoOccupancy> egos;       // sorted by ego
  std::vector<SequenceEntry> sequence;  // by ego, then window
};

/// Throws InvalidArgument for an empty list, a repeated (ego, window) or a
/// window index beyond `windows`.
OccupancyReport occupancy_report(const std::vector<TemporalAssignment>& assignments,
                                 const std::vector<Window>& windows);

}  // namespace egoproto
