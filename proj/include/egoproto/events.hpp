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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egoproto/graph.hpp"

namespace egoproto {

enum class InputFormat {
  EdgeList,   // src,dst,weight
  CallLog,    // caller,callee,timestamp
  Proximity,  // a,b,timestamp
};

std::string_view format_name(InputFormat f);
std::optional<InputFormat> parse_format(std::string_view name);

/// Seconds since 1970-01-01T00:00:00Z.
using Timestamp = std::int64_t;

/// ISO 8601 date or date-time: "YYYY-MM-DD", optionally followed by 'T' or
/// a space and "hh:mm[:ss[.fff]]", optionally ending in 'Z' or "+hh:mm" /
/// "-hh:mm". Without a zone the time is read as UTC. Fractions of a second
/// are dropped.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// "YYYY-MM-DDThh:mm:ssZ", or with the given fixed offset applied and
/// written out.
std::string format_iso8601(Timestamp t, int utc_offset_minutes = 0);

struct Event {
  std::string a;
  std::string b;
  Timestamp time = 0;    // 0 for edge-list rows, which carry no time
  double weight = 1.0;   // edge-list weight; 1 per timestamped interaction

  bool operator==(const Event&) const = default;
};

struct IngestOptions {
  /// Malformed rows become a ParseError instead of a skipped-row warning.
  bool strict = false;
};

struct IngestResult {
  std::vector<Event> events;          // sorted by (time, a, b)
  std::vector<std::string> warnings;  // "line N: reason"
  std::size_t skipped = 0;
  std::size_t duplicates = 0;         // proximity rows repeating a (pair, time)
};

/// Parses CSV text in the given format. A first line naming the columns is
/// skipped, as are blank lines and lines starting with '#'. Proximity rows
/// are deduplicated per unordered pair and timestamp.
/// Throws ParseError (strict mode) and EmptyInput (no usable row).
IngestResult parse_events(std::string_view text, InputFormat format, const IngestOptions& opts = {});

/// parse_events on a file's contents. Throws Io when it cannot be read.
IngestResult ingest_events(const std::string& path, InputFormat format, const IngestOptions& opts = {});

/// Edge records from events; every event contributes its weight.
std::vector<EdgeRecord> to_edge_records(const std::vector<Event>& events);

}  // namespace egoproto
