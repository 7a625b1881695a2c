// Copyright 2026 The railevac Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RAILEVAC_NETWORK_HPP
#define RAILEVAC_NETWORK_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace railevac {

struct Station {
  std::string station_id;
  std::string name;
  std::string operator_name;
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, [-180, 180]
};

struct RailLine {
  std::string line_id;
  std::string line_name;
  std::string operator_name;
  std::vector<std::string> stops;  // station_ids, length >= 2, no immediate repeats
};

// Immutable after load. Stations are sorted by station_id; the position in
// `stations` is the matrix row/column index used by every other module.
// Same-name stations run by different operators stay distinct nodes; only
// the walking term of the cost matrix ties them together.
struct RailNetwork {
  std::vector<Station> stations;
  std::vector<RailLine> lines;
  std::map<std::string, int> index_of;    // station_id -> matrix index
  std::vector<double> daily_passengers;   // persons/day, parallel to stations

  int size() const { return static_cast<int>(stations.size()); }

  // Index for a known station_id; throws ValidationError for unknown ids.
  int require_index(const std::string& station_id) const;
};

struct LoadSummary {
  std::size_t station_count = 0;
  std::size_t line_count = 0;
  std::size_t operator_count = 0;
  std::size_t missing_passenger_rows = 0;
  std::vector<std::string> warnings;
};

struct LoadResult {
  RailNetwork network;
  LoadSummary summary;
};

// Reads the three CSV files and builds a validated network.
//
//   stations.csv:   station_id,name,operator,lat,lon
//   lines.csv:      line_id,line_name,operator,seq,station_id
//   passengers.csv: station_id,daily_passengers
//
// Rows of one line are joined in `seq` order; seq must run 1..k with k >= 2.
// Stations absent from passengers.csv get a daily count of 0 plus a warning
// in the summary. Any other inconsistency throws LoadError with the file
// and line number.
LoadResult load_network(const std::filesystem::path& stations_file,
                        const std::filesystem::path& lines_file,
                        const std::filesystem::path& passengers_file);

// Unordered pairs {i, j} of stations that are consecutive stops on at least
// one line. Stored with i < j.
std::set<std::pair<int, int>> adjacency_pairs(const RailNetwork& network);

}  // namespace railevac

#endif  // RAILEVAC_NETWORK_HPP
