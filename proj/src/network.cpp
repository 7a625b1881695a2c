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

#include "railevac/network.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>

#include "railevac/csv.hpp"
#include "railevac/errors.hpp"
#include "railevac/io_util.hpp"

namespace railevac {
namespace {

double parse_double(const csv::Table& t, const csv::Row& row, std::size_t col) {
  const std::string& s = row.fields[col];
  double value = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw LoadError(t.file, row.line,
                    "column '" + t.header[col] + "': not a number: '" + s + "'");
  }
  return value;
}

std::uint64_t parse_count(const csv::Table& t, const csv::Row& row, std::size_t col) {
  const std::string& s = row.fields[col];
  std::uint64_t value = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw LoadError(t.file, row.line,
                    "column '" + t.header[col] + "': not a nonnegative integer: '" + s + "'");
  }
  return value;
}

std::int64_t parse_seq(const csv::Table& t, const csv::Row& row, std::size_t col) {
  const std::string& s = row.fields[col];
  std::int64_t value = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || value < 1) {
    throw LoadError(t.file, row.line,
                    "column 'seq': not a positive integer: '" + s + "'");
  }
  return value;
}

}  // namespace

int RailNetwork::require_index(const std::string& station_id) const {
  auto it = index_of.find(station_id);
  if (it == index_of.end()) {
    throw ValidationError("unknown station: " + station_id);
  }
  return it->second;
}

LoadResult load_network(const std::filesystem::path& stations_file,
                        const std::filesystem::path& lines_file,
                        const std::filesystem::path& passengers_file) {
  LoadResult result;
  RailNetwork& net = result.network;

  // Stations. Sorting by station_id fixes the matrix index order, so two
  // loads of the same files always agree.
  const auto stations_tab =
      csv::parse_csv(read_file(stations_file), stations_file.filename().string(),
                     {"station_id", "name", "operator", "lat", "lon"});
  std::map<std::string, std::size_t> first_seen;  // station_id -> csv line
  for (const auto& row : stations_tab.rows) {
    Station st;
    st.station_id = row.fields[0];
    st.name = row.fields[1];
    st.operator_name = row.fields[2];
    st.lat = parse_double(stations_tab, row, 3);
    st.lon = parse_double(stations_tab, row, 4);
    if (st.station_id.empty()) {
      throw LoadError(stations_tab.file, row.line, "empty station_id");
    }
    auto [it, inserted] = first_seen.emplace(st.station_id, row.line);
    if (!inserted) {
      throw LoadError(stations_tab.file, row.line,
                      "duplicate station_id '" + st.station_id + "' (first at line " +
                          std::to_string(it->second) + ")");
    }
    if (st.lat < -90.0 || st.lat > 90.0) {
      throw LoadError(stations_tab.file, row.line,
                      "column 'lat': out of range [-90, 90]: " + row.fields[3]);
    }
    if (st.lon < -180.0 || st.lon > 180.0) {
      throw LoadError(stations_tab.file, row.line,
                      "column 'lon': out of range [-180, 180]: " + row.fields[4]);
    }
    net.stations.push_back(std::move(st));
  }
  std::sort(net.stations.begin(), net.stations.end(),
            [](const Station& a, const Station& b) { return a.station_id < b.station_id; });
  for (int i = 0; i < net.size(); ++i) {
    net.index_of.emplace(net.stations[i].station_id, i);
  }

  // Lines. Rows may arrive in any order; they are keyed by (line_id, seq).
  const auto lines_tab =
      csv::parse_csv(read_file(lines_file), lines_file.filename().string(),
                     {"line_id", "line_name", "operator", "seq", "station_id"});
  struct LineBuild {
    std::string name;
    std::string operator_name;
    std::size_t first_line;                            // csv line of first row
    std::map<std::int64_t, std::string> stops_by_seq;  // seq -> station_id
  };
  std::map<std::string, LineBuild> builds;
  std::vector<std::string> line_order;  // first-appearance order
  for (const auto& row : lines_tab.rows) {
    const std::string& line_id = row.fields[0];
    if (line_id.empty()) {
      throw LoadError(lines_tab.file, row.line, "empty line_id");
    }
    const std::int64_t seq = parse_seq(lines_tab, row, 3);
    const std::string& stop = row.fields[4];
    if (net.index_of.find(stop) == net.index_of.end()) {
      throw LoadError(lines_tab.file, row.line,
                      "line '" + line_id + "' references unknown station '" + stop + "'");
    }
    auto it = builds.find(line_id);
    if (it == builds.end()) {
      line_order.push_back(line_id);
      it = builds.emplace(line_id, LineBuild{row.fields[1], row.fields[2], row.line, {}}).first;
    } else if (it->second.name != row.fields[1] ||
               it->second.operator_name != row.fields[2]) {
      throw LoadError(lines_tab.file, row.line,
                      "line '" + line_id + "' has inconsistent name/operator (first at line " +
                          std::to_string(it->second.first_line) + ")");
    }
    auto [stop_it, inserted] = it->second.stops_by_seq.emplace(seq, stop);
    if (!inserted) {
      throw LoadError(lines_tab.file, row.line,
                      "line '" + line_id + "' repeats seq " + std::to_string(seq));
    }
  }
  for (const auto& line_id : line_order) {
    const LineBuild& b = builds.at(line_id);
    RailLine line;
    line.line_id = line_id;
    line.line_name = b.name;
    line.operator_name = b.operator_name;
    std::int64_t expected = 1;
    for (const auto& [seq, stop] : b.stops_by_seq) {
      if (seq != expected) {
        throw LoadError(lines_tab.file, b.first_line,
                        "line '" + line_id + "': seq values must run 1..k, missing " +
                            std::to_string(expected));
      }
      // Loops (first stop == last stop) are fine, immediate repeats are not.
      if (!line.stops.empty() && line.stops.back() == stop) {
        throw LoadError(lines_tab.file, b.first_line,
                        "line '" + line_id + "': station '" + stop +
                            "' repeated at consecutive stops (seq " +
                            std::to_string(seq) + ")");
      }
      line.stops.push_back(stop);
      ++expected;
    }
    if (line.stops.size() < 2) {
      throw LoadError(lines_tab.file, b.first_line,
                      "line '" + line_id + "' has fewer than 2 stops");
    }
    net.lines.push_back(std::move(line));
  }

  // Passenger counts.
  net.daily_passengers.assign(net.stations.size(), 0.0);
  const auto pass_tab =
      csv::parse_csv(read_file(passengers_file), passengers_file.filename().string(),
                     {"station_id", "daily_passengers"});
  std::vector<bool> have_count(net.stations.size(), false);
  for (const auto& row : pass_tab.rows) {
    const std::string& id = row.fields[0];
    auto it = net.index_of.find(id);
    if (it == net.index_of.end()) {
      throw LoadError(pass_tab.file, row.line, "unknown station '" + id + "'");
    }
    if (have_count[it->second]) {
      throw LoadError(pass_tab.file, row.line, "duplicate passenger row for '" + id + "'");
    }
    have_count[it->second] = true;
    net.daily_passengers[it->second] = static_cast<double>(parse_count(pass_tab, row, 1));
  }
  for (int i = 0; i < net.size(); ++i) {
    if (!have_count[i]) {
      ++result.summary.missing_passenger_rows;
      result.summary.warnings.push_back("station '" + net.stations[i].station_id +
                                        "' has no passenger row; daily count set to 0");
    }
  }

  std::set<std::string> operators;
  for (const auto& s : net.stations) operators.insert(s.operator_name);
  result.summary.station_count = net.stations.size();
  result.summary.line_count = net.lines.size();
  result.summary.operator_count = operators.size();

  for (const auto& w : result.summary.warnings) log(LogLevel::kWarn, w);
  log(LogLevel::kInfo, "loaded " + std::to_string(result.summary.station_count) +
                           " stations, " + std::to_string(result.summary.line_count) +
                           " lines, " + std::to_string(result.summary.operator_count) +
                           " operators");
  return result;
}

std::set<std::pair<int, int>> adjacency_pairs(const RailNetwork& network) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& line : network.lines) {
    for (std::size_t k = 0; k + 1 < line.stops.size(); ++k) {
      const int a = network.index_of.at(line.stops[k]);
      const int b = network.index_of.at(line.stops[k + 1]);
      if (a == b) continue;  // cannot happen after load validation
      pairs.emplace(std::min(a, b), std::max(a, b));
    }
  }
  return pairs;
}

}  // namespace railevac
