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

#ifndef RAILEVAC_REPORT_HPP
#define RAILEVAC_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "railevac/network.hpp"
#include "railevac/solver.hpp"

namespace railevac {

struct DestinationRow {
  std::string station_id;
  double lat = 0.0;
  double lon = 0.0;
  double epf = 0.0;          // evacuated passenger flow into this station
  double ptt_minutes = 0.0;  // flow-weighted travel time of the inflow
  double capacity = 0.0;     // residual capacity in persons
  bool saturated = false;

  bool operator==(const DestinationRow&) const = default;
};

struct OriginRow {
  std::string station_id;
  double lat = 0.0;
  double lon = 0.0;
  double demand = 0.0;
  double evacuated = 0.0;

  bool operator==(const OriginRow&) const = default;
};

struct FlowRow {
  std::string from;
  std::string to;
  double persons = 0.0;
  double cost_minutes = 0.0;

  bool operator==(const FlowRow&) const = default;
};

struct StatSummary {
  double median = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;

  bool operator==(const StatSummary&) const = default;
};

// Aggregated view of one solved scenario. Destination rows cover exactly the
// stations that received flow, sorted by EPF descending (ties by station_id
// ascending); the stats summarize those rows.
struct ScenarioReport {
  double att_minutes = 0.0;  // flow-weighted mean travel time over all flows
  double total_evacuated = 0.0;
  std::vector<DestinationRow> per_destination;
  std::vector<OriginRow> per_origin;  // ascending station_id
  std::vector<FlowRow> flows;         // the plan's flows, by (from, to)
  StatSummary epf_stats;
  StatSummary ptt_stats;

  bool operator==(const ScenarioReport&) const = default;
};

// Midpoint-of-sorted-values median; the mean of the two middles for even
// counts. Returns 0 for an empty list.
double median(std::vector<double> values);

// Aggregates an OPTIMAL plan by destination. Calling this with a plan that
// is not OPTIMAL is a contract violation (throws std::invalid_argument).
ScenarioReport summarize(const EvacuationPlan& plan, const SolverInstance& instance,
                         const RailNetwork& network);

enum class ReportFormat { kCsv, kJson, kGeojson };

// Accepts "csv", "json" or "geojson"; anything else throws ValidationError.
ReportFormat parse_format(const std::string& name);

// Renders the report as file content.
//   csv:      station_id,epf,ptt_minutes,capacity,saturated (full precision)
//   json:     the whole report; report_from_json() inverts it
//   geojson:  FeatureCollection with one Point per origin, one Point per
//             destination, and one LineString per flow ([lon, lat] order,
//             coordinates copied from the network unchanged)
// top_k keeps only the first top_k destination rows (and, for geojson, the
// flows into them).
std::string emit(const ScenarioReport& report, ReportFormat format,
                 std::optional<std::size_t> top_k = std::nullopt);

// Parses the json format produced by emit().
ScenarioReport report_from_json(const std::string& text);

}  // namespace railevac

#endif  // RAILEVAC_REPORT_HPP
