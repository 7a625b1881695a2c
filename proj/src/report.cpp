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

#include "railevac/report.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "railevac/csv.hpp"
#include "railevac/errors.hpp"
#include "railevac/io_util.hpp"

namespace railevac {
namespace {

constexpr double kSaturationTolerance = 1e-6;  // persons

StatSummary stats_of(const std::vector<double>& values) {
  StatSummary s;
  if (values.empty()) return s;
  s.median = median(values);
  double sum = 0.0;
  s.min = values.front();
  s.max = values.front();
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(values.size());
  return s;
}

nlohmann::json stats_to_json(const StatSummary& s) {
  return {{"median", s.median}, {"mean", s.mean}, {"min", s.min}, {"max", s.max}};
}

StatSummary stats_from_json(const nlohmann::json& j) {
  StatSummary s;
  s.median = j.at("median").get<double>();
  s.mean = j.at("mean").get<double>();
  s.min = j.at("min").get<double>();
  s.max = j.at("max").get<double>();
  return s;
}

nlohmann::json point_feature(double lat, double lon, nlohmann::json properties) {
  return {{"type", "Feature"},
          {"geometry", {{"type", "Point"}, {"coordinates", {lon, lat}}}},
          {"properties", std::move(properties)}};
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

ScenarioReport summarize(const EvacuationPlan& plan, const SolverInstance& instance,
                         const RailNetwork& network) {
  if (plan.status != PlanStatus::kOptimal) {
    throw std::invalid_argument("summarize requires an OPTIMAL plan, got " +
                                to_string(plan.status));
  }

  ScenarioReport report;
  report.total_evacuated = plan.total_evacuated;

  struct DestAgg {
    double epf = 0.0;
    double cost_sum = 0.0;  // sum of cost * flow into this destination
  };
  std::map<int, DestAgg> by_dest;
  std::map<int, double> evacuated_by_origin;
  double cost_total = 0.0;
  for (const auto& f : plan.flows) {
    auto& agg = by_dest[f.dest];
    agg.epf += f.persons;
    agg.cost_sum += f.cost_minutes * f.persons;
    evacuated_by_origin[f.origin] += f.persons;
    cost_total += f.cost_minutes * f.persons;
    report.flows.push_back({network.stations.at(f.origin).station_id,
                            network.stations.at(f.dest).station_id, f.persons,
                            f.cost_minutes});
  }
  report.att_minutes =
      plan.total_evacuated > 0.0 ? cost_total / plan.total_evacuated : 0.0;

  std::map<int, double> capacity_by_dest;
  for (std::size_t k = 0; k < instance.dest_nodes.size(); ++k) {
    capacity_by_dest[instance.dest_nodes[k]] = instance.dest_capacity[k];
  }
  for (const auto& [dest, agg] : by_dest) {
    if (!(agg.epf > 0.0)) continue;
    const Station& st = network.stations.at(dest);
    DestinationRow row;
    row.station_id = st.station_id;
    row.lat = st.lat;
    row.lon = st.lon;
    row.epf = agg.epf;
    row.ptt_minutes = agg.cost_sum / agg.epf;
    row.capacity = capacity_by_dest.count(dest) ? capacity_by_dest.at(dest) : 0.0;
    row.saturated = agg.epf >= row.capacity - kSaturationTolerance;
    report.per_destination.push_back(std::move(row));
  }
  std::sort(report.per_destination.begin(), report.per_destination.end(),
            [](const DestinationRow& a, const DestinationRow& b) {
              if (a.epf != b.epf) return a.epf > b.epf;
              return a.station_id < b.station_id;
            });

  for (std::size_t k = 0; k < instance.origin_nodes.size(); ++k) {
    const Station& st = network.stations.at(instance.origin_nodes[k]);
    OriginRow row;
    row.station_id = st.station_id;
    row.lat = st.lat;
    row.lon = st.lon;
    row.demand = instance.origin_demand[k];
    const auto it = evacuated_by_origin.find(instance.origin_nodes[k]);
    row.evacuated = it == evacuated_by_origin.end() ? 0.0 : it->second;
    report.per_origin.push_back(std::move(row));
  }

  std::vector<double> epfs, ptts;
  for (const auto& row : report.per_destination) {
    epfs.push_back(row.epf);
    ptts.push_back(row.ptt_minutes);
  }
  report.epf_stats = stats_of(epfs);
  report.ptt_stats = stats_of(ptts);
  return report;
}

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  if (name == "geojson") return ReportFormat::kGeojson;
  throw ValidationError("unknown format '" + name + "' (expected csv, json or geojson)");
}

std::string emit(const ScenarioReport& report, ReportFormat format,
                 std::optional<std::size_t> top_k) {
  const std::size_t dest_count =
      top_k ? std::min(*top_k, report.per_destination.size()) : report.per_destination.size();

  switch (format) {
    case ReportFormat::kCsv: {
      std::string out = "station_id,epf,ptt_minutes,capacity,saturated\n";
      for (std::size_t k = 0; k < dest_count; ++k) {
        const auto& row = report.per_destination[k];
        out += csv::escape_field(row.station_id) + "," + fmt_double(row.epf) + "," +
               fmt_double(row.ptt_minutes) + "," + fmt_double(row.capacity) + "," +
               (row.saturated ? "1" : "0") + "\n";
      }
      return out;
    }

    case ReportFormat::kJson: {
      nlohmann::json out;
      out["att_minutes"] = report.att_minutes;
      out["total_evacuated"] = report.total_evacuated;
      auto& dests = out["per_destination"] = nlohmann::json::array();
      for (std::size_t k = 0; k < dest_count; ++k) {
        const auto& row = report.per_destination[k];
        dests.push_back({{"station_id", row.station_id},
                         {"lat", row.lat},
                         {"lon", row.lon},
                         {"epf", row.epf},
                         {"ptt_minutes", row.ptt_minutes},
                         {"capacity", row.capacity},
                         {"saturated", row.saturated}});
      }
      auto& origins = out["per_origin"] = nlohmann::json::array();
      for (const auto& row : report.per_origin) {
        origins.push_back({{"station_id", row.station_id},
                           {"lat", row.lat},
                           {"lon", row.lon},
                           {"demand", row.demand},
                           {"evacuated", row.evacuated}});
      }
      auto& flows = out["flows"] = nlohmann::json::array();
      for (const auto& f : report.flows) {
        flows.push_back({{"from", f.from},
                         {"to", f.to},
                         {"persons", f.persons},
                         {"cost_minutes", f.cost_minutes}});
      }
      out["epf_stats"] = stats_to_json(report.epf_stats);
      out["ptt_stats"] = stats_to_json(report.ptt_stats);
      return out.dump(2) + "\n";
    }

    case ReportFormat::kGeojson: {
      nlohmann::json features = nlohmann::json::array();
      std::map<std::string, std::pair<double, double>> coords;  // id -> (lat, lon)
      for (const auto& row : report.per_origin) {
        coords[row.station_id] = {row.lat, row.lon};
        features.push_back(point_feature(row.lat, row.lon,
                                         {{"role", "origin"},
                                          {"station_id", row.station_id},
                                          {"demand", row.demand},
                                          {"evacuated", row.evacuated}}));
      }
      std::set<std::string> kept_dests;
      for (std::size_t k = 0; k < dest_count; ++k) {
        const auto& row = report.per_destination[k];
        coords[row.station_id] = {row.lat, row.lon};
        kept_dests.insert(row.station_id);
        features.push_back(point_feature(row.lat, row.lon,
                                         {{"role", "destination"},
                                          {"station_id", row.station_id},
                                          {"epf", row.epf},
                                          {"ptt_minutes", row.ptt_minutes},
                                          {"capacity", row.capacity},
                                          {"saturated", row.saturated}}));
      }
      for (const auto& f : report.flows) {
        if (!kept_dests.count(f.to)) continue;
        const auto& [from_lat, from_lon] = coords.at(f.from);
        const auto& [to_lat, to_lon] = coords.at(f.to);
        features.push_back(
            {{"type", "Feature"},
             {"geometry",
              {{"type", "LineString"},
               {"coordinates", {{from_lon, from_lat}, {to_lon, to_lat}}}}},
             {"properties",
              {{"from", f.from},
               {"to", f.to},
               {"persons", f.persons},
               {"cost_minutes", f.cost_minutes}}}});
      }
      nlohmann::json out = {{"type", "FeatureCollection"}, {"features", std::move(features)}};
      return out.dump(2) + "\n";
    }
  }
  throw ValidationError("unknown format");
}

ScenarioReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("report json: ") + e.what());
  }
  ScenarioReport report;
  report.att_minutes = j.at("att_minutes").get<double>();
  report.total_evacuated = j.at("total_evacuated").get<double>();
  for (const auto& row : j.at("per_destination")) {
    DestinationRow d;
    d.station_id = row.at("station_id").get<std::string>();
    d.lat = row.at("lat").get<double>();
    d.lon = row.at("lon").get<double>();
    d.epf = row.at("epf").get<double>();
    d.ptt_minutes = row.at("ptt_minutes").get<double>();
    d.capacity = row.at("capacity").get<double>();
    d.saturated = row.at("saturated").get<bool>();
    report.per_destination.push_back(std::move(d));
  }
  for (const auto& row : j.at("per_origin")) {
    OriginRow o;
    o.station_id = row.at("station_id").get<std::string>();
    o.lat = row.at("lat").get<double>();
    o.lon = row.at("lon").get<double>();
    o.demand = row.at("demand").get<double>();
    o.evacuated = row.at("evacuated").get<double>();
    report.per_origin.push_back(std::move(o));
  }
  for (const auto& row : j.at("flows")) {
    FlowRow f;
    f.from = row.at("from").get<std::string>();
    f.to = row.at("to").get<std::string>();
    f.persons = row.at("persons").get<double>();
    f.cost_minutes = row.at("cost_minutes").get<double>();
    report.flows.push_back(std::move(f));
  }
  report.epf_stats = stats_from_json(j.at("epf_stats"));
  report.ptt_stats = stats_from_json(j.at("ptt_stats"));
  return report;
}

}  // namespace railevac
