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

#include "railevac/scenario.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "railevac/errors.hpp"
#include "railevac/io_util.hpp"

namespace railevac {
namespace {

double require_number(const nlohmann::json& j, const std::string& key,
                      const std::string& file) {
  if (!j.is_number()) {
    throw ValidationError(file + ": field '" + key + "' must be a number");
  }
  return j.get<double>();
}

std::map<std::string, double> require_number_map(const nlohmann::json& j,
                                                 const std::string& key,
                                                 const std::string& file) {
  if (!j.is_object()) {
    throw ValidationError(file + ": field '" + key + "' must be an object");
  }
  std::map<std::string, double> out;
  for (const auto& [station_id, value] : j.items()) {
    out[station_id] = require_number(value, key + "." + station_id, file);
  }
  return out;
}

}  // namespace

ScenarioFile scenario_from_json(const std::string& text, const std::string& file_name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(file_name + ": " + e.what());
  }
  if (!j.is_object()) {
    throw ValidationError(file_name + ": top level must be an object");
  }

  ScenarioFile out;
  for (const auto& [key, value] : j.items()) {
    if (key == "blocked") {
      if (!value.is_array()) {
        throw ValidationError(file_name + ": field 'blocked' must be an array of station ids");
      }
      for (const auto& id : value) {
        if (!id.is_string()) {
          throw ValidationError(file_name + ": field 'blocked' must contain strings");
        }
        out.scenario.blocked.insert(id.get<std::string>());
      }
    } else if (key == "t_lm_minutes") {
      out.scenario.t_lm_minutes = require_number(value, key, file_name);
      out.has_t_lm = true;
    } else if (key == "capacity_ratio") {
      out.scenario.capacity_ratio = require_number(value, key, file_name);
    } else if (key == "capacity_ratio_overrides") {
      out.scenario.capacity_ratio_overrides = require_number_map(value, key, file_name);
    } else if (key == "capacity_overrides") {
      out.scenario.capacity_overrides = require_number_map(value, key, file_name);
    } else if (key == "loads") {
      out.scenario.loads = require_number_map(value, key, file_name);
    } else if (key == "operating_hours") {
      out.scenario.operating_hours = require_number(value, key, file_name);
    } else {
      throw ValidationError(file_name + ": unknown field '" + key + "'");
    }
  }
  if (out.scenario.blocked.empty()) {
    throw ValidationError(file_name + ": 'blocked' must list at least one station");
  }
  return out;
}

double derive_window_load(double daily_passengers, double operating_hours,
                          double t_lm_minutes) {
  return daily_passengers / operating_hours * (t_lm_minutes / 60.0);
}

SolverInstance build_solver_inputs(const RailNetwork& network, const CostModel& cost,
                                   const Scenario& scenario) {
  if (scenario.blocked.empty()) {
    throw ValidationError("scenario blocks no stations");
  }
  if (scenario.t_lm_minutes != cost.params().t_lm_minutes) {
    throw ValidationError("scenario t_lm (" + fmt_double(scenario.t_lm_minutes) +
                          " min) does not match the cost matrix t_lm (" +
                          fmt_double(cost.params().t_lm_minutes) + " min)");
  }
  if (!(scenario.operating_hours > 0.0)) {
    throw ValidationError("operating hours must be positive");
  }
  if (!(scenario.capacity_ratio > 1.0)) {
    throw ValidationError("capacity ratio must be greater than 1 (got " +
                          fmt_double(scenario.capacity_ratio) + ")");
  }
  for (const auto& [id, ratio] : scenario.capacity_ratio_overrides) {
    network.require_index(id);
    if (!(ratio > 1.0)) {
      throw ValidationError("capacity ratio override for '" + id +
                            "' must be greater than 1 (got " + fmt_double(ratio) + ")");
    }
  }
  for (const auto& [id, cap] : scenario.capacity_overrides) {
    network.require_index(id);
    if (!(cap >= 0.0)) {
      throw ValidationError("capacity override for '" + id + "' must be nonnegative");
    }
  }
  for (const auto& [id, load] : scenario.loads) {
    network.require_index(id);
    if (!(load >= 0.0)) {
      throw ValidationError("load for '" + id + "' must be nonnegative");
    }
  }

  const int n = network.size();
  std::vector<bool> blocked(n, false);
  for (const auto& id : scenario.blocked) {
    blocked[network.require_index(id)] = true;
  }

  auto window_load = [&](int i) {
    auto it = scenario.loads.find(network.stations[i].station_id);
    if (it != scenario.loads.end()) return it->second;
    return derive_window_load(network.daily_passengers[i], scenario.operating_hours,
                              scenario.t_lm_minutes);
  };
  auto residual_capacity = [&](int j) {
    const std::string& id = network.stations[j].station_id;
    if (auto it = scenario.capacity_overrides.find(id); it != scenario.capacity_overrides.end()) {
      return it->second;
    }
    double ratio = scenario.capacity_ratio;
    if (auto it = scenario.capacity_ratio_overrides.find(id);
        it != scenario.capacity_ratio_overrides.end()) {
      ratio = it->second;
    }
    return (ratio - 1.0) * window_load(j);
  };

  SolverInstance instance;
  std::vector<OriginDiagnostic> diagnostics;
  std::set<int> dest_set;
  bool empty_candidate_set = false;
  for (int i = 0; i < n; ++i) {
    if (!blocked[i]) continue;
    const double demand = window_load(i);
    if (demand <= 0.0) continue;  // no one to move
    OriginDiagnostic diag;
    diag.origin = i;
    diag.station_id = network.stations[i].station_id;
    diag.demand = demand;
    for (int j = 0; j < n; ++j) {
      if (blocked[j] || j == i) continue;  // no inflow to blocked stations
      if (!is_reachable(cost.travel_minutes(i, j))) continue;
      instance.variables.push_back({i, j, cost.travel_minutes(i, j)});
      dest_set.insert(j);
      ++diag.reachable_dests;
      diag.reachable_capacity += residual_capacity(j);
    }
    instance.origin_nodes.push_back(i);
    instance.origin_demand.push_back(demand);
    if (diag.reachable_dests == 0) empty_candidate_set = true;
    diagnostics.push_back(std::move(diag));
  }
  for (int j : dest_set) {
    instance.dest_nodes.push_back(j);
    instance.dest_capacity.push_back(residual_capacity(j));
  }

  const double demand_total = instance.total_demand();
  const double capacity_total = instance.total_capacity();
  if (empty_candidate_set || demand_total > capacity_total) {
    std::ostringstream msg;
    msg << "evacuation infeasible before solving: total demand " << fmt_double(demand_total)
        << " persons, reachable residual capacity " << fmt_double(capacity_total)
        << " persons";
    for (const auto& d : diagnostics) {
      msg << "\n  origin " << d.station_id << ": demand " << fmt_double(d.demand) << ", "
          << d.reachable_dests << " reachable destinations with capacity "
          << fmt_double(d.reachable_capacity);
    }
    throw InfeasibleError(msg.str(), std::move(diagnostics));
  }
  return instance;
}

}  // namespace railevac
