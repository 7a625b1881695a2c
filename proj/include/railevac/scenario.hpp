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

#ifndef RAILEVAC_SCENARIO_HPP
#define RAILEVAC_SCENARIO_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "railevac/cost.hpp"
#include "railevac/network.hpp"
#include "railevac/solver.hpp"

namespace railevac {

// A disruption: which stations are blocked for the window, how much load
// each station carries, and how much extra volume destinations may absorb.
struct Scenario {
  std::set<std::string> blocked;  // nonempty, station_ids
  double t_lm_minutes = 30.0;     // must equal the cost model's window
  double capacity_ratio = 1.5;    // > 1, applies where no override exists
  std::map<std::string, double> capacity_ratio_overrides;  // station_id -> ratio > 1
  // Absolute residual capacity in persons; replaces the multiplicative rule
  // for that station (the escape hatch for zero-load destinations).
  std::map<std::string, double> capacity_overrides;
  // Explicit window loads in persons; stations not listed here derive their
  // load from daily counts.
  std::map<std::string, double> loads;
  double operating_hours = 20.0;
};

struct ScenarioFile {
  Scenario scenario;
  bool has_t_lm = false;  // whether the file pinned t_lm_minutes itself
};

// Parses scenario.json. Recognized fields: blocked (required, nonempty),
// t_lm_minutes, capacity_ratio, capacity_ratio_overrides, capacity_overrides,
// loads, operating_hours. Unknown fields are rejected.
ScenarioFile scenario_from_json(const std::string& text, const std::string& file_name);

// Passengers affected during the window: daily / operating_hours * (t_lm/60).
// With the defaults (20 h, 30 min) this is daily/40.
double derive_window_load(double daily_passengers, double operating_hours,
                          double t_lm_minutes);

struct OriginDiagnostic {
  int origin = 0;
  std::string station_id;
  double demand = 0.0;
  int reachable_dests = 0;
  double reachable_capacity = 0.0;
};

// Raised when the aggregate capacity check already rules out a full
// evacuation, before the solver runs. The CLI maps this to exit code 3.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::vector<OriginDiagnostic> diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

  const std::vector<OriginDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<OriginDiagnostic> diagnostics_;
};

// Derives the transportation instance for a scenario:
//   origins       = blocked stations with positive window load
//   destinations  = non-blocked stations reachable within the window from
//                   at least one origin
//   capacities    = (ratio - 1) * window load, or the absolute override
//   variables     = every (origin, reachable destination) pair
//
// Throws ValidationError on invalid scenario data and InfeasibleError when
// total demand exceeds the union capacity or an origin has positive load
// but no reachable destination.
SolverInstance build_solver_inputs(const RailNetwork& network, const CostModel& cost,
                                   const Scenario& scenario);

}  // namespace railevac

#endif  // RAILEVAC_SCENARIO_HPP
