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

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "railevac/cost.hpp"
#include "railevac/errors.hpp"
#include "railevac/generator.hpp"
#include "railevac/io_util.hpp"
#include "railevac/network.hpp"
#include "railevac/report.hpp"
#include "railevac/scenario.hpp"
#include "railevac/solver.hpp"

namespace {

// Exit codes: 0 success, 2 validation error, 3 infeasible scenario.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

struct NetworkArgs {
  std::string stations;
  std::string lines;
  std::string passengers;

  void attach(CLI::App* cmd) {
    cmd->add_option("--stations", stations, "stations.csv path")->required();
    cmd->add_option("--lines", lines, "lines.csv path")->required();
    cmd->add_option("--passengers", passengers, "passengers.csv path")->required();
  }
};

struct CostArgs {
  railevac::CostParams params;
  CLI::Option* tlm_option = nullptr;

  void attach(CLI::App* cmd) {
    tlm_option = cmd->add_option("--tlm", params.t_lm_minutes, "disruption window in minutes")
                     ->capture_default_str();
    cmd->add_option("--walk-speed", params.walk_speed_kmh, "walking speed in km/h")
        ->capture_default_str();
    cmd->add_option("--hop-time", params.hop_time_minutes, "train minutes per adjacent hop")
        ->capture_default_str();
    cmd->add_flag("--one-transfer", params.one_transfer_refinement,
                  "allow one intermediate station when fusing costs");
  }
};

struct ScenarioArgs {
  std::string scenario_file;
  std::vector<std::string> blocked;
  double capacity_ratio = 1.5;
  double operating_hours = 20.0;

  void attach(CLI::App* cmd) {
    auto* file = cmd->add_option("--scenario", scenario_file, "scenario.json path");
    auto* blocked_opt =
        cmd->add_option("--blocked", blocked, "blocked station id (repeatable)");
    auto* ratio = cmd->add_option("--capacity-ratio", capacity_ratio,
                                  "destination capacity ratio, must exceed 1")
                      ->capture_default_str();
    auto* hours = cmd->add_option("--operating-hours", operating_hours,
                                  "daily operating hours used to derive window loads")
                      ->capture_default_str();
    // A scenario file and inline scenario flags never mix silently.
    file->excludes(blocked_opt)->excludes(ratio)->excludes(hours);
  }
};

struct ReportArgs {
  std::string format = "csv";
  std::size_t top_k_value = 0;
  CLI::Option* top_k_option = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "report format: csv|json|geojson")
        ->capture_default_str();
    top_k_option = cmd->add_option("--top-k", top_k_value,
                                   "limit the report to the top-k destinations")
                       ->check(CLI::PositiveNumber);
  }

  std::optional<std::size_t> top_k() const {
    if (top_k_option != nullptr && top_k_option->count() > 0) return top_k_value;
    return std::nullopt;
  }
};

railevac::Scenario resolve_scenario(const ScenarioArgs& args, const CostArgs& cost) {
  if (!args.scenario_file.empty()) {
    auto file = railevac::scenario_from_json(railevac::read_file(args.scenario_file),
                                             args.scenario_file);
    if (file.has_t_lm && cost.tlm_option->count() > 0 &&
        file.scenario.t_lm_minutes != cost.params.t_lm_minutes) {
      throw railevac::ValidationError(
          args.scenario_file + ": t_lm_minutes (" +
          railevac::fmt_double(file.scenario.t_lm_minutes) + ") conflicts with --tlm (" +
          railevac::fmt_double(cost.params.t_lm_minutes) + ")");
    }
    if (!file.has_t_lm) file.scenario.t_lm_minutes = cost.params.t_lm_minutes;
    return file.scenario;
  }
  if (args.blocked.empty()) {
    throw railevac::ValidationError("no scenario: pass --scenario or at least one --blocked");
  }
  railevac::Scenario scenario;
  scenario.blocked.insert(args.blocked.begin(), args.blocked.end());
  scenario.t_lm_minutes = cost.params.t_lm_minutes;
  scenario.capacity_ratio = args.capacity_ratio;
  scenario.operating_hours = args.operating_hours;
  return scenario;
}

void print_summary(const railevac::ScenarioReport& report) {
  std::printf("status: OPTIMAL\n");
  std::printf("evacuated: %.0f persons from %zu origin(s)\n", report.total_evacuated,
              report.per_origin.size());
  std::printf("average travel time: %.1f min\n", report.att_minutes);
  const std::size_t top = std::min<std::size_t>(10, report.per_destination.size());
  if (top > 0) std::printf("top destinations:\n");
  for (std::size_t k = 0; k < top; ++k) {
    const auto& row = report.per_destination[k];
    std::printf("  %-16s epf %8.0f  ptt %5.1f min  capacity %8.0f%s\n",
                row.station_id.c_str(), row.epf, row.ptt_minutes, row.capacity,
                row.saturated ? "  (saturated)" : "");
  }
}

int report_infeasible(const std::vector<railevac::Shortfall>& shortfalls,
                      const railevac::RailNetwork& network) {
  std::fprintf(stderr, "railevac: evacuation infeasible; unmet demand per origin:\n");
  for (const auto& s : shortfalls) {
    std::fprintf(stderr, "  %s: %s persons\n",
                 network.stations.at(s.origin).station_id.c_str(),
                 railevac::fmt_double(s.unmet_persons).c_str());
  }
  return kExitInfeasible;
}

struct PipelineResult {
  railevac::RailNetwork network;
  railevac::SolverInstance instance;
  railevac::EvacuationPlan plan;
};

// load -> cost -> scenario -> solve; shared by `simulate` and `report`.
PipelineResult run_pipeline(const NetworkArgs& net_args, const CostArgs& cost_args,
                            const ScenarioArgs& scenario_args) {
  PipelineResult result;
  result.network =
      railevac::load_network(net_args.stations, net_args.lines, net_args.passengers).network;
  railevac::Scenario scenario = resolve_scenario(scenario_args, cost_args);
  // The scenario's window wins when a scenario file pinned it.
  railevac::CostParams params = cost_args.params;
  params.t_lm_minutes = scenario.t_lm_minutes;
  const auto model = railevac::build_cost_matrix(result.network, params);
  result.instance = railevac::build_solver_inputs(result.network, model, scenario);
  result.plan = railevac::solve(result.instance);
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "railevac: rebuilds a multi-operator railway network as cost matrices and plans\n"
      "minimum-travel-time passenger evacuations for disrupted stations.\n"
      "Set RAIL_EVAC_LOG=error|warn|info|debug to control log output."};
  app.require_subcommand(1);

  auto* build_cost = app.add_subcommand("build-cost", "build and dump the travel-cost matrix");
  NetworkArgs bc_net;
  CostArgs bc_cost;
  std::string bc_out = "cost.json";
  bc_net.attach(build_cost);
  bc_cost.attach(build_cost);
  build_cost->add_option("--out", bc_out, "output path")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "solve an evacuation scenario, write plan.json");
  NetworkArgs sim_net;
  CostArgs sim_cost;
  ScenarioArgs sim_scenario;
  ReportArgs sim_report;
  std::string sim_out = "plan.json";
  std::string sim_report_path;
  sim_net.attach(simulate);
  sim_cost.attach(simulate);
  sim_scenario.attach(simulate);
  simulate->add_option("--out", sim_out, "plan output path")->capture_default_str();
  simulate->add_option("--report", sim_report_path, "also write a report to this path");
  sim_report.attach(simulate);

  auto* report_cmd = app.add_subcommand("report", "solve a scenario and write the report");
  NetworkArgs rep_net;
  CostArgs rep_cost;
  ScenarioArgs rep_scenario;
  ReportArgs rep_report;
  std::string rep_out;
  rep_net.attach(report_cmd);
  rep_cost.attach(report_cmd);
  rep_scenario.attach(report_cmd);
  report_cmd->add_option("--out", rep_out, "report output path")->required();
  rep_report.attach(report_cmd);

  auto* generate = app.add_subcommand("generate", "write a synthetic network for tests/demos");
  std::uint64_t seed = 42;
  int gen_stations = 0;
  int gen_lines = 0;
  std::string out_dir = ".";
  generate->add_option("--seed", seed, "generator seed")->capture_default_str();
  generate->add_option("--stations", gen_stations, "number of stations (>= 2)")->required();
  generate->add_option("--lines", gen_lines, "number of lines (>= 1)")->required();
  generate->add_option("--out-dir", out_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (build_cost->parsed()) {
      const auto loaded = railevac::load_network(bc_net.stations, bc_net.lines,
                                                 bc_net.passengers);
      const auto model = railevac::build_cost_matrix(loaded.network, bc_cost.params);
      railevac::write_atomic(bc_out, railevac::cost_model_to_json(model, loaded.network));
      std::printf("wrote %s (%d stations)\n", bc_out.c_str(), model.size());
      return kExitOk;
    }

    if (simulate->parsed()) {
      auto result = run_pipeline(sim_net, sim_cost, sim_scenario);
      if (result.plan.status == railevac::PlanStatus::kInfeasible) {
        return report_infeasible(result.plan.shortfalls, result.network);
      }
      if (result.plan.status != railevac::PlanStatus::kOptimal) {
        std::fprintf(stderr, "railevac: solver failed: %s\n",
                     railevac::to_string(result.plan.status).c_str());
        return kExitError;
      }
      railevac::write_atomic(sim_out, railevac::plan_to_json(result.plan, result.network));
      const auto report = railevac::summarize(result.plan, result.instance, result.network);
      if (!sim_report_path.empty()) {
        railevac::write_atomic(sim_report_path,
                               railevac::emit(report, railevac::parse_format(sim_report.format),
                                              sim_report.top_k()));
      }
      print_summary(report);
      std::printf("plan written to %s\n", sim_out.c_str());
      return kExitOk;
    }

    if (report_cmd->parsed()) {
      auto result = run_pipeline(rep_net, rep_cost, rep_scenario);
      if (result.plan.status == railevac::PlanStatus::kInfeasible) {
        return report_infeasible(result.plan.shortfalls, result.network);
      }
      if (result.plan.status != railevac::PlanStatus::kOptimal) {
        std::fprintf(stderr, "railevac: solver failed: %s\n",
                     railevac::to_string(result.plan.status).c_str());
        return kExitError;
      }
      const auto report = railevac::summarize(result.plan, result.instance, result.network);
      railevac::write_atomic(rep_out, railevac::emit(report,
                                                     railevac::parse_format(rep_report.format),
                                                     rep_report.top_k()));
      std::printf("report written to %s\n", rep_out.c_str());
      return kExitOk;
    }

    if (generate->parsed()) {
      const auto files = railevac::generate_network_files(seed, gen_stations, gen_lines, out_dir);
      std::printf("wrote %s, %s, %s\n", files.stations.c_str(), files.lines.c_str(),
                  files.passengers.c_str());
      return kExitOk;
    }
  } catch (const railevac::InfeasibleError& e) {
    std::fprintf(stderr, "railevac: %s\n", e.what());
    return kExitInfeasible;
  } catch (const railevac::ValidationError& e) {
    std::fprintf(stderr, "railevac: error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "railevac: error: %s\n", e.what());
    return kExitError;
  }
  return kExitValidation;
}
