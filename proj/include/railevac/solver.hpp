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

#ifndef RAILEVAC_SOLVER_HPP
#define RAILEVAC_SOLVER_HPP

#include <string>
#include <vector>

#include "railevac/network.hpp"

namespace railevac {

// One assignable origin->destination pair. Node indices refer to the
// network's matrix order; costs are finite minutes within the window.
struct FlowVariable {
  int origin = 0;
  int dest = 0;
  double cost_minutes = 0.0;
};

// The transportation instance: ship each origin's demand to capacitated
// destinations over the variable set at minimum total cost. Forbidden pairs
// (diagonal, blocked destinations, non-blocked origins, unreachable pairs)
// simply never appear among the variables.
struct SolverInstance {
  std::vector<FlowVariable> variables;  // sorted by (origin, dest)
  std::vector<int> origin_nodes;        // ascending node index
  std::vector<double> origin_demand;    // persons, parallel to origin_nodes
  std::vector<int> dest_nodes;          // ascending node index
  std::vector<double> dest_capacity;    // persons, parallel to dest_nodes
  double epsilon = 1e-6;                // only used in the reported ratio

  double total_demand() const;
  double total_capacity() const;
};

enum class PlanStatus { kOptimal, kInfeasible, kNumericFailure };

std::string to_string(PlanStatus status);

struct Flow {
  int origin = 0;
  int dest = 0;
  double persons = 0.0;
  double cost_minutes = 0.0;
};

struct Shortfall {
  int origin = 0;
  double unmet_persons = 0.0;
};

struct EvacuationPlan {
  PlanStatus status = PlanStatus::kInfeasible;
  std::vector<Flow> flows;  // positive entries only, sorted by (origin, dest)
  double objective_att_minutes = 0.0;  // sum(cost*flow) / (sum(flow) + epsilon)
  double total_evacuated = 0.0;
  std::vector<Shortfall> shortfalls;  // populated when infeasible

  double total_cost() const;  // sum(cost*flow), epsilon-free numerator
};

// Exact minimum-cost assignment.
//
// The objective ratio has a constant denominator (conservation fixes the
// total flow), so minimizing it is the linear transportation problem over
// the variable set. Solved by successive shortest paths with node
// potentials; Dijkstra orders by (distance, hop count, node index), which
// keeps runs deterministic and breaks cost ties toward the lowest
// destination index. Returns a vertex solution: any degenerate cycles left
// in the support are cancelled, so at most
// |origins| + |destinations| - 1 flows are nonzero.
EvacuationPlan solve(const SolverInstance& instance);

// Independent oracle for single-origin instances: fills destinations in
// ascending (cost, destination index) order, which is optimal when there is
// only one origin. Throws std::invalid_argument for multi-origin instances.
EvacuationPlan greedy_oracle(const SolverInstance& instance);

// Independent oracle for small integer instances: exhaustive enumeration of
// all integer allocations (ties by lexicographically smallest flow vector).
// Requires integer demands/capacities, total demand <= 30 and at most
// 6 variables; otherwise throws std::invalid_argument.
EvacuationPlan brute_force_oracle(const SolverInstance& instance);

// plan.json with station ids:
// {"status", "objective_att_minutes", "total_evacuated",
//  "flows": [{"from","to","persons","cost_minutes"}]}
std::string plan_to_json(const EvacuationPlan& plan, const RailNetwork& network);

}  // namespace railevac

#endif  // RAILEVAC_SOLVER_HPP
