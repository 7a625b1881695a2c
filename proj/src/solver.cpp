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

#include "railevac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace railevac {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_instance(const SolverInstance& instance) {
  if (instance.origin_nodes.size() != instance.origin_demand.size() ||
      instance.dest_nodes.size() != instance.dest_capacity.size()) {
    throw std::invalid_argument("solver instance: mismatched parallel arrays");
  }
  for (double d : instance.origin_demand) {
    if (!(d >= 0.0)) throw std::invalid_argument("solver instance: negative demand");
  }
  for (double c : instance.dest_capacity) {
    if (!(c >= 0.0)) throw std::invalid_argument("solver instance: negative capacity");
  }
  for (const auto& v : instance.variables) {
    if (!std::isfinite(v.cost_minutes) || v.cost_minutes < 0.0) {
      throw std::invalid_argument("solver instance: variable cost must be finite and >= 0");
    }
  }
}

int ordinal_of(const std::vector<int>& sorted_nodes, int node) {
  auto it = std::lower_bound(sorted_nodes.begin(), sorted_nodes.end(), node);
  if (it == sorted_nodes.end() || *it != node) {
    throw std::invalid_argument("solver instance: variable references unlisted node");
  }
  return static_cast<int>(it - sorted_nodes.begin());
}

double ratio_objective(double total_cost, double total_flow, double epsilon) {
  return total_flow > 0.0 || epsilon > 0.0 ? total_cost / (total_flow + epsilon) : 0.0;
}

EvacuationPlan finish_plan(const SolverInstance& instance, std::vector<double> flow_by_var) {
  EvacuationPlan plan;
  plan.status = PlanStatus::kOptimal;
  double total_cost = 0.0;
  double total_flow = 0.0;
  for (std::size_t v = 0; v < instance.variables.size(); ++v) {
    if (flow_by_var[v] <= 0.0) continue;
    const FlowVariable& var = instance.variables[v];
    plan.flows.push_back({var.origin, var.dest, flow_by_var[v], var.cost_minutes});
    total_cost += var.cost_minutes * flow_by_var[v];
    total_flow += flow_by_var[v];
  }
  std::sort(plan.flows.begin(), plan.flows.end(), [](const Flow& a, const Flow& b) {
    return std::tie(a.origin, a.dest) < std::tie(b.origin, b.dest);
  });
  plan.total_evacuated = total_flow;
  plan.objective_att_minutes = ratio_objective(total_cost, total_flow, instance.epsilon);
  return plan;
}

// Residual graph for successive shortest paths. Arcs are stored in forward /
// reverse pairs; arc.cap is the remaining residual capacity.
struct Arc {
  int to;
  int rev;  // index of the paired arc in adj[to]
  double cap;
  double cost;
};

class ResidualGraph {
 public:
  explicit ResidualGraph(int num_nodes) : adj_(num_nodes) {}

  // Returns the position of the forward arc in adj_[from].
  int add_arc(int from, int to, double cap, double cost) {
    adj_[from].push_back({to, static_cast<int>(adj_[to].size()), cap, cost});
    adj_[to].push_back({from, static_cast<int>(adj_[from].size()) - 1, 0.0, -cost});
    return static_cast<int>(adj_[from].size()) - 1;
  }

  std::vector<Arc>& arcs(int node) { return adj_[node]; }
  const std::vector<Arc>& arcs(int node) const { return adj_[node]; }
  int size() const { return static_cast<int>(adj_.size()); }

  double pushed(int from, int arc_index) const {
    const Arc& a = adj_[from][arc_index];
    return adj_[a.to][a.rev].cap;
  }

 private:
  std::vector<std::vector<Arc>> adj_;
};

// Shortest-path state for one Dijkstra pass. Paths are ordered by
// (distance, hop count, node index): the hop count keeps augmentations
// within one distance phase on arc-minimal paths, and the node index makes
// tie-breaking deterministic, which is what sends equal-cost flow to the
// lowest destination index.
struct PathSearch {
  std::vector<double> dist;
  std::vector<int> hops;
  std::vector<int> parent_node;
  std::vector<int> parent_arc;
  std::vector<bool> settled;

  bool run(const ResidualGraph& graph, const std::vector<double>& potential,
           int source, int sink) {
    const int n = graph.size();
    dist.assign(n, kInf);
    hops.assign(n, 0);
    parent_node.assign(n, -1);
    parent_arc.assign(n, -1);
    settled.assign(n, false);

    using Entry = std::tuple<double, int, int>;  // (dist, hops, node)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
    dist[source] = 0.0;
    queue.push({0.0, 0, source});

    while (!queue.empty()) {
      const auto [d, h, u] = queue.top();
      queue.pop();
      if (settled[u]) continue;
      settled[u] = true;
      const auto& arcs = graph.arcs(u);
      for (int idx = 0; idx < static_cast<int>(arcs.size()); ++idx) {
        const Arc& arc = arcs[idx];
        if (!(arc.cap > 0.0) || settled[arc.to]) continue;
        // Reduced cost; clamp the rounding dust that potential updates leave.
        double rc = arc.cost + potential[u] - potential[arc.to];
        if (rc < 0.0) rc = 0.0;
        const double nd = dist[u] + rc;
        const int nh = hops[u] + 1;
        if (nd < dist[arc.to] || (nd == dist[arc.to] && nh < hops[arc.to])) {
          dist[arc.to] = nd;
          hops[arc.to] = nh;
          parent_node[arc.to] = u;
          parent_arc[arc.to] = idx;
          queue.push({nd, nh, arc.to});
        }
      }
    }
    return settled[sink];
  }
};

// Flow supports that contain an (undirected) cycle in the origin/destination
// bipartite graph are degenerate optima; shifting flow around the cycle is
// cost-neutral and row/column-sum preserving. Cancelling until the support
// is a forest yields a vertex solution.
void cancel_support_cycles(const SolverInstance& instance, std::vector<double>& flow_by_var) {
  const int num_origins = static_cast<int>(instance.origin_nodes.size());
  const int num_dests = static_cast<int>(instance.dest_nodes.size());
  const int num_nodes = num_origins + num_dests;

  for (;;) {
    // Grow a forest over the support; the first edge closing a cycle
    // identifies it.
    std::vector<int> tree_parent(num_nodes, -1);      // parent node in forest
    std::vector<int> tree_parent_var(num_nodes, -1);  // variable used to reach it
    std::vector<int> root(num_nodes);
    for (int i = 0; i < num_nodes; ++i) root[i] = i;
    auto find_root = [&](int x) {
      while (root[x] != x) {
        root[x] = root[root[x]];
        x = root[x];
      }
      return x;
    };

    int cycle_var = -1;
    for (std::size_t v = 0; v < instance.variables.size() && cycle_var < 0; ++v) {
      if (!(flow_by_var[v] > 0.0)) continue;
      const int o = ordinal_of(instance.origin_nodes, instance.variables[v].origin);
      const int d = num_origins + ordinal_of(instance.dest_nodes, instance.variables[v].dest);
      if (find_root(o) == find_root(d)) {
        cycle_var = static_cast<int>(v);
        break;
      }
      // Re-root the smaller-rooted side onto the other by walking parents.
      root[find_root(o)] = find_root(d);
      // Reverse the parent chain of o, then hang o off d.
      int prev = d, prev_var = static_cast<int>(v), cur = o;
      while (cur != -1) {
        const int next = tree_parent[cur];
        const int next_var = tree_parent_var[cur];
        tree_parent[cur] = prev;
        tree_parent_var[cur] = prev_var;
        prev = cur;
        prev_var = next_var;
        cur = next;
      }
    }
    if (cycle_var < 0) return;  // support is a forest

    // Path between the two endpoints of cycle_var through the forest.
    const int o = ordinal_of(instance.origin_nodes, instance.variables[cycle_var].origin);
    const int d = num_origins + ordinal_of(instance.dest_nodes, instance.variables[cycle_var].dest);
    std::vector<int> up_o, up_d;  // nodes from o / d to their root
    std::vector<int> var_o, var_d;
    for (int x = o; x != -1; x = tree_parent[x]) {
      up_o.push_back(x);
      if (tree_parent[x] != -1) var_o.push_back(tree_parent_var[x]);
    }
    for (int x = d; x != -1; x = tree_parent[x]) {
      up_d.push_back(x);
      if (tree_parent[x] != -1) var_d.push_back(tree_parent_var[x]);
    }
    // Trim to the lowest common ancestor.
    int shared = 0;
    while (shared < static_cast<int>(std::min(up_o.size(), up_d.size())) &&
           up_o[up_o.size() - 1 - shared] == up_d[up_d.size() - 1 - shared]) {
      ++shared;
    }
    const int keep_o = static_cast<int>(up_o.size()) - shared;
    const int keep_d = static_cast<int>(up_d.size()) - shared;

    // Cycle edges in order: closing edge, then o's chain up, then d's chain
    // down. Alternate +/- signs; the bipartite cycle has even length so the
    // alternation is consistent at every node.
    std::vector<int> cycle_vars;
    cycle_vars.push_back(cycle_var);
    for (int k = 0; k < keep_o; ++k) cycle_vars.push_back(var_o[k]);
    for (int k = keep_d - 1; k >= 0; --k) cycle_vars.push_back(var_d[k]);

    std::vector<int> sign(cycle_vars.size());
    for (std::size_t k = 0; k < cycle_vars.size(); ++k) sign[k] = (k % 2 == 0) ? 1 : -1;

    double cost_delta = 0.0;
    for (std::size_t k = 0; k < cycle_vars.size(); ++k) {
      cost_delta += sign[k] * instance.variables[cycle_vars[k]].cost_minutes;
    }
    if (cost_delta > 0.0) {
      for (auto& s : sign) s = -s;  // shift in the non-increasing direction
    }
    double shift = kInf;
    for (std::size_t k = 0; k < cycle_vars.size(); ++k) {
      if (sign[k] < 0) shift = std::min(shift, flow_by_var[cycle_vars[k]]);
    }
    for (std::size_t k = 0; k < cycle_vars.size(); ++k) {
      double& f = flow_by_var[cycle_vars[k]];
      f += sign[k] * shift;
      if (f < 0.0) f = 0.0;  // rounding dust
    }
  }
}

}  // namespace

double SolverInstance::total_demand() const {
  double total = 0.0;
  for (double d : origin_demand) total += d;
  return total;
}

double SolverInstance::total_capacity() const {
  double total = 0.0;
  for (double c : dest_capacity) total += c;
  return total;
}

double EvacuationPlan::total_cost() const {
  double total = 0.0;
  for (const auto& f : flows) total += f.cost_minutes * f.persons;
  return total;
}

std::string to_string(PlanStatus status) {
  switch (status) {
    case PlanStatus::kOptimal: return "OPTIMAL";
    case PlanStatus::kInfeasible: return "INFEASIBLE";
    case PlanStatus::kNumericFailure: return "NUMERIC_FAILURE";
  }
  return "UNKNOWN";
}

EvacuationPlan solve(const SolverInstance& instance) {
  check_instance(instance);

  const int num_origins = static_cast<int>(instance.origin_nodes.size());
  const int num_dests = static_cast<int>(instance.dest_nodes.size());
  const int source = 0;
  const int first_origin = 1;
  const int first_dest = 1 + num_origins;
  const int sink = 1 + num_origins + num_dests;
  ResidualGraph graph(sink + 1);

  std::vector<int> supply_arc(num_origins);
  for (int k = 0; k < num_origins; ++k) {
    supply_arc[k] = graph.add_arc(source, first_origin + k, instance.origin_demand[k], 0.0);
  }
  // A variable can never carry more than its origin's whole demand, so that
  // demand serves as the (never binding) arc capacity.
  std::vector<std::pair<int, int>> var_arc(instance.variables.size());
  for (std::size_t v = 0; v < instance.variables.size(); ++v) {
    const FlowVariable& var = instance.variables[v];
    const int o = ordinal_of(instance.origin_nodes, var.origin);
    const int d = ordinal_of(instance.dest_nodes, var.dest);
    const int from = first_origin + o;
    var_arc[v] = {from, graph.add_arc(from, first_dest + d, instance.origin_demand[o],
                                      var.cost_minutes)};
  }
  for (int k = 0; k < num_dests; ++k) {
    graph.add_arc(first_dest + k, sink, instance.dest_capacity[k], 0.0);
  }

  std::vector<double> potential(graph.size(), 0.0);
  PathSearch search;
  // Exact methods terminate well under this; the guard only trips if
  // floating-point damage produces a pathological augmentation sequence.
  const long max_augmentations =
      64 + 4L * graph.size() * static_cast<long>(instance.variables.size() + num_origins + num_dests + 2);
  long augmentations = 0;

  while (search.run(graph, potential, source, sink)) {
    if (++augmentations > max_augmentations) {
      EvacuationPlan plan;
      plan.status = PlanStatus::kNumericFailure;
      return plan;
    }
    for (int v = 0; v < graph.size(); ++v) {
      potential[v] += std::min(search.dist[v], search.dist[sink]);
    }
    double bottleneck = kInf;
    for (int v = sink; v != source; v = search.parent_node[v]) {
      bottleneck = std::min(bottleneck, graph.arcs(search.parent_node[v])[search.parent_arc[v]].cap);
    }
    for (int v = sink; v != source; v = search.parent_node[v]) {
      Arc& arc = graph.arcs(search.parent_node[v])[search.parent_arc[v]];
      arc.cap -= bottleneck;
      graph.arcs(arc.to)[arc.rev].cap += bottleneck;
    }
  }

  std::vector<Shortfall> shortfalls;
  for (int k = 0; k < num_origins; ++k) {
    const double remaining = graph.arcs(source)[supply_arc[k]].cap;
    if (remaining > 0.0) {
      shortfalls.push_back({instance.origin_nodes[k], remaining});
    }
  }
  if (!shortfalls.empty()) {
    EvacuationPlan plan;
    plan.status = PlanStatus::kInfeasible;
    plan.shortfalls = std::move(shortfalls);
    return plan;
  }

  std::vector<double> flow_by_var(instance.variables.size());
  for (std::size_t v = 0; v < instance.variables.size(); ++v) {
    flow_by_var[v] = graph.pushed(var_arc[v].first, var_arc[v].second);
  }
  cancel_support_cycles(instance, flow_by_var);
  return finish_plan(instance, flow_by_var);
}

EvacuationPlan greedy_oracle(const SolverInstance& instance) {
  check_instance(instance);
  if (instance.origin_nodes.size() != 1) {
    throw std::invalid_argument("greedy oracle supports exactly one origin");
  }

  std::vector<std::size_t> order(instance.variables.size());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& va = instance.variables[a];
    const auto& vb = instance.variables[b];
    return std::tie(va.cost_minutes, va.dest) < std::tie(vb.cost_minutes, vb.dest);
  });

  std::vector<double> flow_by_var(instance.variables.size(), 0.0);
  double remaining = instance.origin_demand[0];
  for (std::size_t v : order) {
    if (remaining <= 0.0) break;
    const int d = ordinal_of(instance.dest_nodes, instance.variables[v].dest);
    const double take = std::min(remaining, instance.dest_capacity[d]);
    if (take <= 0.0) continue;
    flow_by_var[v] = take;
    remaining -= take;
  }
  if (remaining > 0.0) {
    EvacuationPlan plan;
    plan.status = PlanStatus::kInfeasible;
    plan.shortfalls.push_back({instance.origin_nodes[0], remaining});
    return plan;
  }
  return finish_plan(instance, flow_by_var);
}

EvacuationPlan brute_force_oracle(const SolverInstance& instance) {
  check_instance(instance);
  constexpr double kMaxDemand = 30.0;
  constexpr std::size_t kMaxVariables = 6;
  if (instance.variables.size() > kMaxVariables) {
    throw std::invalid_argument("brute force oracle: too many variables");
  }
  if (instance.total_demand() > kMaxDemand) {
    throw std::invalid_argument("brute force oracle: total demand too large");
  }
  auto require_integer = [](double x) {
    if (x != std::floor(x)) {
      throw std::invalid_argument("brute force oracle: demands and capacities must be integers");
    }
    return static_cast<long long>(x);
  };

  const int num_origins = static_cast<int>(instance.origin_nodes.size());
  std::vector<long long> rem_demand(num_origins);
  for (int k = 0; k < num_origins; ++k) {
    rem_demand[k] = require_integer(instance.origin_demand[k]);
  }
  std::vector<long long> rem_cap(instance.dest_nodes.size());
  for (std::size_t k = 0; k < rem_cap.size(); ++k) {
    rem_cap[k] = require_integer(instance.dest_capacity[k]);
  }

  // Variables sorted by (origin, dest); positions of each origin's last
  // variable force its value during enumeration.
  std::vector<std::size_t> order(instance.variables.size());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& va = instance.variables[a];
    const auto& vb = instance.variables[b];
    return std::tie(va.origin, va.dest) < std::tie(vb.origin, vb.dest);
  });
  std::vector<int> var_origin(order.size()), var_dest(order.size());
  std::vector<bool> last_of_origin(order.size(), false);
  std::vector<bool> origin_has_vars(num_origins, false);
  for (std::size_t k = 0; k < order.size(); ++k) {
    var_origin[k] = ordinal_of(instance.origin_nodes, instance.variables[order[k]].origin);
    var_dest[k] = ordinal_of(instance.dest_nodes, instance.variables[order[k]].dest);
    origin_has_vars[var_origin[k]] = true;
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k + 1 == order.size() || var_origin[k + 1] != var_origin[k]) last_of_origin[k] = true;
  }
  for (int k = 0; k < num_origins; ++k) {
    if (!origin_has_vars[k] && rem_demand[k] > 0) {
      EvacuationPlan plan;
      plan.status = PlanStatus::kInfeasible;
      plan.shortfalls.push_back({instance.origin_nodes[k], static_cast<double>(rem_demand[k])});
      return plan;
    }
  }

  std::vector<long long> current(order.size(), 0);
  std::vector<long long> best;
  double best_cost = kInf;

  auto consider = [&](double cost) {
    if (cost < best_cost ||
        (cost == best_cost && (best.empty() || current < best))) {
      best_cost = cost;
      best = current;
    }
  };

  // Depth-first over variables; the last variable of each origin is forced
  // to whatever demand remains.
  auto enumerate = [&](auto&& self, std::size_t k, double cost) -> void {
    if (k == order.size()) {
      consider(cost);
      return;
    }
    const int o = var_origin[k];
    const int d = var_dest[k];
    const double unit = instance.variables[order[k]].cost_minutes;
    if (last_of_origin[k]) {
      const long long forced = rem_demand[o];
      if (forced <= rem_cap[d]) {
        current[k] = forced;
        rem_demand[o] = 0;
        rem_cap[d] -= forced;
        self(self, k + 1, cost + unit * static_cast<double>(forced));
        rem_demand[o] = forced;
        rem_cap[d] += forced;
        current[k] = 0;
      }
      return;
    }
    const long long limit = std::min(rem_demand[o], rem_cap[d]);
    for (long long value = 0; value <= limit; ++value) {
      current[k] = value;
      rem_demand[o] -= value;
      rem_cap[d] -= value;
      self(self, k + 1, cost + unit * static_cast<double>(value));
      rem_demand[o] += value;
      rem_cap[d] += value;
    }
    current[k] = 0;
  };
  enumerate(enumerate, 0, 0.0);

  if (best.empty() && !(best_cost < kInf)) {
    // No feasible allocation (an all-zero optimum still records `best`).
    EvacuationPlan plan;
    plan.status = PlanStatus::kInfeasible;
    return plan;
  }
  std::vector<double> flow_by_var(instance.variables.size(), 0.0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    flow_by_var[order[k]] = static_cast<double>(best[k]);
  }
  return finish_plan(instance, flow_by_var);
}

std::string plan_to_json(const EvacuationPlan& plan, const RailNetwork& network) {
  nlohmann::json out;
  out["status"] = to_string(plan.status);
  out["objective_att_minutes"] = plan.objective_att_minutes;
  out["total_evacuated"] = plan.total_evacuated;
  auto& flows = out["flows"] = nlohmann::json::array();
  for (const auto& f : plan.flows) {
    flows.push_back({{"from", network.stations.at(f.origin).station_id},
                     {"to", network.stations.at(f.dest).station_id},
                     {"persons", f.persons},
                     {"cost_minutes", f.cost_minutes}});
  }
  return out.dump(2) + "\n";
}

}  // namespace railevac
