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

#ifndef RAILEVAC_COST_HPP
#define RAILEVAC_COST_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "railevac/matrix.hpp"
#include "railevac/network.hpp"

namespace railevac {

// Pairs beyond the disruption window are marked unreachable; the sentinel
// never enters arithmetic and excludes the pair from the solver's variables.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

inline bool is_reachable(double cost_minutes) { return std::isfinite(cost_minutes); }

struct CostParams {
  double walk_speed_kmh = 5.0;       // average walking speed
  double hop_time_minutes = 2.0;     // train time per adjacent hop
  double t_lm_minutes = 30.0;        // disruption window; also the reachability cutoff
  double earth_radius_km = 6371.0;
  bool one_transfer_refinement = false;

  // Throws ValidationError when a field is out of its domain.
  void validate() const;
};

// Walking time in minutes to cover `km` at `speed_kmh`.
inline double walking_minutes(double km, double speed_kmh) {
  return 60.0 * km / speed_kmh;
}

// The three fused matrices over one network, immutable after build.
//
// travel_minutes(i, j) is: 0 on the diagonal, hop time where stations are
// rail-adjacent, walking time over the great-circle distance otherwise, and
// kUnreachable wherever that value would exceed the window.
class CostModel {
 public:
  const SquareMatrix<std::uint8_t>& connections() const { return connections_; }
  const SquareMatrix<double>& distances_km() const { return distances_; }
  const SquareMatrix<double>& costs() const { return costs_; }
  const CostParams& params() const { return params_; }

  int size() const { return costs_.size(); }
  bool connected(int i, int j) const { return connections_(i, j) != 0; }
  double distance_km(int i, int j) const { return distances_(i, j); }
  double travel_minutes(int i, int j) const { return costs_(i, j); }

  // Train time is uniform over adjacent hops; NaN where there is no hop.
  double train_minutes(int i, int j) const {
    return connected(i, j) ? params_.hop_time_minutes
                           : std::numeric_limits<double>::quiet_NaN();
  }

 private:
  friend CostModel build_cost_matrix(const RailNetwork&, const CostParams&);
  SquareMatrix<std::uint8_t> connections_;
  SquareMatrix<double> distances_;
  SquareMatrix<double> costs_;
  CostParams params_;
};

// 1 where stations are consecutive stops on some line, 0 elsewhere
// (diagonal included). Symmetric by construction.
SquareMatrix<std::uint8_t> build_connection_matrix(const RailNetwork& network);

// Fuses connections and great-circle distances into travel minutes, then
// masks every entry strictly above t_lm as unreachable. With the one-transfer
// refinement on, each pair may first route through one intermediate station:
// cost'(i,j) = min(cost(i,j), min_m cost(i,m) + cost(m,j)).
CostModel build_cost_matrix(const RailNetwork& network, const CostParams& params);

// cost.json: {"n": ..., "station_ids": [...], "entries": [{"i","j","minutes"}]}.
// Unreachable entries are omitted.
std::string cost_model_to_json(const CostModel& model, const RailNetwork& network);

}  // namespace railevac

#endif  // RAILEVAC_COST_HPP
