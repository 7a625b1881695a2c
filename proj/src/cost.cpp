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

#include "railevac/cost.hpp"

#include <nlohmann/json.hpp>

#include "railevac/errors.hpp"
#include "railevac/geo.hpp"
#include "railevac/io_util.hpp"

namespace railevac {

void CostParams::validate() const {
  if (!(walk_speed_kmh > 0.0)) {
    throw ValidationError("walk speed must be positive (got " + fmt_double(walk_speed_kmh) + ")");
  }
  if (!(hop_time_minutes >= 0.0)) {
    throw ValidationError("hop time must be nonnegative (got " + fmt_double(hop_time_minutes) + ")");
  }
  if (!(t_lm_minutes > 0.0)) {
    throw ValidationError("t_lm must be positive (got " + fmt_double(t_lm_minutes) + ")");
  }
  if (!(earth_radius_km > 0.0)) {
    throw ValidationError("earth radius must be positive");
  }
}

SquareMatrix<std::uint8_t> build_connection_matrix(const RailNetwork& network) {
  SquareMatrix<std::uint8_t> con(network.size(), 0);
  for (const auto& [i, j] : adjacency_pairs(network)) {
    con(i, j) = 1;
    con(j, i) = 1;
  }
  return con;
}

CostModel build_cost_matrix(const RailNetwork& network, const CostParams& params) {
  params.validate();
  const int n = network.size();

  CostModel model;
  model.params_ = params;
  model.connections_ = build_connection_matrix(network);
  model.distances_ = SquareMatrix<double>(n, 0.0);
  model.costs_ = SquareMatrix<double>(n, 0.0);

  for (int i = 0; i < n; ++i) {
    const Station& a = network.stations[i];
    for (int j = i + 1; j < n; ++j) {
      const Station& b = network.stations[j];
      const double d = haversine(a.lat, a.lon, b.lat, b.lon, params.earth_radius_km);
      model.distances_(i, j) = d;
      model.distances_(j, i) = d;
    }
  }

  // Train time where connected, walking time where not; diagonal stays 0.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      model.costs_(i, j) = model.connections_(i, j)
                               ? params.hop_time_minutes
                               : walking_minutes(model.distances_(i, j), params.walk_speed_kmh);
    }
  }

  if (params.one_transfer_refinement) {
    // One min-plus pass: allow a single intermediate station before masking.
    SquareMatrix<double> refined = model.costs_;
    for (int i = 0; i < n; ++i) {
      for (int m = 0; m < n; ++m) {
        const double through = model.costs_(i, m);
        for (int j = 0; j < n; ++j) {
          const double candidate = through + model.costs_(m, j);
          if (candidate < refined(i, j)) refined(i, j) = candidate;
        }
      }
    }
    model.costs_ = std::move(refined);
  }

  // Entries strictly above the window become unreachable.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (model.costs_(i, j) > params.t_lm_minutes) {
        model.costs_(i, j) = kUnreachable;
      }
    }
  }
  return model;
}

std::string cost_model_to_json(const CostModel& model, const RailNetwork& network) {
  nlohmann::json out;
  const int n = model.size();
  out["n"] = n;
  auto& ids = out["station_ids"] = nlohmann::json::array();
  for (const auto& s : network.stations) ids.push_back(s.station_id);
  auto& entries = out["entries"] = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double minutes = model.travel_minutes(i, j);
      if (!is_reachable(minutes)) continue;
      entries.push_back({{"i", i}, {"j", j}, {"minutes", minutes}});
    }
  }
  return out.dump(2) + "\n";
}

}  // namespace railevac
