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

#ifndef RAILEVAC_GEO_HPP
#define RAILEVAC_GEO_HPP

#include <algorithm>
#include <cmath>
#include <numbers>

namespace railevac {

inline constexpr double kEarthRadiusKm = 6371.0;

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Great-circle distance in km between two points given in decimal degrees.
// The half-angle argument is clamped to [0, 1] so rounding near antipodal
// points cannot push it outside asin's domain.
inline double haversine(double lat1, double lon1, double lat2, double lon2,
                        double radius_km = kEarthRadiusKm) {
  const double phi1 = deg_to_rad(lat1);
  const double phi2 = deg_to_rad(lat2);
  const double sin_dlat = std::sin(deg_to_rad(lat2 - lat1) / 2.0);
  const double sin_dlon = std::sin(deg_to_rad(lon2 - lon1) / 2.0);
  double h = sin_dlat * sin_dlat + std::cos(phi1) * std::cos(phi2) * sin_dlon * sin_dlon;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * radius_km * std::asin(std::sqrt(h));
}

}  // namespace railevac

#endif  // RAILEVAC_GEO_HPP
