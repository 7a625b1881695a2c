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

#include "railevac/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "railevac/errors.hpp"
#include "railevac/io_util.hpp"

namespace railevac {
namespace {

// Explicit transforms over raw mt19937_64 output; the standard library's
// distributions are implementation-defined, these stay stable everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  double normal() {
    // Box-Muller; u clamped away from 0 so the log stays finite.
    const double u = std::max(uniform(), 0x1.0p-60);
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }

  double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

 private:
  std::mt19937_64 engine_;
};

std::string padded(const char* prefix, int value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, value);
  return buf;
}

std::string coord(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

const char* kOperators[] = {
    "OP01", "OP02", "OP03", "OP04", "OP05", "OP06", "OP07", "OP08", "OP09", "OP10", "OP11",
    "OP12", "OP13", "OP14", "OP15", "OP16", "OP17", "OP18", "OP19", "OP20", "OP21"};
constexpr int kOperatorCount = 21;

}  // namespace

GeneratedFiles generate_network_files(std::uint64_t seed, int n_stations, int n_lines,
                                      const std::filesystem::path& out_dir) {
  if (n_stations < 2) {
    throw ValidationError("generator needs at least 2 stations (got " +
                          std::to_string(n_stations) + ")");
  }
  if (n_lines < 1) {
    throw ValidationError("generator needs at least 1 line (got " +
                          std::to_string(n_lines) + ")");
  }
  std::filesystem::create_directories(out_dir);

  Rng rng(seed);
  const int id_width = std::max(4, static_cast<int>(std::to_string(n_stations - 1).size()));

  // Greater-Tokyo-sized bounding box.
  constexpr double kLatLo = 35.3, kLatHi = 36.1;
  constexpr double kLonLo = 139.1, kLonHi = 140.2;

  std::string stations = "station_id,name,operator,lat,lon\n";
  for (int i = 0; i < n_stations; ++i) {
    const std::string id = padded("S", i, id_width);
    stations += id + ",Station " + std::to_string(i) + "," +
                kOperators[rng.below(kOperatorCount)] + "," +
                coord(rng.uniform(kLatLo, kLatHi)) + "," + coord(rng.uniform(kLonLo, kLonHi)) +
                "\n";
  }

  std::string lines = "line_id,line_name,operator,seq,station_id\n";
  std::vector<int> pool(n_stations);
  for (int i = 0; i < n_stations; ++i) pool[i] = i;
  const int line_width = std::max(3, static_cast<int>(std::to_string(n_lines - 1).size()));
  for (int l = 0; l < n_lines; ++l) {
    const int max_len = std::min(n_stations, 24);
    const int length = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len - 1)));
    // Partial Fisher-Yates: the first `length` entries become the stops.
    for (int k = 0; k < length; ++k) {
      const int swap_with = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_stations - k)));
      std::swap(pool[k], pool[swap_with]);
    }
    const std::string line_id = padded("L", l, line_width);
    const std::string op = kOperators[rng.below(kOperatorCount)];
    for (int k = 0; k < length; ++k) {
      lines += line_id + ",Line " + std::to_string(l) + "," + op + "," + std::to_string(k + 1) +
               "," + padded("S", pool[k], id_width) + "\n";
    }
  }

  std::string passengers = "station_id,daily_passengers\n";
  for (int i = 0; i < n_stations; ++i) {
    const double daily = std::floor(rng.lognormal(9.0, 1.0));
    passengers += padded("S", i, id_width) + "," +
                  std::to_string(static_cast<long long>(daily)) + "\n";
  }

  GeneratedFiles files;
  files.stations = out_dir / "stations.csv";
  files.lines = out_dir / "lines.csv";
  files.passengers = out_dir / "passengers.csv";
  write_atomic(files.stations, stations);
  write_atomic(files.lines, lines);
  write_atomic(files.passengers, passengers);
  return files;
}

}  // namespace railevac
