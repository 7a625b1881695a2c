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

#ifndef RAILEVAC_GENERATOR_HPP
#define RAILEVAC_GENERATOR_HPP

#include <cstdint>
#include <filesystem>
#include <string>

namespace railevac {

struct GeneratedFiles {
  std::filesystem::path stations;
  std::filesystem::path lines;
  std::filesystem::path passengers;
};

// Writes a synthetic network in the loader's format: stations scattered
// over a Greater-Tokyo-sized box, simple lines over random station
// sequences, and log-normal daily passenger counts for every station (so the
// loader never warns). Operators cycle through a fixed pool of 21 names.
// The same seed always produces byte-identical files.
GeneratedFiles generate_network_files(std::uint64_t seed, int n_stations, int n_lines,
                                      const std::filesystem::path& out_dir);

}  // namespace railevac

#endif  // RAILEVAC_GENERATOR_HPP
