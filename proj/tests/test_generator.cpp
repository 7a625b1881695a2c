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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "railevac/errors.hpp"
#include "railevac/generator.hpp"
#include "railevac/network.hpp"
#include "test_support.hpp"

using railevac::generate_network_files;
using railevac::testing::slurp;
using railevac::testing::TempDir;

TEST_CASE("the same seed writes byte-identical files") {
  TempDir a, b;
  generate_network_files(42, 10, 2, a.path());
  generate_network_files(42, 10, 2, b.path());
  CHECK(slurp(a.file("stations.csv")) == slurp(b.file("stations.csv")));
  CHECK(slurp(a.file("lines.csv")) == slurp(b.file("lines.csv")));
  CHECK(slurp(a.file("passengers.csv")) == slurp(b.file("passengers.csv")));
}

TEST_CASE("different seeds write different networks") {
  TempDir a, b;
  generate_network_files(42, 10, 2, a.path());
  generate_network_files(43, 10, 2, b.path());
  CHECK(slurp(a.file("stations.csv")) != slurp(b.file("stations.csv")));
}

TEST_CASE("counts below the minimum are rejected") {
  TempDir dir;
  CHECK_THROWS_AS(generate_network_files(1, 1, 1, dir.path()), railevac::ValidationError);
  CHECK_THROWS_AS(generate_network_files(1, 10, 0, dir.path()), railevac::ValidationError);
}

TEST_CASE("generated networks load cleanly across one hundred seeds") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    TempDir dir;
    generate_network_files(seed, 30, 5, dir.path());
    const auto result = railevac::load_network(
        dir.file("stations.csv"), dir.file("lines.csv"), dir.file("passengers.csv"));
    CHECK(result.network.size() == 30);
    CHECK(result.summary.line_count == 5);
    CHECK(result.summary.warnings.empty());
    CHECK(result.summary.missing_passenger_rows == 0);
  }
}
