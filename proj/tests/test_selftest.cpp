/* Copyright (C) 2026 The valfield Authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#include <valfield/selftest.hpp>

#include <doctest.h>

using namespace valfield;

TEST_CASE("selftest suites report no violations") {
  auto suites = run_selftest(0, 1000);
  CHECK(suites.size() == 7);
  for (const auto& s : suites) {
    CAPTURE(s.name);
    CAPTURE(s.first_violation);
    CHECK(s.samples > 0);
    CHECK(s.violations == 0);
  }
}

TEST_CASE("selftest is deterministic per seed") {
  auto a = run_selftest(7, 50), b = run_selftest(7, 50);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].violations == b[i].violations);
  }
}
