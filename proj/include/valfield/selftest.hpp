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
#ifndef VALFIELD_SELFTEST_HPP
#define VALFIELD_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace valfield {

struct SuiteResult {
  std::string name;
  long samples = 0;
  long violations = 0;
  /// Description of the first violating sample, empty when none.
  std::string first_violation;
};

/// Seeded invariant suites: value-group laws, Laurent, p-adic and composite
/// valuation axioms, additivity, and decomposition properties.
std::vector<SuiteResult> run_selftest(std::uint64_t seed = 0, long samples = 1000);

} // namespace valfield

#endif
