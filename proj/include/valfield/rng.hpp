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
#ifndef VALFIELD_RNG_HPP
#define VALFIELD_RNG_HPP

#include <cstdint>
#include <random>

namespace valfield {

/// Seeded generator for sampling; reduces raw mt19937_64 output by modulo so
/// streams are identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}
  /// Uniform-ish integer in [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return (gen_() & 1) != 0; }
  std::uint64_t next() { return gen_(); }

private:
  std::mt19937_64 gen_;
};

} // namespace valfield

#endif
