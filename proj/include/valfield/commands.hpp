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
#ifndef VALFIELD_COMMANDS_HPP
#define VALFIELD_COMMANDS_HPP

#include <valfield/error.hpp>
#include <valfield/finite_field.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace valfield {

/// Exit codes of the command layer; errors map through exit_code(Errc).
enum class Outcome { pass = 0, check_failed = 2, inconclusive = 3 };

struct Report {
  std::string text;
  std::string json;
  Outcome outcome = Outcome::pass;
};

/// `F(2)((t))` or bare `F(2)` is a Laurent field, `F(2)((u))((t))` the
/// composite field, `Q_3` the p-adic field.
struct FieldSpec {
  enum class Kind { laurent, composite, padic };
  Kind kind = Kind::laurent;
  FieldRef field;
  long p = 0;
  static FieldSpec parse(std::string_view text);
};

int exit_code(Errc code) noexcept;

struct OapArgs {
  std::string field, poly, target;
  long precision = 8;
  bool oracle = false;
  std::uint64_t budget = 10'000'000;
};

struct DecomposeArgs {
  std::string field, poly;
  long work_precision = 128;
  /// Compares image sets modulo t^oracle_precision when positive.
  long oracle_precision = 0;
  std::uint64_t budget = 10'000'000;
};

struct AlphaArgs {
  std::string field, poly;
  /// Samples the inequalities and the separation when positive.
  long samples = 0;
  std::uint64_t seed = 0;
};

struct ExtremalArgs {
  std::string field, poly;
  std::string ball = "v>=0 around 0";
  long precision = 4;
  long t_precision = 2, u_precision = 3, u_floor = -1;
  bool pushdown = false;
  std::uint64_t budget = 10'000'000;
};

struct TransferArgs {
  std::string field, poly;
  long alpha = 0, beta = 0;
  std::string a = "0", b = "0", c = "1";
  /// Compares value multisets modulo t^check_precision when positive.
  long check_precision = 0;
  std::uint64_t budget = 10'000'000;
};

struct ComposeArgs {
  std::string field, poly;
  std::vector<std::string> images;
};

struct FundEqArgs {
  std::string field, poly;
  long precision = 0;
  bool asserted_irreducible = false;
};

Report cmd_oap(const OapArgs& a);
Report cmd_decompose(const DecomposeArgs& a);
Report cmd_alpha(const AlphaArgs& a);
Report cmd_extremal(const ExtremalArgs& a);
Report cmd_transfer(const TransferArgs& a);
Report cmd_compose(const ComposeArgs& a);
Report cmd_tmcne(long p);
Report cmd_fundeq(const FundEqArgs& a);
Report cmd_selftest(std::uint64_t seed, long samples);

} // namespace valfield

#endif
