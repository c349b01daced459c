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
#ifndef VALFIELD_ERROR_HPP
#define VALFIELD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace valfield {

enum class Errc {
  usage,
  parse,
  rank_mismatch,
  empty_input,
  division_by_zero,
  descriptor_mismatch,
  precision,
  hensel_condition,
  budget_exceeded,
  precondition,
  irreducibility,
};

const char* errc_name(Errc code) noexcept;

/// Every failure in the library is reported as an Error carrying a code; the
/// C API maps the code onto its status values.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace valfield

#endif
