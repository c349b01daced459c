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
#ifndef VALFIELD_DETAIL_BALL_ENUM_HPP
#define VALFIELD_DETAIL_BALL_ENUM_HPP

#include <algorithm>
#include <vector>

namespace valfield {

template <class Visit>
void for_each_representative(const Ball& s, int nvars, long input_precision, Visit&& visit) {
  const FieldRef& field = s.center.field();
  const std::size_t digits =
      static_cast<std::size_t>(std::max(0L, input_precision - s.radius));
  const Elt q = field->size();
  std::vector<Elt> counter(digits * static_cast<std::size_t>(nvars), 0);
  LaurentSeries base = s.center.truncate(input_precision);
  std::vector<LaurentSeries> args(static_cast<std::size_t>(nvars), base);
  while (true) {
    for (int i = 0; i < nvars; ++i) {
      auto first = counter.begin() + static_cast<std::ptrdiff_t>(digits * i);
      std::vector<Elt> d(first, first + static_cast<std::ptrdiff_t>(digits));
      args[static_cast<std::size_t>(i)] =
          base + LaurentSeries(field, s.radius, std::move(d), input_precision);
    }
    visit(static_cast<const std::vector<LaurentSeries>&>(args));
    std::size_t pos = 0;
    while (pos < counter.size() && ++counter[pos] == q)
      counter[pos++] = 0;
    if (pos == counter.size())
      return;
  }
}

} // namespace valfield

#endif
