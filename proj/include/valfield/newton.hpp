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
#ifndef VALFIELD_NEWTON_HPP
#define VALFIELD_NEWTON_HPP

#include <valfield/value.hpp>

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace valfield {

/// Valuation data of one coefficient a_i of f = sum a_i X^i.
struct CoefficientValuation {
  long index;
  ValuationResult valuation; // Exact(inf) for a structurally zero coefficient
};

/// Lower convex hull of the points (i, v(a_i)). Slopes are dv/di and
/// strictly increase; a segment of slope s and length l carries l roots of
/// valuation -s.
class NewtonPolygon {
public:
  struct Segment {
    mpq_class slope;
    long length;
    friend bool operator==(const Segment&, const Segment&) = default;
  };

  NewtonPolygon() = default;
  explicit NewtonPolygon(std::vector<Segment> segments) : segments_(std::move(segments)) {}

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  long total_length() const;
  /// Root valuations -slope with multiplicity, in increasing slope order.
  std::vector<mpq_class> root_valuations() const;
  std::string to_string() const;
  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;

private:
  std::vector<Segment> segments_;
};

/// Builds the polygon. Exact zeros are skipped; leading zeros at the low end
/// count as vanishing order at 0. Throws Errc::precision when an
/// indeterminate coefficient could lie on or below the hull.
NewtonPolygon newton_polygon(const std::vector<CoefficientValuation>& coeffs);

/// Degree, ramification index and residue degree of the extension defined by
/// an irreducible polynomial, with the rule that certified them.
struct FundamentalData {
  long n = 0;
  long e = 0;
  long f_res = 0;
  bool resolved = false;
  std::string criterion;
  NewtonPolygon polygon;
};

/// Certifies from the polygon (one segment whose slope denominator equals
/// the degree), or from an irreducible residue reduction of a polynomial
/// with unit leading coefficient and integral coefficients (unramified).
/// With neither, irreducibility must be asserted and the result is
/// unresolved unless the degree forces it.
FundamentalData deduce_fundamental_data(const NewtonPolygon& polygon, long degree,
                                        std::optional<bool> reduction_irreducible,
                                        bool asserted_irreducible);

} // namespace valfield

#endif
