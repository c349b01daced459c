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
#include <valfield/error.hpp>
#include <valfield/newton.hpp>

#include <algorithm>

namespace valfield {

long NewtonPolygon::total_length() const {
  long s = 0;
  for (const auto& seg : segments_)
    s += seg.length;
  return s;
}

std::vector<mpq_class> NewtonPolygon::root_valuations() const {
  std::vector<mpq_class> out;
  for (const auto& seg : segments_)
    for (long i = 0; i < seg.length; ++i)
      out.push_back(-seg.slope);
  return out;
}

std::string NewtonPolygon::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < segments_.size(); ++i)
    s += (i ? ", " : "") + std::string("slope ") +
         rational_to_string(segments_[i].slope) + " x" +
         std::to_string(segments_[i].length);
  return s + "]";
}

NewtonPolygon newton_polygon(const std::vector<CoefficientValuation>& coeffs) {
  struct Pt {
    long i;
    mpq_class v;
  };
  std::vector<Pt> pts;
  std::vector<std::pair<long, mpq_class>> unknown;
  for (const auto& c : coeffs) {
    const auto& r = c.valuation;
    if (r.is_exact()) {
      if (r.value().is_infinite())
        continue;
      pts.push_back({c.index, r.value().q()});
    } else {
      unknown.emplace_back(c.index, r.value().q());
    }
  }
  if (pts.size() < 2) {
    if (!unknown.empty())
      throw Error(Errc::precision, "too few coefficients with exact valuation");
    return NewtonPolygon();
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.i < b.i; });
  for (const auto& [i, bound] : unknown)
    if (i < pts.front().i || i > pts.back().i)
      throw Error(Errc::precision, "end coefficient X^" + std::to_string(i) +
                                       " has indeterminate valuation");
  // Lower hull by monotone chain.
  std::vector<Pt> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // Drop b if it lies on or above segment a -> pt.
      mpq_class cross = (b.v - a.v) * (pt.i - a.i) - (pt.v - a.v) * (b.i - a.i);
      if (cross >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  // Height of the hull at index i.
  auto height = [&](long i) -> mpq_class {
    for (std::size_t k = 0; k + 1 < hull.size(); ++k)
      if (hull[k].i <= i && i <= hull[k + 1].i)
        return mpq_class(hull[k].v + (hull[k + 1].v - hull[k].v) * (i - hull[k].i) /
                                         mpq_class(hull[k + 1].i - hull[k].i));
    return hull.back().v;
  };
  for (const auto& [i, bound] : unknown)
    if (bound <= height(i))
      throw Error(Errc::precision,
                  "coefficient of X^" + std::to_string(i) +
                      " is indeterminate below the hull; raise precision");
  std::vector<NewtonPolygon::Segment> segs;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    long len = hull[k + 1].i - hull[k].i;
    mpq_class slope = (hull[k + 1].v - hull[k].v) / mpq_class(len);
    slope.canonicalize();
    segs.push_back({slope, len});
  }
  return NewtonPolygon(std::move(segs));
}

FundamentalData deduce_fundamental_data(const NewtonPolygon& polygon, long degree,
                                        std::optional<bool> reduction_irreducible,
                                        bool asserted_irreducible) {
  FundamentalData d;
  d.n = degree;
  d.polygon = polygon;
  const auto& segs = polygon.segments();
  if (polygon.total_length() != degree)
    throw Error(Errc::irreducibility, "polynomial vanishes at 0; not irreducible");
  if (segs.size() > 1)
    throw Error(Errc::irreducibility,
                "Newton polygon has several slopes, so the polynomial factors");
  long den = segs.front().slope.get_den().get_si();
  if (den == degree) {
    d.e = degree;
    d.f_res = 1;
    d.resolved = true;
    d.criterion = "newton-polygon";
    return d;
  }
  if (reduction_irreducible.value_or(false)) {
    d.e = 1;
    d.f_res = degree;
    d.resolved = true;
    d.criterion = "irreducible-reduction";
    return d;
  }
  if (!asserted_irreducible)
    throw Error(Errc::irreducibility,
                "irreducibility not certifiable (slope denominator " +
                    std::to_string(den) + " < degree " + std::to_string(degree) + ")");
  d.e = den;
  d.criterion = "asserted";
  // Only den | e | n is known here, so e and f stay open.
  return d;
}

} // namespace valfield
