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
#ifndef VALFIELD_LAURENT_HPP
#define VALFIELD_LAURENT_HPP

#include <valfield/finite_field.hpp>
#include <valfield/value.hpp>

#include <climits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace valfield {

/// Truncated Laurent series sum_{e >= low} c_e t^e + O(t^N) over a finite
/// field. The error order N is absolute; kExact marks a series known
/// exactly (a Laurent polynomial). Coefficients are stored without leading or
/// trailing zeros, so structural equality is value equality.
class LaurentSeries {
public:
  static constexpr long kExact = LONG_MAX / 4;

  explicit LaurentSeries(FieldRef field);
  LaurentSeries(FieldRef field, long low, std::vector<Elt> coeffs,
                long precision = kExact);

  static LaurentSeries zero(FieldRef field, long precision = kExact);
  static LaurentSeries constant(FieldRef field, Elt c);
  static LaurentSeries monomial(FieldRef field, Elt c, long exponent);

  const FieldRef& field() const noexcept { return field_; }
  long precision() const noexcept { return prec_; }
  bool is_exact() const noexcept { return prec_ >= kExact; }
  /// Exponent of the first stored coefficient (meaningless when empty).
  long low() const noexcept { return low_; }
  std::span<const Elt> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of t^e; throws when e is beyond the error order.
  Elt coeff(long e) const;
  /// Highest exponent with a stored coefficient plus one (low when empty).
  long end() const noexcept { return low_ + static_cast<long>(coeffs_.size()); }

  bool is_zero_to_precision() const noexcept { return coeffs_.empty(); }
  bool is_exact_zero() const noexcept { return coeffs_.empty() && is_exact(); }
  /// Exact(v) from the first nonzero coefficient, Exact(inf) for an exact
  /// zero, AtLeast(N) when every known coefficient vanishes.
  ValuationResult valuation() const;
  /// low() for nonzero series, else the error order.
  long valuation_lower_bound() const noexcept;

  LaurentSeries truncate(long precision) const;
  LaurentSeries operator-() const;
  LaurentSeries scale(Elt c) const;
  /// Multiplication by t^k.
  LaurentSeries shift(long k) const;
  /// x^(p^k); the error order scales by p^k in characteristic p.
  LaurentSeries frobenius(int k = 1) const;
  LaurentSeries pow(unsigned long n) const;
  /// Quotient with the result's error order capped at `cap`; needed when
  /// both operands are exact and the divisor is not a monomial.
  LaurentSeries divide(const LaurentSeries& divisor, long cap) const;

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

  /// `t^-2 + 3*t^0 + t^5 + O(t^8)`; `0` for the exact zero.
  std::string to_string(std::string_view var = "t") const;
  /// Inverse of to_string; also accepts `t`, bare constants and `-` signs.
  static LaurentSeries parse(const FieldRef& field, std::string_view text,
                             std::string_view var = "t");

private:
  void normalize();
  FieldRef field_;
  long low_ = 0;
  std::vector<Elt> coeffs_;
  long prec_ = kExact;
};

enum class SeriesOp { add, sub, mul, div };
LaurentSeries series_arith(const LaurentSeries& a, const LaurentSeries& b,
                           SeriesOp op);

/// Saturating sum of error orders (kExact absorbs).
long add_precision(long a, long b) noexcept;

/// Dense univariate polynomial over truncated Laurent series, low degree first.
using SeriesPoly = std::vector<LaurentSeries>;

LaurentSeries eval_series_poly(std::span<const LaurentSeries> f,
                               const LaurentSeries& x);
SeriesPoly derivative(std::span<const LaurentSeries> f);

/// Newton iteration from x0 satisfying v(f(x0)) > 2 v(f'(x0)); returns x with
/// f(x) = 0 mod t^target_precision and v(x - x0) > v(f'(x0)).
LaurentSeries hensel_lift(std::span<const LaurentSeries> f,
                          const LaurentSeries& x0, long target_precision);

/// Solves x^p - x = a. Returns nullopt when a has a negative-exponent part
/// that cannot be removed (an exponent not divisible by p survives) or when
/// the residue equation has no root. For an exact input the answer is
/// computed modulo t^precision_cap.
std::optional<LaurentSeries> artin_schreier_solve(const LaurentSeries& a,
                                                  long precision_cap = 64);

} // namespace valfield

#endif
