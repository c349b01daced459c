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
#ifndef VALFIELD_PADIC_HPP
#define VALFIELD_PADIC_HPP

#include <valfield/newton.hpp>
#include <valfield/value.hpp>

#include <gmpxx.h>

#include <climits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace valfield {

/// Element of Q_p known modulo p^N: p^val * unit with the unit stored modulo
/// p^(N - val). Error orders propagate as for Laurent series. The only exact
/// element is the structural zero.
class PAdicNumber {
public:
  static constexpr long kExact = LONG_MAX / 4;

  /// Exact zero.
  explicit PAdicNumber(long p);
  /// Zero known modulo p^N.
  static PAdicNumber zero(long p, long precision);
  static PAdicNumber from_rational(long p, const mpq_class& q, long precision);

  long p() const noexcept { return p_; }
  long precision() const noexcept { return prec_; }
  bool is_exact_zero() const noexcept { return prec_ >= kExact; }
  bool is_zero_to_precision() const noexcept { return unit_ == 0; }
  /// Valuation when nonzero, else the error order.
  long valuation_lower_bound() const noexcept;
  ValuationResult valuation() const;
  const mpz_class& unit() const noexcept { return unit_; }
  /// Base-p digits of the unit part, least significant first.
  std::vector<long> unit_digits() const;
  /// p^val * unit as a rational number.
  mpq_class representative() const;

  PAdicNumber operator-() const;
  friend PAdicNumber operator+(const PAdicNumber& a, const PAdicNumber& b);
  friend PAdicNumber operator-(const PAdicNumber& a, const PAdicNumber& b);
  friend PAdicNumber operator*(const PAdicNumber& a, const PAdicNumber& b);
  friend PAdicNumber operator/(const PAdicNumber& a, const PAdicNumber& b);
  PAdicNumber truncate(long precision) const;

  /// True when a - b vanishes to the common precision.
  bool equals_at_precision(const PAdicNumber& other) const;
  std::string to_string() const;

private:
  PAdicNumber(long p, long val, mpz_class unit, long prec);
  long p_;
  long val_ = 0;
  mpz_class unit_ = 0;
  long prec_ = kExact;
};

/// Polynomial over Q_p, low degree first.
using PAdicPoly = std::vector<PAdicNumber>;

/// Polynomial with rational coefficients, low degree first.
using RationalPoly = std::vector<mpq_class>;

/// Parses `3*X^6 - 6*X^4 + 3*X^2 - 1`, optionally followed by
/// `(over Q_p, prec=N)`; p and prec are returned through the pointers when
/// the suffix is present.
RationalPoly parse_rational_poly(std::string_view text, long* p = nullptr,
                                 long* prec = nullptr);
std::string format_rational_poly(const RationalPoly& f);
std::string format_rational_poly(const RationalPoly& f, long p, long prec);

PAdicPoly to_padic(const RationalPoly& f, long p, long precision);

NewtonPolygon newton_polygon(const PAdicPoly& f);

/// Res(f, g) as the determinant of the Sylvester matrix.
PAdicNumber resultant(const PAdicPoly& f, const PAdicPoly& g);

/// Determinant by elimination with minimal-valuation pivots.
PAdicNumber padic_determinant(std::vector<std::vector<PAdicNumber>> m);

/// Q_p[X]/(f) for a polynomial f made monic over Q_p.
class PAdicExtension {
public:
  /// The defining polynomial is divided by its leading coefficient.
  /// Irreducibility is certified from the Newton polygon or the residue
  /// reduction, or taken from `asserted_irreducible`.
  static std::shared_ptr<const PAdicExtension>
  create(long p, const RationalPoly& f, long precision, bool asserted_irreducible = false);

  long p() const noexcept { return p_; }
  long degree() const noexcept { return static_cast<long>(monic_.size()) - 1; }
  long precision() const noexcept { return prec_; }
  const RationalPoly& defining() const noexcept { return defining_; }
  const PAdicPoly& monic() const noexcept { return monic_; }
  /// Present when irreducibility was certified or asserted.
  const std::optional<FundamentalData>& certification() const noexcept { return cert_; }

private:
  PAdicExtension() = default;
  long p_ = 0;
  long prec_ = 0;
  RationalPoly defining_;
  PAdicPoly monic_;
  std::optional<FundamentalData> cert_;
};

using ExtRef = std::shared_ptr<const PAdicExtension>;

/// g(eta) in Q_p[X]/(f), stored as the reduced representative of degree < n.
class PAdicExtElement {
public:
  PAdicExtElement(ExtRef ext, PAdicPoly coeffs);
  static PAdicExtElement from_rational_poly(ExtRef ext, const RationalPoly& g);
  static PAdicExtElement generator(ExtRef ext);
  static PAdicExtElement constant(ExtRef ext, const mpq_class& c);

  const ExtRef& extension() const noexcept { return ext_; }
  const PAdicPoly& coeffs() const noexcept { return coeffs_; }

  friend PAdicExtElement operator+(const PAdicExtElement& a, const PAdicExtElement& b);
  friend PAdicExtElement operator-(const PAdicExtElement& a, const PAdicExtElement& b);
  friend PAdicExtElement operator*(const PAdicExtElement& a, const PAdicExtElement& b);
  friend PAdicExtElement operator/(const PAdicExtElement& a, const PAdicExtElement& b);
  PAdicExtElement pow(unsigned n) const;
  /// Solves a * x = 1 through the multiplication matrix.
  PAdicExtElement inverse() const;

  /// Matrix of multiplication by this element in the basis 1, eta, ...
  std::vector<std::vector<PAdicNumber>> multiplication_matrix() const;
  /// Norm as det of the multiplication matrix.
  PAdicNumber norm() const;
  bool equals_at_precision(const PAdicExtElement& other) const;
  std::string to_string() const;

private:
  ExtRef ext_;
  PAdicPoly coeffs_;
};

enum class ExtOp { add, sub, mul, div };
PAdicExtElement ext_arith(const PAdicExtElement& a, const PAdicExtElement& b, ExtOp op);

/// v(a) = v(Res(f, g)) / deg f for the unique extension of v_p.
Value ext_valuation(const PAdicExtElement& a);

/// ext_valuation for g(eta) in Q_p[X]/(f), raising the working precision
/// (default 4 * deg f * denominator_bound digits) up to three times when the
/// resultant is indeterminate.
Value ext_valuation(long p, const RationalPoly& f, const RationalPoly& g,
                    long denominator_bound, bool asserted_irreducible = false);

/// n, e and the residue degree for the extension defined by f over Q_p.
FundamentalData fundamental_equality_data(long p, const RationalPoly& f,
                                          long precision = 0,
                                          bool asserted_irreducible = false);

/// Exact p-adic valuation of a nonzero integer (Legendre's formula for n!).
long padic_valuation(const mpz_class& n, long p);
long binomial_valuation(long n, long k, long p);

} // namespace valfield

#endif
