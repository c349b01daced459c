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
#ifndef VALFIELD_FINITE_FIELD_HPP
#define VALFIELD_FINITE_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace valfield {

class FiniteField;
using FieldRef = std::shared_ptr<const FiniteField>;

/// Packed element code: base-p digits c0 + c1*p + ... + c_{k-1}*p^{k-1},
/// the coefficients of the representative polynomial in the generator x.
using Elt = std::uint64_t;

/// Residue field F_p or F_{p^k} = F_p[x]/(modulus). Immutable after creation
/// and shared read-only.
class FiniteField {
public:
  /// Prime field F_p.
  static FieldRef prime(long p);
  /// F_{p^k}; when no modulus is given, the first monic irreducible of
  /// degree k (coefficient codes in increasing order) is used.
  static FieldRef create(long p, int k,
                         std::optional<std::vector<long>> modulus = {});
  /// Parses `F(p)`, `F(p^k)` or `F(p^k; modulus=[c0,...,ck])`.
  static FieldRef parse(std::string_view text);

  long p() const noexcept { return p_; }
  int k() const noexcept { return k_; }
  std::uint64_t size() const noexcept { return q_; }
  const std::vector<long>& modulus() const noexcept { return modulus_; }
  bool same_as(const FiniteField& other) const noexcept;
  std::string to_string() const;

  Elt zero() const noexcept { return 0; }
  Elt one() const noexcept { return 1; }
  Elt from_int(long n) const noexcept;
  Elt from_coeffs(std::span<const long> coeffs) const;
  std::vector<long> coeffs(Elt a) const;
  /// Class of x in F_p[x]/(modulus); 1 in a prime field.
  Elt generator() const noexcept { return k_ == 1 ? 1 : static_cast<Elt>(p_); }

  Elt add(Elt a, Elt b) const noexcept;
  Elt sub(Elt a, Elt b) const noexcept;
  Elt neg(Elt a) const noexcept;
  Elt mul(Elt a, Elt b) const noexcept;
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::uint64_t e) const noexcept;
  /// Frobenius a -> a^p and its inverse a -> a^{q/p}.
  Elt frobenius(Elt a) const noexcept { return pow(a, static_cast<std::uint64_t>(p_)); }
  Elt frobenius_inverse(Elt a) const noexcept { return pow(a, q_ / static_cast<std::uint64_t>(p_)); }

  std::string format(Elt a) const;
  /// Parses an integer (reduced mod p) or a coefficient list `[c0,c1,...]`.
  Elt parse_element(std::string_view text) const;

private:
  FiniteField(long p, int k, std::vector<long> modulus);
  Elt mul_slow(Elt a, Elt b) const noexcept;
  void build_tables();

  long p_;
  int k_;
  std::uint64_t q_;
  std::vector<long> modulus_; // monic, length k + 1
  std::vector<std::uint32_t> log_;
  std::vector<Elt> exp_;
};

/// Value-type element with its field attached.
class FFElement {
public:
  FFElement(FieldRef field, Elt code) : field_(std::move(field)), code_(code) {}
  static FFElement from_int(const FieldRef& f, long n) { return {f, f->from_int(n)}; }

  const FieldRef& field() const noexcept { return field_; }
  Elt code() const noexcept { return code_; }
  bool is_zero() const noexcept { return code_ == 0; }

  friend FFElement operator+(const FFElement& a, const FFElement& b);
  friend FFElement operator-(const FFElement& a, const FFElement& b);
  friend FFElement operator*(const FFElement& a, const FFElement& b);
  friend FFElement operator/(const FFElement& a, const FFElement& b);
  FFElement operator-() const { return {field_, field_->neg(code_)}; }
  FFElement pow(std::uint64_t e) const { return {field_, field_->pow(code_, e)}; }

  friend bool operator==(const FFElement& a, const FFElement& b);
  std::string to_string() const { return field_->format(code_); }

private:
  FieldRef field_;
  Elt code_;
};

enum class FFOp { add, sub, mul, div };
FFElement ff_arith(const FFElement& a, const FFElement& b, FFOp op);

/// Horner evaluation of a polynomial given by coefficient codes (low first).
Elt ff_poly_eval(const FiniteField& f, std::span<const Elt> poly, Elt x);

/// Some root of the polynomial (coefficients low first) by exhaustive scan;
/// rejects fields with more than 10^6 elements.
std::optional<FFElement> has_root(std::span<const FFElement> poly);

/// True iff X^p - X - c is irreducible over the prime field F_p, which for
/// Artin-Schreier polynomials is the same as having no root.
bool artin_schreier_irreducible(const FFElement& c);

/// Exhaustive irreducibility test by trial division with every monic
/// polynomial of degree <= deg/2 (coefficient codes, low first).
bool ff_poly_irreducible(const FiniteField& f, std::span<const Elt> poly);

bool is_prime(long n) noexcept;

} // namespace valfield

#endif
