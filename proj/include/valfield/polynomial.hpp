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
#ifndef VALFIELD_POLYNOMIAL_HPP
#define VALFIELD_POLYNOMIAL_HPP

#include <valfield/laurent.hpp>

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace valfield {

/// Multivariate polynomial in X1..Xn with truncated Laurent series
/// coefficients. Zero coefficients are never stored.
class Polynomial {
public:
  using Exponents = std::vector<unsigned>;

  Polynomial(FieldRef field, int nvars);
  static Polynomial constant(FieldRef field, int nvars, const LaurentSeries& c);
  /// X_i for 1 <= i <= nvars.
  static Polynomial variable(FieldRef field, int nvars, int i);

  const FieldRef& field() const noexcept { return field_; }
  int nvars() const noexcept { return nvars_; }
  const std::map<Exponents, LaurentSeries>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  unsigned total_degree() const;
  /// Coefficient of the monomial, the exact zero when absent.
  LaurentSeries coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const LaurentSeries& c);
  /// Same polynomial in more variables.
  Polynomial widen(int nvars) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  Polynomial pow(unsigned n) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  LaurentSeries evaluate(std::span<const LaurentSeries> args) const;
  /// f(images_1, ..., images_n); all images share one variable count.
  Polynomial substitute(std::span<const Polynomial> images) const;

  /// Variables print as X for univariate polynomials, X1..Xn otherwise;
  /// coefficients are series in `var`.
  std::string to_string(std::string_view var = "t") const;
  /// Parses expressions such as `t*X1^4 + X2^2 + t^-3` or `(Y+1)^2 + t`.
  /// nvars = 0 infers the count from the highest variable index used.
  static Polynomial parse(const FieldRef& field, std::string_view text,
                          int nvars = 0, std::string_view var = "t");

private:
  FieldRef field_;
  int nvars_;
  std::map<Exponents, LaurentSeries> terms_;
};

} // namespace valfield

#endif
