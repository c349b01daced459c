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
#ifndef VALFIELD_EXTREMALITY_HPP
#define VALFIELD_EXTREMALITY_HPP

#include <valfield/additive.hpp>
#include <valfield/polynomial.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace valfield {

/// A truncated search never decides extremality of the infinite field; it
/// only reports whether its own maximum is determined.
enum class Verdict { max_attained, indeterminate };
std::string_view to_string(Verdict v);

struct ExtremalResult {
  std::vector<LaurentSeries> witness;
  ValuationResult value = ValuationResult::at_least(Value::rank1(0));
  Verdict verdict = Verdict::indeterminate;
  std::uint64_t evaluated = 0;
};

/// Max of v(f(a)) over representatives of S^n modulo t^input_precision
/// (0 means N); values at or past N are AtLeast(N).
ExtremalResult extremal_search(const Polynomial& f, const Ball& s, long N,
                               std::uint64_t budget = 10'000'000, long input_precision = 0);

/// g(y) = f(c(y_1 - a) + b, ..., c(y_n - a) + b), so that
/// g(B_alpha(a)^n) = f(B_beta(b)^n). Requires v(c) = beta - alpha exactly.
Polynomial ball_transfer(const Polynomial& f, long alpha, const LaurentSeries& a, long beta,
                         const LaurentSeries& b, const LaurentSeries& c);

/// Element of F_q((u))((t)): sum_{e >= low} c_e t^e + O(t^N) with each c_e a
/// truncated series in u. Exact zero coefficients are never stored at the ends.
class CompositeSeries {
public:
  static constexpr long kExact = LaurentSeries::kExact;

  explicit CompositeSeries(FieldRef field);
  CompositeSeries(FieldRef field, long low, std::vector<LaurentSeries> coeffs,
                  long precision = kExact);
  static CompositeSeries constant(const LaurentSeries& c);
  /// c t^e.
  static CompositeSeries monomial(const LaurentSeries& c, long e);

  const FieldRef& field() const noexcept { return field_; }
  long low() const noexcept { return low_; }
  long end() const noexcept { return low_ + static_cast<long>(coeffs_.size()); }
  long precision() const noexcept { return prec_; }
  std::span<const LaurentSeries> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of t^e; throws beyond the error order.
  LaurentSeries coeff(long e) const;
  bool is_exact_zero() const noexcept { return coeffs_.empty() && prec_ >= kExact; }

  /// Lex rank-2 valuation (w, w-bar). AtLeast((e, M)) when the first
  /// coefficient not known to vanish is only known modulo u^M; AtLeast((N, 0))
  /// when every coefficient below t^N vanishes, meaning w >= N.
  ValuationResult valuation() const;

  CompositeSeries operator-() const;
  friend CompositeSeries operator+(const CompositeSeries& a, const CompositeSeries& b);
  friend CompositeSeries operator-(const CompositeSeries& a, const CompositeSeries& b);
  friend CompositeSeries operator*(const CompositeSeries& a, const CompositeSeries& b);
  friend bool operator==(const CompositeSeries& a, const CompositeSeries& b);
  CompositeSeries pow(unsigned long n) const;

  /// `(u^-1) + (u^3)*t^1`.
  std::string to_string() const;
  /// Expressions in t and u such as `u^-1 + t*u^3` or `t^2*(1+u)`.
  static CompositeSeries parse(const FieldRef& field, std::string_view text);

private:
  void normalize();
  FieldRef field_;
  long low_ = 0;
  std::vector<LaurentSeries> coeffs_;
  long prec_ = kExact;
};

/// Polynomial with CompositeSeries coefficients.
class CompositePolynomial {
public:
  using Exponents = Polynomial::Exponents;

  CompositePolynomial(FieldRef field, int nvars);
  /// Coefficients of g (series in u) placed at t^0, giving f in O_w[X] with
  /// reduction g.
  static CompositePolynomial lift(const Polynomial& g);

  const FieldRef& field() const noexcept { return field_; }
  int nvars() const noexcept { return nvars_; }
  const std::map<Exponents, CompositeSeries>& terms() const noexcept { return terms_; }
  void add_term(const Exponents& e, const CompositeSeries& c);

  CompositeSeries evaluate(std::span<const CompositeSeries> args) const;
  std::string to_string() const;
  /// `X^2 + u`, `t*X1*X2 + u^-1`.
  static CompositePolynomial parse(const FieldRef& field, std::string_view text, int nvars = 0);

private:
  FieldRef field_;
  int nvars_;
  std::map<Exponents, CompositeSeries> terms_;
};

/// (w(x), coefficient of t^{w(x)}), the latter being x t^{-w(x)} reduced at w.
struct Coarsening {
  long w = 0;
  LaurentSeries residue;
};
/// Throws precision when w(x) is not determined.
Coarsening coarsen(const CompositeSeries& x);

/// Representatives of O_v: c_0 in F_q[[u]] modulo u^u_precision and c_e, for
/// 1 <= e < t_precision, in u^u_floor F_q[[u]] modulo u^u_precision.
struct CompositeTruncation {
  long t_precision = 2;
  long u_precision = 3;
  long u_floor = -1;
};

struct CompositeSearchResult {
  std::vector<CompositeSeries> witness;
  ValuationResult value = ValuationResult::at_least(Value::rank1(0));
  Verdict verdict = Verdict::indeterminate;
  std::uint64_t evaluated = 0;
};

/// Max of v(f(a)) over O_v^n representatives; each representative carries its
/// truncation error so Exact values hold on the whole residue class.
CompositeSearchResult composite_extremal_search(const CompositePolynomial& f,
                                                const CompositeTruncation& tr,
                                                std::uint64_t budget = 10'000'000);

enum class PushdownVerdict { confirmed, violated, inconclusive };
std::string_view to_string(PushdownVerdict v);

struct PushdownReport {
  CompositeSearchResult composite;
  ExtremalResult residue;
  /// v-bar(g(b w)) at the composite witness b.
  ValuationResult pushed_down = ValuationResult::at_least(Value::rank1(0));
  PushdownVerdict verdict = PushdownVerdict::inconclusive;
};

/// Lifts g over Kw = F_q((u)) to f over O_w, searches f over O_v and g over
/// O_{w-bar}, and checks that the pushed-down composite witness is not beaten
/// at residue level. The series variable of g is read as u.
PushdownReport check_vexbarwex(const Polynomial& g, const CompositeTruncation& tr,
                               std::uint64_t budget = 10'000'000);

} // namespace valfield

#endif
