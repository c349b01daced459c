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
#ifndef VALFIELD_ADDITIVE_HPP
#define VALFIELD_ADDITIVE_HPP

#include <valfield/laurent.hpp>
#include <valfield/polynomial.hpp>
#include <valfield/rng.hpp>
#include <valfield/value.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace valfield {

/// Sum of c_{i,k} X_i^{p^k} over F_q((t)); variables are 0-based. Terms
/// whose coefficient is the exact zero are never stored.
class AdditivePolynomial {
public:
  using Key = std::pair<int, int>; // (variable, Frobenius power)

  AdditivePolynomial(FieldRef field, int nvars);
  static AdditivePolynomial monomial(FieldRef field, int nvars, int var, int k,
                                     const LaurentSeries& c);
  /// Rejects monomials that are not c*X_i^{p^k}, including constants.
  static AdditivePolynomial from_polynomial(const Polynomial& f);
  static AdditivePolynomial parse(const FieldRef& field, std::string_view text,
                                  int nvars = 0);

  const FieldRef& field() const noexcept { return field_; }
  int nvars() const noexcept { return nvars_; }
  long p() const noexcept { return field_->p(); }
  const std::map<Key, LaurentSeries>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(int var, int k, const LaurentSeries& c);
  LaurentSeries coefficient(int var, int k) const;
  /// Largest k whose coefficient of X_var^{p^k} is nonzero to precision.
  std::optional<int> degree(int var) const;
  /// Drops terms whose coefficient vanishes to precision.
  AdditivePolynomial without_vanishing_terms() const;
  /// The X_var part as a polynomial in one variable.
  AdditivePolynomial part(int var) const;

  friend AdditivePolynomial operator+(const AdditivePolynomial& a,
                                      const AdditivePolynomial& b);
  friend AdditivePolynomial operator-(const AdditivePolynomial& a,
                                      const AdditivePolynomial& b);
  AdditivePolynomial operator-() const;
  friend bool operator==(const AdditivePolynomial& a, const AdditivePolynomial& b) = default;

  LaurentSeries evaluate(std::span<const LaurentSeries> args) const;
  /// f(images_1, ..., images_n); the images share one variable count.
  AdditivePolynomial compose(std::span<const AdditivePolynomial> images) const;

  Polynomial to_polynomial() const;
  std::string to_string() const;

private:
  FieldRef field_;
  int nvars_;
  std::map<Key, LaurentSeries> terms_;
};

/// h = f + c with an optional constant; an absent constant is v = inf.
struct PPolynomial {
  AdditivePolynomial additive;
  std::optional<LaurentSeries> constant;

  LaurentSeries evaluate(std::span<const LaurentSeries> args) const;
  std::string to_string() const;
  static PPolynomial parse(const FieldRef& field, std::string_view text, int nvars = 0);
};

/// f(K^n) = g_1(K) + ... + g_m(K) with every g_i of degree p^nu and leading
/// coefficients whose valuations are pairwise distinct modulo p^nu and lie in
/// [0, p^nu). phi expresses the original variables as additive polynomials
/// in the m new ones, and f(phi) = sum g_i(Y_i) holds to identity_precision.
struct Decomposition {
  int nu = 0;
  std::vector<AdditivePolynomial> g;
  std::vector<LaurentSeries> leading;
  std::vector<AdditivePolynomial> phi;
  long identity_precision = LaurentSeries::kExact;
  long merges = 0;

  /// sum g_i(y_i).
  LaurentSeries evaluate(std::span<const LaurentSeries> y) const;
  /// phi(y), an input for the original polynomial.
  std::vector<LaurentSeries> pull_back(std::span<const LaurentSeries> y) const;
  std::string to_string() const;
};

/// Merging procedure over F_q((t)) with basis 1, t, ..., t^{p^nu - 1}.
/// Quotients of leads are truncated at relative order `work_precision`, and
/// a merged lead more than half of it above both operands counts as zero.
Decomposition decompose(const AdditivePolynomial& f, long work_precision = 128);

/// Leading valuations pairwise distinct modulo p^nu.
bool leading_valuations_independent(const Decomposition& d);
/// v(sum c_i b_i) = min v(c_i b_i) for random c_i = d_i^{p^nu}.
bool sampled_valuation_independence(const Decomposition& d, Rng& rng, int samples);

/// min{0, vc - vb_i, vc_{i,k} - vb_i} - 1 over the decomposition of h's
/// additive part; an absent constant drops its clause.
Value alpha_bound(const PPolynomial& h, const Decomposition& d);
long alpha_bound_integer(const std::optional<LaurentSeries>& constant, const Decomposition& d);

/// F_p-subspace of t^low O / t^N O in reduced echelon form; coordinates run
/// over (exponent, F_p component) in increasing exponent order. Rows may
/// carry tags that follow every linear combination.
class TruncatedSubspace {
public:
  TruncatedSubspace(FieldRef field, long low, long N, int ntags = 0);

  long low() const noexcept { return low_; }
  long precision() const noexcept { return N_; }
  std::size_t dimension() const noexcept { return rows_.size(); }

  /// Adds v; returns false if v already lies in the span.
  bool insert(const LaurentSeries& v, std::vector<LaurentSeries> tags = {});
  /// Fully reduced representative of z + V; `combination` receives the tags
  /// of the subtracted element.
  LaurentSeries reduce(const LaurentSeries& z,
                       std::vector<LaurentSeries>* combination = nullptr) const;
  /// (V + t^N O) inside O, as a subspace of O / t^N O.
  TruncatedSubspace integral_part() const;
  /// Rows of the reduced echelon matrix over F_p.
  std::vector<std::vector<long>> canonical() const;
  /// Echelon rows as series.
  std::vector<LaurentSeries> basis() const;
  /// Every element; rejects dimensions above `max_dimension`.
  std::vector<LaurentSeries> elements(std::size_t max_dimension = 16) const;

  friend bool operator==(const TruncatedSubspace& a, const TruncatedSubspace& b);

private:
  struct Row {
    std::vector<long> v;
    std::size_t pivot;
    std::vector<LaurentSeries> tags;
  };
  std::vector<long> coordinates(const LaurentSeries& x) const;
  LaurentSeries series(const std::vector<long>& v) const;
  FieldRef field_;
  long low_, N_;
  int ntags_;
  std::vector<Row> rows_; // sorted by pivot
};

/// Image of f on B_low(0)^n modulo t^N, from the F_p-span of
/// f(lambda t^e e_i) for low <= e < the stability horizon.
TruncatedSubspace image_subspace(const AdditivePolynomial& f, long low, long N);
/// First exponent H with v(f(t^H O^n)) >= N.
long stability_horizon(const AdditivePolynomial& f, long N);
/// Lowest radius L with phi(B_alpha(0)^m) inside B_L(0)^n.
long pullback_radius(const Decomposition& d, long alpha);

struct OapResult {
  std::vector<LaurentSeries> input;
  ValuationResult value;
  long alpha = 0;
  Decomposition decomposition;
};

/// max v(z - f(a)) over a in K^n, searching B_alpha(0) in decomposed
/// coordinates. Exact when below N, AtLeast(N) otherwise.
OapResult oap_solve(const AdditivePolynomial& f, const LaurentSeries& z, long N,
                    std::uint64_t budget = 10'000'000);

/// B_radius(center) = {b : v(b - center) >= radius}.
struct Ball {
  LaurentSeries center;
  long radius = 0;

  bool contains(const LaurentSeries& x) const;
  std::string to_string() const;
  /// `v>=0 around 0`, `v>=-1 around t^2 + 1`.
  static Ball parse(const FieldRef& field, std::string_view text);
};

struct SearchResult {
  std::vector<LaurentSeries> witness;
  ValuationResult value;
  std::uint64_t evaluated = 0;
};

/// Number of representatives of S^n modulo t^input_precision.
std::uint64_t ball_representative_count(const Ball& s, int nvars, long input_precision,
                                        std::uint64_t cap);
/// Calls visit(a) for every representative tuple of S^n modulo
/// t^input_precision, each a_i carrying error order input_precision.
template <class Visit>
void for_each_representative(const Ball& s, int nvars, long input_precision, Visit&& visit);

/// Exhaustive max of v(f(a)) over the exact representatives a of S^n modulo
/// t^input_precision; values at or past min(N, coefficient precision) become
/// AtLeast. input_precision = 0 means N.
SearchResult brute_force_max(const Polynomial& f, const Ball& s, long N,
                             long input_precision = 0,
                             std::uint64_t budget = 10'000'000);

} // namespace valfield

#include <valfield/detail/ball_enum.hpp>

#endif
