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
#ifndef VALFIELD_CERTIFICATES_HPP
#define VALFIELD_CERTIFICATES_HPP

#include <valfield/newton.hpp>
#include <valfield/padic.hpp>
#include <valfield/polynomial.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace valfield {

enum class CertVerdict { pass, fail, inconclusive };
std::string_view to_string(CertVerdict v);

/// Named key/value list; values are exact rationals, residues or flags in
/// text form.
using Fields = std::vector<std::pair<std::string, std::string>>;

struct CertificateStep {
  std::string name;
  Fields inputs;
  Fields computed;
  Fields expected;
  bool pass = false;
  friend bool operator==(const CertificateStep&, const CertificateStep&) = default;
};

/// Finite checks behind the non-equivalence of the two valued fields built
/// over Q(eta) with p (eta^p - eta)^2 = 1.
struct TmcneCertificate {
  long p = 0;
  std::vector<CertificateStep> steps;
  CertVerdict verdict = CertVerdict::inconclusive;

  std::string to_json() const;
  static TmcneCertificate from_json(std::string_view text);
  friend bool operator==(const TmcneCertificate&, const TmcneCertificate&) = default;
};

/// Runs the five steps for an odd prime p <= 7. A precision failure stops
/// the run and leaves an inconclusive partial certificate.
TmcneCertificate verify_tmcne(long p);

struct FundEqCertificate {
  std::string polynomial;
  std::string base;
  long n = 0;
  long e = 0;
  long f_res = 0;
  std::string criterion;
  bool equality = false;

  std::string to_json() const;
  friend bool operator==(const FundEqCertificate&, const FundEqCertificate&) = default;
};

/// n, e and the residue degree for f over Q_p. Throws irreducibility when
/// neither the polygon nor the reduction certifies f and it is not asserted.
FundEqCertificate verify_fundamental_equality(long p, const RationalPoly& f, long precision = 0,
                                              bool asserted_irreducible = false);
/// The same for a univariate f over F_q((t)) with exact coefficients.
FundEqCertificate verify_fundamental_equality(const Polynomial& f,
                                              bool asserted_irreducible = false);

} // namespace valfield

#endif
