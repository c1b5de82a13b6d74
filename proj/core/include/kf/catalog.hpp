// Copyright 2026 The kf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Named generating functions: closed-form evaluators bound to the Family
// interface, exact coefficient oracles, and the partition-type asymptotics
// along the positive axis.
//
// Textual grammar (shared with the command-line tool):
//   exp | bernoulli | binom:N | geom | negbinom:N | poly:a0,a1,... | bell |
//   P | Q | Pab:a,b | Wab:a,b | expof:<spec> | canprod:b1,b2,... |
//   setsoflists | polylog:p,eps
// Rationals are written p/q or as decimals.

#ifndef KF_CATALOG_HPP
#define KF_CATALOG_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kf/family.hpp"
#include "kf/numerics.hpp"
#include "kf/series.hpp"

namespace kf {

enum class Variant {
  Exp,
  Bernoulli,
  Binomial,
  Geometric,
  NegBinomial,
  Polynomial,
  BellEGF,
  PartitionP,
  DistinctQ,
  ArithmeticP,
  ColoredW,
  ExpOf,
  CanonicalProduct,
  SetsOfLists,
  // 1 + eps * sum_{n>=1} z^n / n^p: finite radius with finite mean at the
  // boundary, used for boundary-regime power asymptotics.
  Polylog,
};

struct FamilySpec {
  Variant variant = Variant::Exp;
  long N = 0;                    // Binomial, NegBinomial
  long a = 0;                    // ArithmeticP, ColoredW
  long b = 0;                    // ArithmeticP, ColoredW
  long p = 0;                    // Polylog
  Rational eps;                  // Polylog
  std::vector<Rational> values;  // Polynomial coefficients, CanonicalProduct zeros
  std::vector<FamilySpec> inner;  // ExpOf: exactly one element
};

std::string_view spec_grammar();
// InvalidSpec with the grammar echoed on any parse or validation failure.
FamilySpec parse_spec(std::string_view text);
std::string to_string(const FamilySpec& spec);
// InvalidSpec when a parameter violates the variant's invariants.
void validate(const FamilySpec& spec);

Family make_family(const FamilySpec& spec, int trunc = kDefaultTruncation);
Family make_family(std::string_view text, int trunc = kDefaultTruncation);

inline constexpr int kMaxTruncation = 100000;

// Exact a_0..a_N; TruncationTooLarge above kMaxTruncation.
ScaledSeries exact_coeffs(const FamilySpec& spec, int N);

// Partition catalog (P, Q, Pab, Wab), plus Bell and Exp where the exact mean
// has a closed inverse. NoApproxAvailable otherwise.
ApproxMoments approx_moments(const FamilySpec& spec);

// ln f(e^{-s}) for small s from the partition-type asymptotics; NoAxisFormula
// outside P, Q, Pab, and Wab with b <= 2.
LogNumber axis_asymptotic(const FamilySpec& spec, double s);

// c is indexed from 0 (c[0] ignored); the result g has exp(g) equal to
// prod (1 - z^j)^{-c_j} (multisets) or prod (1 + z^j)^{c_j} (selections).
Series multiset_transform(std::span<const Rational> c);
Series powerset_transform(std::span<const Rational> c);

struct CriterionVerdict {
  bool holds = false;
  long first_violation = -1;  // index of the first failing coefficient
  std::string reason;
};

// Window check of B beta^n / n! <= b_n <= L lambda^n / n! for 1 <= n <= order
// together with 2 lambda < 3 beta.
CriterionVerdict hayman_criterion_entire(const Series& g, double B, double beta, double L, double lambda);
// Window check of B n^beta / R^n <= b_n <= L n^lambda / R^n together with
// 2 lambda < 3 beta + 1.
CriterionVerdict hayman_criterion_finite(const Series& g, double B, double beta, double L, double lambda,
                                         double R);

// Independent integer oracles.
std::vector<Integer> partitions_pentagonal(int N);
std::vector<Integer> partitions_product(int N);
std::vector<Integer> distinct_partitions(int N);
std::vector<Integer> plane_partitions(int N);
std::vector<Integer> bell_numbers(int N);

}  // namespace kf

#endif  // KF_CATALOG_HPP
