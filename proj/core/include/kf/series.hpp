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

// Exact truncated power series over arbitrary-precision rationals.
//
// A Series of order N stores the coefficients a_0..a_N; every result is exact
// for all indices up to the order of the result. This is the ground-truth
// oracle the asymptotic estimators are validated against, so nothing here
// rounds.

#ifndef KF_SERIES_HPP
#define KF_SERIES_HPP

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kf {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr int kDefaultTruncation = 4096;

class Series {
 public:
  // The zero series of order 0.
  Series();
  // Order is coeffs.size() - 1; coeffs must not be empty.
  explicit Series(std::vector<Rational> coeffs);

  static Series zero(int order);
  static Series monomial(int power, const Rational& c, int order);
  static Series from_integers(std::initializer_list<long> coeffs);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  // Unchecked access; n must be in [0, order].
  const Rational& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }

  // Checked access: IndexBeyondTruncation when n is outside [0, order].
  const Rational& coeff(int n) const;

  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  // Drops or zero-pads to the requested order.
  Series truncated(int order) const;

  bool non_negative() const;
  // Number of nonzero coefficients in the window.
  int nonzero_count() const;

  friend bool operator==(const Series& a, const Series& b);

 private:
  std::vector<Rational> coeffs_;
};

// e^{exp_shift} * series. Used by exp_series when the exponent has a nonzero
// constant term, so the coefficient lattice stays rational.
struct ScaledSeries {
  Rational exp_shift;
  Series series;
};

struct SeriesClassTag {
  bool in_K = false;
  bool in_Ks = false;
  int shift = 0;
};

// NegativeCoefficient if any coefficient is negative.
SeriesClassTag classify(const Series& f);

Series add(const Series& a, const Series& b);
Series scale(const Series& a, const Rational& c);

// Order of the result is min(order a, order b).
Series mul(const Series& a, const Series& b);

// Binary exponentiation with truncation after every multiply; n >= 1.
Series pow(const Series& a, int n);

// Coefficients 0..max_index of a^n. Uses the power recurrence
//   k a_0 c_k = sum_{j=1..k} ((n+1) j - k) a_j c_{k-j}
// when a_0 != 0, and binary powering otherwise. a.order() >= max_index.
std::vector<Rational> power_prefix(const Series& a, long n, int max_index);

ScaledSeries exp_series(const Series& g);
// ZeroConstantTerm when f_0 = 0. The constant term of the result is ln f_0
// only when f_0 = 1; otherwise it is reported as zero and the caller adds
// ln f_0 separately (it is not rational).
Series log_series(const Series& f);

// f(g(z)); NonzeroInnerConstant when g_0 != 0. Order is min of the orders.
Series compose(const Series& f, const Series& g);

// z f'(z): coefficient n is n a_n.
Series derivative_series(const Series& f);
// f'(z); order drops by one (order 0 stays a zero series of order 0).
Series differentiate(const Series& f);

// 1/f; ZeroConstantTerm when f_0 = 0.
Series reciprocal(const Series& f);
// a/b; ZeroConstantTerm when b_0 = 0.
Series divide(const Series& a, const Series& b);

// Solution g of g = z psi(g) to order N via A_n = (1/n) [z^{n-1}] psi^n.
// In debug builds the result is cross-checked against the fixed-point
// iteration. psi.order() >= N - 1; ZeroConstantTerm when psi_0 = 0.
Series lagrange_invert(const Series& psi, int N);
// The same solution by iterating g <- z psi(g) from g = 0.
Series lagrange_fixed_point(const Series& psi, int N);

// Checked coefficient read; IndexBeyondTruncation outside [0, order].
Rational coeff(const Series& f, int n);

// "order=N" header followed by one "num/den" line per coefficient.
std::string to_text(const Series& f);
Series from_text(std::string_view text);

// Parses "p/q", integers and finite decimals ("0.25", "-1.5e-3") exactly.
Rational parse_rational(std::string_view text);

}  // namespace kf

#endif  // KF_SERIES_HPP
