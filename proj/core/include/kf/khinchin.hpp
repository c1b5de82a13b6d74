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

// Statistics of the Khinchin family X_t attached to a Family.

#ifndef KF_KHINCHIN_HPP
#define KF_KHINCHIN_HPP

#include <array>
#include <complex>
#include <optional>
#include <span>

#include "kf/family.hpp"

namespace kf {

// P(X_t = n). RadiusOutOfRange, NoCoefficientAccess.
double mass(const Family& fam, double t, long n);

// Upper bound for P(X_t > order), from the Cauchy estimate
// a_n <= f(t*) / t*^n at a comparison radius t < t* <= R. When t_star is not
// given the best of a grid of comparison radii is used.
double tail_bound(const Family& fam, double t, long order, std::optional<double> t_star = std::nullopt);

double mean(const Family& fam, double t);
double variance(const Family& fam, double t);

// E(X_t^k). Orders up to 4 come from the factorial moments through Stirling
// numbers of the second kind; higher orders are direct coefficient sums and
// raise DerivativeOrderUnavailable when the truncated sum is not certified.
double moment(const Family& fam, double t, int k);
// E(X_t (X_t - 1) ... (X_t - j + 1)) = t^j f^(j)(t) / f(t).
double factorial_moment(const Family& fam, double t, int j);
double central_moment(const Family& fam, double t, int k);

std::complex<double> charfn(const Family& fam, double t, double theta);
// Characteristic function of (X_t - m) / sigma.
std::complex<double> normalized_charfn(const Family& fam, double t, double theta);

// F'(s)..F''''(s) for F(s) = ln f(e^s); entries above max_order are NaN.
std::array<double, 4> fulcrum_derivs(const Family& fam, double s, int max_order = 4);

// E(exp(lambda X_t)); RadiusOutOfRange when t e^lambda >= R.
double mgf(const Family& fam, double t, double lambda);

struct ChernoffBound {
  double sigma = 0.0;  // 2 max_{|u| <= Lambda} (F'(s + u) - F'(s)) / u
  double bound = 1.0;  // bound on P(|X_t - m| > y), capped at 1
};
ChernoffBound chernoff_bound(const Family& fam, double t, double y, double lambda);

// sigma / m; ZeroMean when m = 0.
double clan_ratio(const Family& fam, double t);

// Gap statistics over the truncation window. These are window statistics:
// the true gap and its limsup can only be bounded below from a truncation.
struct GapStats {
  long gap = 0;           // largest gap between consecutive nonzero indices
  long gap_tail = 0;      // largest gap starting in the upper half of the window
  long q_gcd = 0;         // gcd of nonzero indices >= 1 in the window
  long nonzero = 0;
  bool provisional = false;  // fewer than 8 nonzero terms seen
};
GapStats gap_stats(const Family& fam);

// pi / (2 sigma(t)); f(t e^{i theta}) has no zeros for |theta| below it.
double zero_free_halfwidth(const Family& fam, double t);
// Checks |f(t e^{i theta})| > 0 on a grid inside the half-width.
bool zero_free_verified(const Family& fam, double t, int grid = 256);

struct MaxTerm {
  long index = 0;
  double log_value = 0.0;  // ln(a_index t^index)
};
MaxTerm max_term(const Family& fam, double t);

// Order estimate from ln m(t) / ln t, taking the largest value over the
// last quarter of an increasing grid. NotEntire for finite radius.
double estimate_order(const Family& fam, std::span<const double> grid);

}  // namespace kf

#endif  // KF_KHINCHIN_HPP
