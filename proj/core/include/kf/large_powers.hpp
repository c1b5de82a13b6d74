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

// Coefficients of large powers: COEFF_k(h psi^n) exactly and in every
// asymptotic regime of k against n.
#ifndef KF_LARGE_POWERS_HPP
#define KF_LARGE_POWERS_HPP

#include <optional>
#include <vector>

#include "kf/asym.hpp"
#include "kf/family.hpp"
#include "kf/series.hpp"

namespace kf {

struct PowerCoeffQuery {
  Family psi;
  long n = 1;
  long k = 0;
  std::optional<Family> h;  // prefactor
};

// Exact COEFF_k(h psi^n) = value * exp(log_scale).
struct ExactPowerCoeff {
  Rational value;
  double log_scale = 0.0;
  LogNumber to_log() const;
};

inline constexpr double kPowerBudget = 1e9;  // k * ceil(log2 n) coefficient products
ExactPowerCoeff exact_power_coeff(const PowerCoeffQuery& q);

struct RegimeThresholds {
  double small_k_ratio = 0.05;  // SmallK when k/n is at most this
  double large_k_ratio = 20.0;  // LargeK when k/n is at least this
  long fixed_k_max = 64;
  double fixed_k_n_factor = 10.0;  // FixedK needs n >= factor * k
  double band_lo = 0.05;  // Comparable band, as fractions of min(M, band_cap)
  double band_hi = 0.95;
  double band_cap = 20.0;
};

struct Regime {
  enum Kind { Comparable, LimitL, BoundaryL, SmallK, SmallKRefined, FixedK, LargeK };
  Kind kind = Comparable;
  double A = 0.0;
  double B = 0.0;
  double L = 0.0;
  double omega = 0.0;
  int J = 1;
};
const char* regime_name(Regime::Kind kind);

// RatioOutOfBand unless A <= k/n <= B < M_psi; QGcdViolation when Q does not divide k.
Estimate estimate_comparable(const PowerCoeffQuery& q, double A, double B);
// Fixed tau = m^{-1}(L) with the Gaussian factor exp(-omega^2 / (2 sigma^2)).
Estimate estimate_limit_L(const PowerCoeffQuery& q, double L, double omega);
// Saddle at t = R with omega = (n M - k) / sqrt(n).
Estimate estimate_boundary(const PowerCoeffQuery& q);
Estimate estimate_small_k(const PowerCoeffQuery& q, const RegimeThresholds& th = {});
Estimate estimate_small_k_refined(const PowerCoeffQuery& q, int J);
Estimate estimate_large_k(const PowerCoeffQuery& q, const RegimeThresholds& th = {});
// Comparable form times h(tau), or the small-k form times h(0).
Estimate estimate_with_prefactor(const PowerCoeffQuery& q, const RegimeThresholds& th = {});

// B_j = (1/j) COEFF_{j-1}((psi / psi')^{j-1}) for j = 0..J (entries 0 and 1 unused).
std::vector<Rational> refined_coefficients(const Series& psi, int J);

// COEFF_k(psi^n) = sum_l binom(n, l) b0^{n-l} C_l with C_l = COEFF_k((psi - b0)^l).
class FixedKPolynomial {
 public:
  FixedKPolynomial(const Series& psi, int k);

  int k() const noexcept { return k_; }
  const Rational& b0() const noexcept { return b0_; }
  const std::vector<Rational>& c() const noexcept { return c_; }
  // Largest l with C_l != 0 (the growth exponent in n); -1 for the zero polynomial.
  int degree() const;
  // Coefficient of n^degree() in b0^{-n} COEFF_k(psi^n).
  Rational leading() const;
  // Coefficients p_i of b0^{-n} COEFF_k(psi^n) = sum_i p_i n^i.
  std::vector<Rational> expand() const;
  Rational evaluate(long n) const;

 private:
  int k_;
  Rational b0_;
  std::vector<Rational> c_;
};
inline constexpr int kFixedKMax = 64;
// KTooLarge above kFixedKMax.
FixedKPolynomial fixed_k_polynomial(const Series& psi, int k);

// FixedK, SmallK, LargeK, then Comparable; NoApplicableRegime otherwise.
Regime auto_regime(const PowerCoeffQuery& q, const RegimeThresholds& th = {});
// Dispatch on a regime; FixedK evaluates the polynomial exactly.
Estimate estimate_power(const PowerCoeffQuery& q, const Regime& regime, const RegimeThresholds& th = {});

}  // namespace kf

#endif  // KF_LARGE_POWERS_HPP
