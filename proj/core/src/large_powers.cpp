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

#include "kf/large_powers.hpp"

#include <cmath>

#include "kf/error.hpp"

namespace kf {

namespace {

constexpr const char* kModule = "large_powers";

void check_query(const PowerCoeffQuery& q) {
  if (q.n < 1 || q.k < 0) throw Error(ErrorCode::DomainError, kModule, "need n >= 1 and k >= 0");
}

void check_lattice(const PowerCoeffQuery& q) {
  const int Q = q.psi.q_gcd();
  if (Q > 1 && q.k % Q != 0) {
    throw Error(ErrorCode::QGcdViolation, kModule,
                "k = " + std::to_string(q.k) + " is not a multiple of Q = " + std::to_string(Q) +
                    "; the coefficient is 0");
  }
}

struct TauData {
  double tau = 0.0;
  double log_psi = 0.0;
  double var = 0.0;
};

TauData at(const Family& psi, double tau) {
  return {tau, psi.log_value(tau), psi.cumulants(tau)[1]};
}

// ln Q - ln(2 pi)/2 + n ln psi(tau) - k ln tau - ln n / 2 - ln var / 2.
double gaussian_core(const PowerCoeffQuery& q, const TauData& d) {
  const double n = static_cast<double>(q.n);
  const double k = static_cast<double>(q.k);
  const double lq = std::log(static_cast<double>(std::max(1, q.psi.q_gcd())));
  const double ltau = k == 0.0 ? 0.0 : k * std::log(d.tau);
  return lq - 0.5 * kLn2Pi + n * d.log_psi - ltau - 0.5 * std::log(n) - 0.5 * std::log(d.var);
}

Estimate finish(std::string method, double value, const PowerCoeffQuery& q, double tau) {
  Estimate e{std::move(method), LogNumber::from_log(value), {}};
  e.meta.n = static_cast<double>(q.n);
  e.meta.k = static_cast<double>(q.k);
  e.meta.t = tau;
  e.meta.family = q.psi.name();
  return e;
}

void check_band(const PowerCoeffQuery& q, double A, double B) {
  const double r = static_cast<double>(q.k) / static_cast<double>(q.n);
  const double M = q.psi.mean_sup();
  if (!(A > 0.0 && A <= B && B < M)) {
    throw Error(ErrorCode::RatioOutOfBand, kModule, "band needs 0 < A <= B < M_psi");
  }
  if (r < A || r > B) {
    throw Error(ErrorCode::RatioOutOfBand, kModule,
                "k/n = " + std::to_string(r) + " outside [" + std::to_string(A) + ", " + std::to_string(B) + "]");
  }
}

double first_coefficient_log(const Family& psi) {
  const double lb1 = psi.log_coeff(1);
  if (!std::isfinite(lb1)) throw Error(ErrorCode::FirstCoefficientZero, kModule, psi.name() + " has psi'(0) = 0");
  return lb1;
}

void check_small_k(const PowerCoeffQuery& q, const RegimeThresholds& th) {
  if (q.k < 1) throw Error(ErrorCode::RegimeMismatch, kModule, "small-k estimates need k >= 1");
  const double r = static_cast<double>(q.k) / static_cast<double>(q.n);
  if (r > th.small_k_ratio) {
    throw Error(ErrorCode::RegimeMismatch, kModule,
                "k/n = " + std::to_string(r) + " exceeds the small-k threshold " + std::to_string(th.small_k_ratio));
  }
}

Series exact_series(const Family& fam, int order) {
  // Rescaling by a constant leaves the ratios used here unchanged.
  return fam.exact(order)->series;
}

}  // namespace

LogNumber ExactPowerCoeff::to_log() const {
  return LogNumber::from_rational(value) * LogNumber::from_log(log_scale);
}

ExactPowerCoeff exact_power_coeff(const PowerCoeffQuery& q) {
  check_query(q);
  const double cost = static_cast<double>(q.k) * std::max(1.0, std::ceil(std::log2(static_cast<double>(q.n))));
  if (cost > kPowerBudget) {
    throw Error(ErrorCode::BudgetExceeded, kModule, "k * ceil(log2 n) = " + std::to_string(cost) + " above budget");
  }
  const int k = static_cast<int>(q.k);
  // Coefficients above k cannot reach COEFF_k of a power.
  const auto psi = q.psi.exact(k);
  const auto c = power_prefix(psi->series, q.n, k);
  ExactPowerCoeff out;
  out.log_scale = static_cast<double>(q.n) * psi->exp_shift.get_d();
  if (!q.h) {
    out.value = c[k];
    return out;
  }
  const auto h = q.h->exact(k);
  for (int j = 0; j <= k; ++j) {
    if (sgn(h->series[j]) != 0) out.value += h->series[j] * c[k - j];
  }
  out.log_scale += h->exp_shift.get_d();
  return out;
}

const char* regime_name(Regime::Kind kind) {
  switch (kind) {
    case Regime::Comparable: return "comparable";
    case Regime::LimitL: return "limit";
    case Regime::BoundaryL: return "boundary";
    case Regime::SmallK: return "small-k";
    case Regime::SmallKRefined: return "small-k-refined";
    case Regime::FixedK: return "fixed-k";
    case Regime::LargeK: return "large-k";
  }
  return "?";
}

Estimate estimate_comparable(const PowerCoeffQuery& q, double A, double B) {
  check_query(q);
  check_lattice(q);
  check_band(q, A, B);
  const TauData d = at(q.psi, solve_mean(q.psi, static_cast<double>(q.k) / static_cast<double>(q.n)));
  return finish("comparable", gaussian_core(q, d), q, d.tau);
}

Estimate estimate_limit_L(const PowerCoeffQuery& q, double L, double omega) {
  check_query(q);
  check_lattice(q);
  if (!(L > 0.0) || !(L < q.psi.mean_sup())) {
    throw Error(ErrorCode::LAboveMeanSup, kModule,
                "L = " + std::to_string(L) + " must lie in (0, M_psi = " + std::to_string(q.psi.mean_sup()) + ")");
  }
  const TauData d = at(q.psi, solve_mean(q.psi, L));
  return finish("limit", gaussian_core(q, d) - omega * omega / (2.0 * d.var), q, d.tau);
}

Estimate estimate_boundary(const PowerCoeffQuery& q) {
  check_query(q);
  check_lattice(q);
  const Family& psi = q.psi;
  if (!psi.boundary_defined()) {
    throw Error(ErrorCode::RegimeMismatch, kModule, psi.name() + " has no finite boundary point with finite mean");
  }
  const double R = psi.radius();
  const TauData d = at(psi, R);
  if (!std::isfinite(d.var)) {
    throw Error(ErrorCode::BoundaryVarianceInfinite, kModule, psi.name() + " has infinite variance at t = R");
  }
  const double omega = (static_cast<double>(q.n) * psi.mean_sup() - static_cast<double>(q.k)) /
                       std::sqrt(static_cast<double>(q.n));
  return finish("boundary", gaussian_core(q, d) - omega * omega / (2.0 * d.var), q, R);
}

Estimate estimate_small_k(const PowerCoeffQuery& q, const RegimeThresholds& th) {
  check_query(q);
  first_coefficient_log(q.psi);
  check_small_k(q, th);
  const double k = static_cast<double>(q.k);
  const double tau = solve_mean(q.psi, k / static_cast<double>(q.n));
  const double value =
      -0.5 * kLn2Pi + static_cast<double>(q.n) * q.psi.log_value(tau) - k * std::log(tau) - 0.5 * std::log(k);
  return finish("small-k", value, q, tau);
}

std::vector<Rational> refined_coefficients(const Series& psi, int J) {
  if (J < 1) throw Error(ErrorCode::DomainError, kModule, "J must be >= 1");
  if (psi.order() < 1 || sgn(psi[1]) == 0) throw Error(ErrorCode::FirstCoefficientZero, kModule, "psi'(0) = 0");
  std::vector<Rational> B(static_cast<std::size_t>(J) + 1);
  if (J < 2) return B;
  const int order = J - 1;
  const Series p = psi.truncated(order + 1);
  const Series ratio = divide(p.truncated(order), differentiate(p));
  Series power = Series::monomial(0, 1, order);
  for (int j = 2; j <= J; ++j) {
    power = mul(power, ratio);
    B[j] = power[j - 1] / j;
  }
  return B;
}

Estimate estimate_small_k_refined(const PowerCoeffQuery& q, int J) {
  check_query(q);
  if (q.k < 1) throw Error(ErrorCode::RegimeMismatch, kModule, "small-k estimates need k >= 1");
  const double lb1 = first_coefficient_log(q.psi);
  const double lb0 = q.psi.log_coeff(0);
  const auto B = refined_coefficients(exact_series(q.psi, std::max(J, 1)), J);
  const double n = static_cast<double>(q.n);
  const double k = static_cast<double>(q.k);
  double value = (n - k) * lb0 + k * lb1 + k * std::log(n) + k - k * std::log(k) - 0.5 * std::log(k) - 0.5 * kLn2Pi;
  for (int j = 2; j <= J; ++j) {
    value -= B[j].get_d() / (j - 1) * std::exp(j * std::log(k) - (j - 1) * std::log(n));
  }
  return finish("small-k-refined", value, q, 0.0);
}

Estimate estimate_large_k(const PowerCoeffQuery& q, const RegimeThresholds& th) {
  check_query(q);
  if (!q.psi.usg()) throw Error(ErrorCode::NotUSG, kModule, q.psi.name() + " is not uniformly strongly Gaussian");
  const double r = static_cast<double>(q.k) / static_cast<double>(q.n);
  if (r < th.large_k_ratio) {
    throw Error(ErrorCode::RegimeMismatch, kModule,
                "k/n = " + std::to_string(r) + " below the large-k threshold " + std::to_string(th.large_k_ratio));
  }
  check_lattice(q);
  const TauData d = at(q.psi, solve_mean(q.psi, r));
  return finish("large-k", gaussian_core(q, d), q, d.tau);
}

Estimate estimate_with_prefactor(const PowerCoeffQuery& q, const RegimeThresholds& th) {
  check_query(q);
  if (!q.h) {
    throw Error(ErrorCode::DomainError, kModule, "estimate_with_prefactor needs a prefactor h");
  }
  const Family& h = *q.h;
  if (h.radius() < q.psi.radius()) {
    throw Error(ErrorCode::PrefactorRadiusTooSmall, kModule, h.name() + " has a smaller radius than " + q.psi.name());
  }
  const double r = static_cast<double>(q.k) / static_cast<double>(q.n);
  if (r <= th.small_k_ratio) {
    Estimate e = estimate_small_k(q, th);
    e.method = "prefactor-small-k";
    e.value = e.value * LogNumber::from_log(h.log_value(0.0));
    return e;
  }
  const double cap = std::min(q.psi.mean_sup(), th.band_cap);
  Estimate e = estimate_comparable(q, th.band_lo * cap, th.band_hi * cap);
  e.method = "prefactor-comparable";
  e.value = e.value * LogNumber::from_log(h.log_value(e.meta.t));
  return e;
}

FixedKPolynomial::FixedKPolynomial(const Series& psi, int k) : k_(k), b0_(psi.coeff(0)) {
  if (sgn(b0_) == 0) throw Error(ErrorCode::DomainError, kModule, "fixed-k polynomial needs psi(0) != 0");
  std::vector<Rational> g(static_cast<std::size_t>(k) + 1);
  for (int j = 1; j <= std::min(k, psi.order()); ++j) g[j] = psi[j];
  const Series shifted(std::move(g));
  c_.assign(static_cast<std::size_t>(k) + 1, Rational(0));
  Series power = Series::monomial(0, 1, k);
  c_[0] = power[k];
  // (psi - b0)^l starts at z^l, so l never exceeds k.
  for (int l = 1; l <= k; ++l) {
    power = mul(power, shifted);
    c_[l] = power[k];
  }
}

int FixedKPolynomial::degree() const {
  for (int l = k_; l >= 0; --l)
    if (sgn(c_[l]) != 0) return l;
  return -1;
}

std::vector<Rational> FixedKPolynomial::expand() const {
  // binom(n, l) = n (n-1) ... (n-l+1) / l!, accumulated as a polynomial in n.
  std::vector<Rational> out(static_cast<std::size_t>(k_) + 1);
  std::vector<Rational> falling{Rational(1)};
  Rational b0_pow = 1;
  Integer fact = 1;
  for (int l = 0; l <= k_; ++l) {
    if (l > 0) {
      std::vector<Rational> next(falling.size() + 1);
      for (std::size_t i = 0; i < falling.size(); ++i) {
        next[i + 1] += falling[i];
        next[i] -= falling[i] * (l - 1);
      }
      falling.swap(next);
      fact *= l;
      b0_pow *= b0_;
    }
    if (sgn(c_[l]) == 0) continue;
    const Rational w = c_[l] / (b0_pow * fact);
    for (std::size_t i = 0; i < falling.size(); ++i) out[i] += falling[i] * w;
  }
  return out;
}

Rational FixedKPolynomial::leading() const {
  const int d = degree();
  if (d < 0) return 0;
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(d));
  Rational b0_pow = 1;
  for (int i = 0; i < d; ++i) b0_pow *= b0_;
  return c_[d] / (b0_pow * fact);
}

Rational FixedKPolynomial::evaluate(long n) const {
  if (n < 0) throw Error(ErrorCode::DomainError, kModule, "n must be non-negative");
  Rational sum = 0;
  Integer binom;
  for (int l = 0; l <= std::min<long>(k_, n); ++l) {
    if (sgn(c_[l]) == 0) continue;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(l));
    Rational b0_pow;
    mpz_pow_ui(b0_pow.get_num_mpz_t(), b0_.get_num_mpz_t(), static_cast<unsigned long>(n - l));
    mpz_pow_ui(b0_pow.get_den_mpz_t(), b0_.get_den_mpz_t(), static_cast<unsigned long>(n - l));
    sum += binom * b0_pow * c_[l];
  }
  return sum;
}

FixedKPolynomial fixed_k_polynomial(const Series& psi, int k) {
  if (k < 0) throw Error(ErrorCode::DomainError, kModule, "k must be non-negative");
  if (k > kFixedKMax) {
    throw Error(ErrorCode::KTooLarge, kModule, "k = " + std::to_string(k) + " above " + std::to_string(kFixedKMax));
  }
  return FixedKPolynomial(psi, k);
}

Regime auto_regime(const PowerCoeffQuery& q, const RegimeThresholds& th) {
  check_query(q);
  const double n = static_cast<double>(q.n);
  const double k = static_cast<double>(q.k);
  const double r = k / n;
  Regime reg;
  if (q.k <= th.fixed_k_max && n >= th.fixed_k_n_factor * k) {
    reg.kind = Regime::FixedK;
    return reg;
  }
  if (r <= th.small_k_ratio && std::isfinite(q.psi.log_coeff(1))) {
    reg.kind = Regime::SmallK;
    return reg;
  }
  if (q.psi.usg() && r >= th.large_k_ratio) {
    reg.kind = Regime::LargeK;
    return reg;
  }
  const double cap = std::min(q.psi.mean_sup(), th.band_cap);
  reg.A = th.band_lo * cap;
  reg.B = th.band_hi * cap;
  if (r >= reg.A && r <= reg.B && reg.B < q.psi.mean_sup()) {
    reg.kind = Regime::Comparable;
    return reg;
  }
  throw Error(ErrorCode::NoApplicableRegime, kModule,
              "no regime covers k/n = " + std::to_string(r) + " for " + q.psi.name());
}

Estimate estimate_power(const PowerCoeffQuery& q, const Regime& regime, const RegimeThresholds& th) {
  switch (regime.kind) {
    case Regime::Comparable:
      return q.h ? estimate_with_prefactor(q, th) : estimate_comparable(q, regime.A, regime.B);
    case Regime::LimitL: return estimate_limit_L(q, regime.L, regime.omega);
    case Regime::BoundaryL: return estimate_boundary(q);
    case Regime::SmallK: return q.h ? estimate_with_prefactor(q, th) : estimate_small_k(q, th);
    case Regime::SmallKRefined: return estimate_small_k_refined(q, regime.J);
    case Regime::LargeK: return estimate_large_k(q, th);
    case Regime::FixedK: {
      if (q.h) throw Error(ErrorCode::RegimeMismatch, kModule, "fixed-k evaluation takes no prefactor");
      const int k = static_cast<int>(q.k);
      const auto psi = q.psi.exact(k);
      const FixedKPolynomial poly = fixed_k_polynomial(psi->series, k);
      Estimate e = finish("fixed-k", 0.0, q, 0.0);
      e.value = LogNumber::from_rational(poly.evaluate(q.n)) *
                LogNumber::from_log(static_cast<double>(q.n) * psi->exp_shift.get_d());
      return e;
    }
  }
  throw Error(ErrorCode::NoApplicableRegime, kModule, "unknown regime");
}

}  // namespace kf
