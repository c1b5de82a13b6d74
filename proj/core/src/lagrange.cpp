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

#include "kf/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kf/error.hpp"

namespace kf {

namespace {

constexpr const char* kModule = "lagrange";

Estimate make_estimate(std::string method, double value, long n, double t, std::string family) {
  return {std::move(method), LogNumber::from_log(value), {static_cast<double>(n), t, std::move(family)}};
}

void check_n(long n) {
  if (n < 1) throw Error(ErrorCode::DomainError, kModule, "n must be >= 1");
}

// ln Q - ln(2 pi)/2 - ln sigma - (3/2) ln n + n (ln psi(tau) - ln tau): the
// part shared by every estimate built on the apex.
double apex_core(const Family& psi, const Apex& a, long n) {
  const double lq = std::log(static_cast<double>(std::max(1, psi.q_gcd())));
  const double x = static_cast<double>(n);
  return lq - 0.5 * kLn2Pi - std::log(a.sigma) - 1.5 * std::log(x) +
         x * (psi.log_value(a.tau) - std::log(a.tau));
}

void check_lattice(const Family& psi, long offset, const std::string& what) {
  const int Q = psi.q_gcd();
  if (Q > 1 && offset % Q != 0) {
    throw Error(ErrorCode::ZeroCoefficient, kModule,
                what + " vanishes: Q_psi = " + std::to_string(Q) + " does not divide " + std::to_string(offset));
  }
}

Apex analytic_apex(const Family& psi) {
  const Apex a = apex(psi);
  if (a.kind == Apex::LinearEdge) {
    throw Error(ErrorCode::MeanSupBelowOne, kModule, psi.name() + " is linear; coefficients are exact");
  }
  return a;
}

double log_binomial(long n, long k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Inverse-CDF table for the law p_k = exp(log_weight(k) - log_norm).
std::vector<double> cdf_table(const Family& fam, double t, long max_index) {
  std::vector<double> cdf;
  const double lnorm = fam.log_value(t);
  const double lt = t > 0.0 ? std::log(t) : -kInf;
  double acc = 0.0;
  for (long k = 0; k <= max_index; ++k) {
    const double lc = fam.log_coeff(k);
    double p = 0.0;
    if (std::isfinite(lc)) p = k == 0 ? std::exp(lc - lnorm) : std::exp(lc + k * lt - lnorm);
    acc += p;
    cdf.push_back(acc);
    if (acc >= 1.0 - 1e-15) break;
  }
  return cdf;
}

long draw(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<long>(it - cdf.begin(), static_cast<long>(cdf.size()) - 1);
}

}  // namespace

Apex apex(const Family& psi) {
  const double M = psi.mean_sup();
  Apex a;
  if (M > 1.0) {
    a.kind = Apex::Interior;
    a.tau = solve_mean(psi, 1.0);
    a.sigma = std::sqrt(psi.cumulants(a.tau)[1]);
    return a;
  }
  if (M == 1.0) {
    const double R = psi.radius();
    if (std::isfinite(R) && psi.boundary_defined()) {
      const double var = psi.cumulants(R)[1];
      if (std::isfinite(var)) {
        a.kind = Apex::Boundary;
        a.tau = R;
        a.sigma = std::sqrt(var);
        return a;
      }
    } else if (!std::isfinite(R) && psi.has_coeffs()) {
      // An entire psi with M_psi = 1 is a + b z.
      const auto s = psi.exact(std::min(psi.trunc(), 2));
      if (sgn(s->exp_shift) == 0) {
        a.kind = Apex::LinearEdge;
        a.tau = kInf;
        a.a = s->series[0];
        a.b = s->series[1];
        return a;
      }
    }
  }
  throw Error(ErrorCode::MeanSupBelowOne, kModule,
              psi.name() + ": M_psi = " + std::to_string(M) + " admits no apex");
}

Rational extended_coeff(const Series& H, const Series& psi, int n) {
  if (n < 1) throw Error(ErrorCode::DomainError, kModule, "n must be >= 1");
  const auto powers = power_prefix(psi, n, n - 1);
  Rational sum = 0;
  for (int i = 0; i <= std::min(n - 1, H.order() - 1); ++i) {
    if (sgn(H[i + 1]) == 0) continue;
    sum += (i + 1) * H[i + 1] * powers[n - 1 - i];
  }
  return sum / n;
}

std::variant<Estimate, DecayCertificate> omm_estimate(const Family& psi, long n) {
  check_n(n);
  check_lattice(psi, n - 1, "A_" + std::to_string(n));
  if (psi.mean_sup() < 1.0) {
    const double R = psi.radius();
    if (!std::isfinite(R) || !psi.boundary_defined()) {
      throw Error(ErrorCode::MeanSupBelowOne, kModule, psi.name() + ": subcritical without a boundary value");
    }
    const auto s = psi.exact(static_cast<int>(n));
    const Series A = lagrange_invert(s->series, static_cast<int>(n));
    const double shift = s->exp_shift.get_d();
    const double lpsi = psi.log_value(R);
    DecayCertificate cert;
    for (long m : {(n + 3) / 4, (n + 1) / 2, (3 * n + 3) / 4, n}) {
      if (m < 1 || (!cert.n.empty() && cert.n.back() >= m)) continue;
      const LogNumber a = LogNumber::from_rational(A[static_cast<int>(m)]);
      const double scaled =
          a.is_zero() ? 0.0
                      : std::exp(a.log_abs() + m * shift + (m - 1) * std::log(R) + 1.5 * std::log(double(m)) -
                                 m * lpsi);
      cert.n.push_back(m);
      cert.scaled.push_back(scaled);
    }
    cert.decreasing = true;
    for (std::size_t i = 1; i < cert.scaled.size(); ++i)
      cert.decreasing = cert.decreasing && cert.scaled[i] < cert.scaled[i - 1];
    return cert;
  }
  const Apex a = apex(psi);
  if (a.kind == Apex::LinearEdge) {
    // g = a z / (1 - b z).
    const double value = std::log(a.a.get_d()) + (n - 1) * std::log(a.b.get_d());
    return make_estimate("linear-edge", value, n, 0.0, psi.name());
  }
  return make_estimate("omm", apex_core(psi, a, n) + std::log(a.tau), n, a.tau, psi.name());
}

Estimate power_asym(const Family& psi, long q, long n) {
  check_n(n);
  if (q < 1) throw Error(ErrorCode::DomainError, kModule, "q must be >= 1");
  if (n < q) throw Error(ErrorCode::ZeroCoefficient, kModule, "B_{n,q} = 0 for n < q");
  check_lattice(psi, n - q, "B_{n,q}");
  const Apex a = apex(psi);
  if (a.kind == Apex::LinearEdge) {
    // (q/n) binom(n, n-q) a^q b^{n-q}.
    const double value = std::log(static_cast<double>(q) / n) + log_binomial(n, q) + q * std::log(a.a.get_d()) +
                         (n - q) * std::log(a.b.get_d());
    return make_estimate("linear-edge", value, n, 0.0, psi.name());
  }
  const double value = apex_core(psi, a, n) + std::log(static_cast<double>(q)) + q * std::log(a.tau);
  return make_estimate("power", value, n, a.tau, psi.name());
}

Estimate power_asym_scaled(const Family& psi, long q, long n, double alpha, double beta) {
  check_n(n);
  if (!(alpha >= 0.0 && alpha < 1.0)) throw Error(ErrorCode::DomainError, kModule, "alpha must lie in [0, 1)");
  if (q < 1 || n < q) throw Error(ErrorCode::DomainError, kModule, "need 1 <= q <= n");
  check_lattice(psi, n - q, "B_{n,q}");
  Apex a;
  a.tau = solve_mean(psi, 1.0 - alpha);
  a.sigma = std::sqrt(psi.cumulants(a.tau)[1]);
  const double value = apex_core(psi, a, n) + std::log(static_cast<double>(q)) + q * std::log(a.tau) -
                       beta * beta / (2.0 * a.sigma * a.sigma);
  return make_estimate("power-scaled", value, n, a.tau, psi.name());
}

Estimate func_asym(const Family& H, const Family& psi, long n) {
  check_n(n);
  if (H.radius() < psi.radius()) {
    throw Error(ErrorCode::PrefactorRadiusTooSmall, kModule, H.name() + " has a smaller radius than " + psi.name());
  }
  const Apex a = analytic_apex(psi);
  // tau H'(tau) = H(tau) m_H(tau).
  const double lh = H.log_value(a.tau) + std::log(H.cumulants(a.tau)[0]);
  return make_estimate("func", apex_core(psi, a, n) + lh, n, a.tau, psi.name());
}

double borel_tanner_pmf(double t, long j, long n) {
  if (!(t > 0.0 && t <= 1.0) || j < 1) throw Error(ErrorCode::DomainError, kModule, "need 0 < t <= 1 and j >= 1");
  if (n < j) throw Error(ErrorCode::IndexBelowJ, kModule, "n = " + std::to_string(n) + " < j = " + std::to_string(j));
  const double x = static_cast<double>(n);
  const double lp = std::log(double(j)) - std::log(x) - t * x + (n - j) * std::log(t * x) - std::lgamma(n - j + 1.0);
  return std::exp(lp);
}

Rational borel_tanner_scaled(const Rational& t, long j, long n) {
  if (n < j) throw Error(ErrorCode::IndexBelowJ, kModule, "n = " + std::to_string(n) + " < j = " + std::to_string(j));
  const Rational tn = t * n;
  Rational p;
  mpz_pow_ui(p.get_num_mpz_t(), tn.get_num_mpz_t(), static_cast<unsigned long>(n - j));
  mpz_pow_ui(p.get_den_mpz_t(), tn.get_den_mpz_t(), static_cast<unsigned long>(n - j));
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n - j));
  p /= fact;
  p *= Rational(j, n);
  p.canonicalize();
  return p;
}

Estimate borel_tanner_asym(double t, long j, long n) {
  if (!(t > 0.0 && t <= 1.0) || j < 1) throw Error(ErrorCode::DomainError, kModule, "need 0 < t <= 1 and j >= 1");
  check_n(n);
  const double x = static_cast<double>(n);
  const double value = std::log(double(j)) - 0.5 * kLn2Pi - 1.5 * std::log(x) + (x - j) * std::log(t) + x * (1.0 - t);
  return make_estimate("borel-tanner", value, n, t, "exp");
}

double poisson_poisson_pmf(double s, double t, long n) {
  if (!(t > 0.0 && t <= 1.0) || !(s > 0.0)) throw Error(ErrorCode::DomainError, kModule, "need 0 < t <= 1, s > 0");
  check_n(n);
  const double x = static_cast<double>(n);
  return std::exp(-std::lgamma(x + 1.0) - t * x - s + (x - 1.0) * std::log(t * x + s) + std::log(s));
}

Estimate poisson_poisson_asym(double s, double t, long n) {
  if (!(t > 0.0 && t <= 1.0) || !(s > 0.0)) throw Error(ErrorCode::DomainError, kModule, "need 0 < t <= 1, s > 0");
  check_n(n);
  const double x = static_cast<double>(n);
  const double value =
      -0.5 * kLn2Pi + s / t - s + std::log(s) + (x - 1.0) * std::log(t) + x * (1.0 - t) - 1.5 * std::log(x);
  return make_estimate("poisson-poisson", value, n, t, "exp");
}

Estimate general_lagrangian_asym(const LagrangianSpec& spec, long n) {
  check_n(n);
  const Apex a = analytic_apex(spec.psi);
  const double t = spec.t;
  const double s = spec.s;
  if (!(t > 0.0) || !(s > 0.0) || t > a.tau * (1.0 + 1e-12)) {
    throw Error(ErrorCode::ParameterDomain, kModule, "need 0 < t <= tau and s > 0");
  }
  const double x = s * a.tau / t;
  if (!(x < spec.f_init.radius())) {
    throw Error(ErrorCode::ParameterDomain, kModule, "s tau must be below t R_f");
  }
  const Family& f = spec.f_init;
  const double lfprime = f.log_value(x) + std::log(f.cumulants(x)[0]) - std::log(x);
  const double nd = static_cast<double>(n);
  const double value = -0.5 * kLn2Pi + std::log(s) - f.log_value(s) +
                       nd * (spec.psi.log_value(a.tau) - spec.psi.log_value(t)) +
                       (nd - 1.0) * (std::log(t) - std::log(a.tau)) - 1.5 * std::log(nd) - std::log(a.sigma) +
                       lfprime;
  return make_estimate("lagrangian", value, n, t, spec.psi.name());
}

LogNumber lagrangian_pmf(const LagrangianSpec& spec, long n) {
  check_n(n);
  const int N = static_cast<int>(n);
  const auto psi = spec.psi.exact(N - 1);
  const auto f = spec.f_init.exact(N);
  const Rational r = Rational(spec.s) / Rational(spec.t);
  // H(w) = f(r w), so COEFF_n(H(g)) carries the factor r^m on f_m.
  std::vector<Rational> h(static_cast<std::size_t>(N) + 1);
  Rational rm = 1;
  for (int m = 0; m <= N; ++m) {
    if (m > 0) rm *= r;
    h[m] = f->series[m] * rm;
  }
  const Rational c = extended_coeff(Series(std::move(h)), psi->series, N);
  if (sgn(c) == 0) return LogNumber();
  const double nd = static_cast<double>(n);
  const double log_value = LogNumber::from_rational(c).log_abs() + nd * psi->exp_shift.get_d() +
                           f->exp_shift.get_d() + nd * std::log(spec.t) - nd * spec.psi.log_value(spec.t) -
                           spec.f_init.log_value(spec.s);
  return LogNumber::from_log(log_value);
}

double GwSample::frequency(long n) const {
  if (n < 0 || static_cast<std::size_t>(n) >= counts.size() || trials == 0) return 0.0;
  return static_cast<double>(counts[static_cast<std::size_t>(n)]) / static_cast<double>(trials);
}

double GwSample::censored_fraction() const {
  return trials == 0 ? 0.0 : static_cast<double>(censored) / static_cast<double>(trials);
}

GwSample gw_sample(const LagrangianSpec& spec, std::uint64_t trials, std::uint64_t seed, long node_cap) {
  if (trials < 1 || node_cap < 1) throw Error(ErrorCode::DomainError, kModule, "need trials >= 1 and node_cap >= 1");
  spec.psi.check_radius(spec.t);
  spec.f_init.check_radius(spec.s);
  const double m = spec.t == 0.0 ? 0.0 : spec.psi.cumulants(spec.t)[0];
  if (m > 1.0 + 1e-12) {
    throw Error(ErrorCode::SupercriticalSpec, kModule, "offspring mean " + std::to_string(m) + " exceeds 1");
  }
  constexpr long kTableCap = 100000;
  const auto offspring = cdf_table(spec.psi, spec.t, std::min<long>(kTableCap, spec.psi.trunc()));
  const auto initial = cdf_table(spec.f_init, spec.s, std::min<long>(kTableCap, spec.f_init.trunc()));

  // Uniforms from the top 53 bits keep the stream identical across platforms.
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

  GwSample out;
  out.trials = trials;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    long total = draw(initial, uniform());
    long alive = total;
    bool censored = total > node_cap;
    while (alive > 0 && !censored) {
      long next = 0;
      for (long i = 0; i < alive; ++i) {
        next += draw(offspring, uniform());
        if (total + next > node_cap) {
          censored = true;
          break;
        }
      }
      total += next;
      alive = next;
    }
    if (censored) {
      ++out.censored;
      continue;
    }
    if (static_cast<std::size_t>(total) >= out.counts.size()) out.counts.resize(static_cast<std::size_t>(total) + 1);
    ++out.counts[static_cast<std::size_t>(total)];
  }
  return out;
}

}  // namespace kf
