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

#include <gtest/gtest.h>

#include <cmath>

#include "kf/catalog.hpp"
#include "kf/lagrange.hpp"
#include "oracles.hpp"

namespace kf {
namespace {

Series exact_series(const char* spec, int order) { return make_family(spec).exact(order)->series; }

Series exp_series_rational(int order) {
  std::vector<Rational> c;
  for (int j = 0; j <= order; ++j) c.push_back(oracle::frac(1, oracle::factorial(j)));
  return Series(std::move(c));
}

// ln(n^{n-1} / n!), the rooted labelled trees.
double log_cayley(long n) { return (n - 1) * std::log(double(n)) - std::lgamma(n + 1.0); }

// Borel-Tanner mass from the closed form, in logs.
double bt_direct(double t, long j, long n) {
  return std::exp(std::log(double(j) / n) - t * n + (n - j) * std::log(t * n) - std::lgamma(n - j + 1.0));
}

double rel_to(const Estimate& e, double log_exact) { return std::exp(e.value.log_abs() - log_exact); }

const Estimate& as_estimate(const std::variant<Estimate, DecayCertificate>& v) { return std::get<Estimate>(v); }

TEST(Lagrange, Apex) {
  const Apex e = apex(make_family("exp"));
  EXPECT_EQ(e.kind, Apex::Interior);
  EXPECT_NEAR(e.tau, 1.0, 1e-9);
  EXPECT_NEAR(e.sigma, 1.0, 1e-9);
  EXPECT_NEAR(apex(make_family("geom")).tau, 0.5, 1e-9);
  const Apex lin = apex(make_family("poly:1,1"));
  EXPECT_EQ(lin.kind, Apex::LinearEdge);
  EXPECT_EQ(lin.a, 1);
  EXPECT_EQ(lin.b, 1);
  EXPECT_EQ(oracle::code_of([] { apex(make_family("polylog:4,1")); }), ErrorCode::MeanSupBelowOne);
}

TEST(Lagrange, ExtendedCoefficient) {
  EXPECT_EQ(extended_coeff(Series::monomial(2, 1, 8), exp_series_rational(8), 4), 4);
  EXPECT_EQ(extended_coeff(Series::monomial(1, 1, 8), exact_series("poly:1,1", 8), 5), 1);
  // psi = 3 + 2z: g = 3z / (1 - 2z), so A_n = 3 * 2^{n-1}.
  EXPECT_EQ(extended_coeff(Series::monomial(1, 1, 8), exact_series("poly:3,2", 8), 4), 24);
  EXPECT_EQ(extended_coeff(Series::monomial(1, 1, 8), exact_series("poly:3,2", 8), 1), 3);
  // COEFF_n(e^{T}) = (n+1)^{n-1} / n!.
  const Series e = exp_series_rational(12);
  for (int n = 1; n <= 10; ++n) {
    EXPECT_EQ(extended_coeff(e, e, n), oracle::frac(oracle::power(n + 1, n - 1), oracle::factorial(n))) << n;
  }
}

// g = z psi(g) by repeated substitution; each pass fixes one more coefficient.
Series fixed_point_oracle(const Series& psi, int N) {
  std::vector<mpq_class> g(N + 1, 0);
  for (int pass = 0; pass < N; ++pass) {
    std::vector<mpq_class> acc(N + 1, 0), gp(N + 1, 0);
    gp[0] = 1;
    for (int j = 0; j <= std::min(N, psi.order()); ++j) {
      if (j > 0) gp = oracle::convolve(gp, g);
      for (int i = 0; i <= N; ++i) acc[i] += psi[j] * gp[i];
    }
    std::vector<mpq_class> next(N + 1, 0);
    for (int i = 1; i <= N; ++i) next[i] = acc[i - 1];
    g = next;
  }
  return Series(std::vector<Rational>(g.begin(), g.end()));
}

TEST(Lagrange, ExactnessTriangle) {
  const Series psis[] = {exp_series_rational(64), exact_series("poly:1,1", 64), exact_series("geom", 64),
                         exact_series("poly:1,1,1", 64)};
  for (const Series& psi : psis) {
    const Series inv = lagrange_invert(psi, 64);
    for (int n = 1; n <= 64; ++n) ASSERT_EQ(extended_coeff(Series::monomial(1, 1, 64), psi, n), inv[n]) << n;
    EXPECT_EQ(fixed_point_oracle(psi.truncated(16), 16), inv.truncated(16));
  }
}

TEST(Lagrange, TiltScaling) {
  // psi_t(z) = e^{t(z-1)} = e^{-t} e^{tz}. The factor e^{-nt} in psi_t^n is kept
  // aside, so e^{nt} COEFF_n(g_t) is the inversion of e^{tz}, and the scaling law
  // g_t(z) = g(t z / psi(t)) / t says it equals A_n t^{n-1}.
  const Rational t = oracle::frac(7, 10);
  std::vector<Rational> c;
  Rational tp = 1;
  for (int j = 0; j <= 32; ++j, tp *= t) c.push_back(tp / oracle::factorial(j));
  const Series tilted = lagrange_invert(Series(std::move(c)), 32);
  const Series g = lagrange_invert(exp_series_rational(32), 32);
  tp = 1;
  for (int n = 1; n <= 32; ++n, tp *= t) {
    EXPECT_EQ(tilted[n], g[n] * tp) << n;
    EXPECT_EQ(tilted[n], borel_tanner_scaled(t, 1, n)) << n;
  }
}

TEST(Lagrange, OttersEstimate) {
  const Family e = make_family("exp");
  EXPECT_NEAR(rel_to(as_estimate(omm_estimate(e, 5)), log_cayley(5)), 1.017, 1e-3);
  double prev = kInf;
  for (long n : {5L, 10L, 20L, 40L, 80L}) {
    const double r = std::abs(rel_to(as_estimate(omm_estimate(e, n)), log_cayley(n)) - 1);
    EXPECT_LT(r, prev);
    prev = r;
  }
  // 1/(1-z): A_n = binom(2n-2, n-1) / n.
  const Family geom = make_family("geom");
  for (long n : {50L, 200L}) {
    const double exact = oracle::log_of(mpz_class(oracle::binomial(2 * n - 2, n - 1) / n));
    EXPECT_NEAR(rel_to(as_estimate(omm_estimate(geom, n)), exact), 1.0, 2.0 / n);
  }
  EXPECT_EQ(oracle::code_of([] { omm_estimate(make_family("poly:1,0,1"), 10); }), ErrorCode::ZeroCoefficient);
  const auto sub = omm_estimate(make_family("polylog:4,1"), 50);
  ASSERT_TRUE(std::holds_alternative<DecayCertificate>(sub));
  const DecayCertificate& c = std::get<DecayCertificate>(sub);
  EXPECT_TRUE(c.decreasing);
  ASSERT_GE(c.scaled.size(), 2u);
  EXPECT_LT(c.scaled.back(), c.scaled.front());
}

TEST(Lagrange, GrowthRate) {
  // A_{n+1} / A_n approaches psi(tau) / tau: 4 for 1/(1-z) and e for e^z.
  for (long n = 32; n <= 64; n += 8) {
    const mpz_class a = oracle::binomial(2 * n - 2, n - 1) / n, b = oracle::binomial(2 * n, n) / (n + 1);
    EXPECT_NEAR(mpq_class(b, a).get_d() / 4, 1.0, 0.05);
    EXPECT_NEAR(std::exp(log_cayley(n + 1) - log_cayley(n)) / std::exp(1.0), 1.0, 0.05);
  }
  const Series g = lagrange_invert(exact_series("geom", 65), 65);
  EXPECT_NEAR(Rational(g[65] / g[64]).get_d() / 4, 1.0, 0.05);
}

TEST(Lagrange, PowersAndFunctions) {
  const Family e = make_family("exp");
  EXPECT_NEAR(power_asym(e, 1, 30).value.log_abs(), as_estimate(omm_estimate(e, 30)).value.log_abs(), 1e-12);
  // B_{20,2} = (2/20) 20^18 / 18!.
  const double b20 = std::log(0.1) + 18 * std::log(20.0) - std::lgamma(19.0);
  EXPECT_NEAR(rel_to(power_asym(e, 2, 20), b20), 1.0, 0.1);
  EXPECT_NEAR(power_asym_scaled(e, 2, 20, 0.0, 0.0).value.log_abs(), power_asym(e, 2, 20).value.log_abs(), 1e-9);

  EXPECT_NEAR(func_asym(make_family("poly:0,1"), e, 30).value.log_abs(),
              as_estimate(omm_estimate(e, 30)).value.log_abs(), 1e-12);
  const double sq = std::log(2.0 / 30) + 28 * std::log(30.0) - std::lgamma(29.0);
  EXPECT_NEAR(rel_to(func_asym(make_family("poly:0,0,1"), e, 30), sq), 1.0, 0.1);
  const double forests = 19 * std::log(21.0) - std::lgamma(21.0);
  EXPECT_NEAR(rel_to(func_asym(e, e, 20), forests), 1.0, 0.1);
  EXPECT_EQ(oracle::code_of([&] { func_asym(make_family("geom"), e, 20); }), ErrorCode::PrefactorRadiusTooSmall);
}

TEST(Lagrange, BorelTannerPmf) {
  EXPECT_NEAR(borel_tanner_pmf(1.0, 1, 1), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(borel_tanner_pmf(1.0, 1, 2), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(borel_tanner_pmf(0.5, 2, 2), std::exp(-1.0), 1e-15);
  for (long n : {3L, 10L, 57L, 400L}) EXPECT_NEAR(borel_tanner_pmf(0.5, 3, n) / bt_direct(0.5, 3, n), 1.0, 1e-12);
  // (j/n) COEFF_{n-j}(e^{tn z}) with t = 1/2, j = 3, n = 10.
  EXPECT_EQ(borel_tanner_scaled(oracle::frac(1, 2), 3, 10),
            oracle::frac(3, 10) * oracle::frac(oracle::power(5, 7), oracle::factorial(7)));
  double total = 0;
  for (long n = 1; n <= 2000; ++n) total += borel_tanner_pmf(0.5, 1, n);
  EXPECT_LE(total, 1.0 + 1e-12);
  EXPECT_GE(total, 1.0 - 1e-12);
  EXPECT_EQ(oracle::code_of([] { borel_tanner_pmf(0.5, 3, 2); }), ErrorCode::IndexBelowJ);
}

TEST(Lagrange, BorelTannerAsymptotics) {
  double prev = kInf;
  for (long n : {50L, 100L, 200L}) {
    const double r = std::abs(rel_to(borel_tanner_asym(1.0, 1, n), std::log(borel_tanner_pmf(1.0, 1, n))) - 1);
    EXPECT_LT(r, prev);
    prev = r;
  }
  EXPECT_LT(prev, 2.0 / 200);
  EXPECT_NEAR(rel_to(borel_tanner_asym(0.5, 3, 200), std::log(borel_tanner_pmf(0.5, 3, 200))), 1.0, 0.02);
  EXPECT_TRUE(std::isfinite(borel_tanner_asym(0.5, 3, 3).value.log_abs()));
}

TEST(Lagrange, PoissonPoisson) {
  EXPECT_NEAR(poisson_poisson_pmf(2.0, 0.8, 1), 2.0 * std::exp(-2.8), 1e-15);
  const auto direct = [](double s, double t, long n) {
    return std::exp(-std::lgamma(n + 1.0) - t * n - s + (n - 1) * std::log(t * n + s) + std::log(s));
  };
  for (long n : {2L, 30L, 200L}) EXPECT_NEAR(poisson_poisson_pmf(2.0, 0.8, n) / direct(2.0, 0.8, n), 1.0, 1e-12);
  // The leading correction is (s/t)(1 + s/(2t)) / n, about 2.8% at n = 200.
  const auto closed = [](double s, double t, long n) {
    return s / t - s + std::log(s) + (n - 1) * std::log(t) + n * (1 - t) - 0.5 * std::log(2 * kPi) - 1.5 * std::log(double(n));
  };
  double prev = kInf;
  for (long n : {200L, 400L, 800L}) {
    const Estimate e = poisson_poisson_asym(2.0, 0.8, n);
    EXPECT_NEAR(e.value.log_abs(), closed(2.0, 0.8, n), 1e-10);
    const double r = std::abs(rel_to(e, std::log(direct(2.0, 0.8, n))) - 1);
    EXPECT_LT(r, prev);
    EXPECT_LT(r, 6.0 / n);
    prev = r;
  }
  EXPECT_LT(prev, 0.02);
  // As s -> 0 only one founder survives the conditioning, giving Borel-Tanner with j = 1.
  for (long n : {1L, 5L, 40L}) EXPECT_NEAR(poisson_poisson_pmf(1e-6, 0.7, n) / 1e-6 / bt_direct(0.7, 1, n), 1.0, 1e-4);
}

TEST(Lagrange, GeneralLagrangian) {
  const Family e = make_family("exp");
  const LagrangianSpec bt{e, make_family("poly:0,0,1"), 0.5, 1.0};
  EXPECT_NEAR(general_lagrangian_asym(bt, 200).value.log_abs(), borel_tanner_asym(0.5, 2, 200).value.log_abs(), 1e-8);
  const LagrangianSpec pp{e, e, 0.8, 2.0};
  EXPECT_NEAR(general_lagrangian_asym(pp, 200).value.log_abs(), poisson_poisson_asym(2.0, 0.8, 200).value.log_abs(),
              1e-8);

  // Founders: none with weight 1/(1+s), one with weight s/(1+s).
  const LagrangianSpec lin{e, make_family("poly:1,1"), 0.9, 1.0};
  const double exact = 0.5 * bt_direct(0.9, 1, 100);
  EXPECT_NEAR(rel_to(general_lagrangian_asym(lin, 100), std::log(exact)), 1.0, 0.05);
  for (long n : {1L, 7L, 100L}) EXPECT_NEAR(lagrangian_pmf(lin, n).to_double() / (0.5 * bt_direct(0.9, 1, n)), 1.0, 1e-10);
  EXPECT_EQ(oracle::code_of([&] { general_lagrangian_asym({e, e, 1.5, 1.0}, 50); }), ErrorCode::ParameterDomain);
}

TEST(Lagrange, GaltonWatsonSampler) {
  const LagrangianSpec spec{make_family("exp"), make_family("poly:0,1"), 0.5, 1.0};
  const GwSample a = gw_sample(spec, 100000, 7);
  EXPECT_EQ(a.trials, 100000u);
  EXPECT_NEAR(a.frequency(1), std::exp(-0.5), 0.006);
  for (long n = 2; n <= 6; ++n) {
    const double p = bt_direct(0.5, 1, n);
    EXPECT_NEAR(a.frequency(n), p, 4 * std::sqrt(p * (1 - p) / 1e5)) << n;
  }
  const GwSample b = gw_sample(spec, 100000, 7);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.censored, b.censored);
  const GwSample critical = gw_sample({make_family("exp"), make_family("poly:0,1"), 1.0, 1.0}, 2000, 11, 10000);
  EXPECT_GT(critical.censored_fraction(), 0.0);
  EXPECT_EQ(oracle::code_of([] { gw_sample({make_family("exp"), make_family("poly:0,1"), 1.5, 1.0}, 10, 1); }),
            ErrorCode::SupercriticalSpec);
}

}  // namespace
}  // namespace kf
