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
#include "kf/khinchin.hpp"
#include "oracles.hpp"

namespace kf {
namespace {

double rel(double a, double b) { return std::abs(a / b - 1.0); }

// ln prod_j (1 - e^{-a j s})^{-j^b}, summed directly.
double log_product(double s, int a, int b) {
  double sum = 0;
  for (long j = 1;; ++j) {
    const double x = std::exp(-a * j * s);
    const double term = -std::pow(double(j), b) * std::log1p(-x);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

TEST(Catalog, GrammarRoundTrip) {
  for (const char* s : {"exp", "bernoulli", "binom:4", "geom", "negbinom:3", "poly:1,1/2,3", "bell", "P", "Q",
                        "Pab:3,2", "Wab:1,2", "expof:poly:0,1", "canprod:1,2,5", "setsoflists", "polylog:4,1"}) {
    EXPECT_EQ(parse_spec(to_string(parse_spec(s))).variant, parse_spec(s).variant) << s;
    EXPECT_NO_THROW(make_family(s)) << s;
  }
  for (const char* bad : {"foo", "binom:0", "Pab:0,1", "poly:-1,1", "poly:", "canprod:2,1", "negbinom", "expof:",
                          "Wab:0,1", "polylog:1,1"}) {
    EXPECT_EQ(oracle::code_of([&] { parse_spec(bad); }), ErrorCode::InvalidSpec) << bad;
  }
  try {
    parse_spec("nonsense");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("setsoflists"), std::string::npos);
  }
}

TEST(Catalog, BasicFamilies) {
  const Family e = make_family("exp");
  for (double t : {0.5, 3.0}) EXPECT_NEAR(mean(e, t), t, 1e-14);
  const Family g = make_family("geom");
  EXPECT_EQ(g.radius(), 1.0);
  EXPECT_EQ(g.mean_sup(), kInf);
  const Family p21 = make_family("Pab:2,1"), q = make_family("Q");
  for (double t : {0.2, 0.5, 0.9}) {
    EXPECT_LE(rel(p21.log_value(t), q.log_value(t)), 1e-12);
    EXPECT_LE(rel(mean(p21, t), mean(q, t)), 1e-12);
    EXPECT_LE(rel(variance(p21, t), variance(q, t)), 1e-12);
  }
  EXPECT_EQ(p21.exact(200)->series, q.exact(200)->series);
}

TEST(Catalog, UsgFlags) {
  for (const char* s : {"exp", "bell", "P", "Q", "Wab:1,0", "Wab:1,2"}) EXPECT_TRUE(make_family(s).usg()) << s;
  for (const char* s : {"geom", "poly:1,1", "Pab:3,1", "Wab:2,1", "setsoflists", "binom:3"})
    EXPECT_FALSE(make_family(s).usg()) << s;
}

TEST(Catalog, ExactCoefficients) {
  EXPECT_EQ(exact_coeffs(parse_spec("P"), 5).series[5], 7);
  EXPECT_EQ(exact_coeffs(parse_spec("Q"), 6).series[6], 4);
  EXPECT_EQ(exact_coeffs(parse_spec("bell"), 6).series[6] * 720, 203);
  EXPECT_EQ(oracle::bell(6)[6], 203);
  EXPECT_EQ(oracle::code_of([] { exact_coeffs(parse_spec("P"), kMaxTruncation + 1); }),
            ErrorCode::TruncationTooLarge);
  const auto b = exact_coeffs(parse_spec("binom:6"), 8).series;
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(b[k], Rational(k <= 6 ? oracle::binomial(6, k) : 0));
  const auto nb = exact_coeffs(parse_spec("negbinom:3"), 8).series;
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(nb[k], Rational(oracle::binomial(k + 2, 2)));
}

TEST(Catalog, PartitionOraclesAgree) {
  const auto a = partitions_pentagonal(2000);
  EXPECT_EQ(a, partitions_product(2000));
  const auto ref = oracle::partitions(2000);
  for (int n = 0; n <= 2000; n += 97) EXPECT_EQ(a[n], ref[n]);
  const auto bell = bell_numbers(60);
  EXPECT_EQ(bell, oracle::bell(60));
  const auto plane = plane_partitions(10);
  const long known[] = {1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500};
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(plane[n], known[n]);
}

TEST(Catalog, DistinctPartitionIdentity) {
  // Q(z) P(z^2) = P(z), coefficientwise and numerically.
  const Series P = exact_coeffs(parse_spec("P"), 256).series;
  const Series Q = exact_coeffs(parse_spec("Q"), 256).series;
  std::vector<Rational> p2(257, 0);
  for (int n = 0; 2 * n <= 256; ++n) p2[2 * n] = P[n];
  EXPECT_EQ(mul(Q, Series(p2)), P);
  EXPECT_EQ(distinct_partitions(256)[256], Q[256].get_num());

  const Family fP = make_family("P"), fQ = make_family("Q");
  for (double t : {0.3, 0.6, 0.9}) {
    EXPECT_NEAR(fQ.log_value(t) + fP.log_value(t * t), fP.log_value(t), 1e-10 * fP.log_value(t));
    EXPECT_LE(rel(mean(fQ, t), mean(fP, t) - 2 * mean(fP, t * t)), 1e-10);
  }
}

TEST(Catalog, ApproxMoments) {
  const ApproxMoments P = approx_moments(parse_spec("P"));
  EXPECT_NEAR(P.mean(0.1), kPi * kPi / 0.06, 1e-9);
  EXPECT_NEAR(P.mean(0.1), 164.49, 0.01);
  const ApproxMoments Q = approx_moments(parse_spec("Q"));
  EXPECT_NEAR(Q.mean(0.1), zeta_real(2) / 0.02, 1e-9);
  EXPECT_NEAR(Q.variance(0.1), zeta_real(2) / 0.001, 1e-6);
  EXPECT_NEAR(Q.s_for_mean(100), std::sqrt(zeta_real(2) / 200), 1e-12);
  const ApproxMoments W = approx_moments(parse_spec("Wab:1,1"));
  EXPECT_NEAR(W.mean(0.1), 2 * zeta_real(3) * 1000, 1e-6);
  EXPECT_EQ(oracle::code_of([] { approx_moments(parse_spec("geom")); }), ErrorCode::NoApproxAvailable);

  for (const char* s : {"P", "Q", "Pab:3,1", "Pab:2,1", "Wab:1,0", "Wab:1,1", "Wab:1,2"}) {
    const ApproxMoments a = approx_moments(parse_spec(s));
    const Family f = make_family(s);
    const auto residual = [&](double sv) {
      return std::abs(a.mean(sv) - mean(f, std::exp(-sv))) / std::sqrt(a.variance(sv));
    };
    EXPECT_LT(residual(0.01), residual(0.1)) << s;
    EXPECT_NEAR(a.mean(a.s_for_mean(500.0)), 500.0, 1e-8) << s;
    EXPECT_GT(a.mean(0.05), a.mean(0.1)) << s;
  }
}

TEST(Catalog, AxisAsymptotic) {
  double prev = kInf;
  for (double s : {0.2, 0.1, 0.05, 0.02}) {
    const double direct = log_product(s, 1, 0);
    const double d = std::abs(axis_asymptotic(parse_spec("P"), s).log_abs() - direct);
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LE(rel(axis_asymptotic(parse_spec("P"), 0.05).log_abs(), log_product(0.05, 1, 0)), 0.02);
  const double s = 0.05;
  EXPECT_LE(std::abs(axis_asymptotic(parse_spec("Wab:1,1"), s).log_abs() - log_product(s, 1, 1)), 0.02);
  // ln Q(e^{-s}) = ln P(e^{-s}) - ln P(e^{-2s}).
  const double lq = log_product(s, 1, 0) - log_product(2 * s, 1, 0);
  EXPECT_NEAR(make_family("Q").log_value(std::exp(-s)), lq, 1e-10 * lq);
  EXPECT_LE(std::abs(axis_asymptotic(parse_spec("Q"), s).log_abs() - lq), 0.02);
  EXPECT_EQ(oracle::code_of([] { axis_asymptotic(parse_spec("exp"), 0.1); }), ErrorCode::NoAxisFormula);
  EXPECT_EQ(oracle::code_of([] { axis_asymptotic(parse_spec("Wab:1,3"), 0.1); }), ErrorCode::NoAxisFormula);
}

TEST(Catalog, MultisetTransform) {
  std::vector<Rational> ones(257, 1), ids(257);
  for (int j = 0; j <= 256; ++j) ids[j] = j;
  const Series b = multiset_transform(ones);
  EXPECT_EQ(b[6], 2);
  const Series bp = multiset_transform(ids);
  for (int m = 1; m <= 30; ++m) {
    EXPECT_EQ(b[m], oracle::frac(oracle::sigma(m, 1), m));
    Rational want(oracle::sigma(m, 2), m);
    want.canonicalize();
    EXPECT_EQ(bp[m], want);
  }
  EXPECT_EQ(exp_series(b).series, exact_coeffs(parse_spec("P"), 256).series);
  const auto pl = plane_partitions(256);
  const Series e = exp_series(bp).series;
  for (int n = 0; n <= 256; ++n) EXPECT_EQ(e[n], Rational(pl[n]));

  std::vector<Rational> single(9, 0);
  single[1] = 1;
  const Series g = multiset_transform(single);
  for (int m = 1; m <= 8; ++m) EXPECT_EQ(g[m], Rational(1, m));
  EXPECT_EQ(exp_series(g).series, Series(std::vector<Rational>(9, Rational(1))));
}

TEST(Catalog, PowersetTransform) {
  std::vector<Rational> ones(257, 1);
  const Series b = powerset_transform(ones);
  for (int m = 1; m <= 30; ++m) {
    Rational want(oracle::sigma(m, 1) - (m % 2 == 0 ? 2 * oracle::sigma(m / 2, 1) : 0), m);
    want.canonicalize();
    EXPECT_EQ(b[m], want);
  }
  EXPECT_EQ(b[4], Rational(1, 4));
  const Series q = exp_series(b).series;
  EXPECT_EQ(q[6], 4);
  EXPECT_EQ(q, exact_coeffs(parse_spec("Q"), 256).series);
  std::vector<Rational> single(9, 0);
  single[1] = 1;
  const Series l = powerset_transform(single);
  for (int m = 1; m <= 8; ++m) EXPECT_EQ(l[m], Rational(m % 2 ? 1 : -1, m));
}

TEST(Catalog, HaymanCriterionEntire) {
  std::vector<Rational> g(41, 0), zg(41, 0);
  for (int n = 1; n <= 40; ++n) {
    g[n] = Rational(1, oracle::factorial(n));
    zg[n] = Rational(1, oracle::factorial(n - 1));
  }
  EXPECT_TRUE(hayman_criterion_entire(Series(g), 1, 1, 1, 1).holds);
  const CriterionVerdict bad = hayman_criterion_entire(Series(zg), 1, 1, 2, 2);
  EXPECT_FALSE(bad.holds);
  EXPECT_NE(bad.reason.find("2 lambda"), std::string::npos) << bad.reason;
  EXPECT_TRUE(hayman_criterion_entire(Series(zg), 1, 1, std::exp(1.0), 1.4).holds);
  const CriterionVerdict low = hayman_criterion_entire(Series(zg), 1, 1, 1, 1.4);
  EXPECT_FALSE(low.holds);
  EXPECT_EQ(low.first_violation, 2);
}

TEST(Catalog, HaymanCriterionFinite) {
  std::vector<Rational> s1(513, 0), s2(513, 0);
  double D = 0;
  for (int n = 1; n <= 512; ++n) {
    s1[n] = Rational(oracle::sigma(n, 1), n);
    s2[n] = Rational(oracle::sigma(n, 2), n);
    D = std::max(D, s1[n].get_d() / std::pow(n, 0.3));
  }
  EXPECT_TRUE(hayman_criterion_finite(Series(s1), 1, 0, D * (1 + 1e-12), 0.3, 1).holds);
  EXPECT_TRUE(hayman_criterion_finite(Series(s2), 1, 1, 2, 1, 1).holds);
  EXPECT_FALSE(hayman_criterion_finite(Series(s2), 1, 1, 2, 2.5, 1).holds);
}

TEST(Catalog, EvaluationsMatchCoefficientSums) {
  for (const char* s : {"exp", "bernoulli", "binom:5", "geom", "negbinom:3", "poly:1,2,0,3", "bell", "P", "Q",
                        "Pab:3,1", "Wab:1,1", "Wab:2,1", "expof:poly:0,1,1", "canprod:1,2,3", "setsoflists",
                        "polylog:3,1/2"}) {
    const Family f = make_family(s);
    const double t = std::isfinite(f.radius()) ? 0.4 * f.radius() : 1.3;
    const auto c = f.exact(400);
    double sum = 0;
    for (int n = 400; n >= 0; --n) sum = sum * t + c->series[n].get_d();
    EXPECT_LE(std::abs(std::log(sum) + c->exp_shift.get_d() - f.log_value(t)), 1e-12) << s;
  }
}

}  // namespace
}  // namespace kf
