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
#include "kf/numerics.hpp"
#include "oracles.hpp"

namespace kf {
namespace {

TEST(Numerics, LambertW) {
  EXPECT_EQ(lambert_w0(0.0), 0.0);
  EXPECT_NEAR(lambert_w0(std::exp(1.0)), 1.0, 1e-15);
  double lo = 0, hi = 10;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::exp(mid) < 100 ? lo : hi) = mid;
  }
  const double w = lambert_w0(100.0);
  EXPECT_NEAR(w, lo, 1e-12);
  EXPECT_NEAR(w * std::exp(w), 100.0, 1e-10);
  EXPECT_NEAR(lambert_w0(-1.0 / std::exp(1.0)), -1.0, 1e-7);
  EXPECT_EQ(oracle::code_of([] { lambert_w0(-1.0); }), ErrorCode::DomainError);
}

TEST(Numerics, Zeta) {
  EXPECT_NEAR(zeta_real(2.0), kPi * kPi / 6, 1e-14);
  EXPECT_NEAR(zeta_real(4.0), std::pow(kPi, 4) / 90, 1e-14);
  // Partial sum with the Euler-Maclaurin tail 1/(2N^2) - 1/(2N^3).
  const long N = 10000000;
  double s = 0;
  for (long n = N; n >= 1; --n) s += 1.0 / (double(n) * n * n);
  s += 1.0 / (2.0 * N * N) - 1.0 / (2.0 * N * N * N);
  EXPECT_NEAR(zeta_real(3.0), s, 1e-13);
  EXPECT_EQ(oracle::code_of([] { zeta_real(1.0); }), ErrorCode::DomainError);
}

TEST(Numerics, ZetaAtNegativeIntegers) {
  EXPECT_NEAR(zeta_neg(0), -0.5, 1e-15);
  EXPECT_NEAR(zeta_neg(1), -1.0 / 12, 1e-15);
  EXPECT_NEAR(zeta_neg(2), 0.0, 1e-15);
  EXPECT_NEAR(zeta_prime_neg(0), -0.5 * std::log(2 * kPi), 1e-14);
  // zeta'(-1) = 1/12 - ln A (Glaisher), zeta'(-2) = -zeta(3) / (4 pi^2).
  const double glaisher = 1.28242712910062263687534256886979;
  EXPECT_NEAR(zeta_prime_neg(1), 1.0 / 12 - std::log(glaisher), 1e-13);
  EXPECT_NEAR(zeta_prime_neg(2), -1.2020569031595942854 / (4 * kPi * kPi), 1e-14);
  EXPECT_EQ(oracle::code_of([] { zeta_prime_neg(3); }), ErrorCode::UnsupportedOrder);
}

TEST(Numerics, LogGamma) {
  EXPECT_NEAR(log_gamma(5.0), std::log(24.0), 1e-14);
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(kPi), 1e-14);
  EXPECT_NEAR(log_gamma(1.5), std::log(std::sqrt(kPi) / 2), 1e-14);
}

TEST(Numerics, SolveMonotone) {
  const auto id = [](double t) { return t; };
  EXPECT_NEAR(solve_monotone(id, 3.0, {0.0, 10.0}), 3.0, 1e-9);
  const Family e = make_family("exp");
  const auto me = [&](double t) { return mean(e, t); };
  EXPECT_NEAR(solve_monotone(me, 7.0, expand_bracket(me, 7.0, 1.0, kInf)), 7.0, 1e-8);

  const Family P = make_family("P");
  const auto mp = [&](double t) { return mean(P, t); };
  const double t = solve_monotone(mp, 100.0, expand_bracket(mp, 100.0, 0.5, 1.0));
  EXPECT_NEAR(mean(P, t), 100.0, 1e-6);
  EXPECT_NEAR(t / std::exp(-kPi / std::sqrt(600.0)), 1.0, 0.03);
  EXPECT_EQ(oracle::code_of([&] { solve_monotone(id, 30.0, {0.0, 10.0}); }), ErrorCode::BracketInvalid);
}

TEST(Numerics, FiniteDifferences) {
  const auto sq = [](double t) { return t * t; };
  EXPECT_NEAR(finite_diff(sq, 3.0, 1e-3), 6.0, 1e-9);
  const Family e = make_family("exp");
  EXPECT_NEAR(finite_diff([&](double t) { return mean(e, t); }, 4.2, 1e-3), 1.0, 1e-9);

  const Family P = make_family("P");
  const double t = 0.9;
  const double d = richardson_diff([&](double x) { return mean(P, x); }, t, 1e-4);
  // sigma^2 of the partition family: sum_j j^2 t^j / (1 - t^j)^2.
  double var = 0;
  for (int j = 1; j < 2000; ++j) {
    const double tj = std::pow(t, j);
    var += double(j) * j * tj / ((1 - tj) * (1 - tj));
  }
  EXPECT_NEAR(t * d / var, 1.0, 1e-4);
}

TEST(Numerics, Simpson) {
  EXPECT_NEAR(integrate_simpson([](double x) { return std::sin(x); }, 0.0, kPi), 2.0, 1e-10);
}

TEST(Numerics, LogNumberArithmetic) {
  const LogNumber a = LogNumber::from_integer(oracle::factorial(300));
  const LogNumber b = LogNumber::from_integer(oracle::factorial(299));
  EXPECT_FALSE(a.in_range());
  EXPECT_NEAR(ratio(a, b), 300.0, 1e-9);
  EXPECT_NEAR((LogNumber::from_double(2.0) + LogNumber::from_double(-5.0)).to_double(), -3.0, 1e-15);
  EXPECT_NEAR(LogNumber::from_rational(Rational(1, 4)).to_double(), 0.25, 1e-16);
  EXPECT_TRUE(LogNumber::from_double(0.0).is_zero());
}

}  // namespace
}  // namespace kf
