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
#include <complex>

#include "kf/asym.hpp"
#include "kf/catalog.hpp"
#include "kf/khinchin.hpp"
#include "oracles.hpp"

namespace kf {
namespace {

using cd = std::complex<double>;

double exact_over_estimate(const LogNumber& exact, const Estimate& e) { return ratio(exact, e.value); }

LogNumber exact_coeff(const Family& f, int n) {
  const auto s = f.exact(n);
  return LogNumber::from_rational(s->series[n]) * LogNumber::from_log(s->exp_shift.get_d());
}

TEST(Asym, SaddleSolve) {
  EXPECT_NEAR(saddle_solve(make_family("exp"), 7).t_n, 7.0, 1e-8);
  EXPECT_NEAR(saddle_solve(make_family("bell"), 10).t_n, lambert_w0(10.0), 1e-10);
  const SaddlePoint p = saddle_solve(make_family("P"), 100);
  EXPECT_NEAR(p.t_n / std::exp(-kPi / std::sqrt(600.0)), 1.0, 0.03);
  for (const char* s : {"exp", "bell", "P", "Q", "geom", "binom:9", "polylog:4,1"}) {
    const Family f = make_family(s);
    for (double n : {0.5, 3.0, 40.0}) {
      if (n >= f.mean_sup()) continue;
      const SaddlePoint sp = saddle_solve(f, n);
      EXPECT_LE(std::abs(sp.m_t - n), 1e-9 * std::max(1.0, n)) << s;
      EXPECT_GT(sp.t_n, 0.0);
      EXPECT_LT(sp.t_n, f.radius());
    }
  }
  EXPECT_EQ(oracle::code_of([] { saddle_solve(make_family("binom:3"), 3); }), ErrorCode::TargetAboveMeanSup);
  EXPECT_EQ(oracle::code_of([] { saddle_solve(make_family("polylog:4,1"), 1.0); }), ErrorCode::TargetAboveMeanSup);
}

TEST(Asym, HaymanStirling) {
  const Estimate e = hayman_estimate(make_family("exp"), 10);
  const double r = exact_over_estimate(LogNumber::from_rational(Rational(1, oracle::factorial(10))), e);
  EXPECT_NEAR(r, 1.0 - 1.0 / 120, 1.0 / 1000);
  EXPECT_EQ(e.method, "hayman");
  EXPECT_EQ(e.value.sign(), 1);
}

TEST(Asym, HaymanPartitionsAndBell) {
  const auto p = oracle::partitions(100);
  EXPECT_LE(std::abs(exact_over_estimate(LogNumber::from_integer(p[100]), hayman_estimate(make_family("P"), 100)) - 1),
            0.06);
  const auto b = oracle::bell(20);
  const double rb = exact_over_estimate(LogNumber::from_rational(oracle::frac(b[20], oracle::factorial(20))),
                                        hayman_estimate(make_family("bell"), 20));
  EXPECT_LE(std::abs(rb - 1), 0.05);
}

TEST(Asym, HaymanErrorDecreases) {
  const long ns[] = {50, 100, 200, 500, 1000};
  for (const char* s : {"exp", "P", "Q", "bell"}) {
    const Family f = make_family(s, 1000);
    double prev = kInf;
    for (long n : ns) {
      const double err = std::abs(exact_over_estimate(exact_coeff(f, static_cast<int>(n)), hayman_estimate(f, n)) - 1);
      EXPECT_LT(err, prev) << s << " n=" << n;
      prev = err;
    }
  }
}

TEST(Asym, HaymanOnSparseLattice) {
  const Family f = make_family("expof:poly:0,0,1");
  EXPECT_EQ(f.q_gcd(), 2);
  const double r = exact_over_estimate(LogNumber::from_rational(Rational(1, oracle::factorial(10))),
                                       hayman_estimate(f, 20));
  EXPECT_NEAR(r, 1.0, 0.02);
  EXPECT_EQ(oracle::code_of([&] { hayman_estimate(f, 21); }), ErrorCode::QGcdNotOne);
}

TEST(Asym, BaezDuarte) {
  const auto p = oracle::partitions(1000);
  const Family P = make_family("P");
  EXPECT_NEAR(exact_over_estimate(LogNumber::from_integer(p[100]), baez_duarte_estimate(P, 100)), 1 / 1.05, 0.01);
  const Family Q = make_family("Q");
  EXPECT_LE(std::abs(exact_over_estimate(exact_coeff(Q, 100), baez_duarte_estimate(Q, 100)) - 1), 0.1);
  const Family B = make_family("bell");
  EXPECT_LE(std::abs(baez_duarte_estimate(B, 50).value.log_abs() / hayman_estimate(B, 50).value.log_abs() - 1), 1e-9);
  EXPECT_EQ(oracle::code_of([] { baez_duarte_estimate(make_family("geom"), 10); }), ErrorCode::NoApproxAvailable);

  // The two pipelines approach each other; the closed form follows the
  // Baez-Duarte value.
  double prev = kInf;
  for (long n : {100L, 500L, 1000L}) {
    const double gap = std::abs(ratio(baez_duarte_estimate(P, n).value, hayman_estimate(P, n).value) - 1);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 0.01);
  const double hr_bd = ratio(closed_partition_asym({PartitionKind::HardyRamanujan}, 1000).value,
                             baez_duarte_estimate(P, 1000).value);
  EXPECT_NEAR(hr_bd, 1.0, 0.02);
}

TEST(Asym, ClosedPartitionForms) {
  const auto p = oracle::partitions(100);
  const double hr = ratio(closed_partition_asym({PartitionKind::HardyRamanujan}, 100).value,
                          LogNumber::from_integer(p[100]));
  EXPECT_NEAR(hr, 1.047, 0.005);
  for (long n : {1L, 10L, 100L, 1000L}) {
    const double hrl = closed_partition_asym({PartitionKind::HardyRamanujan}, n).value.log_abs();
    EXPECT_NEAR(closed_partition_asym({PartitionKind::Colored, 1, 0}, n).value.log_abs(), hrl, 1e-12 * std::abs(hrl) + 1e-12);
    EXPECT_NEAR(closed_partition_asym({PartitionKind::Ingham, 1, 1}, n).value.log_abs(), hrl, 1e-12 * std::abs(hrl) + 1e-12);
    const double ql = closed_partition_asym({PartitionKind::Distinct}, n).value.log_abs();
    EXPECT_NEAR(closed_partition_asym({PartitionKind::Ingham, 2, 1}, n).value.log_abs(), ql, 1e-12 * std::abs(ql) + 1e-12);
    const double wl = closed_partition_asym({PartitionKind::WrightPlane}, n).value.log_abs();
    EXPECT_NEAR(closed_partition_asym({PartitionKind::Colored, 1, 1}, n).value.log_abs(), wl, 1e-12 * std::abs(wl) + 1e-12);
  }
  const auto pl = plane_partitions(50);
  EXPECT_NEAR(ratio(closed_partition_asym({PartitionKind::WrightPlane}, 50).value, LogNumber::from_integer(pl[50])),
              1.018144, 1e-3);
  // Colored b = 2 against the W(1,2) coefficients.
  const Family w2 = make_family("Wab:1,2", 400);
  double prev = kInf;
  for (int n : {50, 100, 200, 400}) {
    const double err = std::abs(ratio(closed_partition_asym({PartitionKind::Colored, 1, 2}, n).value, exact_coeff(w2, n)) - 1);
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 0.01);
  // Odd parts congruent to 1 mod 3, against P_{3,1}.
  const Family p31 = make_family("Pab:3,1", 2000);
  EXPECT_NEAR(ratio(closed_partition_asym({PartitionKind::Ingham, 3, 1}, 2000).value, exact_coeff(p31, 2000)), 1.0, 0.05);
  EXPECT_EQ(oracle::code_of([] { closed_partition_asym({PartitionKind::Ingham, 4, 2}, 10); }), ErrorCode::GcdNotOne);
  EXPECT_EQ(oracle::code_of([] { closed_partition_asym({PartitionKind::Colored, 1, 3}, 10); }),
            ErrorCode::UnsupportedColoredOrder);
}

TEST(Asym, MoserWyman) {
  const Estimate one = moser_wyman(1);
  EXPECT_EQ(one.value.sign(), 1);
  EXPECT_TRUE(std::isfinite(one.value.log_abs()));
  const auto b = oracle::bell(50);
  EXPECT_NEAR(ratio(moser_wyman(50).value, LogNumber::from_rational(oracle::frac(b[50], oracle::factorial(50)))),
              1.007238, 1e-3);
  const Family B = make_family("bell");
  for (long n : {5L, 50L, 300L}) {
    const double h = hayman_estimate(B, n).value.log_abs();
    EXPECT_NEAR(moser_wyman(n).value.log_abs(), h, 1e-9 * std::max(1.0, std::abs(h)));
  }
}

TEST(Asym, LocalClt) {
  const Family e = make_family("exp");
  EXPECT_LT(local_clt_sup(e, 100.0), 0.05);
  const double a = local_clt_sup(e, 10.0), b = local_clt_sup(e, 100.0), c = local_clt_sup(e, 1000.0);
  EXPECT_GT(a, b);
  EXPECT_GT(b, c);
  // Direct Poisson computation of the same supremum at t = 100.
  double direct = 0;
  for (long n = 0; n <= 300; ++n) {
    const double pm = std::exp(n * std::log(100.0) - 100.0 - std::lgamma(n + 1.0));
    direct = std::max(direct, std::abs(pm * std::sqrt(2 * kPi * 100.0) - std::exp(-(100.0 - n) * (100.0 - n) / 200.0)));
  }
  EXPECT_NEAR(b, direct, 1e-12);
  EXPECT_GT(local_clt_sup(make_family("geom"), 0.99), 0.5);
  EXPECT_EQ(oracle::code_of([&] { local_clt_sup(e, 100.0, IndexWindow{90, 110}); }), ErrorCode::WindowTooNarrow);
}

TEST(Asym, StrongGaussianIntegral) {
  const Family e = make_family("exp");
  // Trapezoid rule on the closed-form integrand.
  const auto closed = [](double t) {
    const int M = 400000;
    const double top = kPi * std::sqrt(t), h = top / M;
    double s = 0;
    for (int i = 0; i <= M; ++i) {
      const double th = i * h;
      const cd z = std::exp(t * (std::exp(cd(0, th / std::sqrt(t))) - 1.0 - cd(0, th / std::sqrt(t))));
      s += (i == 0 || i == M ? 0.5 : 1.0) * std::abs(z - std::exp(-th * th / 2));
    }
    return 2 * s * h;
  };
  for (double t : {10.0, 400.0}) EXPECT_NEAR(strong_gaussian_integral(e, t), closed(t), 1e-6);
  EXPECT_NEAR(strong_gaussian_integral(e, 400.0), 0.0333, 5e-4);
  EXPECT_GT(strong_gaussian_integral(e, 100.0), strong_gaussian_integral(e, 1000.0));
  // A fair coin standardizes to +-1, so its characteristic function is cos.
  double coin = 0;
  const int M = 200000;
  for (int i = 0; i <= M; ++i) {
    const double th = kPi / 2 * i / M;
    coin += (i == 0 || i == M ? 0.5 : 1.0) * std::abs(std::cos(th) - std::exp(-th * th / 2));
  }
  coin *= 2 * (kPi / 2) / M;
  EXPECT_NEAR(strong_gaussian_integral(make_family("poly:1,1"), 1.0), coin, 1e-6);
}

TEST(Asym, GaussianityRatio) {
  for (double t : {4.0, 100.0}) EXPECT_NEAR(gaussianity_ratio(make_family("exp"), t), 1 / std::sqrt(t), 1e-10);
  const double s = 0.01;
  EXPECT_NEAR(gaussianity_ratio(make_family("P"), std::exp(-s)), 0.1654, 0.01654);
  const Family B = make_family("bell");
  EXPECT_GT(gaussianity_ratio(B, 2.0), gaussianity_ratio(B, 10.0));
  EXPECT_LT(gaussianity_ratio(B, 10.0), 0.02);
}

TEST(Asym, CutDiagnostics) {
  const Family e = make_family("exp");
  double prev = kInf;
  for (double t : {1e2, 1e3, 1e4}) {
    const double h = std::pow(t, -0.4);
    const CutDiagnostics d = cut_diagnostics(e, t, h);
    // Grid supremum of the closed-form major-arc quantity.
    double direct = 0;
    const double sd = std::sqrt(t);
    for (int i = 0; i <= 20000; ++i) {
      const double th = h * sd * i / 20000.0;
      const cd z = std::exp(t * (std::exp(cd(0, th / sd)) - 1.0 - cd(0, th / sd)) + th * th / 2);
      direct = std::max(direct, std::abs(z - 1.0));
    }
    EXPECT_NEAR(d.major_sup, direct, 1e-3 * direct);
    EXPECT_LT(d.major_sup, prev);
    prev = d.major_sup;
    EXPECT_GE(d.minor_sup_scaled, 0.0);
  }
  EXPECT_EQ(cut_diagnostics(e, 100.0, kPi).minor_sup_scaled, 0.0);
  const Family P = make_family("P");
  // With h = s^1.3 the minor arc shrinks away while the major arc stays bounded.
  const CutDiagnostics a = cut_diagnostics(P, std::exp(-0.05), std::pow(0.05, 1.3));
  const CutDiagnostics b = cut_diagnostics(P, std::exp(-0.02), std::pow(0.02, 1.3));
  EXPECT_LT(b.minor_sup_scaled, 0.5 * a.minor_sup_scaled);
  EXPECT_LT(std::max(a.major_sup, b.major_sup), 5.0);
  EXPECT_EQ(oracle::code_of([&] { cut_diagnostics(e, 100.0, 4.0); }), ErrorCode::DomainError);
}

}  // namespace
}  // namespace kf
