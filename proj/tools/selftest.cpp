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

#include "selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <variant>

#include "kf/asym.hpp"
#include "kf/catalog.hpp"
#include "kf/error.hpp"
#include "kf/khinchin.hpp"
#include "kf/lagrange.hpp"
#include "kf/large_powers.hpp"

namespace kf::selftest {
namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string join(const std::vector<double>& xs, const char* f = "%.6f") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + fmt(f, xs[i]);
  return s;
}

bool strictly_decreasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] < xs[i - 1])) return false;
  return true;
}

Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

LogNumber exact_over(const Integer& num, const Integer& den) {
  return LogNumber::from_rational(Rational(num, den));
}

// Each check fills detail and returns the verdict.
using Check = std::function<bool(std::string&)>;

// ---- oracles local to the acceptance suite ---------------------------------

// Partitions into distinct parts by the 0/1 knapsack over part sizes.
std::vector<Integer> distinct_dp(int N) {
  std::vector<Integer> q(static_cast<std::size_t>(N) + 1, 0);
  q[0] = 1;
  for (int part = 1; part <= N; ++part)
    for (int m = N; m >= part; --m) q[m] += q[m - part];
  return q;
}

// Plane partitions from prod (1 - z^j)^{-j}: n PL(n) = sum_k sigma_2(k) PL(n - k).
std::vector<Integer> plane_dp(int N) {
  std::vector<Integer> s2(static_cast<std::size_t>(N) + 1, 0);
  for (long d = 1; d <= N; ++d)
    for (long m = d; m <= N; m += d) s2[m] += d * d;
  std::vector<Integer> pl(static_cast<std::size_t>(N) + 1, 0);
  pl[0] = 1;
  for (int n = 1; n <= N; ++n) {
    Integer acc = 0;
    for (int k = 1; k <= n; ++k) acc += s2[k] * pl[n - k];
    pl[n] = acc / n;
  }
  return pl;
}

// Bell numbers by B_{n+1} = sum_k binom(n, k) B_k.
std::vector<Integer> bell_dp(int N) {
  std::vector<Integer> b(static_cast<std::size_t>(N) + 1, 0);
  b[0] = 1;
  for (int n = 0; n < N; ++n) {
    Integer acc = 0;
    for (int k = 0; k <= n; ++k) acc += binomial(n, k) * b[k];
    b[n + 1] = acc;
  }
  return b;
}

// Plain convolution powers of a truncated series, for the fixed-k check.
std::vector<Rational> naive_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> c(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series family_series(const Family& fam, int order) {
  const auto s = fam.exact(order);
  if (sgn(s->exp_shift) != 0) throw Error(ErrorCode::NoCoefficientAccess, "selftest", fam.name());
  return s->series;
}

// ---- criteria ---------------------------------------------------------------

bool stirling(std::string& d) {
  const Family e = make_family("exp");
  bool ok = true;
  std::vector<double> dev;
  for (long n : {10L, 50L, 100L, 500L}) {
    const double r = ratio(exact_over(1, factorial(n)), hayman_estimate(e, n).value);
    dev.push_back(r - 1.0);
    ok = ok && std::abs(r - 1.0) <= 1.0 / (8.0 * n);
  }
  d = "ratio-1 " + join(dev, "%.3e") + " vs 1/(8n)";
  return ok;
}

bool hardy_ramanujan(std::string& d) {
  const auto p = partitions_pentagonal(1000);
  const auto prod = partitions_product(1000);
  if (p != prod) {
    d = "pentagonal and product oracles disagree";
    return false;
  }
  std::vector<double> r;
  for (long n : {50L, 100L, 200L, 500L, 1000L}) {
    const auto est = closed_partition_asym({PartitionKind::HardyRamanujan}, n);
    r.push_back(ratio(est.value, LogNumber::from_integer(p[n])));
  }
  d = "closed/exact " + join(r) + (p[100] == 190569292 ? "" : " (p(100) wrong)");
  return p[100] == 190569292 && r[1] >= 1.02 && r[1] <= 1.07 && strictly_decreasing(r) && r.back() < 1.03;
}

bool baez_duarte(std::string& d) {
  const Family P = make_family("P");
  bool ok = true;
  std::vector<double> r;
  for (long n : {100L, 500L, 1000L}) {
    r.push_back(ratio(baez_duarte_estimate(P, n).value, hayman_estimate(P, n).value));
    ok = ok && std::abs(r.back() - 1.0) <= 0.01;
  }
  d = "bd/hayman " + join(r) + " (1% band)";
  return ok;
}

// Bands frozen from a run of the product-expansion oracles before the build.
constexpr double kDistinctBand[] = {1.026199, 1.017964, 1.012475, 1.007765};
constexpr double kPlaneBand[] = {1.018144, 1.011320, 1.007088, 1.003830};
constexpr double kBellBand[] = {1.015327, 1.007238, 1.004062, 1.002260};
constexpr double kBandHalfWidth = 1e-3;

bool distinct_and_plane(std::string& d) {
  const auto q = distinct_dp(500);
  const auto pl = plane_dp(500);
  // The catalog's own coefficients for Q must agree with the knapsack.
  const auto qs = family_series(make_family("Q"), 500);
  for (int n = 0; n <= 500; ++n)
    if (qs[n] != q[n]) {
      d = "Q coefficients disagree with the knapsack at n=" + std::to_string(n);
      return false;
    }
  std::vector<double> rq, rp;
  bool ok = true;
  const long ns[] = {50, 100, 200, 500};
  for (int i = 0; i < 4; ++i) {
    rq.push_back(ratio(closed_partition_asym({PartitionKind::Distinct}, ns[i]).value,
                       LogNumber::from_integer(q[ns[i]])));
    rp.push_back(ratio(closed_partition_asym({PartitionKind::WrightPlane}, ns[i]).value,
                       LogNumber::from_integer(pl[ns[i]])));
    ok = ok && std::abs(rq[i] - kDistinctBand[i]) <= kBandHalfWidth &&
         std::abs(rp[i] - kPlaneBand[i]) <= kBandHalfWidth;
  }
  d = "distinct " + join(rq) + "; plane " + join(rp);
  return ok && strictly_decreasing(rq) && strictly_decreasing(rp);
}

bool moser_wyman_check(std::string& d) {
  const auto b = bell_dp(200);
  std::vector<double> r;
  bool ok = true;
  const long ns[] = {20, 50, 100, 200};
  for (int i = 0; i < 4; ++i) {
    r.push_back(ratio(moser_wyman(ns[i]).value, exact_over(b[ns[i]], factorial(ns[i]))));
    ok = ok && std::abs(r[i] - kBellBand[i]) <= kBandHalfWidth;
  }
  d = "mw/exact " + join(r);
  return ok && strictly_decreasing(r);
}

bool exactness_triangle(std::string& d) {
  constexpr int N = 64;
  const Series H = Series::monomial(1, 1, N);
  for (const char* spec : {"exp", "poly:1,1", "geom", "poly:1,1,1"}) {
    const Series psi = family_series(make_family(spec), N);
    const Series inv = lagrange_invert(psi, N);
    const Series fix = lagrange_fixed_point(psi, N);
    if (!(inv == fix)) {
      d = std::string(spec) + ": inversion and fixed point differ";
      return false;
    }
    for (int n = 1; n <= N; ++n)
      if (extended_coeff(H, psi, n) != inv[n]) {
        d = std::string(spec) + ": extended formula differs at n=" + std::to_string(n);
        return false;
      }
  }
  d = "exp, poly:1,1, geom, poly:1,1,1 agree to order 64";
  return true;
}

bool otter_meir_moon(std::string& d) {
  const Family e = make_family("exp");
  bool ok = true;
  std::vector<double> r;
  for (long n : {5L, 20L, 100L}) {
    const auto res = omm_estimate(e, n);
    const auto* est = std::get_if<Estimate>(&res);
    if (!est) {
      d = "no estimate for exp";
      return false;
    }
    Integer nn;
    mpz_pow_ui(nn.get_mpz_t(), Integer(n).get_mpz_t(), static_cast<unsigned long>(n - 1));
    r.push_back(ratio(exact_over(nn, factorial(n)), est->value));
    ok = ok && std::abs(r.back() - 1.0) <= 1.0 / (4.0 * n);
  }
  d = "exact/est " + join(r);
  return ok;
}

bool borel_tanner(std::string& d) {
  const Rational ts[] = {Rational(1, 4), Rational(1, 2), Rational(1)};
  double worst_pmf = 0.0;
  for (const Rational& t : ts) {
    for (long j = 1; j <= 3; ++j) {
      // exp(t z)^n by explicit series powering; n ranges over j..j+19.
      for (long n = j; n <= j + 19; ++n) {
        const int m = static_cast<int>(n - j);
        const ScaledSeries et = exp_series(Series::monomial(1, t, std::max(m, 1)));
        const Series pw = pow(et.series, static_cast<int>(n));
        const Rational lhs = borel_tanner_scaled(t, j, n);
        Rational rhs = Rational(j, n) * pw[m];
        rhs.canonicalize();
        if (lhs != rhs) {
          d = "identity fails at t=" + t.get_str() + " j=" + std::to_string(j) + " n=" + std::to_string(n);
          return false;
        }
        const double pmf = borel_tanner_pmf(t.get_d(), j, n);
        const double ref = LogNumber::from_log(LogNumber::from_rational(rhs).log_abs() - t.get_d() * n).to_double();
        worst_pmf = std::max(worst_pmf, std::abs(pmf / ref - 1.0));
      }
    }
  }
  const double r = ratio(LogNumber::from_double(borel_tanner_pmf(1.0, 1, 200)), borel_tanner_asym(1.0, 1, 200).value);
  d = "identity exact on 180 cells; pmf rel err " + fmt("%.2e", worst_pmf) + "; n=200 exact/est " + fmt("%.6f", r);
  return worst_pmf <= 1e-12 && std::abs(r - 1.0) <= 0.02;
}

bool large_powers_comparable(std::string& d) {
  const Family b = make_family("poly:1,1");
  bool ok = true;
  std::string parts;
  for (long n : {100L, 1000L}) {
    PowerCoeffQuery q{b, n, n / 2, std::nullopt};
    const double r = ratio(estimate_comparable(q, 0.4, 0.6).value, LogNumber::from_integer(binomial(n, n / 2)));
    ok = ok && std::abs(r - 1.0) <= 1.0 / (4.0 * n);
    parts += "n=" + std::to_string(n) + " est/exact-1 " + fmt("%.8f", r - 1.0) + " exact/est-1 " +
             fmt("%.8f", 1.0 / r - 1.0) + " bound " + fmt("%.8f", 1.0 / (4.0 * n)) + "; ";
  }
  const long n = 10000, k = 5100;
  const double drop = ratio(LogNumber::from_integer(binomial(n, k)), LogNumber::from_integer(binomial(n, n / 2)));
  const double gauss = std::exp(-2.0);
  PowerCoeffQuery q{b, n, k, std::nullopt};
  const double lr = ratio(estimate_limit_L(q, 0.5, 1.0).value, LogNumber::from_integer(binomial(n, k)));
  const bool corr = std::abs(drop / gauss - 1.0) <= 0.05 && std::abs(lr - 1.0) <= 0.05;
  d = parts + "lambda=1 exact drop/e^-2 " + fmt("%.5f", drop / gauss) + ", limit est/exact " + fmt("%.5f", lr);
  return ok && corr;
}

bool large_powers_small_k(std::string& d) {
  const Family e = make_family("exp");
  const long n = 10000, k = 100;
  const auto B = refined_coefficients(family_series(e, 4), 2);
  Integer nk;
  mpz_pow_ui(nk.get_mpz_t(), Integer(n).get_mpz_t(), k);
  const double r =
      ratio(estimate_small_k_refined({e, n, k, std::nullopt}, 2).value, exact_over(nk, factorial(k)));
  d = "B2=" + B[2].get_str() + " refined/exact " + fmt("%.6f", r);
  if (sgn(B[2]) != 0 || std::abs(r - 1.0) > 0.02) return false;
  long cells = 0;
  for (const char* spec : {"exp", "poly:1,1", "geom", "poly:1,1,1"}) {
    const Series psi = family_series(make_family(spec), 8);
    const std::vector<Rational> base(psi.coeffs().begin(), psi.coeffs().end());
    for (int kk = 0; kk <= 8; ++kk) {
      const FixedKPolynomial poly = fixed_k_polynomial(psi, kk);
      std::vector<Rational> pw = base;
      for (long nn = 1; nn <= 50; ++nn) {
        if (nn > 1) pw = naive_mul(pw, base);
        if (poly.evaluate(nn) != pw[kk]) {
          d += "; fixed-k mismatch for " + std::string(spec) + " k=" + std::to_string(kk) + " n=" + std::to_string(nn);
          return false;
        }
        ++cells;
      }
    }
  }
  d += "; fixed-k exact on " + std::to_string(cells) + " cells";
  return true;
}

bool properties(std::string& d) {
  struct Case {
    const char* spec;
    double t;
    long window;  // mass sum and direct moments run over 0..window
  };
  const Case cases[] = {{"exp", 5.0, 200}, {"geom", 0.5, 400}, {"bell", 1.5, 200},
                        {"poly:1,2,1", 2.0, 2}, {"P", 0.8, 1500}, {"Q", 0.9, 1500}};
  double worst_var = 0, worst_mom = 0, worst_law = 0, max_abs_cf = 0;
  bool ok = true;
  std::string why;
  for (const Case& c : cases) {
    const Family f = make_family(c.spec);
    double total = 0;
    std::array<double, 4> direct{};
    for (long n = 0; n <= c.window; ++n) {
      const double p = mass(f, c.t, n);
      total += p;
      double x = 1;
      for (int k = 0; k < 4; ++k) direct[k] += p * (x *= double(n));
    }
    const double tail = tail_bound(f, c.t, c.window);
    if (!(total <= 1.0 + 1e-12 && total + tail >= 1.0 - 1e-12)) {
      ok = false;
      why += std::string(" mass:") + c.spec;
    }
    const double h = 1e-3 * c.t;
    const double dm = richardson_diff([&](double t) { return mean(f, t); }, c.t, h);
    worst_var = std::max(worst_var, std::abs(c.t * dm / variance(f, c.t) - 1.0));
    for (int k = 1; k <= 4; ++k)
      worst_mom = std::max(worst_mom, std::abs(moment(f, c.t, k) / direct[k - 1] - 1.0));
    for (int i = 0; i <= 64; ++i)
      max_abs_cf = std::max(max_abs_cf, std::abs(charfn(f, c.t, -kPi + i * kPi / 32)));
    if (!zero_free_verified(f, c.t)) {
      ok = false;
      why += std::string(" zero-free:") + c.spec;
    }
  }
  // Product and subordination laws.
  {
    const Family e = make_family("exp"), g = make_family("geom"), P = make_family("P");
    const Family eg = product_family(make_family("poly:1,1"), e);
    const double t = 0.7;
    const auto rel = [](double a, double b) { return std::abs(a / b - 1.0); };
    worst_law = std::max(worst_law, rel(mean(eg, t), mean(make_family("poly:1,1"), t) + mean(e, t)));
    worst_law = std::max(worst_law, rel(variance(eg, t), variance(make_family("poly:1,1"), t) + variance(e, t)));
    const Family gp = product_family(g, P);
    worst_law = std::max(worst_law, rel(mean(gp, t), mean(g, t) + mean(P, t)));
    worst_law = std::max(worst_law, rel(variance(gp, t), variance(g, t) + variance(P, t)));
    for (int N : {2, 3}) {
      const Family s = subordinate_family(g, N);
      const double tn = std::pow(t, N);
      worst_law = std::max(worst_law, rel(mean(s, t), N * mean(g, tn)));
      worst_law = std::max(worst_law, rel(variance(s, t), double(N) * N * variance(g, tn)));
    }
  }
  // Gaussian diagnostics along e^z.
  const Family e = make_family("exp");
  std::vector<double> clt, sg;
  for (double t : {10.0, 100.0, 1000.0}) {
    clt.push_back(local_clt_sup(e, t));
    sg.push_back(strong_gaussian_integral(e, t));
  }
  // Chernoff bound against exact tails of X_t for e^z (Poisson).
  bool chernoff = true;
  {
    const double t = 50.0;
    for (double y : {5.0, 10.0, 20.0, 30.0}) {
      double inside = 0;
      for (long n = 0; n <= 400; ++n)
        if (std::abs(n - t) <= y) inside += mass(e, t, n);
      const double emp = std::max(0.0, 1.0 - inside);
      for (double lam : {0.05, 0.2, 0.5})
        chernoff = chernoff && emp <= chernoff_bound(e, t, y, lam).bound + 1e-15;
    }
  }
  ok = ok && worst_var <= 1e-6 && worst_mom <= 1e-8 && worst_law <= 1e-10 && max_abs_cf <= 1.0 + 1e-12 &&
       strictly_decreasing(clt) && strictly_decreasing(sg) && chernoff;
  d = "var " + fmt("%.1e", worst_var) + ", moments " + fmt("%.1e", worst_mom) + ", laws " + fmt("%.1e", worst_law) +
      ", |cf| " + fmt("%.15f", max_abs_cf) + ", clt " + join(clt, "%.4f") + ", sg " + join(sg, "%.4f") +
      (chernoff ? ", chernoff ok" : ", chernoff violated") + why;
  return ok;
}

std::string serialize(const GwSample& s) {
  std::ostringstream o;
  o << s.trials << ' ' << s.censored;
  for (auto c : s.counts) o << ' ' << c;
  return o.str();
}

bool monte_carlo(std::string& d) {
  const LagrangianSpec spec{make_family("exp"), make_family("poly:0,1"), 0.5, 1.0};
  constexpr std::uint64_t kTrials = 100000;
  constexpr std::uint64_t kSeed = 20260901;
  const GwSample a = gw_sample(spec, kTrials, kSeed);
  const GwSample b = gw_sample(spec, kTrials, kSeed);
  const bool replay = serialize(a) == serialize(b);
  long cells = 0;
  double worst = 0;
  for (long n = 1; n < 200; ++n) {
    // (t n)^{n-1} e^{-t n} / n!
    const double p = std::exp((n - 1) * std::log(0.5 * n) - 0.5 * n - std::lgamma(n + 1.0));
    if (p < 1e-3) continue;
    ++cells;
    const double expected = kTrials * p;
    const double sd = std::sqrt(kTrials * p * (1 - p));
    const double got = n < static_cast<long>(a.counts.size()) ? double(a.counts[n]) : 0.0;
    worst = std::max(worst, std::abs(got - expected) / sd);
  }
  d = std::to_string(cells) + " cells, worst |z| " + fmt("%.3f", worst) + (replay ? ", replay identical" : ", replay differs");
  return cells > 0 && worst <= 4.0 && replay && a.censored == 0;
}

struct Entry {
  const char* name;
  Check check;
  double time_limit;  // seconds; 0 for none
};

const Entry kEntries[kCriterionCount] = {
    {"stirling-hayman", stirling, 1.0},
    {"hardy-ramanujan", hardy_ramanujan, 5.0},
    {"baez-duarte-vs-hayman", baez_duarte, 0.0},
    {"distinct-and-plane-partitions", distinct_and_plane, 0.0},
    {"moser-wyman", moser_wyman_check, 0.0},
    {"lagrange-exactness-triangle", exactness_triangle, 0.0},
    {"otter-meir-moon", otter_meir_moon, 0.0},
    {"borel-tanner", borel_tanner, 0.0},
    {"large-powers-comparable", large_powers_comparable, 0.0},
    {"large-powers-small-k", large_powers_small_k, 0.0},
    {"property-suite", properties, 60.0},
    {"monte-carlo-borel", monte_carlo, 0.0},
};

}  // namespace

CriterionResult run_criterion(int id) {
  CriterionResult r;
  r.id = id;
  if (id < 1 || id > kCriterionCount) {
    r.name = "unknown";
    r.detail = "no criterion " + std::to_string(id);
    return r;
  }
  const Entry& e = kEntries[id - 1];
  r.name = e.name;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.pass = e.check(r.detail);
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (e.time_limit > 0 && r.seconds >= e.time_limit) {
    r.pass = false;
    r.detail += "; over the " + fmt("%g", e.time_limit) + " s limit";
  }
  return r;
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
  return out;
}

std::string format(const CriterionResult& r) {
  char head[128];
  std::snprintf(head, sizeof head, "%s %2d %s (%.2f s): ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace kf::selftest
