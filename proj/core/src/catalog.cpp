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

#include "kf/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>

#include "kf/error.hpp"
#include "kf/khinchin.hpp"

namespace kf {

namespace {

constexpr const char* kModule = "catalog";
constexpr double kZeta2 = kPi * kPi / 6.0;

using cd = std::complex<double>;

[[noreturn]] void invalid(const std::string& detail) {
  throw Error(ErrorCode::InvalidSpec, kModule, detail + "; grammar: " + std::string(spec_grammar()));
}

// Stopping rule for the infinite sums: the current term is negligible and a
// geometric majorant of the remaining terms is too.
class TailGuard {
 public:
  bool done(double term, double partial) {
    term = std::fabs(term);
    if (term == 0.0) return prev_ >= 0.0;  // underflow: later terms vanish too
    const double ratio = prev_ > 0.0 ? term / prev_ : 1.0;
    prev_ = term;
    if (!(term <= 1e-16 * std::fabs(partial)) || !(ratio < 1.0)) return false;
    return term * ratio / (1.0 - ratio) <= 1e-14 * std::fabs(partial);
  }

 private:
  double prev_ = -1.0;
};

constexpr long kMaxFactors = 100000000;

// prod_j (1 - beta_j z^{d_j})^{-c_j} or prod_j (1 + beta_j z^{d_j})^{c_j}.
struct Factor {
  double d = 1.0;
  double c = 1.0;
  double log_beta = 0.0;
  bool geometric = true;
};

struct ProductParams {
  std::string name;
  double radius = 1.0;
  double mean_sup = kInf;
  int q = 1;
  bool usg = false;
  long count = -1;  // number of factors, -1 for infinitely many
  std::function<Factor(long)> factor;  // j = 0, 1, 2, ...
  std::function<ScaledSeries(int)> coeffs;
  std::function<std::optional<double>(long)> closed;
};

class EulerProductModel final : public FamilyModel {
 public:
  explicit EulerProductModel(ProductParams p) : p_(std::move(p)) {}

  std::string name() const override { return p_.name; }
  double radius() const override { return p_.radius; }
  double mean_sup() const override { return p_.mean_sup; }
  int q_gcd() const override { return p_.q; }
  bool usg() const override { return p_.usg; }

  double log_value(double t) const override {
    if (t == 0.0) return 0.0;
    const double lt = std::log(t);
    double sum = 0.0;
    TailGuard guard;
    for (long j = 0; p_.count < 0 || j < p_.count; ++j) {
      const Factor f = p_.factor(j);
      const double lx = f.d * lt + f.log_beta;
      const double term = f.geometric ? -f.c * std::log(-std::expm1(lx)) : f.c * std::log1p(std::exp(lx));
      sum += term;
      if (p_.count < 0 && guard.done(term, sum)) break;
      check_budget(j);
    }
    return sum;
  }

  Cumulants cumulants(double t) const override {
    Cumulants k{0, 0, 0, 0};
    if (t == 0.0) return k;
    const double lt = std::log(t);
    TailGuard guards[4];
    for (long j = 0; p_.count < 0 || j < p_.count; ++j) {
      const Factor f = p_.factor(j);
      const double lx = f.d * lt + f.log_beta;
      const double x = std::exp(lx);
      double u[4];
      if (f.geometric) {
        const double om = -std::expm1(lx);
        u[0] = x / om;
        u[1] = u[0] / om;
        u[2] = u[1] * (1.0 + x) / om;
        u[3] = u[1] * (1.0 + 4.0 * x + x * x) / (om * om);
      } else {
        const double op = 1.0 + x;
        u[0] = x / op;
        u[1] = u[0] / op;
        u[2] = u[1] * (1.0 - x) / op;
        u[3] = u[1] * (1.0 - 4.0 * x + x * x) / (op * op);
      }
      bool all_done = true;
      double w = f.c;
      for (int i = 0; i < 4; ++i) {
        w *= f.d;
        const double term = w * u[i];
        k[i] += term;
        // Terms of the third and fourth cumulant of a Bernoulli factor may
        // cancel; their magnitude is guarded against the variance scale.
        const double scale = i < 2 ? k[i] : std::max(std::fabs(k[i]), k[1]);
        all_done = guards[i].done(term, scale) && all_done;
      }
      if (p_.count < 0 && all_done) break;
      check_budget(j);
    }
    return k;
  }

  cd log_value_complex(cd z) const override {
    if (z == cd(0.0)) return 0.0;
    const cd lz = std::log(z);
    cd sum = 0.0;
    TailGuard guard;
    for (long j = 0; p_.count < 0 || j < p_.count; ++j) {
      const Factor f = p_.factor(j);
      const cd x = std::exp(f.d * lz + f.log_beta);
      const cd term = f.geometric ? -f.c * std::log(1.0 - x) : f.c * std::log(1.0 + x);
      sum += term;
      if (p_.count < 0 && guard.done(std::abs(term), std::abs(sum) + std::abs(term))) break;
      check_budget(j);
    }
    return sum;
  }

  ScaledSeries exact_coeffs(int order) const override { return p_.coeffs(order); }
  std::optional<double> log_coeff_closed(long n) const override {
    return p_.closed ? p_.closed(n) : std::nullopt;
  }

 private:
  void check_budget(long j) const {
    if (j > kMaxFactors) throw Error(ErrorCode::NoConvergence, kModule, p_.name + ": product did not converge");
  }

  ProductParams p_;
};

class ExpModel final : public FamilyModel {
 public:
  std::string name() const override { return "exp"; }
  double radius() const override { return kInf; }
  double mean_sup() const override { return kInf; }
  int q_gcd() const override { return 1; }
  bool usg() const override { return true; }
  double log_value(double t) const override { return t; }
  Cumulants cumulants(double t) const override { return {t, t, t, t}; }
  std::array<double, 4> factorial_moments(double t) const override { return {t, t * t, t * t * t, t * t * t * t}; }
  cd log_value_complex(cd z) const override { return z; }
  ScaledSeries exact_coeffs(int order) const override {
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
    Integer fact = 1;
    for (int n = 0; n <= order; ++n) {
      if (n > 0) fact *= n;
      c[n] = Rational(Integer(1), fact);
    }
    return {0, Series(std::move(c))};
  }
  std::optional<double> log_coeff_closed(long n) const override {
    return -std::lgamma(static_cast<double>(n) + 1.0);
  }
};

class BellModel final : public FamilyModel {
 public:
  std::string name() const override { return "bell"; }
  double radius() const override { return kInf; }
  double mean_sup() const override { return kInf; }
  int q_gcd() const override { return 1; }
  bool usg() const override { return true; }
  double log_value(double t) const override { return std::expm1(t); }
  Cumulants cumulants(double t) const override {
    const double e = std::exp(t);
    const double t2 = t * t;
    const double t3 = t2 * t;
    return {t * e, (t + t2) * e, (t + 3 * t2 + t3) * e, (t + 7 * t2 + 6 * t3 + t3 * t) * e};
  }
  std::array<double, 4> factorial_moments(double t) const override {
    // f^(j) / f is the j-th Touchard polynomial in e^t.
    const double u = std::exp(t);
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double t2 = t * t;
    return {t * u, t2 * (u2 + u), t2 * t * (u3 + 3 * u2 + u), t2 * t2 * (u3 * u + 6 * u3 + 7 * u2 + u)};
  }
  cd log_value_complex(cd z) const override { return std::exp(z) - 1.0; }
  ScaledSeries exact_coeffs(int order) const override {
    const auto bell = bell_numbers(order);
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
    Integer fact = 1;
    for (int n = 0; n <= order; ++n) {
      if (n > 0) fact *= n;
      c[n] = Rational(bell[n], fact);
    }
    return {0, Series(std::move(c))};
  }
};

class SetsOfListsModel final : public FamilyModel {
 public:
  std::string name() const override { return "setsoflists"; }
  double radius() const override { return 1.0; }
  double mean_sup() const override { return kInf; }
  int q_gcd() const override { return 1; }
  double log_value(double t) const override { return t / (1.0 - t); }
  Cumulants cumulants(double t) const override {
    // F(s) = sum_{n>=1} e^{ns}: derivatives are polylogarithms of negative order.
    const double om = 1.0 - t;
    const double t2 = t * t;
    return {t / (om * om), t * (1 + t) / (om * om * om), t * (1 + 4 * t + t2) / (om * om * om * om),
            t * (1 + 11 * t + 11 * t2 + t2 * t) / (om * om * om * om * om)};
  }
  cd log_value_complex(cd z) const override { return z / (1.0 - z); }
  ScaledSeries exact_coeffs(int order) const override {
    std::vector<Rational> g(static_cast<std::size_t>(order) + 1, Rational(1));
    g[0] = 0;
    return exp_series(Series(std::move(g)));
  }
};

class PolynomialModel final : public FamilyModel {
 public:
  explicit PolynomialModel(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
      const LogNumber l = LogNumber::from_rational(coeffs_[n]);
      logs_.push_back(l.is_zero() ? -kInf : l.log_abs());
      values_.push_back(coeffs_[n].get_d());
      if (!l.is_zero()) {
        degree_ = static_cast<long>(n);
        if (shift_ < 0) shift_ = static_cast<long>(n);
        if (n >= 1) q_ = std::gcd(q_, static_cast<long>(n));
      }
    }
  }

  std::string name() const override {
    std::string out = "poly:";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out += (i ? "," : "") + coeffs_[i].get_str();
    return out;
  }
  double radius() const override { return kInf; }
  double mean_sup() const override { return static_cast<double>(degree_); }
  int q_gcd() const override { return static_cast<int>(q_); }

  double log_value(double t) const override {
    if (t == 0.0) return logs_[0];
    const double lt = std::log(t);
    double lmax = -kInf;
    for (long n = shift_; n <= degree_; ++n) lmax = std::max(lmax, logs_[n] + n * lt);
    double s = 0.0;
    for (long n = shift_; n <= degree_; ++n) s += std::exp(logs_[n] + n * lt - lmax);
    return lmax + std::log(s);
  }

  Cumulants cumulants(double t) const override {
    if (t == 0.0) return {static_cast<double>(shift_), 0, 0, 0};
    const double lt = std::log(t);
    const double lf = log_value(t);
    double m = 0.0;
    for (long n = shift_; n <= degree_; ++n) m += n * std::exp(logs_[n] + n * lt - lf);
    double c2 = 0.0, c3 = 0.0, c4 = 0.0;
    for (long n = shift_; n <= degree_; ++n) {
      const double p = std::exp(logs_[n] + n * lt - lf);
      const double d = n - m;
      c2 += p * d * d;
      c3 += p * d * d * d;
      c4 += p * d * d * d * d;
    }
    return {m, c2, c3, c4 - 3 * c2 * c2};
  }

  cd log_value_complex(cd z) const override {
    if (std::abs(z) <= 1.0) {
      cd s = 0.0;
      for (long n = degree_; n >= 0; --n) s = s * z + values_[n];
      return std::log(s);
    }
    // Factor out z^degree so the Horner sum stays bounded.
    const cd w = 1.0 / z;
    cd s = 0.0;
    for (long n = 0; n <= degree_; ++n) s = s * w + values_[n];
    return std::log(s) + static_cast<double>(degree_) * std::log(z);
  }

  ScaledSeries exact_coeffs(int order) const override {
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
    for (long n = 0; n <= std::min<long>(order, degree_); ++n) c[n] = coeffs_[n];
    return {0, Series(std::move(c))};
  }
  std::optional<double> log_coeff_closed(long n) const override {
    return n <= degree_ ? logs_[n] : -kInf;
  }

 private:
  std::vector<Rational> coeffs_;
  std::vector<double> logs_;
  std::vector<double> values_;
  long degree_ = 0;
  long shift_ = -1;
  long q_ = 0;
};

class ExpOfModel final : public FamilyModel {
 public:
  explicit ExpOfModel(Family inner) : h_(std::move(inner)) {}

  std::string name() const override { return "expof:" + h_.name(); }
  double radius() const override { return h_.radius(); }
  double mean_sup() const override {
    if (std::isfinite(h_.radius()) && h_.boundary_defined()) {
      const double r = h_.radius();
      return std::exp(h_.log_value(r)) * h_.cumulants(r)[0];
    }
    return kInf;
  }
  int q_gcd() const override { return h_.q_gcd(); }
  bool boundary_defined() const override { return h_.boundary_defined(); }
  double log_value(double t) const override { return std::exp(h_.log_value(t)); }
  Cumulants cumulants(double t) const override {
    // F^(k)(s) = sum n^k h_n t^n = h(t) E(Y_t^k) for the inner family Y_t.
    if (t == 0.0) return {0, 0, 0, 0};
    const auto f = h_.factorial_moments(t);
    const double h = std::exp(h_.log_value(t));
    return {h * f[0], h * (f[0] + f[1]), h * (f[0] + 3 * f[1] + f[2]),
            h * (f[0] + 7 * f[1] + 6 * f[2] + f[3])};
  }
  bool has_complex() const override { return h_.has_complex(); }
  cd log_value_complex(cd z) const override { return std::exp(h_.log_value_complex(z)); }
  bool has_coeffs() const override { return h_.has_coeffs(); }
  ScaledSeries exact_coeffs(int order) const override {
    const auto inner = h_.exact(order);
    if (sgn(inner->exp_shift) != 0) {
      throw Error(ErrorCode::NoCoefficientAccess, kModule, name() + ": inner coefficients are not rational");
    }
    return exp_series(inner->series);
  }

 private:
  Family h_;
};

class PolylogModel final : public FamilyModel {
 public:
  PolylogModel(long p, Rational eps) : p_(p), eps_(std::move(eps)), eps_d_(eps_.get_d()) {}

  std::string name() const override { return "polylog:" + std::to_string(p_) + "," + eps_.get_str(); }
  double radius() const override { return 1.0; }
  double mean_sup() const override {
    if (p_ <= 2) return kInf;
    return eps_d_ * zeta_real(static_cast<double>(p_ - 1)) / (1.0 + eps_d_ * zeta_real(static_cast<double>(p_)));
  }
  int q_gcd() const override { return 1; }
  bool boundary_defined() const override { return p_ > 2; }

  double log_value(double t) const override { return std::log1p(eps_d_ * power_sum(t, 0)); }

  Cumulants cumulants(double t) const override {
    if (t == 0.0) return {0, 0, 0, 0};
    const double f = 1.0 + eps_d_ * power_sum(t, 0);
    double mu[4];
    for (int k = 1; k <= 4; ++k) mu[k - 1] = eps_d_ * power_sum(t, k) / f;
    const double m = mu[0];
    const double c2 = mu[1] - m * m;
    const double c3 = mu[2] - 3 * mu[1] * m + 2 * m * m * m;
    const double c4 = mu[3] - 4 * mu[2] * m + 6 * mu[1] * m * m - 3 * m * m * m * m;
    return {m, c2, c3, c4 - 3 * c2 * c2};
  }

  cd log_value_complex(cd z) const override {
    const double r = std::abs(z);
    cd sum = 0.0;
    cd zn = 1.0;
    for (long n = 1;; ++n) {
      zn *= z;
      const cd term = zn / std::pow(static_cast<double>(n), static_cast<double>(p_));
      sum += term;
      if (std::abs(term) < 1e-17 * (1.0 - r) * std::max(1e-300, std::abs(sum))) break;
      if (n > 100000000) throw Error(ErrorCode::NoConvergence, kModule, name() + ": series did not converge");
    }
    return std::log(1.0 + eps_d_ * sum);
  }

  ScaledSeries exact_coeffs(int order) const override {
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
    c[0] = 1;
    for (int n = 1; n <= order; ++n) {
      Integer d;
      mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(p_));
      c[n] = eps_ / d;
    }
    return {0, Series(std::move(c))};
  }

 private:
  // sum_{n>=1} n^{k-p} t^n.
  double power_sum(double t, int k) const {
    const double e = static_cast<double>(k - p_);
    if (t == 1.0) return -e > 1.0 ? zeta_real(-e) : kInf;
    if (t == 0.0) return 0.0;
    const double lt = std::log(t);
    double sum = 0.0;
    for (long n = 1;; ++n) {
      const double term = std::exp(e * std::log(static_cast<double>(n)) + n * lt);
      sum += term;
      // Past the peak the terms decrease at least geometrically with ratio t.
      if (n * -lt > std::max(e, 0.0) && term / (1.0 - t) < 1e-17 * sum) break;
      if (n > 100000000) throw Error(ErrorCode::NoConvergence, kModule, name() + ": series did not converge");
    }
    return sum;
  }

  long p_;
  Rational eps_;
  double eps_d_;
};

ScaledSeries integer_series(const std::vector<Integer>& v) {
  std::vector<Rational> c(v.begin(), v.end());
  return {0, Series(std::move(c))};
}

// n a_n = sum_{k=1..n} e_k a_{n-k}, a_0 = 1.
std::vector<Integer> euler_transform(const std::vector<Integer>& e, int N) {
  std::vector<Integer> a(static_cast<std::size_t>(N) + 1);
  a[0] = 1;
  Integer acc;
  for (int n = 1; n <= N; ++n) {
    acc = 0;
    for (int k = 1; k <= n; ++k) {
      if (sgn(e[k]) == 0) continue;
      mpz_addmul(acc.get_mpz_t(), e[k].get_mpz_t(), a[n - k].get_mpz_t());
    }
    mpz_divexact_ui(a[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
  }
  return a;
}

// e_k = sum over parts d dividing k of d * (multiplicity of part d).
std::vector<Integer> divisor_weights(const std::function<Integer(long)>& multiplicity, int N) {
  std::vector<Integer> e(static_cast<std::size_t>(N) + 1);
  for (long d = 1; d <= N; ++d) {
    const Integer w = multiplicity(d);
    if (sgn(w) == 0) continue;
    const Integer dw = w * d;
    for (long k = d; k <= N; k += d) e[k] += dw;
  }
  return e;
}

Integer ipow(long base, long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

// Integer k-th root of x when x is a perfect k-th power, else 0.
long exact_root(long x, long k) {
  if (k == 1) return x;
  long r = std::lround(std::pow(static_cast<double>(x), 1.0 / static_cast<double>(k)));
  for (long c = std::max(1L, r - 1); c <= r + 1; ++c) {
    if (ipow(c, k) == x) return c;
  }
  return 0;
}

ProductParams product_params(const FamilySpec& spec) {
  ProductParams p;
  p.name = to_string(spec);
  const long a = spec.a;
  const long b = spec.b;
  switch (spec.variant) {
    case Variant::PartitionP:
      p.usg = true;
      p.factor = [](long j) { return Factor{static_cast<double>(j + 1), 1.0, 0.0, true}; };
      p.coeffs = [](int N) { return integer_series(partitions_pentagonal(N)); };
      break;
    case Variant::DistinctQ:
      p.usg = true;
      p.factor = [](long j) { return Factor{static_cast<double>(j + 1), 1.0, 0.0, false}; };
      p.coeffs = [](int N) { return integer_series(distinct_partitions(N)); };
      break;
    case Variant::ArithmeticP:
      p.q = static_cast<int>(std::gcd(a, b));
      p.factor = [a, b](long j) { return Factor{static_cast<double>(a * j + b), 1.0, 0.0, true}; };
      p.coeffs = [a, b](int N) {
        auto mult = [a, b](long d) { return Integer(d >= b && (d - b) % a == 0 ? 1 : 0); };
        return integer_series(euler_transform(divisor_weights(mult, N), N));
      };
      break;
    case Variant::ColoredW:
      p.usg = a == 1;
      p.factor = [a, b](long j) {
        const double jj = static_cast<double>(j + 1);
        return Factor{std::pow(jj, static_cast<double>(a)), std::pow(jj, static_cast<double>(b)), 0.0, true};
      };
      p.coeffs = [a, b](int N) {
        auto mult = [a, b](long d) {
          const long j = exact_root(d, a);
          return j > 0 ? ipow(j, b) : Integer(0);
        };
        return integer_series(euler_transform(divisor_weights(mult, N), N));
      };
      break;
    case Variant::Geometric:
      p.count = 1;
      p.factor = [](long) { return Factor{1.0, 1.0, 0.0, true}; };
      p.coeffs = [](int N) { return ScaledSeries{0, Series(std::vector<Rational>(N + 1, Rational(1)))}; };
      p.closed = [](long) { return std::optional<double>(0.0); };
      break;
    case Variant::NegBinomial: {
      const long N0 = spec.N;
      p.count = 1;
      p.factor = [N0](long) { return Factor{1.0, static_cast<double>(N0), 0.0, true}; };
      p.coeffs = [N0](int N) {
        std::vector<Integer> c(static_cast<std::size_t>(N) + 1);
        for (int n = 0; n <= N; ++n)
          mpz_bin_uiui(c[n].get_mpz_t(), static_cast<unsigned long>(N0 + n - 1), static_cast<unsigned long>(n));
        return integer_series(c);
      };
      p.closed = [N0](long n) {
        const double nn = static_cast<double>(n);
        return std::optional<double>(std::lgamma(N0 + nn) - std::lgamma(nn + 1.0) - std::lgamma(double(N0)));
      };
      break;
    }
    case Variant::Binomial:
    case Variant::Bernoulli: {
      const long N0 = spec.variant == Variant::Bernoulli ? 1 : spec.N;
      p.radius = kInf;
      p.mean_sup = static_cast<double>(N0);
      p.count = 1;
      p.factor = [N0](long) { return Factor{1.0, static_cast<double>(N0), 0.0, false}; };
      p.coeffs = [N0](int N) {
        std::vector<Integer> c(static_cast<std::size_t>(N) + 1);
        for (int n = 0; n <= std::min<long>(N, N0); ++n)
          mpz_bin_uiui(c[n].get_mpz_t(), static_cast<unsigned long>(N0), static_cast<unsigned long>(n));
        return integer_series(c);
      };
      p.closed = [N0](long n) {
        if (n > N0) return std::optional<double>(-kInf);
        const double nn = static_cast<double>(n);
        return std::optional<double>(std::lgamma(N0 + 1.0) - std::lgamma(nn + 1.0) - std::lgamma(N0 - nn + 1.0));
      };
      break;
    }
    case Variant::CanonicalProduct: {
      const std::vector<Rational> zeros = spec.values;
      p.radius = kInf;
      p.mean_sup = static_cast<double>(zeros.size());
      p.count = static_cast<long>(zeros.size());
      std::vector<double> log_beta;
      for (const auto& z : zeros) log_beta.push_back(-std::log(z.get_d()));
      p.factor = [log_beta](long j) { return Factor{1.0, 1.0, log_beta[j], false}; };
      p.coeffs = [zeros](int N) {
        Series acc = Series::monomial(0, 1, N);
        for (const auto& z : zeros) {
          std::vector<Rational> lin(static_cast<std::size_t>(N) + 1);
          lin[0] = 1;
          if (N >= 1) lin[1] = 1 / z;
          acc = mul(acc, Series(std::move(lin)));
        }
        return ScaledSeries{0, acc};
      };
      break;
    }
    default:
      invalid("not a product family");
  }
  return p;
}

std::string join(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) invalid("bad integer '" + s + "' for " + what);
    return v;
  } catch (const std::logic_error&) {
    invalid("bad integer '" + s + "' for " + what);
  }
}

std::vector<Rational> parse_list(const std::string& s, const std::string& what) {
  std::vector<Rational> out;
  if (s.empty()) invalid(what + " needs a comma-separated list");
  for (const auto& item : split(s, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const std::exception&) {
      invalid("bad rational '" + item + "' in " + what);
    }
  }
  return out;
}

std::pair<long, long> parse_pair(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) invalid(what + " needs two integers a,b");
  return {parse_long(parts[0], what), parse_long(parts[1], what)};
}

}  // namespace

std::string_view spec_grammar() {
  return "exp | bernoulli | binom:N | geom | negbinom:N | poly:a0,a1,... | bell | P | Q | Pab:a,b | "
         "Wab:a,b | expof:<spec> | canprod:b1,b2,... | setsoflists | polylog:p,eps";
}

FamilySpec parse_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string head(text.substr(0, colon));
  const std::string rest = colon == std::string_view::npos ? "" : std::string(text.substr(colon + 1));
  const bool has_rest = colon != std::string_view::npos;
  FamilySpec spec;
  auto no_args = [&](Variant v) {
    if (has_rest) invalid("'" + head + "' takes no parameters");
    spec.variant = v;
  };
  if (head == "exp") {
    no_args(Variant::Exp);
  } else if (head == "bernoulli") {
    no_args(Variant::Bernoulli);
  } else if (head == "geom") {
    no_args(Variant::Geometric);
  } else if (head == "bell") {
    no_args(Variant::BellEGF);
  } else if (head == "P") {
    no_args(Variant::PartitionP);
  } else if (head == "Q") {
    no_args(Variant::DistinctQ);
  } else if (head == "setsoflists") {
    no_args(Variant::SetsOfLists);
  } else if (head == "binom" || head == "negbinom") {
    spec.variant = head == "binom" ? Variant::Binomial : Variant::NegBinomial;
    spec.N = parse_long(rest, head);
  } else if (head == "poly") {
    spec.variant = Variant::Polynomial;
    spec.values = parse_list(rest, "poly");
  } else if (head == "canprod") {
    spec.variant = Variant::CanonicalProduct;
    spec.values = parse_list(rest, "canprod");
  } else if (head == "Pab" || head == "Wab") {
    spec.variant = head == "Pab" ? Variant::ArithmeticP : Variant::ColoredW;
    std::tie(spec.a, spec.b) = parse_pair(rest, head);
  } else if (head == "expof") {
    spec.variant = Variant::ExpOf;
    if (!has_rest) invalid("expof needs an inner spec");
    spec.inner.push_back(parse_spec(rest));
  } else if (head == "polylog") {
    spec.variant = Variant::Polylog;
    const auto parts = split(rest, ',');
    if (parts.size() != 2) invalid("polylog needs p,eps");
    spec.p = parse_long(parts[0], "polylog");
    spec.eps = parse_list(parts[1], "polylog")[0];
  } else {
    invalid("unknown family '" + std::string(text) + "'");
  }
  validate(spec);
  return spec;
}

void validate(const FamilySpec& spec) {
  switch (spec.variant) {
    case Variant::Binomial:
    case Variant::NegBinomial:
      if (spec.N < 1) invalid("N must be >= 1");
      break;
    case Variant::ArithmeticP:
      if (spec.a < 1 || spec.b < 1) invalid("Pab needs a, b >= 1");
      break;
    case Variant::ColoredW:
      if (spec.a < 1 || spec.b < 0) invalid("Wab needs a >= 1, b >= 0");
      break;
    case Variant::Polynomial: {
      int nonzero = 0;
      for (const auto& c : spec.values) {
        if (sgn(c) < 0) invalid("polynomial coefficients must be non-negative");
        if (sgn(c) > 0) ++nonzero;
      }
      const bool constant = nonzero == 1 && sgn(spec.values[0]) > 0;
      if (nonzero == 0 || constant) invalid("polynomial needs a nonzero coefficient of positive index");
      break;
    }
    case Variant::CanonicalProduct:
      if (spec.values.empty()) invalid("canprod needs at least one zero");
      for (std::size_t i = 0; i < spec.values.size(); ++i) {
        if (sgn(spec.values[i]) <= 0) invalid("canprod zeros must be positive");
        if (i > 0 && !(spec.values[i - 1] < spec.values[i])) invalid("canprod zeros must be increasing");
      }
      break;
    case Variant::ExpOf:
      if (spec.inner.size() != 1) invalid("expof needs one inner spec");
      validate(spec.inner[0]);
      break;
    case Variant::Polylog:
      if (spec.p < 2) invalid("polylog needs integer p >= 2");
      if (sgn(spec.eps) <= 0) invalid("polylog needs eps > 0");
      break;
    default:
      break;
  }
}

std::string to_string(const FamilySpec& spec) {
  switch (spec.variant) {
    case Variant::Exp: return "exp";
    case Variant::Bernoulli: return "bernoulli";
    case Variant::Binomial: return "binom:" + std::to_string(spec.N);
    case Variant::Geometric: return "geom";
    case Variant::NegBinomial: return "negbinom:" + std::to_string(spec.N);
    case Variant::Polynomial: return "poly:" + join(spec.values);
    case Variant::BellEGF: return "bell";
    case Variant::PartitionP: return "P";
    case Variant::DistinctQ: return "Q";
    case Variant::ArithmeticP: return "Pab:" + std::to_string(spec.a) + "," + std::to_string(spec.b);
    case Variant::ColoredW: return "Wab:" + std::to_string(spec.a) + "," + std::to_string(spec.b);
    case Variant::ExpOf: return "expof:" + to_string(spec.inner.at(0));
    case Variant::CanonicalProduct: return "canprod:" + join(spec.values);
    case Variant::SetsOfLists: return "setsoflists";
    case Variant::Polylog: return "polylog:" + std::to_string(spec.p) + "," + spec.eps.get_str();
  }
  return "?";
}

Family make_family(const FamilySpec& spec, int trunc) {
  validate(spec);
  if (trunc < 1 || trunc > kMaxTruncation) {
    throw Error(ErrorCode::TruncationTooLarge, kModule,
                "truncation " + std::to_string(trunc) + " outside [1, " + std::to_string(kMaxTruncation) + "]");
  }
  std::optional<ApproxMoments> approx;
  try {
    approx = approx_moments(spec);
  } catch (const Error&) {
  }
  std::shared_ptr<const FamilyModel> model;
  switch (spec.variant) {
    case Variant::Exp: model = std::make_shared<ExpModel>(); break;
    case Variant::BellEGF: model = std::make_shared<BellModel>(); break;
    case Variant::SetsOfLists: model = std::make_shared<SetsOfListsModel>(); break;
    case Variant::Polynomial: model = std::make_shared<PolynomialModel>(spec.values); break;
    case Variant::ExpOf: model = std::make_shared<ExpOfModel>(make_family(spec.inner.at(0), trunc)); break;
    case Variant::Polylog: model = std::make_shared<PolylogModel>(spec.p, spec.eps); break;
    default: model = std::make_shared<EulerProductModel>(product_params(spec)); break;
  }
  return Family(std::move(model), trunc, std::move(approx));
}

Family make_family(std::string_view text, int trunc) { return make_family(parse_spec(text), trunc); }

ScaledSeries exact_coeffs(const FamilySpec& spec, int N) {
  if (N > kMaxTruncation) {
    throw Error(ErrorCode::TruncationTooLarge, kModule,
                "order " + std::to_string(N) + " above " + std::to_string(kMaxTruncation));
  }
  return *make_family(spec, std::max(N, 1)).exact(N);
}

ApproxMoments approx_moments(const FamilySpec& spec) {
  ApproxMoments m;
  switch (spec.variant) {
    case Variant::PartitionP:
      m.mean = [](double s) { return kZeta2 / (s * s); };
      m.variance = [](double s) { return 2.0 * kZeta2 / (s * s * s); };
      m.s_for_mean = [](double n) { return kPi / std::sqrt(6.0 * n); };
      return m;
    case Variant::DistinctQ:
      m.mean = [](double s) { return kZeta2 / (2.0 * s * s); };
      m.variance = [](double s) { return kZeta2 / (s * s * s); };
      m.s_for_mean = [](double n) { return std::sqrt(kZeta2 / (2.0 * n)); };
      return m;
    case Variant::ArithmeticP: {
      const double a = static_cast<double>(spec.a);
      m.mean = [a](double s) { return kZeta2 / (a * s * s); };
      m.variance = [a](double s) { return 2.0 * kZeta2 / (a * s * s * s); };
      m.s_for_mean = [a](double n) { return std::sqrt(kZeta2 / (a * n)); };
      return m;
    }
    case Variant::ColoredW: {
      const double a = static_cast<double>(spec.a);
      const double rho = (static_cast<double>(spec.b) + 1.0) / a;
      const double c = zeta_real(1.0 + rho) / a;
      const double cm = c * std::exp(log_gamma(1.0 + rho));
      const double cv = c * std::exp(log_gamma(2.0 + rho));
      m.mean = [cm, rho](double s) { return cm * std::pow(s, -1.0 - rho); };
      m.variance = [cv, rho](double s) { return cv * std::pow(s, -2.0 - rho); };
      m.s_for_mean = [cm, rho](double n) { return std::pow(cm / n, 1.0 / (1.0 + rho)); };
      return m;
    }
    case Variant::BellEGF:
      m.mean = [](double s) {
        const double t = std::exp(-s);
        return t * std::exp(t);
      };
      m.variance = [](double s) {
        const double t = std::exp(-s);
        return (t + t * t) * std::exp(t);
      };
      m.s_for_mean = [](double n) { return -std::log(lambert_w0(n)); };
      return m;
    case Variant::Exp:
      m.mean = [](double s) { return std::exp(-s); };
      m.variance = [](double s) { return std::exp(-s); };
      m.s_for_mean = [](double n) { return -std::log(n); };
      return m;
    default:
      throw Error(ErrorCode::NoApproxAvailable, kModule, to_string(spec) + " has no closed approximate moments");
  }
}

LogNumber axis_asymptotic(const FamilySpec& spec, double s) {
  if (!(s > 0.0)) throw Error(ErrorCode::DomainError, kModule, "axis asymptotic needs s > 0");
  switch (spec.variant) {
    case Variant::PartitionP:
      return LogNumber::from_log(0.5 * std::log(s) - 0.5 * kLn2Pi + kZeta2 / s);
    case Variant::DistinctQ:
      return LogNumber::from_log(-0.5 * std::log(2.0) + kZeta2 / (2.0 * s));
    case Variant::ArithmeticP: {
      const double a = static_cast<double>(spec.a);
      const double r = static_cast<double>(spec.b) / a;
      return LogNumber::from_log(log_gamma(r) + (r - 0.5) * std::log(a * s) - 0.5 * kLn2Pi + kZeta2 / (a * s));
    }
    case Variant::ColoredW: {
      if (spec.b > 2) {
        throw Error(ErrorCode::NoAxisFormula, kModule, "Wab axis formula tabulated for b <= 2");
      }
      const double a = static_cast<double>(spec.a);
      const double rho = (static_cast<double>(spec.b) + 1.0) / a;
      const double lead = zeta_real(1.0 + rho) * std::exp(log_gamma(rho)) * std::pow(s, -rho) / a;
      return LogNumber::from_log(lead - zeta_neg(static_cast<int>(spec.b)) * std::log(s) +
                                 a * zeta_prime_neg(static_cast<int>(spec.b)));
    }
    default:
      throw Error(ErrorCode::NoAxisFormula, kModule, to_string(spec) + " has no axis asymptotic");
  }
}

Series multiset_transform(std::span<const Rational> c) {
  const int N = static_cast<int>(c.size()) - 1;
  std::vector<Rational> b(static_cast<std::size_t>(std::max(N, 0)) + 1);
  for (int j = 1; j <= N; ++j) {
    if (sgn(c[j]) == 0) continue;
    for (int m = j; m <= N; m += j) b[m] += j * c[j];
  }
  for (int m = 1; m <= N; ++m) b[m] /= m;
  return Series(std::move(b));
}

Series powerset_transform(std::span<const Rational> c) {
  const int N = static_cast<int>(c.size()) - 1;
  std::vector<Rational> b(static_cast<std::size_t>(std::max(N, 0)) + 1);
  for (int j = 1; j <= N; ++j) {
    if (sgn(c[j]) == 0) continue;
    for (int k = 1; j * k <= N; ++k) {
      if (k % 2 == 1) {
        b[j * k] += j * c[j];
      } else {
        b[j * k] -= j * c[j];
      }
    }
  }
  for (int m = 1; m <= N; ++m) b[m] /= m;
  return Series(std::move(b));
}

namespace {

// Window scan shared by both criteria; bounds are given as log functions of n.
CriterionVerdict scan_bounds(const Series& g, const std::function<double(long)>& log_lower,
                             const std::function<double(long)>& log_upper) {
  constexpr double kSlack = 1e-12;
  for (int n = 1; n <= g.order(); ++n) {
    const LogNumber b = LogNumber::from_rational(g[n]);
    if (b.sign() < 0) return {false, n, "negative coefficient at n=" + std::to_string(n)};
    const double lb = b.is_zero() ? -kInf : b.log_abs();
    const double lo = log_lower(n);
    const double hi = log_upper(n);
    if (lo > -kInf && lb < lo - kSlack * std::max(1.0, std::fabs(lo))) {
      return {false, n, "lower bound fails at n=" + std::to_string(n)};
    }
    if (lb > hi + kSlack * std::max(1.0, std::fabs(hi))) {
      return {false, n, "upper bound fails at n=" + std::to_string(n)};
    }
  }
  return {true, -1, "holds on window"};
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : -kInf; }

}  // namespace

CriterionVerdict hayman_criterion_entire(const Series& g, double B, double beta, double L, double lambda) {
  if (!(2.0 * lambda < 3.0 * beta)) return {false, -1, "parameter-inequality: need 2 lambda < 3 beta"};
  const double lB = safe_log(B);
  const double lbeta = safe_log(beta);
  const double lL = safe_log(L);
  const double llambda = safe_log(lambda);
  return scan_bounds(
      g, [&](long n) { return lB + n * lbeta - std::lgamma(n + 1.0); },
      [&](long n) { return lL + n * llambda - std::lgamma(n + 1.0); });
}

CriterionVerdict hayman_criterion_finite(const Series& g, double B, double beta, double L, double lambda,
                                         double R) {
  if (!(beta > -1.0) || !(lambda > -1.0) || !(R > 0.0) || !std::isfinite(R)) {
    return {false, -1, "parameter-domain: need beta, lambda > -1 and finite R > 0"};
  }
  if (!(2.0 * lambda < 3.0 * beta + 1.0)) {
    return {false, -1, "parameter-inequality: need 2 lambda < 3 beta + 1"};
  }
  const double lB = safe_log(B);
  const double lL = safe_log(L);
  const double lR = std::log(R);
  return scan_bounds(
      g, [&](long n) { return lB + beta * std::log(double(n)) - n * lR; },
      [&](long n) { return lL + lambda * std::log(double(n)) - n * lR; });
}

std::vector<Integer> partitions_pentagonal(int N) {
  std::vector<Integer> p(static_cast<std::size_t>(N) + 1);
  p[0] = 1;
  for (long n = 1; n <= N; ++n) {
    Integer acc = 0;
    for (long k = 1;; ++k) {
      const long g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      const long g2 = k * (3 * k + 1) / 2;
      if (k % 2 == 1) {
        acc += p[n - g1];
        if (g2 <= n) acc += p[n - g2];
      } else {
        acc -= p[n - g1];
        if (g2 <= n) acc -= p[n - g2];
      }
    }
    p[n] = acc;
  }
  return p;
}

std::vector<Integer> partitions_product(int N) {
  std::vector<Integer> p(static_cast<std::size_t>(N) + 1);
  p[0] = 1;
  for (int j = 1; j <= N; ++j)
    for (int k = j; k <= N; ++k) p[k] += p[k - j];
  return p;
}

std::vector<Integer> distinct_partitions(int N) {
  std::vector<Integer> q(static_cast<std::size_t>(N) + 1);
  q[0] = 1;
  for (int j = 1; j <= N; ++j)
    for (int k = N; k >= j; --k) q[k] += q[k - j];
  return q;
}

std::vector<Integer> plane_partitions(int N) {
  return euler_transform(divisor_weights([](long d) { return Integer(d); }, N), N);
}

std::vector<Integer> bell_numbers(int N) {
  // Bell triangle: each row starts with the last entry of the previous row.
  std::vector<Integer> bell(static_cast<std::size_t>(N) + 1);
  bell[0] = 1;
  std::vector<Integer> row{1};
  std::vector<Integer> next;
  for (int n = 1; n <= N; ++n) {
    next.assign(1, row.back());
    for (const auto& x : row) next.push_back(next.back() + x);
    row.swap(next);
    bell[n] = row.front();
  }
  return bell;
}

}  // namespace kf
