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

#include "kf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kf/error.hpp"

namespace kf {

namespace {

constexpr const char* kModule = "numerics";

double log_abs_mpz(const mpz_t x) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, x);
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

}  // namespace

LogNumber LogNumber::from_log(double log_abs, int sign) {
  LogNumber out;
  if (sign == 0 || log_abs == -kInf) return out;
  out.sign_ = sign > 0 ? 1 : -1;
  out.log_abs_ = log_abs;
  return out;
}

LogNumber LogNumber::from_double(double x) {
  if (x == 0.0) return {};
  return from_log(std::log(std::fabs(x)), x > 0 ? 1 : -1);
}

LogNumber LogNumber::from_integer(const Integer& x) {
  if (sgn(x) == 0) return {};
  return from_log(log_abs_mpz(x.get_mpz_t()), sgn(x));
}

LogNumber LogNumber::from_rational(const Rational& x) {
  if (sgn(x) == 0) return {};
  return from_log(log_abs_mpz(x.get_num_mpz_t()) - log_abs_mpz(x.get_den_mpz_t()), sgn(x));
}

double LogNumber::to_double() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_abs_);
}

LogNumber LogNumber::operator-() const {
  LogNumber out = *this;
  out.sign_ = -out.sign_;
  return out;
}

LogNumber operator*(const LogNumber& a, const LogNumber& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return {};
  return LogNumber::from_log(a.log_abs_ + b.log_abs_, a.sign_ * b.sign_);
}

LogNumber operator/(const LogNumber& a, const LogNumber& b) {
  if (b.sign_ == 0) throw Error(ErrorCode::DomainError, kModule, "division of LogNumber by zero");
  if (a.sign_ == 0) return {};
  return LogNumber::from_log(a.log_abs_ - b.log_abs_, a.sign_ * b.sign_);
}

LogNumber operator+(const LogNumber& a, const LogNumber& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  const LogNumber& big = a.log_abs_ >= b.log_abs_ ? a : b;
  const LogNumber& small = a.log_abs_ >= b.log_abs_ ? b : a;
  const double d = std::exp(small.log_abs_ - big.log_abs_);
  if (big.sign_ == small.sign_) return LogNumber::from_log(big.log_abs_ + std::log1p(d), big.sign_);
  if (d == 1.0) return {};
  return LogNumber::from_log(big.log_abs_ + std::log1p(-d), big.sign_);
}

double ratio(const LogNumber& a, const LogNumber& b) {
  if (a.is_zero() || b.is_zero()) {
    throw Error(ErrorCode::DomainError, kModule, "ratio of LogNumbers needs nonzero operands");
  }
  return a.sign() * b.sign() * std::exp(a.log_abs() - b.log_abs());
}

double lambert_w0(double x) {
  constexpr double kBranch = -0.36787944117144233;  // -1/e
  if (!(x >= kBranch - 1e-17)) {
    throw Error(ErrorCode::DomainError, kModule, "lambert_w0 needs x >= -1/e, got " + std::to_string(x));
  }
  if (x == 0.0) return 0.0;
  if (x <= kBranch) return -1.0;
  double w;
  if (x > std::exp(1.0)) {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  } else if (x < -0.25) {
    const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else {
    w = std::log1p(x);
  }
  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::fabs(step) <= 1e-16 * (1.0 + std::fabs(w))) break;
  }
  return w;
}

double zeta_real(double s) {
  if (!(s > 1.0)) throw Error(ErrorCode::DomainError, kModule, "zeta_real needs s > 1, got " + std::to_string(s));
  // Euler-Maclaurin with N = 16 and Bernoulli numbers B_2 .. B_20.
  static constexpr double kBernoulli[] = {1.0 / 6,        -1.0 / 30,     1.0 / 42,
                                          -1.0 / 30,      5.0 / 66,      -691.0 / 2730,
                                          7.0 / 6,        -3617.0 / 510, 43867.0 / 798,
                                          -174611.0 / 330};
  constexpr int kN = 16;
  double sum = 0.0;
  for (int k = kN - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double n = kN;
  sum += std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s);
  // rising = s (s+1) ... (s+2j-2) / (2j)!, power = N^{-s-2j+1}
  double rising = s / 2.0;
  double power = std::pow(n, -s - 1.0);
  for (int j = 1; j <= 10; ++j) {
    const double term = kBernoulli[j - 1] * rising * power;
    sum += term;
    if (std::fabs(term) < 1e-17 * sum) break;
    rising *= (s + 2 * j - 1) * (s + 2 * j) / ((2.0 * j + 1) * (2.0 * j + 2));
    power /= n * n;
  }
  return sum;
}

double zeta_neg(int b) {
  switch (b) {
    case 0: return -0.5;
    case 1: return -1.0 / 12.0;
    case 2: return 0.0;
    default:
      throw Error(ErrorCode::UnsupportedOrder, kModule, "zeta(-b) tabulated for b <= 2, got b=" + std::to_string(b));
  }
}

double zeta_prime_neg(int b) {
  switch (b) {
    case 0: return -0.91893853320467274178;  // -ln(2 pi) / 2
    case 1: return -0.16542114370045092921;
    case 2: return -0.03044845705839327078;  // -zeta(3) / (4 pi^2)
    default:
      throw Error(ErrorCode::UnsupportedOrder, kModule,
                  "zeta'(-b) tabulated for b <= 2, got b=" + std::to_string(b));
  }
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, kModule, "log_gamma needs x > 0, got " + std::to_string(x));
  return std::lgamma(x);
}

double solve_monotone(const std::function<double(double)>& g, double target, RootBracket bracket,
                      const SolveOptions& options) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (!(lo < hi)) throw Error(ErrorCode::BracketInvalid, kModule, "bracket needs lo < hi");
  double glo = g(lo) - target;
  double ghi = g(hi) - target;
  if (glo > 0.0 || ghi < 0.0) {
    throw Error(ErrorCode::BracketInvalid, kModule,
                "target " + std::to_string(target) + " not bracketed by g(lo)=" + std::to_string(glo + target) +
                    ", g(hi)=" + std::to_string(ghi + target));
  }
  const double tol_value =
      options.tol_value > 0.0 ? options.tol_value : 1e-9 * std::max(1.0, std::fabs(target));
  if (std::fabs(glo) <= tol_value) return lo;
  if (std::fabs(ghi) <= tol_value) return hi;

  double best = lo;
  double best_residual = std::fabs(glo);
  bool last_was_secant = false;
  for (int it = 0; it < options.max_iterations; ++it) {
    double t;
    const bool secant_ok = !last_was_secant && std::isfinite(glo) && std::isfinite(ghi);
    if (secant_ok) {
      t = lo - glo * (hi - lo) / (ghi - glo);
      // Stay clear of the ends so the bracket keeps shrinking.
      const double margin = 1e-3 * (hi - lo);
      t = std::clamp(t, lo + margin, hi - margin);
    } else if (lo > 0.0 && hi > 4.0 * lo) {
      t = std::sqrt(lo * hi);
    } else {
      t = 0.5 * (lo + hi);
    }
    last_was_secant = secant_ok;
    const double gt = g(t) - target;
    if (std::fabs(gt) < best_residual) {
      best = t;
      best_residual = std::fabs(gt);
    }
    if (std::fabs(gt) <= tol_value) return t;
    if (gt < 0.0) {
      lo = t;
      glo = gt;
    } else {
      hi = t;
      ghi = gt;
    }
    if (hi - lo <= options.tol_t * std::max(std::fabs(lo), std::numeric_limits<double>::min())) return best;
  }
  throw Error(ErrorCode::NoConvergence, kModule,
              "solve_monotone did not converge in " + std::to_string(options.max_iterations) + " iterations");
}

RootBracket expand_bracket(const std::function<double(double)>& g, double target, double t0,
                           double radius) {
  if (!(t0 > 0.0) || !(t0 < radius)) {
    throw Error(ErrorCode::BracketInvalid, kModule, "starting point must lie in (0, R)");
  }
  double lo = t0 / 2.0;
  for (int i = 0; g(lo) > target; ++i) {
    lo /= 2.0;
    if (i > 2000 || lo == 0.0) throw Error(ErrorCode::BracketInvalid, kModule, "no lower bracket found");
  }
  double hi = std::isfinite(radius) ? t0 + 0.5 * (radius - t0) : 2.0 * t0;
  for (int i = 0; g(hi) < target; ++i) {
    const double next = std::isfinite(radius) ? hi + 0.5 * (radius - hi) : 2.0 * hi;
    if (i > 2000 || next == hi || next >= radius) {
      throw Error(ErrorCode::BracketInvalid, kModule,
                  "no upper bracket found below the radius for target " + std::to_string(target));
    }
    hi = next;
  }
  return {lo, hi};
}

double finite_diff(const std::function<double(double)>& g, double t, double h) {
  return (g(t + h) - g(t - h)) / (2.0 * h);
}

double richardson_diff(const std::function<double(double)>& g, double t, double h) {
  const double d1 = finite_diff(g, t, h);
  const double d2 = finite_diff(g, t, h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

double integrate_simpson(const std::function<double(double)>& g, double a, double b,
                         const QuadratureOptions& options) {
  if (a == b) return 0.0;
  long n = std::max(2, options.base_intervals + options.base_intervals % 2);
  double h = (b - a) / static_cast<double>(n);
  double ends = g(a) + g(b);
  double odd = 0.0;
  double even = 0.0;
  for (long i = 1; i < n; ++i) (i % 2 ? odd : even) += g(a + static_cast<double>(i) * h);
  double estimate = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
  for (int level = 0; level < options.max_halvings; ++level) {
    // The old nodes all become even nodes; evaluate only the new midpoints.
    even += odd;
    n *= 2;
    h /= 2.0;
    odd = 0.0;
    for (long i = 1; i < n; i += 2) odd += g(a + static_cast<double>(i) * h);
    const double next = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    const double diff = std::fabs(next - estimate);
    estimate = next;
    if (diff < options.tol) break;
  }
  return estimate;
}

}  // namespace kf
