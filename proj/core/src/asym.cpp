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

#include "kf/asym.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "kf/error.hpp"

namespace kf {

namespace {

constexpr const char* kModule = "asym";
constexpr int kCutGrid = 2048;

Estimate make_estimate(std::string method, double log_value, double n, double t, std::string family) {
  return {std::move(method), LogNumber::from_log(log_value), {n, t, std::move(family)}};
}

// ln Q_f when n lies on the lattice of the support, QGcdNotOne otherwise.
double lattice_correction(const Family& fam, long n) {
  const int q = fam.q_gcd();
  if (q <= 1) return 0.0;
  if (n % q != 0) {
    throw Error(ErrorCode::QGcdNotOne, kModule,
                fam.name() + " has Q = " + std::to_string(q) + "; n = " + std::to_string(n) + " is off the lattice");
  }
  return std::log(static_cast<double>(q));
}

// log E exp(i theta X) for the standardized variable at radius t.
std::complex<double> log_charfn_std(const Family& fam, double t, double lf, double m, double sigma, double theta) {
  const double phase = theta / sigma;
  const std::complex<double> z = std::polar(t, phase);
  return fam.log_value_complex(z) - lf - std::complex<double>(0.0, phase * m);
}

}  // namespace

double solve_mean(const Family& fam, double target, const SolveOptions& options) {
  const double M = fam.mean_sup();
  if (!(target < M)) {
    throw Error(ErrorCode::TargetAboveMeanSup, kModule,
                fam.name() + ": target " + std::to_string(target) + " is not below M_f = " + std::to_string(M));
  }
  auto g = [&fam](double t) { return fam.cumulants(t)[0]; };
  if (!(target > g(0.0))) {
    throw Error(ErrorCode::DomainError, kModule, fam.name() + ": target does not exceed m_f(0)");
  }
  const double R = fam.radius();
  double t0 = std::isfinite(R) ? 0.5 * R : 1.0;
  if (const auto* ap = fam.approx()) {
    const double guess = std::exp(-ap->s_for_mean(target));
    if (guess > 0.0 && guess < R) t0 = guess;
  }
  return solve_monotone(g, target, expand_bracket(g, target, t0, R), options);
}

SaddlePoint saddle_solve(const Family& fam, double n, const SolveOptions& options) {
  const double t = solve_mean(fam, n, options);
  const Cumulants k = fam.cumulants(t);
  return {n, t, fam.log_value(t), k[0], k[1]};
}

Estimate hayman_estimate(const Family& fam, long n, const SolveOptions& options) {
  const double lq = lattice_correction(fam, n);
  const SaddlePoint sp = saddle_solve(fam, static_cast<double>(n), options);
  const double value = sp.log_f - n * std::log(sp.t_n) - 0.5 * (kLn2Pi + std::log(sp.var_t)) + lq;
  return make_estimate("hayman", value, static_cast<double>(n), sp.t_n, fam.name());
}

Estimate baez_duarte_estimate(const Family& fam, long n) {
  const ApproxMoments* ap = fam.approx();
  if (ap == nullptr) {
    throw Error(ErrorCode::NoApproxAvailable, kModule, fam.name() + " has no approximate moments");
  }
  const double lq = lattice_correction(fam, n);
  const double s = ap->s_for_mean(static_cast<double>(n));
  const double tau = std::exp(-s);
  const double value = fam.log_value(tau) + n * s - 0.5 * (kLn2Pi + std::log(ap->variance(s))) + lq;
  return make_estimate("baez-duarte", value, static_cast<double>(n), tau, fam.name());
}

Estimate closed_partition_asym(const PartitionKind& kind, long n) {
  if (n < 1) throw Error(ErrorCode::DomainError, kModule, "closed partition asymptotics need n >= 1");
  const double x = static_cast<double>(n);
  const double lx = std::log(x);
  switch (kind.kind) {
    case PartitionKind::HardyRamanujan:
      return make_estimate("hardy-ramanujan", -std::log(4.0 * std::sqrt(3.0)) - lx + kPi * std::sqrt(2.0 * x / 3.0),
                           x, 0.0, "P");
    case PartitionKind::Distinct:
      return make_estimate("distinct", -std::log(4.0) - 0.25 * std::log(3.0) - 0.75 * lx + kPi * std::sqrt(x / 3.0), x,
                           0.0, "Q");
    case PartitionKind::Ingham: {
      if (kind.a < 1 || kind.b < 1) throw Error(ErrorCode::DomainError, kModule, "Ingham needs a, b >= 1");
      if (std::gcd(kind.a, kind.b) != 1) {
        throw Error(ErrorCode::GcdNotOne, kModule,
                    "gcd(" + std::to_string(kind.a) + ", " + std::to_string(kind.b) + ") > 1");
      }
      const double a = static_cast<double>(kind.a);
      const double r = static_cast<double>(kind.b) / a;
      const double value = log_gamma(r) - std::log(2.0 * kPi * std::sqrt(2.0)) + (0.5 * r - 0.5) * std::log(a) +
                           0.5 * r * std::log(kPi * kPi / 6.0) - (0.5 + 0.5 * r) * lx +
                           kPi * std::sqrt(2.0 * x / (3.0 * a));
      return make_estimate("ingham", value, x, 0.0,
                           "Pab:" + std::to_string(kind.a) + "," + std::to_string(kind.b));
    }
    case PartitionKind::WrightPlane: {
      const double z3 = zeta_real(3.0);
      const double value = zeta_prime_neg(1) + (7.0 / 36.0) * std::log(z3) - (11.0 / 36.0) * std::log(2.0) -
                           0.5 * std::log(3.0 * kPi) - (25.0 / 36.0) * lx +
                           3.0 * std::cbrt(z3) * std::pow(x / 2.0, 2.0 / 3.0);
      return make_estimate("wright", value, x, 0.0, "Wab:1,1");
    }
    case PartitionKind::Colored: {
      if (kind.b < 0 || kind.b > 2) {
        throw Error(ErrorCode::UnsupportedColoredOrder, kModule,
                    "colored partitions tabulated for 0 <= b <= 2, got " + std::to_string(kind.b));
      }
      const int b = static_cast<int>(kind.b);
      const double bd = static_cast<double>(b);
      const double zb = zeta_neg(b);
      const double lgz = log_gamma(bd + 2.0) + std::log(zeta_real(bd + 2.0));
      const double log_alpha = -0.5 * kLn2Pi + zeta_prime_neg(b) - 0.5 * std::log(bd + 2.0) +
                               (1.0 - 2.0 * zb) / (2.0 * (bd + 2.0)) * lgz;
      const double beta = (bd + 3.0 - 2.0 * zb) / (2.0 * (bd + 2.0));
      const double gamma = (bd + 2.0) / (bd + 1.0) * std::exp(lgz / (bd + 2.0));
      return make_estimate("colored", log_alpha - beta * lx + gamma * std::pow(x, (bd + 1.0) / (bd + 2.0)), x, 0.0,
                           "Wab:1," + std::to_string(b));
    }
  }
  throw Error(ErrorCode::DomainError, kModule, "unknown partition kind");
}

Estimate moser_wyman(long n) {
  if (n < 1) throw Error(ErrorCode::DomainError, kModule, "Moser-Wyman needs n >= 1");
  const double x = static_cast<double>(n);
  const double w = lambert_w0(x);
  const double value = std::expm1(w) - x * std::log(w) - 0.5 * kLn2Pi - 0.5 * (std::log(w * (w + 1.0)) + w);
  return make_estimate("moser-wyman", value, x, w, "bell");
}

double local_clt_sup(const Family& fam, double t, std::optional<IndexWindow> window) {
  fam.check_radius(t);
  const Cumulants k = fam.cumulants(t);
  const double m = k[0];
  const double sigma = std::sqrt(k[1]);
  const long need_lo = std::max(0L, static_cast<long>(std::floor(m - 10.0 * sigma)));
  const long need_hi = static_cast<long>(std::ceil(m + 10.0 * sigma));
  IndexWindow w{need_lo, need_hi};
  if (window) {
    if (window->lo > need_lo || window->hi < need_hi) {
      throw Error(ErrorCode::WindowTooNarrow, kModule,
                  "window [" + std::to_string(window->lo) + ", " + std::to_string(window->hi) + "] misses [" +
                      std::to_string(need_lo) + ", " + std::to_string(need_hi) + "]");
    }
    w = *window;
  }
  const double lf = fam.log_value(t);
  const double lt = std::log(t);
  const double scale = std::sqrt(2.0 * kPi) * sigma;
  double sup = 0.0;
  for (long n = std::max(0L, w.lo); n <= w.hi; ++n) {
    const double lc = fam.log_coeff(n);
    const double mass = std::isfinite(lc) ? std::exp(lc + n * lt - lf) : 0.0;
    const double d = (m - n) / sigma;
    sup = std::max(sup, std::fabs(mass * scale - std::exp(-0.5 * d * d)));
  }
  return sup;
}

double strong_gaussian_integral(const Family& fam, double t, const QuadratureOptions& options) {
  fam.check_radius(t);
  if (!fam.has_complex()) {
    throw Error(ErrorCode::ComplexEvalUnavailable, kModule, fam.name() + " has no complex evaluator");
  }
  const Cumulants k = fam.cumulants(t);
  const double m = k[0];
  const double sigma = std::sqrt(k[1]);
  const double lf = fam.log_value(t);
  // The integrand is even in theta (conjugate symmetry).
  auto integrand = [&](double theta) {
    const std::complex<double> phi = std::exp(log_charfn_std(fam, t, lf, m, sigma, theta));
    return std::abs(phi - std::exp(-0.5 * theta * theta));
  };
  return 2.0 * integrate_simpson(integrand, 0.0, kPi * sigma, options);
}

double gaussianity_ratio(const Family& fam, double t) {
  fam.check_radius(t);
  const Cumulants k = fam.cumulants(t);
  return k[2] / std::pow(k[1], 1.5);
}

CutDiagnostics cut_diagnostics(const Family& fam, double t, double h) {
  if (!(h > 0.0) || h > kPi) throw Error(ErrorCode::DomainError, kModule, "cut angle must lie in (0, pi]");
  fam.check_radius(t);
  if (!fam.has_complex()) {
    throw Error(ErrorCode::ComplexEvalUnavailable, kModule, fam.name() + " has no complex evaluator");
  }
  const Cumulants k = fam.cumulants(t);
  const double m = k[0];
  const double sigma = std::sqrt(k[1]);
  const double lf = fam.log_value(t);
  CutDiagnostics out;
  const double major_end = h * sigma;
  for (int i = 0; i <= kCutGrid; ++i) {
    const double theta = major_end * i / kCutGrid;
    const std::complex<double> l = log_charfn_std(fam, t, lf, m, sigma, theta) + 0.5 * theta * theta;
    out.major_sup = std::max(out.major_sup, std::abs(std::exp(l) - 1.0));
  }
  if (h < kPi) {
    const double minor_end = kPi * sigma;
    double sup = 0.0;
    for (int i = 0; i <= kCutGrid; ++i) {
      const double theta = major_end + (minor_end - major_end) * i / kCutGrid;
      sup = std::max(sup, std::exp(log_charfn_std(fam, t, lf, m, sigma, theta).real()));
    }
    out.minor_sup_scaled = sigma * sup;
  }
  return out;
}

}  // namespace kf
