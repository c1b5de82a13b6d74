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

#include "kf/khinchin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kf/error.hpp"

namespace kf {

namespace {

constexpr const char* kModule = "khinchin";

long lowest_index(const Family& fam) {
  for (long n = 0; n <= fam.trunc(); ++n)
    if (fam.log_coeff(n) > -kInf) return n;
  throw Error(ErrorCode::NoCoefficientAccess, kModule, fam.name() + ": no nonzero coefficient in window");
}

// Sum of w(n) P(X_t = n) over the truncation window, certified by the tail
// bound.
template <typename Weight>
double direct_sum(const Family& fam, double t, Weight w) {
  if (!fam.has_coeffs()) {
    throw Error(ErrorCode::DerivativeOrderUnavailable, kModule, fam.name() + ": no coefficients for a direct sum");
  }
  const long N = fam.trunc();
  const double tail = tail_bound(fam, t, N);
  if (!(tail <= 1e-12)) {
    throw Error(ErrorCode::DerivativeOrderUnavailable, kModule,
                fam.name() + ": truncation " + std::to_string(N) + " too small for a direct sum at t=" + std::to_string(t));
  }
  const double lf = fam.log_value(t);
  const double lt = std::log(t);
  double sum = 0.0;
  for (long n = 0; n <= N; ++n) {
    const double lc = fam.log_coeff(n);
    if (lc == -kInf) continue;
    sum += w(n) * std::exp(lc + static_cast<double>(n) * lt - lf);
  }
  return sum;
}

}  // namespace

double mass(const Family& fam, double t, long n) {
  fam.check_radius(t);
  if (n < 0) return 0.0;
  if (t == 0.0) return n == lowest_index(fam) ? 1.0 : 0.0;
  const double lc = fam.log_coeff(n);
  if (lc == -kInf) return 0.0;
  return std::exp(lc + static_cast<double>(n) * std::log(t) - fam.log_value(t));
}

double tail_bound(const Family& fam, double t, long order, std::optional<double> t_star) {
  fam.check_radius(t);
  if (t == 0.0) return 0.0;
  const double R = fam.radius();
  const double lf = fam.log_value(t);
  auto bound_at = [&](double ts) {
    if (!(ts > t)) return kInf;
    const double q = t / ts;
    return std::exp(fam.log_value(ts) - lf + static_cast<double>(order + 1) * std::log(q)) / (1.0 - q);
  };
  if (t_star) {
    fam.check_radius(*t_star);
    return bound_at(*t_star);
  }
  double best = kInf;
  if (std::isfinite(R)) {
    // The scan stops 2^-16 of the way short of R; families that are defined
    // at R contribute the boundary itself below.
    for (int i = 1; i <= 16; ++i) {
      const double ts = t + (R - t) * (1.0 - std::ldexp(1.0, -i));
      if (ts >= R) break;
      // ln f(e^u) - (order + 1) u is convex in u, so the scan can stop once
      // the bound turns upward. Close to the radius some products stop
      // converging; any admissible comparison radius gives a valid bound.
      try {
        const double b = bound_at(ts);
        if (b > best) break;
        best = b;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoConvergence) throw;
        break;
      }
    }
    if (fam.boundary_defined()) best = std::min(best, bound_at(R));
  } else {
    for (double u = 1e-3; u < 40.0; u *= 1.25) best = std::min(best, bound_at(t * std::exp(u)));
  }
  return best;
}

double mean(const Family& fam, double t) { return fam.cumulants(t)[0]; }

double variance(const Family& fam, double t) { return fam.cumulants(t)[1]; }

double factorial_moment(const Family& fam, double t, int j) {
  if (j < 1) throw Error(ErrorCode::DerivativeOrderUnavailable, kModule, "factorial moment order must be >= 1");
  if (j <= 4) return fam.factorial_moments(t)[j - 1];
  return direct_sum(fam, t, [j](long n) {
    double p = 1.0;
    for (int i = 0; i < j; ++i) p *= static_cast<double>(n - i);
    return p;
  });
}

double moment(const Family& fam, double t, int k) {
  if (k < 1) throw Error(ErrorCode::DerivativeOrderUnavailable, kModule, "moment order must be >= 1");
  if (k <= 4) {
    static constexpr double kStirling2[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 3, 1, 0}, {1, 7, 6, 1}};
    const auto fm = fam.factorial_moments(t);
    double sum = 0.0;
    for (int j = 0; j < k; ++j) sum += kStirling2[k - 1][j] * fm[j];
    return sum;
  }
  return direct_sum(fam, t, [k](long n) { return std::pow(static_cast<double>(n), k); });
}

double central_moment(const Family& fam, double t, int k) {
  if (k < 1) throw Error(ErrorCode::DerivativeOrderUnavailable, kModule, "moment order must be >= 1");
  const Cumulants c = fam.cumulants(t);
  switch (k) {
    case 1: return 0.0;
    case 2: return c[1];
    case 3: return c[2];
    case 4: return c[3] + 3.0 * c[1] * c[1];
    default: {
      const double m = c[0];
      return direct_sum(fam, t, [k, m](long n) { return std::pow(static_cast<double>(n) - m, k); });
    }
  }
}

std::complex<double> charfn(const Family& fam, double t, double theta) {
  if (theta == 0.0) return 1.0;
  const std::complex<double> z = std::polar(t, theta);
  return std::exp(fam.log_value_complex(z) - fam.log_value(t));
}

std::complex<double> normalized_charfn(const Family& fam, double t, double theta) {
  if (theta == 0.0) return 1.0;
  const Cumulants c = fam.cumulants(t);
  const double sigma = std::sqrt(c[1]);
  return charfn(fam, t, theta / sigma) * std::polar(1.0, -theta * c[0] / sigma);
}

std::array<double, 4> fulcrum_derivs(const Family& fam, double s, int max_order) {
  const double t = std::exp(s);
  fam.check_radius(t);
  const Cumulants c = fam.cumulants(t);
  std::array<double, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = i < max_order ? c[i] : std::nan("");
  return out;
}

double mgf(const Family& fam, double t, double lambda) {
  if (lambda == 0.0) return 1.0;
  const double shifted = t * std::exp(lambda);
  if (!(shifted < fam.radius()) && !(shifted == fam.radius() && fam.boundary_defined())) {
    throw Error(ErrorCode::RadiusOutOfRange, kModule,
                "t e^lambda = " + std::to_string(shifted) + " is not below the radius");
  }
  return std::exp(fam.log_value(shifted) - fam.log_value(t));
}

ChernoffBound chernoff_bound(const Family& fam, double t, double y, double lambda) {
  fam.check_radius(t);
  if (!(lambda > 0.0) || !(t * std::exp(lambda) < fam.radius())) {
    throw Error(ErrorCode::RadiusOutOfRange, kModule, "Chernoff bound needs lambda > 0 and t e^lambda < R");
  }
  const double s = std::log(t);
  const double m = fam.cumulants(t)[0];
  double sup = 0.0;
  constexpr int kHalfGrid = 512;
  for (int i = 1; i <= kHalfGrid; ++i) {
    const double u = lambda * i / kHalfGrid;
    sup = std::max(sup, (fam.cumulants(std::exp(s + u))[0] - m) / u);
    sup = std::max(sup, (fam.cumulants(std::exp(s - u))[0] - m) / -u);
  }
  ChernoffBound out;
  out.sigma = 2.0 * sup;
  const double raw = y <= lambda * out.sigma ? 2.0 * std::exp(-y * y / (2.0 * out.sigma))
                                             : 2.0 * std::exp(-lambda * y / 2.0);
  out.bound = std::min(1.0, raw);
  return out;
}

double clan_ratio(const Family& fam, double t) {
  const Cumulants c = fam.cumulants(t);
  if (c[0] == 0.0) throw Error(ErrorCode::ZeroMean, kModule, fam.name() + ": mean is zero at t=" + std::to_string(t));
  return std::sqrt(c[1]) / c[0];
}

GapStats gap_stats(const Family& fam) {
  if (!fam.has_coeffs()) throw Error(ErrorCode::NoCoefficientAccess, kModule, fam.name() + " has no coefficient oracle");
  const long N = fam.trunc();
  const auto s = fam.exact(static_cast<int>(N));
  GapStats out;
  long prev = -1;
  for (long n = 0; n <= N; ++n) {
    if (sgn(s->series[static_cast<int>(n)]) == 0) continue;
    ++out.nonzero;
    if (n >= 1) out.q_gcd = std::gcd(out.q_gcd, n);
    if (prev >= 0) {
      out.gap = std::max(out.gap, n - prev);
      if (2 * prev >= N) out.gap_tail = std::max(out.gap_tail, n - prev);
    }
    prev = n;
  }
  out.provisional = out.nonzero < 8;
  return out;
}

double zero_free_halfwidth(const Family& fam, double t) { return kPi / (2.0 * std::sqrt(fam.cumulants(t)[1])); }

bool zero_free_verified(const Family& fam, double t, int grid) {
  const double w = zero_free_halfwidth(fam, t);
  const double lf = fam.log_value(t);
  for (int i = 0; i < grid; ++i) {
    const double theta = -w + 2.0 * w * (i + 0.5) / grid;
    const double re = fam.log_value_complex(std::polar(t, theta)).real();
    if (!std::isfinite(re) || !(std::exp(re - lf) > 0.0)) return false;
  }
  return true;
}

MaxTerm max_term(const Family& fam, double t) {
  fam.check_radius(t);
  const long N = fam.trunc();
  const double lt = t > 0.0 ? std::log(t) : -kInf;
  MaxTerm best{0, -kInf};
  for (long n = 0; n <= N; ++n) {
    const double lc = fam.log_coeff(n);
    if (lc == -kInf) continue;
    const double v = lc + (n == 0 ? 0.0 : static_cast<double>(n) * lt);
    if (v > best.log_value) best = {n, v};
  }
  // Terms beyond the window are at most the whole tail; refuse if that could
  // exceed the maximum found.
  if (t > 0.0) {
    const double tail = tail_bound(fam, t, N);
    if (std::log(tail) + fam.log_value(t) >= best.log_value) {
      throw Error(ErrorCode::IndexBeyondTruncation, kModule,
                  fam.name() + ": maximum term may lie beyond truncation " + std::to_string(N));
    }
  }
  return best;
}

double estimate_order(const Family& fam, std::span<const double> grid) {
  if (std::isfinite(fam.radius())) throw Error(ErrorCode::NotEntire, kModule, fam.name() + " is not entire");
  if (grid.empty()) throw Error(ErrorCode::DomainError, kModule, "empty grid");
  const std::size_t start = grid.size() - std::max<std::size_t>(1, grid.size() / 4);
  double best = -kInf;
  for (std::size_t i = start; i < grid.size(); ++i) {
    const double t = grid[i];
    if (!(t > 1.0)) continue;
    best = std::max(best, std::log(mean(fam, t)) / std::log(t));
  }
  if (best == -kInf) throw Error(ErrorCode::DomainError, kModule, "order estimate needs grid points above 1");
  return std::max(best, 0.0);
}

}  // namespace kf
