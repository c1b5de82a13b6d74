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

// Saddle-point coefficient estimators, closed-form partition and Bell
// asymptotics, and diagnostics of local Gaussian behaviour.
#ifndef KF_ASYM_HPP
#define KF_ASYM_HPP

#include <optional>
#include <string>

#include "kf/family.hpp"
#include "kf/numerics.hpp"

namespace kf {

struct SaddlePoint {
  double n = 0.0;
  double t_n = 0.0;
  double log_f = 0.0;  // ln f(t_n)
  double m_t = 0.0;
  double var_t = 0.0;
};

struct EstimateMeta {
  double n = 0.0;  // target index, or the power for large-power estimates
  double t = 0.0;  // radius used (t_n, tau_n, ...); 0 when not applicable
  std::string family;
  double k = 0.0;  // coefficient index for large-power estimates
};

struct Estimate {
  std::string method;
  LogNumber value;
  EstimateMeta meta;
};

// Radius with m_f(t) = target. TargetAboveMeanSup when target >= M_f,
// DomainError when target does not exceed m_f(0).
double solve_mean(const Family& fam, double target, const SolveOptions& options = {});
SaddlePoint saddle_solve(const Family& fam, double n, const SolveOptions& options = {});

// ln f(t_n) - n ln t_n - ln(2 pi var)/2. For Q_f > 1 only multiples of Q_f
// are accepted (QGcdNotOne otherwise) and ln Q_f is added.
Estimate hayman_estimate(const Family& fam, long n, const SolveOptions& options = {});
// Same shape with the closed approximate mean and variance; NoApproxAvailable
// when the family carries none.
Estimate baez_duarte_estimate(const Family& fam, long n);

struct PartitionKind {
  enum Kind { HardyRamanujan, Distinct, Ingham, WrightPlane, Colored };
  Kind kind = HardyRamanujan;
  long a = 1;  // Ingham: parts congruent to b mod a
  long b = 1;  // Ingham, Colored
};
// GcdNotOne for Ingham with gcd(a, b) > 1, UnsupportedColoredOrder for b > 2.
Estimate closed_partition_asym(const PartitionKind& kind, long n);
// B_n / n!.
Estimate moser_wyman(long n);

struct IndexWindow {
  long lo = 0;
  long hi = 0;
};
// sup over the window of |a_n t^n / f(t) sqrt(2 pi) sigma - exp(-(m - n)^2 / (2 sigma^2))|.
// The default window is m +- 10 sigma; a supplied one must cover it
// (WindowTooNarrow).
double local_clt_sup(const Family& fam, double t, std::optional<IndexWindow> window = std::nullopt);

// Integral over |theta| <= pi sigma of |E exp(i theta X) - exp(-theta^2/2)| for
// the standardized variable X.
double strong_gaussian_integral(const Family& fam, double t, const QuadratureOptions& options = {});

// F'''(s) / F''(s)^{3/2} at s = ln t.
double gaussianity_ratio(const Family& fam, double t);

struct CutDiagnostics {
  double major_sup = 0.0;
  double minor_sup_scaled = 0.0;
};
CutDiagnostics cut_diagnostics(const Family& fam, double t, double h);

}  // namespace kf

#endif  // KF_ASYM_HPP
