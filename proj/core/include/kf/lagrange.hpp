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

// Solutions of g = z psi(g): exact coefficients, Otter-Meir-Moon type
// asymptotics, and the total-progeny (Lagrangian) distributions of
// Galton-Watson processes, including a seeded sampler.
#ifndef KF_LAGRANGE_HPP
#define KF_LAGRANGE_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "kf/asym.hpp"
#include "kf/family.hpp"
#include "kf/series.hpp"

namespace kf {

struct Apex {
  enum Kind { Interior, Boundary, LinearEdge };
  Kind kind = Interior;
  double tau = 0.0;    // m_psi(tau) = 1, or tau = R on the boundary
  double sigma = 0.0;  // sigma_psi(tau)
  Rational a;          // LinearEdge: psi = a + b z
  Rational b;
};
// MeanSupBelowOne when M_psi < 1, or M_psi = 1 without a finite boundary
// variance and without psi being linear.
Apex apex(const Family& psi);

// (1/n) COEFF_{n-1}(H' psi^n) = COEFF_n(H(g)).
Rational extended_coeff(const Series& H, const Series& psi, int n);

// Subcritical psi (M_psi < 1): the sequence A_n R^{n-1} n^{3/2} / psi(R)^n on
// a grid of n, which must tend to zero.
struct DecayCertificate {
  std::vector<long> n;
  std::vector<double> scaled;
  bool decreasing = false;
};
// ZeroCoefficient when n - 1 is not a multiple of Q_psi.
std::variant<Estimate, DecayCertificate> omm_estimate(const Family& psi, long n);

// B_{n,q} = COEFF_n(g^q) with q fixed.
Estimate power_asym(const Family& psi, long q, long n);
// q = alpha n + beta sqrt(n): the saddle moves to m_psi(tau) = 1 - alpha.
Estimate power_asym_scaled(const Family& psi, long q, long n, double alpha, double beta);
// COEFF_n(H(g)); PrefactorRadiusTooSmall when R_H < R_psi.
Estimate func_asym(const Family& H, const Family& psi, long n);

// P(Z = n) for the Borel-Tanner law; IndexBelowJ for n < j.
double borel_tanner_pmf(double t, long j, long n);
// pmf * e^{t n} = (j/n) (t n)^{n-j} / (n-j)!, exactly.
Rational borel_tanner_scaled(const Rational& t, long j, long n);
Estimate borel_tanner_asym(double t, long j, long n);

double poisson_poisson_pmf(double s, double t, long n);
Estimate poisson_poisson_asym(double s, double t, long n);

// Total progeny of a Galton-Watson process with offspring pgf psi(t z)/psi(t)
// started from f(s z)/f(s) individuals.
struct LagrangianSpec {
  Family psi;
  Family f_init;
  double t = 1.0;
  double s = 1.0;
};
// ParameterDomain unless t <= tau and s tau < t R_f.
Estimate general_lagrangian_asym(const LagrangianSpec& spec, long n);
// Exact pmf through the extended inversion formula (t and s are taken as the
// exact binary rationals of the doubles).
LogNumber lagrangian_pmf(const LagrangianSpec& spec, long n);

struct GwSample {
  std::vector<std::uint64_t> counts;  // counts[n] = trials with total progeny n
  std::uint64_t censored = 0;         // trials stopped at the node cap
  std::uint64_t trials = 0;
  double frequency(long n) const;
  double censored_fraction() const;
};
inline constexpr long kDefaultNodeCap = 1000000;
// SupercriticalSpec when m_psi(t) > 1.
GwSample gw_sample(const LagrangianSpec& spec, std::uint64_t trials, std::uint64_t seed,
                   long node_cap = kDefaultNodeCap);

}  // namespace kf

#endif  // KF_LAGRANGE_HPP
