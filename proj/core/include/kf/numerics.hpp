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

#ifndef KF_NUMERICS_HPP
#define KF_NUMERICS_HPP

#include <functional>
#include <limits>

#include "kf/series.hpp"

namespace kf {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kLn2Pi = 1.837877066409345483560659472811235279;

// A real number carried as sign and natural log of its magnitude. Asymptotic
// estimates such as exp(pi sqrt(2n/3)) leave double range long before the
// formulas stop being interesting.
class LogNumber {
 public:
  // Zero.
  LogNumber() = default;

  static LogNumber from_log(double log_abs, int sign = 1);
  static LogNumber from_double(double x);
  static LogNumber from_integer(const Integer& x);
  static LogNumber from_rational(const Rational& x);

  int sign() const noexcept { return sign_; }
  // Meaningless when sign() == 0.
  double log_abs() const noexcept { return log_abs_; }
  bool is_zero() const noexcept { return sign_ == 0; }

  // Plain value; overflows to +-inf or underflows to 0 outside double range.
  double to_double() const;
  // True when to_double() keeps full relative accuracy.
  bool in_range() const noexcept { return sign_ == 0 || (log_abs_ <= 700.0 && log_abs_ >= -700.0); }

  LogNumber operator-() const;
  friend LogNumber operator*(const LogNumber& a, const LogNumber& b);
  friend LogNumber operator/(const LogNumber& a, const LogNumber& b);
  friend LogNumber operator+(const LogNumber& a, const LogNumber& b);

 private:
  int sign_ = 0;
  double log_abs_ = 0.0;
};

// a / b as a double; both must be nonzero.
double ratio(const LogNumber& a, const LogNumber& b);

// Principal branch of the Lambert W function; DomainError for x < -1/e.
double lambert_w0(double x);

// Riemann zeta for real s > 1; DomainError otherwise.
double zeta_real(double s);
// zeta(-b) for b in {0, 1, 2}; UnsupportedOrder otherwise.
double zeta_neg(int b);
// zeta'(-b) for b in {0, 1, 2}; UnsupportedOrder otherwise.
double zeta_prime_neg(int b);

// ln Gamma(x) for x > 0; DomainError otherwise.
double log_gamma(double x);

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct SolveOptions {
  // Zero means 1e-9 * max(1, |target|).
  double tol_value = 0.0;
  // Relative bracket width at which the search stops.
  double tol_t = 1e-13;
  int max_iterations = 200;
};

// Root of g(t) = target for increasing g. Hybrid secant / bisection that never
// leaves the bracket. BracketInvalid if the target is not bracketed,
// NoConvergence after max_iterations.
double solve_monotone(const std::function<double(double)>& g, double target, RootBracket bracket,
                      const SolveOptions& options = {});

// Finds a bracket for an increasing g on (0, radius), starting from
// (t0 / 2, 2 t0): lo is halved and hi doubled (or moved halfway to a finite
// radius) until target is enclosed.
RootBracket expand_bracket(const std::function<double(double)>& g, double target, double t0,
                           double radius);

// Central difference (g(t + h) - g(t - h)) / (2h).
double finite_diff(const std::function<double(double)>& g, double t, double h);
// One Richardson step on the central difference.
double richardson_diff(const std::function<double(double)>& g, double t, double h);

struct QuadratureOptions {
  int base_intervals = 4096;
  double tol = 1e-8;
  int max_halvings = 8;
};

// Composite Simpson rule; the interval count is doubled until successive
// estimates differ by less than tol (absolute). Returns the last estimate if
// max_halvings is reached.
double integrate_simpson(const std::function<double(double)>& g, double a, double b,
                         const QuadratureOptions& options = {});

}  // namespace kf

#endif  // KF_NUMERICS_HPP
