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

// An evaluable generating function with non-negative coefficients, and the
// Khinchin family of laws P(X_t = n) = a_n t^n / f(t) attached to it.
//
// Models describe a function through ln f(t), the cumulants of X_t and, when
// available, an exact coefficient oracle. Family wraps a model with range
// checks and a lazily filled coefficient cache; it is cheap to copy and safe
// to share between threads.

#ifndef KF_FAMILY_HPP
#define KF_FAMILY_HPP

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "kf/numerics.hpp"
#include "kf/series.hpp"

namespace kf {

// kappa_1..kappa_4 of X_t. These are also the derivatives F'..F'''' of the
// fulcrum F(s) = ln f(e^s) at s = ln t.
using Cumulants = std::array<double, 4>;

// Closed-form approximations of mean and variance in the variable s, with
// t = exp(-s), plus the closed-form solution of mean(s) = n.
struct ApproxMoments {
  std::function<double(double)> mean;
  std::function<double(double)> variance;
  std::function<double(double)> s_for_mean;
};

class FamilyModel {
 public:
  virtual ~FamilyModel() = default;

  virtual std::string name() const = 0;
  virtual double radius() const = 0;
  // M_f = lim m_f(t) as t approaches the radius.
  virtual double mean_sup() const = 0;
  // gcd of the indices n >= 1 with a_n != 0.
  virtual int q_gcd() const = 0;
  virtual bool usg() const { return false; }
  // True when t = R is a legitimate evaluation point (finite R and M_f).
  virtual bool boundary_defined() const { return false; }

  virtual double log_value(double t) const = 0;
  virtual Cumulants cumulants(double t) const = 0;
  // Cumulants above this order are replaced by numerical derivatives.
  virtual int closed_order() const { return 4; }
  // t^j f^(j)(t) / f(t) for j = 1..4; by default derived from the cumulants.
  virtual std::array<double, 4> factorial_moments(double t) const;

  virtual bool has_complex() const { return true; }
  // Some logarithm of f(z) for |z| < R; ComplexEvalUnavailable by default.
  virtual std::complex<double> log_value_complex(std::complex<double> z) const;

  virtual bool has_coeffs() const { return true; }
  // Exact a_0..a_order; NoCoefficientAccess by default.
  virtual ScaledSeries exact_coeffs(int order) const;
  // ln a_n from a closed rule, when one exists (-inf for a zero coefficient).
  virtual std::optional<double> log_coeff_closed(long n) const;
};

struct KhinchinPoint {
  double t = 0.0;
  double f_t = 0.0;
  double m_t = 0.0;
  double var_t = 0.0;
};

class Family {
 public:
  explicit Family(std::shared_ptr<const FamilyModel> model, int trunc = kDefaultTruncation,
                  std::optional<ApproxMoments> approx = std::nullopt);

  std::string name() const { return model_->name(); }
  double radius() const { return model_->radius(); }
  double mean_sup() const { return model_->mean_sup(); }
  int q_gcd() const { return model_->q_gcd(); }
  bool usg() const { return model_->usg(); }
  bool boundary_defined() const { return model_->boundary_defined(); }
  bool has_complex() const { return model_->has_complex(); }
  bool has_coeffs() const { return model_->has_coeffs(); }
  int trunc() const noexcept { return trunc_; }
  const ApproxMoments* approx() const { return approx_ ? &*approx_ : nullptr; }
  const FamilyModel& model() const { return *model_; }

  // RadiusOutOfRange unless 0 <= t < R, or t = R with boundary_defined().
  void check_radius(double t) const;

  double log_value(double t) const;
  std::complex<double> log_value_complex(std::complex<double> z) const;
  Cumulants cumulants(double t) const;
  std::array<double, 4> factorial_moments(double t) const;
  KhinchinPoint point(double t) const;

  // Exact coefficients through `order` (at most trunc()); computed on first
  // use and cached. IndexBeyondTruncation above trunc().
  std::shared_ptr<const ScaledSeries> exact(int order) const;
  // ln a_n; -inf when a_n = 0. Closed rules are used beyond the cache.
  double log_coeff(long n) const;

 private:
  struct Cache;
  std::shared_ptr<const FamilyModel> model_;
  int trunc_;
  std::optional<ApproxMoments> approx_;
  std::shared_ptr<Cache> cache_;
};

// f * g; both radii must agree for the family to be meaningful on (0, R).
Family product_family(const Family& f, const Family& g);
// h(z) = f(z^N).
Family subordinate_family(const Family& f, int N);

}  // namespace kf

#endif  // KF_FAMILY_HPP
