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

#include "kf/family.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

#include "kf/error.hpp"

namespace kf {

namespace {

constexpr const char* kModule = "khinchin";

class ProductModel final : public FamilyModel {
 public:
  ProductModel(Family f, Family g) : f_(std::move(f)), g_(std::move(g)) {}

  std::string name() const override { return "(" + f_.name() + ")*(" + g_.name() + ")"; }
  double radius() const override { return std::min(f_.radius(), g_.radius()); }
  double mean_sup() const override {
    // Only the factors that reach the common radius contribute their sup.
    const double r = radius();
    const double mf = f_.radius() == r ? f_.mean_sup() : f_.cumulants(r)[0];
    const double mg = g_.radius() == r ? g_.mean_sup() : g_.cumulants(r)[0];
    return mf + mg;
  }
  int q_gcd() const override { return std::gcd(f_.q_gcd(), g_.q_gcd()); }
  bool boundary_defined() const override {
    const double r = radius();
    return std::isfinite(r) && (f_.radius() > r || f_.boundary_defined()) &&
           (g_.radius() > r || g_.boundary_defined());
  }
  double log_value(double t) const override { return f_.log_value(t) + g_.log_value(t); }
  Cumulants cumulants(double t) const override {
    Cumulants a = f_.cumulants(t);
    const Cumulants b = g_.cumulants(t);
    for (int i = 0; i < 4; ++i) a[i] += b[i];
    return a;
  }
  bool has_complex() const override { return f_.has_complex() && g_.has_complex(); }
  std::complex<double> log_value_complex(std::complex<double> z) const override {
    return f_.log_value_complex(z) + g_.log_value_complex(z);
  }
  bool has_coeffs() const override { return f_.has_coeffs() && g_.has_coeffs(); }
  ScaledSeries exact_coeffs(int order) const override {
    const auto a = f_.exact(order);
    const auto b = g_.exact(order);
    return {a->exp_shift + b->exp_shift, mul(a->series, b->series)};
  }

 private:
  Family f_;
  Family g_;
};

class SubordinateModel final : public FamilyModel {
 public:
  SubordinateModel(Family f, int N) : f_(std::move(f)), n_(N) {}

  std::string name() const override { return "(" + f_.name() + ")(z^" + std::to_string(n_) + ")"; }
  double radius() const override { return std::pow(f_.radius(), 1.0 / n_); }
  double mean_sup() const override { return n_ * f_.mean_sup(); }
  int q_gcd() const override { return n_ * f_.q_gcd(); }
  bool boundary_defined() const override { return f_.boundary_defined(); }
  double log_value(double t) const override { return f_.log_value(std::pow(t, n_)); }
  Cumulants cumulants(double t) const override {
    Cumulants c = f_.cumulants(std::pow(t, n_));
    double scale = 1.0;
    for (double& k : c) {
      scale *= n_;
      k *= scale;
    }
    return c;
  }
  bool has_complex() const override { return f_.has_complex(); }
  std::complex<double> log_value_complex(std::complex<double> z) const override {
    return f_.log_value_complex(std::pow(z, n_));
  }
  bool has_coeffs() const override { return f_.has_coeffs(); }
  ScaledSeries exact_coeffs(int order) const override {
    const auto inner = f_.exact(order / n_);
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i * n_ <= order; ++i) c[i * n_] = inner->series[i];
    return {inner->exp_shift, Series(std::move(c))};
  }
  std::optional<double> log_coeff_closed(long n) const override {
    if (n % n_ != 0) return -kInf;
    return f_.log_coeff(n / n_);
  }

 private:
  Family f_;
  int n_;
};

}  // namespace

std::array<double, 4> FamilyModel::factorial_moments(double t) const {
  const Cumulants k = cumulants(t);
  const double m1 = k[0];
  const double m2 = k[1] + m1 * m1;
  const double m3 = k[2] + 3 * k[1] * m1 + m1 * m1 * m1;
  const double m4 = k[3] + 4 * k[2] * m1 + 3 * k[1] * k[1] + 6 * k[1] * m1 * m1 + m1 * m1 * m1 * m1;
  return {m1, m2 - m1, m3 - 3 * m2 + 2 * m1, m4 - 6 * m3 + 11 * m2 - 6 * m1};
}

std::complex<double> FamilyModel::log_value_complex(std::complex<double>) const {
  throw Error(ErrorCode::ComplexEvalUnavailable, kModule, name() + " has no complex evaluator");
}

ScaledSeries FamilyModel::exact_coeffs(int) const {
  throw Error(ErrorCode::NoCoefficientAccess, kModule, name() + " has no coefficient oracle");
}

std::optional<double> FamilyModel::log_coeff_closed(long) const { return std::nullopt; }

struct Family::Cache {
  std::mutex mu;
  std::shared_ptr<const ScaledSeries> series;
};

Family::Family(std::shared_ptr<const FamilyModel> model, int trunc, std::optional<ApproxMoments> approx)
    : model_(std::move(model)), trunc_(trunc), approx_(std::move(approx)), cache_(std::make_shared<Cache>()) {
  if (!model_) throw std::invalid_argument("Family needs a model");
}

void Family::check_radius(double t) const {
  const double r = radius();
  const bool inside = t >= 0.0 && (t < r || (t == r && boundary_defined()));
  if (!inside) {
    throw Error(ErrorCode::RadiusOutOfRange, kModule,
                name() + ": t=" + std::to_string(t) + " outside [0, R) with R=" + std::to_string(r));
  }
}

double Family::log_value(double t) const {
  check_radius(t);
  return model_->log_value(t);
}

std::complex<double> Family::log_value_complex(std::complex<double> z) const {
  if (!has_complex()) {
    throw Error(ErrorCode::ComplexEvalUnavailable, kModule, name() + " has no complex evaluator");
  }
  check_radius(std::abs(z));
  return model_->log_value_complex(z);
}

Cumulants Family::cumulants(double t) const {
  check_radius(t);
  Cumulants k = model_->cumulants(t);
  const int closed = model_->closed_order();
  if (closed >= 4 || t == 0.0) return k;
  // Differentiate F'' in s = ln t.
  const double s = std::log(t);
  const double h = 1e-4 * std::max(1.0, std::fabs(s));
  auto var_at = [this](double u) { return model_->cumulants(std::exp(u))[1]; };
  if (closed < 3) k[2] = richardson_diff(var_at, s, h);
  const double h2 = 1e-3 * std::max(1.0, std::fabs(s));
  k[3] = (var_at(s + h2) - 2.0 * var_at(s) + var_at(s - h2)) / (h2 * h2);
  return k;
}

std::array<double, 4> Family::factorial_moments(double t) const {
  check_radius(t);
  if (model_->closed_order() >= 4) return model_->factorial_moments(t);
  const Cumulants k = cumulants(t);
  const double m1 = k[0];
  const double m2 = k[1] + m1 * m1;
  const double m3 = k[2] + 3 * k[1] * m1 + m1 * m1 * m1;
  const double m4 = k[3] + 4 * k[2] * m1 + 3 * k[1] * k[1] + 6 * k[1] * m1 * m1 + m1 * m1 * m1 * m1;
  return {m1, m2 - m1, m3 - 3 * m2 + 2 * m1, m4 - 6 * m3 + 11 * m2 - 6 * m1};
}

KhinchinPoint Family::point(double t) const {
  const Cumulants k = cumulants(t);
  return {t, std::exp(log_value(t)), k[0], k[1]};
}

std::shared_ptr<const ScaledSeries> Family::exact(int order) const {
  if (order > trunc_) {
    throw Error(ErrorCode::IndexBeyondTruncation, kModule,
                name() + ": order " + std::to_string(order) + " exceeds truncation " + std::to_string(trunc_));
  }
  if (!has_coeffs()) throw Error(ErrorCode::NoCoefficientAccess, kModule, name() + " has no coefficient oracle");
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (cache_->series && cache_->series->series.order() >= order) return cache_->series;
  const int current = cache_->series ? cache_->series->series.order() : 0;
  const int target = std::max(order, std::min(trunc_, std::max(64, 2 * current)));
  cache_->series = std::make_shared<const ScaledSeries>(model_->exact_coeffs(target));
  return cache_->series;
}

double Family::log_coeff(long n) const {
  if (n < 0) return -kInf;
  if (auto closed = model_->log_coeff_closed(n)) return *closed;
  if (!has_coeffs()) throw Error(ErrorCode::NoCoefficientAccess, kModule, name() + " has no coefficient oracle");
  const auto s = exact(static_cast<int>(std::min<long>(n, trunc_ + 1L)));
  const LogNumber c = LogNumber::from_rational(s->series[static_cast<int>(n)]);
  if (c.is_zero()) return -kInf;
  return c.log_abs() + s->exp_shift.get_d();
}

Family product_family(const Family& f, const Family& g) {
  return Family(std::make_shared<ProductModel>(f, g), std::min(f.trunc(), g.trunc()));
}

Family subordinate_family(const Family& f, int N) {
  if (N < 1) throw Error(ErrorCode::DomainError, kModule, "subordination needs N >= 1");
  return Family(std::make_shared<SubordinateModel>(f, N), f.trunc() * N);
}

}  // namespace kf
