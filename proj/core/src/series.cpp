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

#include "kf/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "kf/error.hpp"

namespace kf {

namespace {

constexpr const char* kModule = "series_core";

[[noreturn]] void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, kModule, detail);
}

// Common-denominator form: coeffs[i] = nums[i] / denom.
struct IntegerForm {
  Integer denom = 1;
  std::vector<Integer> nums;
  std::vector<int> support;  // indices with nums[i] != 0
};

IntegerForm to_integer_form(std::span<const Rational> c, int order) {
  IntegerForm out;
  out.nums.resize(static_cast<std::size_t>(order) + 1);
  for (int i = 0; i <= order; ++i) {
    if (sgn(c[i]) != 0) mpz_lcm(out.denom.get_mpz_t(), out.denom.get_mpz_t(),
                                c[i].get_den_mpz_t());
  }
  Integer q;
  for (int i = 0; i <= order; ++i) {
    if (sgn(c[i]) == 0) continue;
    mpz_divexact(q.get_mpz_t(), out.denom.get_mpz_t(), c[i].get_den_mpz_t());
    out.nums[i] = c[i].get_num() * q;
    out.support.push_back(i);
  }
  return out;
}

Series shift_up(const Series& f, int by, int order) {
  std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
  for (int i = 0; i + by <= order && i <= f.order(); ++i) c[i + by] = f[i];
  return Series(std::move(c));
}

// The power recurrence on integer coefficients. With `exponential` the
// inputs and outputs are k! times the ordinary coefficients, and the
// convolution picks up binomial weights.
std::vector<Integer> integer_power_prefix(const std::vector<Integer>& A, const std::vector<int>& support, long n,
                                          int max_index, bool exponential) {
  std::vector<Integer> C(static_cast<std::size_t>(max_index) + 1);
  mpz_pow_ui(C[0].get_mpz_t(), A[0].get_mpz_t(), static_cast<unsigned long>(n));
  std::vector<Integer> row{1};  // binom(k, j)
  Integer sum;
  Integer term;
  Integer divisor;
  for (int k = 1; k <= max_index; ++k) {
    if (exponential) {
      row.emplace_back(1);
      for (int j = k - 1; j >= 1; --j) row[j] += row[j - 1];
    }
    sum = 0;
    for (int j : support) {
      if (j > k) break;
      const long weight = (n + 1) * static_cast<long>(j) - k;
      if (weight == 0 || sgn(C[k - j]) == 0) continue;
      mpz_mul(term.get_mpz_t(), A[j].get_mpz_t(), C[k - j].get_mpz_t());
      if (exponential) mpz_mul(term.get_mpz_t(), term.get_mpz_t(), row[j].get_mpz_t());
      mpz_mul_si(term.get_mpz_t(), term.get_mpz_t(), weight);
      sum += term;
    }
    divisor = A[0] * k;
    mpz_divexact(C[k].get_mpz_t(), sum.get_mpz_t(), divisor.get_mpz_t());
  }
  return C;
}

}  // namespace

Series::Series() : coeffs_(1) {}

Series::Series(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("Series needs at least one coefficient");
  for (auto& c : coeffs_) c.canonicalize();
}

Series Series::zero(int order) {
  return Series(std::vector<Rational>(static_cast<std::size_t>(std::max(order, 0)) + 1));
}

Series Series::monomial(int power, const Rational& c, int order) {
  std::vector<Rational> v(static_cast<std::size_t>(order) + 1);
  if (power <= order) v[power] = c;
  return Series(std::move(v));
}

Series Series::from_integers(std::initializer_list<long> coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (long c : coeffs) v.emplace_back(c);
  return Series(std::move(v));
}

const Rational& Series::coeff(int n) const {
  if (n < 0 || n > order()) {
    fail(ErrorCode::IndexBeyondTruncation,
         "index " + std::to_string(n) + " outside [0, " + std::to_string(order()) + "]");
  }
  return coeffs_[static_cast<std::size_t>(n)];
}

Series Series::truncated(int order) const {
  std::vector<Rational> v(static_cast<std::size_t>(std::max(order, 0)) + 1);
  for (int i = 0; i <= std::min(order, this->order()); ++i) v[i] = coeffs_[i];
  return Series(std::move(v));
}

bool Series::non_negative() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) >= 0; });
}

int Series::nonzero_count() const {
  return static_cast<int>(std::count_if(coeffs_.begin(), coeffs_.end(),
                                        [](const Rational& c) { return sgn(c) != 0; }));
}

bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

SeriesClassTag classify(const Series& f) {
  SeriesClassTag tag;
  int first = -1;
  for (int i = 0; i <= f.order(); ++i) {
    if (sgn(f[i]) < 0) {
      fail(ErrorCode::NegativeCoefficient, "coefficient " + std::to_string(i) + " is negative");
    }
    if (first < 0 && sgn(f[i]) > 0) first = i;
  }
  const int nonzero = f.nonzero_count();
  tag.in_Ks = nonzero >= 2;
  tag.in_K = tag.in_Ks && first == 0;
  tag.shift = std::max(first, 0);
  return tag;
}

Series add(const Series& a, const Series& b) {
  const int order = std::min(a.order(), b.order());
  std::vector<Rational> v(static_cast<std::size_t>(order) + 1);
  for (int i = 0; i <= order; ++i) v[i] = a[i] + b[i];
  return Series(std::move(v));
}

Series scale(const Series& a, const Rational& c) {
  std::vector<Rational> v(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : v) x *= c;
  return Series(std::move(v));
}

Series mul(const Series& a, const Series& b) {
  const int order = std::min(a.order(), b.order());
  const IntegerForm fa = to_integer_form(a.coeffs(), order);
  const IntegerForm fb = to_integer_form(b.coeffs(), order);
  std::vector<Integer> acc(static_cast<std::size_t>(order) + 1);
  for (int i : fa.support) {
    for (int j : fb.support) {
      if (i + j > order) break;
      mpz_addmul(acc[i + j].get_mpz_t(), fa.nums[i].get_mpz_t(), fb.nums[j].get_mpz_t());
    }
  }
  const Integer denom = fa.denom * fb.denom;
  std::vector<Rational> v(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    if (sgn(acc[k]) == 0) continue;
    v[k] = Rational(acc[k], denom);
  }
  return Series(std::move(v));
}

Series pow(const Series& a, int n) {
  if (n < 1) throw std::invalid_argument("pow requires n >= 1");
  Series base = a;
  Series result;
  bool have = false;
  for (unsigned e = static_cast<unsigned>(n);;) {
    if (e & 1U) {
      result = have ? mul(result, base) : base;
      have = true;
    }
    e >>= 1U;
    if (e == 0) break;
    base = mul(base, base);
  }
  return result;
}

std::vector<Rational> power_prefix(const Series& a, long n, int max_index) {
  if (n < 1) throw std::invalid_argument("power_prefix requires n >= 1");
  if (max_index > a.order()) {
    fail(ErrorCode::IndexBeyondTruncation, "power_prefix needs order " + std::to_string(max_index));
  }
  std::vector<Rational> c(static_cast<std::size_t>(max_index) + 1);
  if (sgn(a[0]) == 0) {
    if (n > static_cast<long>(max_index)) return c;  // lowest term is z^n
    const Series p = pow(a.truncated(max_index), static_cast<int>(n));
    for (int k = 0; k <= max_index; ++k) c[k] = p[k];
    return c;
  }
  std::vector<int> support;
  for (int j = 1; j <= max_index; ++j)
    if (sgn(a[j]) != 0) support.push_back(j);

  // Integer coefficients, or integer a_j j! (exponential form), keep the
  // recurrence in integers; otherwise it runs in reduced rationals.
  bool integral = true;
  bool exponential = true;
  Integer fact = 1;
  for (int j = 0; j <= max_index && exponential; ++j) {
    if (j > 0) fact *= j;
    if (a[j].get_den() != 1) {
      integral = false;
      exponential = mpz_divisible_p(fact.get_mpz_t(), a[j].get_den_mpz_t()) != 0;
    }
  }
  if (integral || exponential) {
    std::vector<Integer> A(static_cast<std::size_t>(max_index) + 1);
    fact = 1;
    for (int j = 0; j <= max_index; ++j) {
      if (j > 0) fact *= j;
      A[j] = integral ? a[j].get_num() : Integer(a[j] * fact);
    }
    const auto C = integer_power_prefix(A, support, n, max_index, !integral);
    fact = 1;
    for (int k = 0; k <= max_index; ++k) {
      if (k > 0) fact *= k;
      c[k] = integral ? Rational(C[k]) : Rational(C[k], fact);
      c[k].canonicalize();
    }
    return c;
  }

  mpz_pow_ui(c[0].get_num_mpz_t(), a[0].get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(c[0].get_den_mpz_t(), a[0].get_den_mpz_t(), static_cast<unsigned long>(n));
  c[0].canonicalize();
  const Rational inv_a0 = 1 / a[0];
  Rational sum;
  Rational term;
  for (int k = 1; k <= max_index; ++k) {
    sum = 0;
    for (int j : support) {
      if (j > k) break;
      const long weight = (n + 1) * static_cast<long>(j) - k;
      if (weight == 0 || sgn(c[k - j]) == 0) continue;
      term = a[j] * c[k - j];
      term *= weight;
      sum += term;
    }
    c[k] = sum * inv_a0 / k;
  }
  return c;
}

ScaledSeries exp_series(const Series& g) {
  const int order = g.order();
  std::vector<int> support;
  for (int k = 1; k <= order; ++k)
    if (sgn(g[k]) != 0) support.push_back(k);
  std::vector<Rational> f(static_cast<std::size_t>(order) + 1);
  f[0] = 1;
  Rational sum;
  for (int n = 1; n <= order; ++n) {
    sum = 0;
    for (int k : support) {
      if (k > n) break;
      if (sgn(f[n - k]) == 0) continue;
      sum += k * g[k] * f[n - k];
    }
    f[n] = sum / n;
  }
  return ScaledSeries{g[0], Series(std::move(f))};
}

Series log_series(const Series& f) {
  if (sgn(f[0]) == 0) fail(ErrorCode::ZeroConstantTerm, "log_series needs f_0 != 0");
  const int order = f.order();
  const Rational inv_f0 = 1 / f[0];
  std::vector<Rational> h(static_cast<std::size_t>(order) + 1);
  Rational sum;
  for (int n = 1; n <= order; ++n) {
    sum = n * f[n];
    for (int k = 1; k < n; ++k) {
      if (sgn(h[k]) == 0 || sgn(f[n - k]) == 0) continue;
      sum -= k * h[k] * f[n - k];
    }
    h[n] = sum * inv_f0 / n;
  }
  return Series(std::move(h));
}

Series compose(const Series& f, const Series& g) {
  if (sgn(g[0]) != 0) fail(ErrorCode::NonzeroInnerConstant, "compose needs g(0) = 0");
  const int order = std::min(f.order(), g.order());
  const Series inner = g.truncated(order);
  Series result = Series::monomial(0, f[order], order);
  for (int i = order - 1; i >= 0; --i) {
    result = mul(result, inner);
    std::vector<Rational> v(result.coeffs().begin(), result.coeffs().end());
    v[0] += f[i];
    result = Series(std::move(v));
  }
  return result;
}

Series derivative_series(const Series& f) {
  std::vector<Rational> v(f.coeffs().begin(), f.coeffs().end());
  for (int n = 0; n <= f.order(); ++n) v[n] *= n;
  return Series(std::move(v));
}

Series differentiate(const Series& f) {
  if (f.order() == 0) return Series::zero(0);
  std::vector<Rational> v(static_cast<std::size_t>(f.order()));
  for (int n = 1; n <= f.order(); ++n) v[n - 1] = n * f[n];
  return Series(std::move(v));
}

Series reciprocal(const Series& f) {
  if (sgn(f[0]) == 0) fail(ErrorCode::ZeroConstantTerm, "reciprocal needs f_0 != 0");
  const int order = f.order();
  const Rational inv_f0 = 1 / f[0];
  std::vector<Rational> r(static_cast<std::size_t>(order) + 1);
  r[0] = inv_f0;
  Rational sum;
  for (int n = 1; n <= order; ++n) {
    sum = 0;
    for (int k = 1; k <= n; ++k) {
      if (sgn(f[k]) == 0) continue;
      sum += f[k] * r[n - k];
    }
    r[n] = -sum * inv_f0;
  }
  return Series(std::move(r));
}

Series divide(const Series& a, const Series& b) { return mul(a, reciprocal(b)); }

Series lagrange_fixed_point(const Series& psi, int N) {
  if (sgn(psi[0]) == 0) fail(ErrorCode::ZeroConstantTerm, "Lagrange data needs psi(0) != 0");
  if (N < 1) throw std::invalid_argument("lagrange_fixed_point requires N >= 1");
  if (psi.order() < N - 1) {
    fail(ErrorCode::IndexBeyondTruncation, "psi order below N - 1");
  }
  // After pass i the iterate is exact through z^i.
  Series g = Series::zero(0);
  for (int i = 1; i <= N; ++i) {
    const Series inner = compose(psi.truncated(i - 1), g.truncated(i - 1));
    g = shift_up(inner, 1, i);
  }
  return g.truncated(N);
}

Series lagrange_invert(const Series& psi, int N) {
  if (sgn(psi[0]) == 0) fail(ErrorCode::ZeroConstantTerm, "Lagrange data needs psi(0) != 0");
  if (N < 1) throw std::invalid_argument("lagrange_invert requires N >= 1");
  if (psi.order() < N - 1) {
    fail(ErrorCode::IndexBeyondTruncation, "psi order below N - 1");
  }
  std::vector<Rational> A(static_cast<std::size_t>(N) + 1);
  for (int n = 1; n <= N; ++n) {
    const auto powers = power_prefix(psi, n, n - 1);
    A[n] = powers[n - 1] / n;
  }
  Series g(std::move(A));
#ifndef NDEBUG
  if (!(g == lagrange_fixed_point(psi, N))) {
    throw std::logic_error("lagrange_invert: inversion formula and fixed point disagree");
  }
#endif
  return g;
}

Rational coeff(const Series& f, int n) { return f.coeff(n); }

std::string to_text(const Series& f) {
  std::ostringstream out;
  out << "order=" << f.order() << '\n';
  for (const auto& c : f.coeffs()) out << c.get_num().get_str() << '/' << c.get_den().get_str() << '\n';
  return out.str();
}

Series from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("order=", 0) != 0) {
    throw std::invalid_argument("series text must start with order=N");
  }
  const int order = std::stoi(line.substr(6));
  if (order < 0) throw std::invalid_argument("negative order");
  std::vector<Rational> v;
  v.reserve(static_cast<std::size_t>(order) + 1);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    v.push_back(parse_rational(line));
  }
  if (static_cast<int>(v.size()) != order + 1) {
    throw std::invalid_argument("series text has " + std::to_string(v.size()) +
                                " coefficients, header says order=" + std::to_string(order));
  }
  return Series(std::move(v));
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    Rational r;
    r.get_num() = Integer(s.substr(0, slash), 10);
    r.get_den() = Integer(s.substr(slash + 1), 10);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  }
  // Decimal with optional exponent.
  std::string mantissa = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    exponent = std::stol(s.substr(e + 1));
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char ch : mantissa) {
    if (ch == '.') {
      if (seen_point) throw std::invalid_argument("bad number '" + s + "'");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      if (seen_point) ++frac_digits;
    } else {
      throw std::invalid_argument("bad number '" + s + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad number '" + s + "'");
  // Base 10 explicitly: GMP reads a leading zero as octal.
  Rational r{Integer(digits, 10)};
  const long shift = exponent - frac_digits;
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) {
    r *= p;
  } else {
    r /= p;
  }
  if (negative) r = -r;
  r.canonicalize();
  return r;
}

}  // namespace kf
