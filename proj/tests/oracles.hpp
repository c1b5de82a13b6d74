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

// Reference values computed directly, without the library's algorithms.
#ifndef KF_TESTS_ORACLES_HPP
#define KF_TESTS_ORACLES_HPP

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <vector>

#include "kf/error.hpp"
#include "kf/numerics.hpp"

namespace kf::oracle {

inline mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline mpz_class power(long b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), mpz_class(b).get_mpz_t(), e);
  return r;
}

// Euler's pentagonal recurrence.
inline std::vector<mpz_class> partitions(int N) {
  std::vector<mpz_class> p(N + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= N; ++n) {
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      const int sign = (k % 2) ? 1 : -1;
      p[n] += sign * p[n - g1];
      const int g2 = k * (3 * k + 1) / 2;
      if (g2 <= n) p[n] += sign * p[n - g2];
    }
  }
  return p;
}

inline std::vector<mpz_class> bell(int N) {
  std::vector<mpz_class> b(N + 1, 0);
  b[0] = 1;
  for (int n = 0; n < N; ++n)
    for (int k = 0; k <= n; ++k) b[n + 1] += binomial(n, k) * b[k];
  return b;
}

inline long sigma(long m, int power) {
  long s = 0;
  for (long d = 1; d <= m; ++d)
    if (m % d == 0) s += static_cast<long>(std::pow(d, power));
  return s;
}

// Schoolbook product truncated at the shorter order.
inline std::vector<mpq_class> convolve(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<mpq_class> c(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

// a / b in lowest terms (the two-argument mpq constructor does not reduce).
inline mpq_class frac(const mpz_class& a, const mpz_class& b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

inline double log_of(const mpz_class& x) { return LogNumber::from_integer(x).log_abs(); }
inline double log_of(const mpq_class& x) { return LogNumber::from_rational(x).log_abs(); }

// The error code thrown by f, if any.
template <class F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace kf::oracle

#endif  // KF_TESTS_ORACLES_HPP
