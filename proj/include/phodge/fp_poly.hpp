/* Copyright 2026 The phodge Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef PHODGE_FP_POLY_HPP
#define PHODGE_FP_POLY_HPP

#include <cstdint>
#include <vector>

#include "phodge/errors.hpp"

// Dense polynomials over F_p with coefficients stored low degree first.
namespace phodge::fp {

using Poly = std::vector<long>;

inline long mod(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline long inv(long a, long p) {
  long t = 0, new_t = 1, r = p, new_r = mod(a, p);
  while (new_r != 0) {
    long q = r / new_r;
    long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw ValidationError("element not invertible mod p");
  return mod(t, p);
}

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly sub(const Poly& a, const Poly& b, long p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = mod(r[i] - b[i], p);
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

/// Remainder of a modulo a nonzero polynomial m.
inline Poly rem(Poly a, const Poly& m, long p) {
  trim(a);
  const int dm = degree(m);
  const long lead_inv = inv(m.back(), p);
  while (degree(a) >= dm) {
    const int shift = degree(a) - dm;
    const long c = a.back() * lead_inv % p;
    for (int i = 0; i <= dm; ++i) a[shift + i] = mod(a[shift + i] - c * m[i], p);
    trim(a);
  }
  return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, long p) { return rem(mul(a, b, p), m, p); }

template <class Exp>
Poly powmod(Poly base, Exp e, const Poly& m, long p) {
  Poly result{1};
  result = rem(result, m, p);
  base = rem(base, m, p);
  while (e > 0) {
    if (e % 2 == 1) result = mulmod(result, base, m, p);
    e /= 2;
    if (e > 0) base = mulmod(base, base, m, p);
  }
  return result;
}

inline Poly monic_gcd(Poly a, Poly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const long li = inv(a.back(), p);
    for (auto& c : a) c = c * li % p;
  }
  return a;
}

/// Extended Euclid: returns s with s*a = 1 mod m. Requires gcd(a, m) = 1.
inline Poly inverse_mod(const Poly& a, const Poly& m, long p) {
  Poly r0 = m, r1 = rem(a, m, p), s0{}, s1{1};
  while (!r1.empty()) {
    // q = r0 div r1
    Poly q, r = r0;
    trim(r);
    const int d1 = degree(r1);
    const long li = inv(r1.back(), p);
    q.assign(std::max(0, degree(r) - d1 + 1), 0);
    while (degree(r) >= d1) {
      const int shift = degree(r) - d1;
      const long c = r.back() * li % p;
      q[shift] = c;
      for (int i = 0; i <= d1; ++i) r[shift + i] = mod(r[shift + i] - c * r1[i], p);
      trim(r);
    }
    trim(q);
    Poly s2 = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (degree(r0) != 0) throw ValidationError("polynomial not invertible modulo the modulus");
  const long li = inv(r0[0], p);
  for (auto& c : s0) c = c * li % p;
  return rem(s0, m, p);
}

inline std::vector<long> prime_factors(long n) {
  std::vector<long> f;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

/// Rabin's test for a monic polynomial of degree n >= 1.
inline bool is_irreducible(const Poly& f, long p) {
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly x{0, 1};
  auto x_pow_p_k = [&](long k) {
    Poly r = rem(x, f, p);
    for (long i = 0; i < k; ++i) r = powmod(r, p, f, p);
    return r;
  };
  if (sub(x_pow_p_k(n), rem(x, f, p), p) != Poly{}) return false;
  for (long r : prime_factors(n)) {
    Poly g = monic_gcd(f, sub(x_pow_p_k(n / r), x, p), p);
    if (degree(g) != 0) return false;
  }
  return true;
}

/// The monic irreducible of degree n whose lower coefficients, read as the
/// base-p integer c_0 + c_1 p + ... + c_{n-1} p^{n-1}, are smallest.
inline Poly first_irreducible(long p, int n) {
  Poly f(n + 1, 0);
  f[n] = 1;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  for (long idx = 0; idx < total; ++idx) {
    long k = idx;
    for (int i = 0; i < n; ++i) {
      f[i] = k % p;
      k /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace phodge::fp

#endif  // PHODGE_FP_POLY_HPP
