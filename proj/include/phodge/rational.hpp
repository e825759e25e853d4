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

#ifndef PHODGE_RATIONAL_HPP
#define PHODGE_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "phodge/errors.hpp"

namespace phodge {

/// Exact rational in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) { return make_rational(Integer(num), Integer(den)); }

/// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) throw ValidationError("not a rational number: '" + text + "'");
  if (r.get_den() == 0) throw ValidationError("rational with zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Integer ipow(long base, long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

/// Sum of the base-p digits of n.
inline long digit_sum(long n, long p) {
  long s = 0;
  for (; n > 0; n /= p) s += n % p;
  return s;
}

/// Legendre's formula: sum of floor(n / p^k).
inline long factorial_valuation(long n, long p) {
  long v = 0;
  for (long q = n / p; q > 0; q /= p) v += q;
  return v;
}

/// Exponent of p in a nonzero integer.
inline long integer_valuation(Integer n, long p) {
  if (n == 0) throw ValidationError("valuation of zero integer");
  long v = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
    n /= p;
    ++v;
  }
  return v;
}

/// p-adic valuation of a nonzero rational.
inline long rational_valuation(const Rational& r, long p) {
  return integer_valuation(r.get_num(), p) - integer_valuation(r.get_den(), p);
}

/// Least nonnegative residue of a modulo m.
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace phodge

#endif  // PHODGE_RATIONAL_HPP
