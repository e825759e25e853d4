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

// Shared helpers for the test suites: seeded generators and small
// independent reference computations.

#ifndef PHODGE_TESTS_ORACLES_HPP
#define PHODGE_TESTS_ORACLES_HPP

#include <random>
#include <vector>

#include "phodge/linalg.hpp"
#include "phodge/padic.hpp"
#include "phodge/rational.hpp"
#include "phodge/witt.hpp"

namespace oracle {

using namespace phodge;

inline std::mt19937_64 rng(unsigned long seed) { return std::mt19937_64(seed); }

inline Integer random_below(std::mt19937_64& g, const Integer& bound) {
  gmp_randclass r(gmp_randinit_default);
  r.seed(static_cast<unsigned long>(g()));
  return r.get_z_range(bound);
}

/// p^v * (random coefficients), unit part nonzero mod p.
inline PadicScalar random_scalar(const Context& ctx, std::mt19937_64& g, long v = 0) {
  const long rel = ctx->precision() - v;
  const Integer m = ctx->p_power(rel);
  for (;;) {
    std::vector<Integer> c;
    for (int i = 0; i < ctx->degree(); ++i) c.push_back(random_below(g, m));
    bool unit = false;
    for (const auto& x : c) unit = unit || (x % ctx->p() != 0);
    if (!unit) continue;
    return PadicScalar::from_coefficients(ctx, c, v, ctx->precision());
  }
}

inline PadicScalar random_unit(const Context& ctx, std::mt19937_64& g) { return random_scalar(ctx, g, 0); }

/// Integral matrix with entries of valuation >= 0 (possibly zero).
inline PMatrix random_integral_matrix(const Context& ctx, std::mt19937_64& g, size_t r, size_t c) {
  PMatrix m(r, c, PadicScalar::zero(ctx));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m(i, j) = random_scalar(ctx, g, static_cast<long>(g() % 3));
  return m;
}

/// A matrix in GL_n(Z_q): unit determinant mod p.
inline PMatrix random_gl(const Context& ctx, std::mt19937_64& g, size_t n) {
  PadicField f(ctx);
  for (;;) {
    PMatrix m = random_integral_matrix(ctx, g, n, n);
    const PadicScalar d = determinant(f, m);
    if (!d.is_zero() && d.valuation().value() == 0) return m;
  }
}

/// Legendre/digit-sum formula (n - s_p(n)) / (p - 1).
inline long factorial_valuation_by_digits(long n, long p) {
  long s = 0;
  for (long m = n; m > 0; m /= p) s += m % p;
  return (n - s) / (p - 1);
}

/// x^(p^k) with plain repeated powering.
inline PadicScalar power_p(const PadicScalar& x, long p, long k) {
  PadicScalar r = x;
  for (long i = 0; i < k; ++i) r = r.pow(p);
  return r;
}

/// Determinantal divisors of an integer matrix: the valuation of the gcd of
/// k x k minors, by brute force over all minors.
inline std::vector<long> determinantal_valuations(const QMatrix& m, long p) {
  std::vector<long> out;
  const size_t r = m.rows(), c = m.cols();
  for (size_t k = 1; k <= std::min(r, c); ++k) {
    long best = -1;
    std::vector<size_t> rows(k), cols(k);
    std::vector<bool> rs(r, false), cs(c, false);
    std::fill(rs.begin(), rs.begin() + static_cast<long>(k), true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + static_cast<long>(k), true);
      do {
        std::vector<size_t> ri, ci;
        for (size_t i = 0; i < r; ++i)
          if (rs[i]) ri.push_back(i);
        for (size_t j = 0; j < c; ++j)
          if (cs[j]) ci.push_back(j);
        const Rational d = determinant(RationalField{}, submatrix(RationalField{}, m, ri, ci));
        if (d != 0) {
          const long v = rational_valuation(d, p);
          if (best < 0 || v < best) best = v;
        }
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    if (best < 0) break;
    out.push_back(best);
  }
  return out;
}


/// Ghost components w_k = sum_{i <= k} p^i a_i^(p^(k-i)).
inline std::vector<PadicScalar> ghost(const std::vector<PadicScalar>& a, long p) {
  std::vector<PadicScalar> w;
  for (size_t k = 0; k < a.size(); ++k) {
    PadicScalar acc = PadicScalar::zero(a[0].context());
    for (size_t i = 0; i <= k; ++i)
      acc = acc + PadicScalar::p_power(a[0].context(), static_cast<long>(i)) * power_p(a[i], p, static_cast<long>(k - i));
    w.push_back(acc);
  }
  return w;
}

/// Solves the ghost equations back for the coordinates.
inline std::vector<PadicScalar> unghost(const std::vector<PadicScalar>& w, long p) {
  const Context& ctx = w[0].context();
  std::vector<PadicScalar> a;
  for (size_t k = 0; k < w.size(); ++k) {
    PadicScalar rest = w[k];
    for (size_t i = 0; i < k; ++i)
      rest = rest - PadicScalar::p_power(ctx, static_cast<long>(i)) * power_p(a[i], p, static_cast<long>(k - i));
    a.push_back(rest / PadicScalar::p_power(ctx, static_cast<long>(k)));
  }
  return a;
}

/// Ring operation on Witt vectors done through ghost components of integer
/// lifts: op is '+', '*' or '-' (binary) or 'n' (negation).
inline WittVector ghost_oracle(const WittVector& x, const WittVector& y, char op) {
  const Context& ctx = x.context();
  const long p = ctx->p();
  const auto m = static_cast<long>(x.length());
  const Context work = make_context(p, ctx->degree(), 2 * m + 6);
  auto lift = [&](const WittVector& v) {
    std::vector<PadicScalar> out;
    for (const auto& c : v.coords()) out.push_back(naive_lift(c).lift_to(work));
    return out;
  };
  auto gx = ghost(lift(x), p), gy = ghost(lift(y), p);
  std::vector<PadicScalar> gz;
  for (size_t k = 0; k < gx.size(); ++k) {
    switch (op) {
      case '+': gz.push_back(gx[k] + gy[k]); break;
      case '-': gz.push_back(gx[k] - gy[k]); break;
      case '*': gz.push_back(gx[k] * gy[k]); break;
      default: gz.push_back(-gx[k]); break;
    }
  }
  std::vector<FqElement> coords;
  for (const auto& c : unghost(gz, p)) coords.emplace_back(ctx, c.residue().coefficients());
  return WittVector(ctx, coords);
}

/// Teichmueller lift by iterating x -> x^q on a naive lift.
inline PadicScalar teichmuller_by_iteration(const FqElement& a, const Context& target) {
  const long p = target->p();
  return power_p(naive_lift(a).lift_to(target), p, target->degree() * (target->precision() + 1));
}

}  // namespace oracle

#endif  // PHODGE_TESTS_ORACLES_HPP
