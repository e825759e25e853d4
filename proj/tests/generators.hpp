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

// Fixtures and random instance generators shared by the tests and the
// acceptance checks.

#ifndef PHODGE_TESTS_GENERATORS_HPP
#define PHODGE_TESTS_GENERATORS_HPP

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "phodge/isocrystal.hpp"
#include "phodge/motive.hpp"
#include "phodge/periods.hpp"
#include "phodge/scalar_parse.hpp"

namespace gen {

using namespace phodge;

/// [[p-1, (p+1)i], [(p+1)i, -(p-1)]] over Q_{p^2}.
inline Isocrystal katz(long p, long precision) {
  auto ctx = make_context(p, 2, precision);
  PadicScalar i = sqrt_minus_one(ctx);
  PadicScalar pm = PadicScalar::from_integer(ctx, p - 1), pp = PadicScalar::from_integer(ctx, p + 1);
  PMatrix a(2, 2, PadicScalar::zero(ctx));
  a(0, 0) = pm;
  a(0, 1) = pp * i;
  a(1, 0) = pp * i;
  a(1, 1) = -pm;
  return Isocrystal(ctx, a);
}

/// diag(p^e_1, ..., p^e_d) sigma.
inline Isocrystal diagonal(const Context& ctx, const std::vector<long>& exps) {
  PMatrix a(exps.size(), exps.size(), PadicScalar::zero(ctx));
  for (size_t i = 0; i < exps.size(); ++i) a(i, i) = PadicScalar::p_power(ctx, exps[i]);
  return Isocrystal(ctx, a);
}

/// Base change A -> P^{-1} A sigma(P).
inline Isocrystal change_basis(const Isocrystal& N, const PMatrix& P) {
  PadicField f(N.context());
  return Isocrystal(N.context(), multiply(f, multiply(f, inverse(f, P), N.frobenius_matrix()), sigma(P)));
}

/// Sum of simple isocrystals of positive slope, in a random basis.
inline Isocrystal random_positive_sum(const Context& ctx, std::mt19937_64& g, size_t max_dim) {
  const std::vector<std::pair<long, long>> simple{{1, 1}, {2, 1}, {3, 1}, {3, 2}, {1, 2}};
  std::optional<Isocrystal> acc;
  for (;;) {
    auto [r, d] = simple[g() % simple.size()];
    if (d > r && g() % 2) continue;
    const size_t have = acc ? acc->dim() : 0;
    if (have + static_cast<size_t>(r) > max_dim) {
      if (acc) break;
      continue;
    }
    auto s = simple_isocrystal(ctx, r, d);
    acc = acc ? direct_sum(*acc, s) : s;
    if (g() % 3 == 0) break;
  }
  return change_basis(*acc, oracle::random_gl(ctx, g, acc->dim()));
}

/// A symmetric Newton polygon of width 2g built from ordinary, supersingular
/// and (1/s, 1 - 1/s) blocks.
inline SlopeData random_abelian_newton(long g, std::mt19937_64& rng) {
  std::map<Rational, long> m;
  long left = g;
  while (left > 0) {
    const long kind = static_cast<long>(rng() % 3);
    if (kind == 2 && left >= 3) {
      const long s = 3 + static_cast<long>(rng() % static_cast<unsigned long>(std::min<long>(left, 5) - 2));
      m[make_rational(1, s)] += s;
      m[make_rational(s - 1, s)] += s;
      left -= s;
    } else if (kind == 1) {
      m[make_rational(1, 2)] += 2;
      left -= 1;
    } else {
      m[Rational(0)] += 1;
      m[Rational(1)] += 1;
      left -= 1;
    }
  }
  return SlopeData(std::vector<std::pair<Rational, long>>(m.begin(), m.end()));
}

inline MotiveShape random_shape(std::mt19937_64& rng) {
  const long r = static_cast<long>(rng() % 5), t = static_cast<long>(rng() % 5), a = static_cast<long>(rng() % 4);
  std::optional<SlopeData> n;
  if (a > 0) n = random_abelian_newton(a, rng);
  return MotiveShape(r, t, a, n, "M");
}

inline QMatrix random_qmatrix(std::mt19937_64& g, size_t r, size_t c) {
  QMatrix m(r, c, Rational(0));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j)
      if (g() % 3) m(i, j) = static_cast<long>(g() % 5) - 2;
  return m;
}

inline QMatrix identity(size_t n) {
  QMatrix m(n, n, Rational(0));
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

struct RandomCat {
  std::vector<PeriodObject> objs;
  std::vector<PeriodMorphism<RationalField>> mors;
};

/// Up to max_objects objects with dimensions 1..3 and up to three random
/// morphisms between them.
inline RandomCat random_cat(std::mt19937_64& g, size_t max_objects) {
  RandomCat c;
  const size_t k = 1 + g() % max_objects;
  for (size_t i = 0; i < k; ++i) c.objs.push_back({"X" + std::to_string(i), 1 + g() % 3, 1 + g() % 3});
  const size_t nm = g() % 4;
  for (size_t i = 0; i < nm; ++i) {
    PeriodMorphism<RationalField> m;
    m.name = "f" + std::to_string(i);
    m.source = g() % k;
    m.target = g() % k;
    m.f = random_qmatrix(g, c.objs[m.target].dim_f, c.objs[m.source].dim_f);
    m.g = random_qmatrix(g, c.objs[m.source].dim_g, c.objs[m.target].dim_g);
    c.mors.push_back(m);
  }
  return c;
}

}  // namespace gen

#endif  // PHODGE_TESTS_GENERATORS_HPP
