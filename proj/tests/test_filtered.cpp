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


#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "phodge/filtered.hpp"

using namespace phodge;

namespace {

PMatrix cols(const Context& ctx, size_t d, const std::vector<std::vector<long>>& vs) {
  PMatrix m(d, vs.size(), PadicScalar::zero(ctx));
  for (size_t j = 0; j < vs.size(); ++j)
    for (size_t i = 0; i < d; ++i) m(i, j) = PadicScalar::from_integer(ctx, vs[j][i]);
  return m;
}


size_t intersection_dim(const PadicField& f, const PMatrix& a, const PMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return 0;
  return a.cols() + b.cols() - rank(f, hstack(f, a, b));
}

// t_H of the subspace spanned by w with the induced filtration, from ranks.
long induced_hodge(const FilteredIsocrystal& N, const PMatrix& w) {
  PadicField f = N.base().field();
  const auto& steps = N.filtration().steps();
  if (steps.empty()) return 0;
  long lo = steps.begin()->first - 1, hi = steps.rbegin()->first;
  long t = 0;
  for (long i = lo; i <= hi; ++i) {
    const long here = static_cast<long>(intersection_dim(f, N.filtration().fil(i, f), w));
    const long next = static_cast<long>(intersection_dim(f, N.filtration().fil(i + 1, f), w));
    t += i * (here - next);
  }
  return t;
}


}  // namespace

TEST(Filtered, HodgeNumbers) {
  auto ctx = make_context(3, 1, 10);
  PadicField f(ctx);
  FilteredIsocrystal unit(gen::diagonal(ctx, {0}), {});
  EXPECT_EQ(hodge_number(unit), 0);
  FilteredIsocrystal one(gen::diagonal(ctx, {1}), {{1, cols(ctx, 1, {{1}})}});
  EXPECT_EQ(hodge_number(one), 1);
  FilteredIsocrystal two(gen::diagonal(ctx, {0, 1}), {{1, cols(ctx, 2, {{1, 1}})}});
  EXPECT_EQ(hodge_number(two), 1);
}

TEST(Filtered, HodgePolygons) {
  auto ctx = make_context(3, 1, 10);
  FilteredIsocrystal m(gen::diagonal(ctx, {0, 0, 1}), {{1, cols(ctx, 3, {{0, 0, 1}})}});
  auto v = hodge_polygon(m).vertices();
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[1].x, 2);
  EXPECT_EQ(v[1].y, 0);
  EXPECT_EQ(v[2].x, 3);
  EXPECT_EQ(v[2].y, 1);
  FilteredIsocrystal flat(gen::diagonal(ctx, {0, 0}), {});
  EXPECT_EQ(hodge_polygon(flat).vertices().size(), 2u);
  // jumps -1 and 2: Fil^-1 = all, Fil^0 = Fil^2 = span(e2), Fil^3 = 0.
  FilteredIsocrystal j(gen::diagonal(ctx, {0, 0}), {{-1, cols(ctx, 2, {{1, 0}, {0, 1}})}, {2, cols(ctx, 2, {{0, 1}})}});
  auto w = hodge_polygon(j).vertices();
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[1].x, 1);
  EXPECT_EQ(w[1].y, -1);
  EXPECT_EQ(w[2].x, 2);
  EXPECT_EQ(w[2].y, 1);
}

TEST(Filtered, RejectsIncreasingFiltration) {
  auto ctx = make_context(3, 1, 10);
  EXPECT_THROW(FilteredIsocrystal(gen::diagonal(ctx, {0, 0}), {{0, cols(ctx, 2, {{1, 0}})}, {1, cols(ctx, 2, {{0, 1}})}}),
               ValidationError);
  EXPECT_THROW(FilteredIsocrystal(gen::diagonal(ctx, {0, 0}), {{1, cols(ctx, 3, {{1, 0, 0}})}}), ValidationError);
}

TEST(Filtered, AdmissibilityExamples) {
  auto ctx = make_context(5, 1, 12);
  FilteredIsocrystal unit(gen::diagonal(ctx, {0}), {});
  EXPECT_EQ(is_weakly_admissible(unit).kind, AdmissibilityVerdict::Kind::admissible);
  FilteredIsocrystal bad(gen::diagonal(ctx, {0}), {{1, cols(ctx, 1, {{1}})}});
  auto v = is_weakly_admissible(bad);
  EXPECT_EQ(v.kind, AdmissibilityVerdict::Kind::not_admissible);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->t_newton, 0);
  EXPECT_EQ(v.witness->t_hodge, 1);
  FilteredIsocrystal good(gen::diagonal(ctx, {1}), {{1, cols(ctx, 1, {{1}})}});
  EXPECT_EQ(is_weakly_admissible(good).kind, AdmissibilityVerdict::Kind::admissible);
}

TEST(Filtered, OrdinaryCurveFiltrations) {
  auto ctx = make_context(3, 1, 12);
  auto N = gen::diagonal(ctx, {0, 1});
  // Fil^1 on the slope 0 line: that line has t_N = 0 < t_H = 1.
  auto bad = is_weakly_admissible(FilteredIsocrystal(N, {{1, cols(ctx, 2, {{1, 0}})}}));
  EXPECT_EQ(bad.kind, AdmissibilityVerdict::Kind::not_admissible);
  // Fil^1 on the slope 1 line or generic.
  EXPECT_EQ(is_weakly_admissible(FilteredIsocrystal(N, {{1, cols(ctx, 2, {{0, 1}})}})).kind,
            AdmissibilityVerdict::Kind::admissible);
  EXPECT_EQ(is_weakly_admissible(FilteredIsocrystal(N, {{1, cols(ctx, 2, {{1, 1}})}})).kind,
            AdmissibilityVerdict::Kind::admissible);
}

TEST(Filtered, WitnessesRecheckIndependently) {
  auto g = oracle::rng(71);
  int seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto ctx = make_context(g() % 2 ? 2 : 3, 1 + static_cast<int>(g() % 2), 16);
    PadicField f(ctx);
    auto N = gen::random_positive_sum(ctx, g, 4);
    const size_t d = N.dim();
    const size_t k = g() % (d + 1);
    std::map<long, PMatrix> steps;
    steps.emplace(1, column_basis(f, oracle::random_integral_matrix(ctx, g, d, k)));
    FilteredIsocrystal M(N, steps);
    auto v = is_weakly_admissible(M);
    if (v.kind != AdmissibilityVerdict::Kind::not_admissible) continue;
    ++seen;
    ASSERT_TRUE(v.witness);
    const PMatrix& w = v.witness->basis;
    EXPECT_EQ(induced_hodge(M, w), v.witness->t_hodge);
    if (w.cols() == d) {
      EXPECT_NE(newton_number(N), Rational(hodge_number(M)));
    } else {
      Isocrystal sub(ctx, restrict_frobenius(f, N.frobenius_matrix(), w));
      EXPECT_EQ(newton_number(sub), v.witness->t_newton);
      EXPECT_LT(newton_number(sub), Rational(induced_hodge(M, w)));
    }
  }
  EXPECT_GT(seen, 10);
}

TEST(Filtered, FrobeniusSpanExamples) {
  auto ctx = make_context(3, 1, 12);
  EXPECT_TRUE(frobenius_span_check(FilteredIsocrystal(gen::diagonal(ctx, {1}), {{1, cols(ctx, 1, {{1}})}})));
  EXPECT_TRUE(frobenius_span_check(FilteredIsocrystal(simple_isocrystal(ctx, 2, 1), {{1, cols(ctx, 2, {{1, 0}})}})));
  // A slope 1 line inside slope 1 plane does not generate.
  EXPECT_FALSE(frobenius_span_check(FilteredIsocrystal(gen::diagonal(ctx, {1, 1}), {{1, cols(ctx, 2, {{1, 0}})}})));
}

TEST(Filtered, FrobeniusSpanOnGeneratedAdmissibleInstances) {
  auto g = oracle::rng(404);
  int admissible = 0, attempts = 0;
  while (admissible < 200 && attempts < 2000) {
    ++attempts;
    auto ctx = make_context(g() % 2 ? 2 : 5, 1 + static_cast<int>(g() % 2), 16);
    PadicField f(ctx);
    auto N = gen::random_positive_sum(ctx, g, 4);
    const Rational tn = newton_number(N);
    if (!is_integer(tn) || tn.get_num() > static_cast<long>(N.dim())) continue;
    const auto t = static_cast<size_t>(tn.get_num().get_si());
    std::map<long, PMatrix> steps;
    steps.emplace(1, column_basis(f, oracle::random_integral_matrix(ctx, g, N.dim(), t)));
    FilteredIsocrystal M(N, steps);
    if (M.filtration().fil(1, f).cols() != t) continue;
    if (is_weakly_admissible(M).kind != AdmissibilityVerdict::Kind::admissible) continue;
    ++admissible;
    EXPECT_TRUE(frobenius_span_check(M));
  }
  EXPECT_EQ(admissible, 200);
}

TEST(Filtered, HodgeAndNewtonAdditive) {
  auto ctx = make_context(3, 1, 12);
  PadicField f(ctx);
  auto a = FilteredIsocrystal(gen::diagonal(ctx, {0, 1}), {{1, cols(ctx, 2, {{1, 1}})}});
  auto b = FilteredIsocrystal(simple_isocrystal(ctx, 2, 1), {{1, cols(ctx, 2, {{1, 0}})}});
  PMatrix fa = a.filtration().fil(1, f), fb = b.filtration().fil(1, f);
  PMatrix fs = zero_matrix(f, 4, 2);
  for (size_t i = 0; i < 2; ++i) {
    fs(i, 0) = fa(i, 0);
    fs(i + 2, 1) = fb(i, 0);
  }
  FilteredIsocrystal s(direct_sum(a.base(), b.base()), {{1, fs}});
  EXPECT_EQ(hodge_number(s), hodge_number(a) + hodge_number(b));
  EXPECT_EQ(newton_number(s.base()), newton_number(a.base()) + newton_number(b.base()));
}
