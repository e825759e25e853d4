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
#include "phodge/motive.hpp"

using namespace phodge;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }
SlopeData sd(std::vector<std::pair<Rational, long>> e) { return SlopeData(std::move(e)); }



}  // namespace

TEST(Motive, KummerFixture) {
  MotiveShape k(1, 1, 0, std::nullopt, "Kummer");
  EXPECT_EQ(tate_rank(k), 2);
  auto w = hodge_tate_weights(k);
  EXPECT_EQ(w.weight0, 1);
  EXPECT_EQ(w.weight1, 1);
  EXPECT_EQ(w.to_string(), "{0^1, 1^1}");
  auto dr = de_rham_dims(k);
  EXPECT_EQ(dr.t_dr, 2);
  EXPECT_EQ(dr.fil0, 1);
  EXPECT_EQ(crystalline_slope_multiset(k), sd({{q(0), 1}, {q(1), 1}}));
  EXPECT_EQ(cartier_dual_shape(k), k);
  EXPECT_EQ(cartier_dual_shape(k).label(), "Kummer^dual");
}

TEST(Motive, SpecExamples) {
  EXPECT_EQ(tate_rank(MotiveShape(0, 0, 0)), 0);
  MotiveShape big(2, 2, 1, sd({{q(0), 1}, {q(1), 1}}));
  EXPECT_EQ(tate_rank(big), 6);
  auto surf = hodge_tate_weights(MotiveShape(0, 0, 2));
  EXPECT_EQ(surf.weight0, 2);
  EXPECT_EQ(surf.weight1, 2);
  auto lat = hodge_tate_weights(MotiveShape(3, 0, 0));
  EXPECT_EQ(lat.weight0, 3);
  EXPECT_EQ(lat.weight1, 0);
  auto torus = de_rham_dims(MotiveShape(0, 1, 0));
  EXPECT_EQ(torus.t_dr, 1);
  EXPECT_EQ(torus.fil0, 0);
  auto zero_motive = de_rham_dims(MotiveShape(4, 0, 0));
  EXPECT_EQ(zero_motive.t_dr, 4);
  EXPECT_EQ(zero_motive.fil0, 4);
  EXPECT_EQ(cartier_dual_shape(MotiveShape(0, 0, 3)), MotiveShape(0, 0, 3));
  EXPECT_EQ(cartier_dual_shape(MotiveShape(2, 3, 1, sd({{q(1, 2), 2}}))), MotiveShape(3, 2, 1, sd({{q(1, 2), 2}})));
  EXPECT_EQ(crystalline_slope_multiset(MotiveShape(0, 3, 0)), sd({{q(1), 3}}));
  EXPECT_EQ(crystalline_slope_multiset(MotiveShape(0, 0, 1, sd({{q(1, 2), 2}}))), sd({{q(1, 2), 2}}));
}

TEST(Motive, ExactSequences) {
  MotiveShape k(1, 1, 0);
  EXPECT_TRUE(check_exact(MotiveShape(0, 1, 0), k, MotiveShape(1, 0, 0)));
  EXPECT_FALSE(check_exact(k, k, k));
  EXPECT_TRUE(check_exact(k, k, MotiveShape(0, 0, 0)));
  EXPECT_FALSE(check_exact(MotiveShape(0, 0, 0), k, MotiveShape(0, 1, 0)));
}

TEST(Motive, AbelianNewtonValidation) {
  EXPECT_THROW(MotiveShape(0, 0, 1, sd({{q(0), 2}})), ValidationError);
  EXPECT_THROW(MotiveShape(0, 0, 1, sd({{q(1, 2), 4}})), ValidationError);
  EXPECT_THROW(MotiveShape(0, 0, 2, sd({{q(1, 3), 3}, {q(1), 1}})), ValidationError);
  EXPECT_THROW(MotiveShape(0, 0, 1, sd({{q(-1), 1}, {q(2), 1}})), ValidationError);
  EXPECT_THROW(MotiveShape(-1, 0, 0), ValidationError);
  EXPECT_THROW(crystalline_slope_multiset(MotiveShape(0, 0, 1)), ValidationError);
  EXPECT_NO_THROW(MotiveShape(0, 0, 3, sd({{q(1, 3), 3}, {q(2, 3), 3}})));
}

TEST(Motive, RandomShapeProperties) {
  auto rng = oracle::rng(50);
  for (int k = 0; k < 50; ++k) {
    auto m = gen::random_shape(rng);
    const long rank = m.rank_l() + m.dim_t() + 2 * m.dim_a();
    EXPECT_EQ(tate_rank(m), rank);
    EXPECT_EQ(de_rham_dims(m).t_dr, tate_rank(m));
    auto w = hodge_tate_weights(m);
    EXPECT_EQ(w.weight0, m.rank_l() + m.dim_a());
    EXPECT_EQ(w.weight1, m.dim_t() + m.dim_a());
    EXPECT_EQ(w.weight0 + w.weight1, tate_rank(m));
    EXPECT_EQ(w.weight0, de_rham_dims(m).fil0);
    auto d = cartier_dual_shape(m);
    EXPECT_EQ(cartier_dual_shape(d), m);
    EXPECT_EQ(crystalline_slope_multiset(d), dieudonne_dual_slopes(crystalline_slope_multiset(m)));
    EXPECT_EQ(crystalline_slope_multiset(m).total_multiplicity(), tate_rank(m));
    auto n = gen::random_shape(rng);
    MotiveShape sum(m.rank_l() + n.rank_l(), m.dim_t() + n.dim_t(), m.dim_a() + n.dim_a());
    EXPECT_TRUE(check_exact(m, sum, n));
  }
}
