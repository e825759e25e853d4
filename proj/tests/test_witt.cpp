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

#include <set>

#include "oracles.hpp"
#include "phodge/witt.hpp"

using namespace phodge;

namespace {

WittVector vec(const Context& ctx, std::vector<long> idx) {
  std::vector<FqElement> c;
  for (long i : idx) c.push_back(FqElement::from_index(ctx, i));
  return WittVector(ctx, c);
}

// Teichmueller representative of a in Z / p^n, as an integer a^(p^n) mod p^n.
Integer teich_mod(long a, long p, int n) {
  Integer mod = 1, r;
  for (int i = 0; i < n; ++i) mod *= p;
  Integer e = mod;
  mpz_powm(r.get_mpz_t(), Integer(a).get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return r;
}

Integer to_int(const std::vector<long>& a, long p, int n) {
  Integer mod = 1, pk = 1, s = 0;
  for (int i = 0; i < n; ++i) mod *= p;
  for (int i = 0; i < n; ++i) {
    s += pk * teich_mod(a[static_cast<size_t>(i)], p, n);
    pk *= p;
  }
  s %= mod;
  return s;
}

}  // namespace

TEST(Witt, TwoPlusInLengthTwo) {
  auto ctx = make_context(2, 1, 4);
  EXPECT_EQ(vec(ctx, {1, 0}) + vec(ctx, {1, 0}), vec(ctx, {0, 1}));
}

TEST(Witt, ThreeFoldSumOfOne) {
  auto ctx = make_context(3, 1, 4);
  auto one = WittVector::one(ctx, 3);
  EXPECT_EQ(one + one + one, vec(ctx, {0, 1, 0}));
}

TEST(Witt, MultiplicationByPIsFV) {
  auto ctx = make_context(3, 2, 4);
  auto g = oracle::rng(7);
  auto p = WittVector::one(ctx, 3) + WittVector::one(ctx, 3) + WittVector::one(ctx, 3);
  for (int k = 0; k < 30; ++k) {
    auto x = WittVector::random(ctx, 3, g);
    EXPECT_EQ(frobenius_witt(verschiebung(x)), p * x);
    EXPECT_EQ(verschiebung(frobenius_witt(x)), p * x);
  }
}

TEST(Witt, FrobeniusOnTeichmueller) {
  auto ctx = make_context(5, 2, 4);
  for (long i = 0; i < 25; ++i) {
    auto a = FqElement::from_index(ctx, i);
    EXPECT_EQ(frobenius_witt(WittVector::teichmuller(a, 3)), WittVector::teichmuller(a.pow(5), 3));
  }
}

TEST(Witt, VerschiebungProjectionFormula) {
  auto ctx = make_context(2, 2, 6);
  auto g = oracle::rng(11);
  for (int k = 0; k < 30; ++k) {
    auto x = WittVector::random(ctx, 4, g), y = WittVector::random(ctx, 4, g);
    EXPECT_EQ(verschiebung(x) * verschiebung(y), verschiebung(x * frobenius_witt(verschiebung(y))));
  }
}

TEST(Witt, FrobeniusIsRingHomomorphism) {
  auto ctx = make_context(3, 2, 5);
  auto g = oracle::rng(12);
  for (int k = 0; k < 30; ++k) {
    auto x = WittVector::random(ctx, 3, g), y = WittVector::random(ctx, 3, g);
    EXPECT_EQ(frobenius_witt(x + y), frobenius_witt(x) + frobenius_witt(y));
    EXPECT_EQ(frobenius_witt(x * y), frobenius_witt(x) * frobenius_witt(y));
  }
}

TEST(Witt, ZeroOneIsP) {
  auto ctx = make_context(2, 1, 6);
  auto x = witt_to_padic(vec(ctx, {0, 1}), ctx);
  EXPECT_EQ(x, PadicScalar::from_integer(ctx, 2).with_precision(2));
}

TEST(Witt, ExhaustiveSmallRingsMatchIntegersModPn) {
  for (long p : {2L, 3L}) {
    auto ctx = make_context(p, 1, 6);
    for (int n = 1; n <= 3; ++n) {
      long count = 1;
      for (int i = 0; i < n; ++i) count *= p;
      std::vector<std::vector<long>> all;
      for (long t = 0; t < count; ++t) {
        std::vector<long> a;
        long u = t;
        for (int i = 0; i < n; ++i) {
          a.push_back(u % p);
          u /= p;
        }
        all.push_back(a);
      }
      std::set<Integer> images;
      for (const auto& a : all) images.insert(to_int(a, p, n));
      EXPECT_EQ(static_cast<long>(images.size()), count);
      Integer mod = count;
      for (const auto& a : all) {
        for (const auto& b : all) {
          auto x = vec(ctx, a), y = vec(ctx, b);
          std::vector<long> s, m;
          const auto sum = x + y, prod = x * y;
          for (const auto& c : sum.coords()) s.push_back(c.index());
          for (const auto& c : prod.coords()) m.push_back(c.index());
          Integer ia = to_int(a, p, n), ib = to_int(b, p, n);
          Integer want_s = (ia + ib) % mod, want_m = (ia * ib) % mod;
          EXPECT_EQ(to_int(s, p, n), want_s) << "p=" << p << " n=" << n;
          EXPECT_EQ(to_int(m, p, n), want_m) << "p=" << p << " n=" << n;
        }
      }
    }
  }
}

TEST(Witt, GhostOracleRandomTrials) {
  auto g = oracle::rng(2024);
  int trials = 0;
  for (long p : {2L, 3L, 5L}) {
    for (int n : {1, 2}) {
      auto ctx = make_context(p, n, 4);
      for (int m = 1; m <= 4; ++m) {
        for (int k = 0; k < 15; ++k) {
          auto x = WittVector::random(ctx, m, g), y = WittVector::random(ctx, m, g);
          EXPECT_EQ(x + y, oracle::ghost_oracle(x, y, '+'));
          EXPECT_EQ(x * y, oracle::ghost_oracle(x, y, '*'));
          EXPECT_EQ(x - y, oracle::ghost_oracle(x, y, '-'));
          EXPECT_EQ(-x, oracle::ghost_oracle(x, y, 'n'));
          ++trials;
        }
      }
    }
  }
  EXPECT_EQ(trials, 360);
}

TEST(Witt, ToPadicIsRingIsomorphism) {
  auto g = oracle::rng(5);
  for (int n : {1, 2, 3}) {
    auto ctx = make_context(3, n, 4);
    for (int k = 0; k < 20; ++k) {
      auto x = WittVector::random(ctx, 4, g), y = WittVector::random(ctx, 4, g);
      auto a = witt_to_padic(x, ctx), b = witt_to_padic(y, ctx);
      EXPECT_EQ(witt_to_padic(x + y, ctx), (a + b).with_precision(4));
      EXPECT_EQ(witt_to_padic(x * y, ctx), (a * b).with_precision(4));
      EXPECT_EQ(padic_to_witt(a, 4), x);
    }
  }
}

TEST(Witt, TeichmuellerMatchesIteratedPowers) {
  auto ctx = make_context(7, 2, 6);
  for (long i = 0; i < 49; i += 5) {
    auto a = FqElement::from_index(ctx, i);
    EXPECT_EQ(witt_to_padic(WittVector::teichmuller(a, 6), ctx), oracle::teichmuller_by_iteration(a, ctx));
  }
}

TEST(Witt, LengthBounds) {
  auto ctx = make_context(2, 1, 4);
  auto g = oracle::rng(1);
  auto x = WittVector::random(ctx, 5, g);
  EXPECT_THROW(witt_to_padic(x, ctx), ValidationError);
  EXPECT_THROW(WittVector(ctx, {}), ValidationError);
  auto other = make_context(3, 1, 4);
  EXPECT_THROW(vec(ctx, {1}) + vec(other, {1}), ValidationError);
}
