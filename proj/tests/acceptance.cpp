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


// Acceptance checks 1 to 10. Each check returns a pass flag and the exact
// values it observed; check 10 reruns 1 to 9 with ten more digits of
// precision and compares both.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "phodge/filtered.hpp"
#include "phodge/formal_group.hpp"
#include "phodge/json_io.hpp"

using namespace phodge;

namespace {

struct Outcome {
  bool pass = true;
  std::string values;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (note.empty()) note = what;
    }
  }
  void record(const std::string& v) { values += v + ";"; }
};

Rational q(long a, long b = 1) { return make_rational(a, b); }

Outcome katz_example(long extra) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (long p : {3L, 7L, 11L}) {
    auto N = gen::katz(p, 20 + extra);
    PadicField f(N.context());
    auto cp = charpoly(f, N.frobenius_matrix());
    // trace 0 and determinant 4p, so the polynomial is lambda^2 + 4p
    o.require(cp.size() == 3 && cp[1].is_zero(), "trace of the Katz matrix is not 0");
    o.require(cp[2] == PadicScalar::from_integer(N.context(), 4 * p), "constant term is not 4p");
    const auto poly_slopes = newton_polygon_of_poly(cp).slopes();
    o.require(poly_slopes == SlopeData({{q(1, 2), 2}}), "Newton slope of the char poly is not 1/2");
    const auto s = slopes(N);
    o.require(s == SlopeData({{q(0), 1}, {q(1), 1}}), "isocrystal slopes are not {0, 1}");
    o.record("p=" + std::to_string(p) + " charpoly slopes " + poly_slopes.to_string() + " slopes " + s.to_string());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 1.0, "took " + std::to_string(secs) + " s");
  return o;
}

Outcome ordinary_polygon(long extra) {
  Outcome o;
  auto ctx = make_context(5, 1, 10 + extra);
  auto N = direct_sum(simple_isocrystal(ctx, 1, 0), simple_isocrystal(ctx, 1, 1));
  auto poly = newton_polygon(N);
  o.record(poly.to_string());
  const auto& v = poly.vertices();
  o.require(v.size() == 3 && v[0].x == 0 && v[0].y == 0 && v[1].x == 1 && v[1].y == 0 && v[2].x == 2 && v[2].y == 1,
            "vertices are " + poly.to_string());
  return o;
}

Outcome simple_isocrystals(long extra) {
  Outcome o;
  int count = 0;
  for (int n : {1, 2}) {
    auto ctx = make_context(3, n, 16 + extra);
    for (long r = 1; r <= 6; ++r)
      for (long d = -6; d <= 6; ++d) {
        if (std::gcd(r, d) != 1) continue;
        auto N = simple_isocrystal(ctx, r, d);
        const auto s = slopes(N);
        o.require(s == SlopeData({{q(d, r), r}}), "N_{" + std::to_string(r) + "," + std::to_string(d) + "}");
        o.require(newton_number(N) == d, "Newton number of N_{" + std::to_string(r) + "," + std::to_string(d) + "}");
        ++count;
      }
  }
  o.record("pairs " + std::to_string(count));
  return o;
}

Outcome witt_vectors(long extra) {
  Outcome o;
  for (long p : {2L, 3L}) {
    auto ctx = make_context(p, 1, 4 + extra);
    for (int n = 1; n <= 3; ++n) {
      const Context target = make_context(p, 1, n + extra);
      long count = 1;
      for (int i = 0; i < n; ++i) count *= p;
      std::vector<WittVector> all;
      for (long t = 0; t < count; ++t) {
        std::vector<FqElement> c;
        long u = t;
        for (int i = 0; i < n; ++i) {
          c.push_back(FqElement::from_index(ctx, u % p));
          u /= p;
        }
        all.emplace_back(ctx, c);
      }
      // The image of each vector as sum p^i T(a_i) mod p^n, T(a) = a^(p^n).
      const Integer mod = count;
      auto image = [&](const WittVector& w) {
        Integer s = 0, pk = 1;
        for (const auto& a : w.coords()) {
          Integer t;
          mpz_powm(t.get_mpz_t(), Integer(a.index()).get_mpz_t(), mod.get_mpz_t(), mod.get_mpz_t());
          s += pk * t;
          pk *= p;
        }
        return Integer(s % mod);
      };
      std::set<Integer> seen;
      for (const auto& x : all) seen.insert(image(x));
      o.require(static_cast<long>(seen.size()) == count, "W_n(F_p) -> Z/p^n is not bijective");
      for (const auto& x : all)
        for (const auto& y : all) {
          const WittVector s = x + y, m = x * y;
          o.require(image(s) == (image(x) + image(y)) % mod, "sum is not preserved");
          o.require(image(m) == (image(x) * image(y)) % mod, "product is not preserved");
        }
      o.record("p=" + std::to_string(p) + " n=" + std::to_string(n) + " size " + std::to_string(seen.size()));
    }
  }
  auto g = oracle::rng(4);
  int trials = 0;
  const std::vector<long> primes{2, 3, 5};
  while (trials < 1000) {
    const long p = primes[static_cast<size_t>(trials) % 3];
    const int n = 1 + static_cast<int>(g() % 2);
    const int m = 1 + static_cast<int>(g() % 4);
    auto ctx = make_context(p, n, m + extra);
    auto x = WittVector::random(ctx, m, g), y = WittVector::random(ctx, m, g);
    o.require(x + y == oracle::ghost_oracle(x, y, '+'), "ghost sum");
    o.require(x * y == oracle::ghost_oracle(x, y, '*'), "ghost product");
    o.require(-x == oracle::ghost_oracle(x, y, 'n'), "ghost negation");
    ++trials;
  }
  o.record("ghost trials " + std::to_string(trials));
  return o;
}

Outcome multiplicative_group(long extra) {
  Outcome o;
  RationalField f;
  auto law = FormalGroupLaw<RationalField>::multiplicative(f, 30);
  auto l = log_series(law);
  for (int i = 1; i <= 30; ++i) o.require(l[i] == q(i % 2 ? 1 : -1, i), "log coefficient " + std::to_string(i));
  o.record("log to 30 exact");
  for (long p : {2L, 3L, 5L}) {
    const long P = 12 + extra;
    auto ctx = make_context(p, 1, P);
    auto law12 = FormalGroupLaw<RationalField>::multiplicative(f, 12);
    auto l12 = log_series(law12);
    auto lim = limit_log(law12, ctx, P + 10);
    for (int k = 1; k <= 12; ++k) {
      const PadicScalar diff = lim[k] - PadicScalar::from_rational(ctx, l12[k]);
      o.require(diff.is_zero() || diff.valuation().value() >= P,
                "limit oracle differs at p=" + std::to_string(p) + " k=" + std::to_string(k));
    }
    o.record("limit p=" + std::to_string(p) + " ok");
  }
  auto law20 = FormalGroupLaw<RationalField>::multiplicative(f, 20);
  auto e = exp_series(law20);
  const bool id = e.compose(log_series(law20)) == Series1<RationalField>::variable(f, 20);
  o.require(id, "exp o log is not the identity to order 20");
  o.record(std::string("exp o log = id: ") + (id ? "yes" : "no"));
  return o;
}

Outcome divided_powers(long extra) {
  Outcome o;
  auto g = oracle::rng(6);
  int good = 0;
  for (long p : {3L, 5L}) {
    auto ctx = make_context(p, 1, 12 + extra);
    for (int k = 0; k < 100; ++k) {
      auto x = oracle::random_scalar(ctx, g, 1 + static_cast<long>(g() % 3));
      const bool ok = dp_log(dp_exp(x)) == x && dp_exp(dp_log(PadicScalar::one(ctx) + x)) == PadicScalar::one(ctx) + x;
      o.require(ok, "dp_exp and dp_log are not inverse");
      good += ok;
    }
  }
  o.record("inverse pairs " + std::to_string(good));
  for (long p : {2L, 3L, 5L, 7L})
    for (long n = 0; n <= 50; ++n) {
      long s = 0;
      for (long m = n; m > 0; m /= p) s += m % p;
      long legendre = 0;
      for (long pk = p; pk <= n; pk *= p) legendre += n / pk;
      o.require(factorial_valuation(n, p) == (n - s) / (p - 1) && legendre == (n - s) / (p - 1),
                "v(n!) formula at n=" + std::to_string(n));
    }
  o.record("term valuations n<=50");
  return o;
}

Outcome weak_admissibility(long extra) {
  Outcome o;
  const long prec = 16 + extra;
  auto ctx = make_context(5, 1, prec);
  PadicField f(ctx);
  PMatrix line(1, 1, PadicScalar::one(ctx));
  auto unit = is_weakly_admissible(FilteredIsocrystal(gen::diagonal(ctx, {0}), {}));
  auto bad = is_weakly_admissible(FilteredIsocrystal(gen::diagonal(ctx, {0}), {{1, line}}));
  auto good = is_weakly_admissible(FilteredIsocrystal(gen::diagonal(ctx, {1}), {{1, line}}));
  o.require(unit.kind == AdmissibilityVerdict::Kind::admissible, "unit object");
  o.require(bad.kind == AdmissibilityVerdict::Kind::not_admissible && bad.witness &&
                bad.witness->t_newton < bad.witness->t_hodge,
            "F = sigma, Fil^1 = N");
  o.require(good.kind == AdmissibilityVerdict::Kind::admissible, "F = p sigma, Fil^1 = N");
  o.record(unit.name() + " " + bad.name() + " " + good.name());
  if (bad.witness)
    o.record("witness t_N=" + to_string(bad.witness->t_newton) + " t_H=" + std::to_string(bad.witness->t_hodge));
  auto g = oracle::rng(404);
  int admissible = 0, attempts = 0, spanning = 0;
  while (admissible < 200 && attempts < 2000) {
    ++attempts;
    auto c = make_context(g() % 2 ? 2 : 5, 1 + static_cast<int>(g() % 2), prec);
    PadicField fc(c);
    auto N = gen::random_positive_sum(c, g, 4);
    const Rational tn = newton_number(N);
    if (!is_integer(tn) || tn.get_num() > static_cast<long>(N.dim())) continue;
    const auto t = static_cast<size_t>(tn.get_num().get_si());
    PMatrix x = oracle::random_integral_matrix(c, g, N.dim(), t);
    FilteredIsocrystal M(N, {{1, column_basis(fc, x)}});
    if (M.filtration().fil(1, fc).cols() != t) continue;
    if (is_weakly_admissible(M).kind != AdmissibilityVerdict::Kind::admissible) continue;
    ++admissible;
    if (frobenius_span_check(M)) ++spanning;
  }
  o.require(admissible == 200, "only " + std::to_string(admissible) + " admissible instances generated");
  o.require(spanning == admissible, std::to_string(admissible - spanning) + " instances do not span");
  o.record("span " + std::to_string(spanning) + "/" + std::to_string(admissible));
  return o;
}

Outcome motive_shapes(long) {
  Outcome o;
  auto g = oracle::rng(50);
  for (int k = 0; k < 50; ++k) {
    auto m = gen::random_shape(g);
    const auto w = hodge_tate_weights(m);
    o.require(tate_rank(m) == de_rham_dims(m).t_dr, "tate rank differs from dim TdR");
    o.require(w.weight0 == m.rank_l() + m.dim_a() && w.weight1 == m.dim_t() + m.dim_a(), "Hodge-Tate multiplicities");
    o.require(w.weight0 + w.weight1 == tate_rank(m), "Hodge-Tate multiplicities do not sum to the rank");
    o.require(cartier_dual_shape(cartier_dual_shape(m)) == m, "dual is not an involution");
  }
  o.record("50 shapes");
  MotiveShape kummer(1, 1, 0, std::nullopt, "Kummer");
  const auto s = crystalline_slope_multiset(kummer);
  o.require(s == SlopeData({{q(0), 1}, {q(1), 1}}), "Kummer slopes");
  o.require(de_rham_dims(kummer).fil0 == 1, "Kummer V(M) dimension");
  o.record("Kummer slopes " + s.to_string() + " V(M) " + std::to_string(de_rham_dims(kummer).fil0));
  return o;
}

nlohmann::json load_sample(const std::string& name) {
  std::ifstream in(std::string(PHODGE_SAMPLES) + "/" + name);
  return nlohmann::json::parse(in);
}

Outcome period_formalism(long extra) {
  Outcome o;
  using QCat = PairingCategory<RationalField>;
  auto g = oracle::rng(909);
  for (int k = 0; k < 100; ++k) {
    auto rc = gen::random_cat(g, 1);
    const size_t dim = formal_period_space(QCat(RationalField{}, rc.objs, rc.mors, {}, 0, {})).dim;
    const size_t b = std::max(rc.objs[0].dim_f, rc.objs[0].dim_g);
    o.require(dim <= b * b, "dimension bound fails");
  }
  o.record("bound on 100 categories");
  auto scalar = std::get<QCat>(io::read_category(load_sample("scalar_endomorphism.json"), std::nullopt));
  const size_t sd = formal_period_space(scalar).dim;
  o.require(sd == 0, "scalar endomorphism does not collapse");
  auto kummer = std::get<QCat>(io::read_category(load_sample("kummer_periods.json"), std::nullopt));
  const size_t d0 = formal_period_space(kummer).dim, d1 = depth_space(kummer, 1).dim, d2 = depth_space(kummer, 2).dim;
  const auto v1 = conjecture_at_depth(kummer, 1), v2 = conjecture_at_depth(kummer, 2);
  o.require(d1 > d2, "dim P1 is not larger than dim P2");
  o.require(v1.kind == PeriodVerdict<RationalField>::Kind::not_injective &&
                v2.kind == PeriodVerdict<RationalField>::Kind::injective,
            "evaluation is not injective exactly at depth 2");
  o.record("scalar " + std::to_string(sd) + " kummer " + std::to_string(d0) + "/" + std::to_string(d1) + "/" +
           std::to_string(d2) + " " + v1.name() + " " + v2.name());
  auto j = load_sample("kummer_periods.json");
  j["U"] = {{"p", 5}, {"n", 1}, {"precision", 10 + extra}};
  auto padic = std::get<PairingCategory<PadicField>>(io::read_category(j, std::nullopt));
  const auto pv2 = conjecture_at_depth(padic, 2);
  o.require(pv2.kind == PeriodVerdict<PadicField>::Kind::injective, "p-adic Kummer fixture at depth 2");
  o.record("p-adic depth 2 " + pv2.name());
  auto monotone = [&](const auto& c) {
    size_t prev = formal_period_space(c).dim;
    for (size_t i = 1; i <= 3; ++i) {
      const size_t d = depth_space(c, i).dim;
      if (d > prev) return false;
      prev = d;
    }
    return true;
  };
  o.require(monotone(scalar) && monotone(kummer) && monotone(padic), "depth spaces are not monotone");
  return o;
}

struct Criterion {
  int number;
  std::string title;
  std::function<Outcome(long)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Katz example slopes {0, 1}, char poly slope 1/2", katz_example},
      {2, "ordinary Newton polygon (0,0) (1,0) (2,1)", ordinary_polygon},
      {3, "simple isocrystals N_{r,d}, r <= 6, |d| <= 6", simple_isocrystals},
      {4, "W_n(F_p) = Z/p^n and ghost-oracle ring axioms", witt_vectors},
      {5, "multiplicative formal group log, limit oracle, exp o log", multiplicative_group},
      {6, "divided-power exp/log and v(n!)", divided_powers},
      {7, "weak admissibility and Frobenius span", weak_admissibility},
      {8, "1-motive shape bookkeeping", motive_shapes},
      {9, "formal period spaces", period_formalism},
  };
  bool all = true;
  std::vector<Outcome> base;
  auto report = [&](int number, const std::string& title, const Outcome& o) {
    std::cout << "criterion " << number << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title;
    if (!o.pass) std::cout << " (" << o.note << ")";
    std::cout << std::endl;
    if (!o.values.empty()) std::cout << "    " << o.values << std::endl;
    all = all && o.pass;
  };
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run(0);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    base.push_back(o);
    report(c.number, c.title, o);
  }
  Outcome robust;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Outcome again;
    try {
      again = criteria[k].run(10);
    } catch (const std::exception& e) {
      again.require(false, std::string("exception: ") + e.what());
    }
    robust.require(again.pass == base[k].pass, "criterion " + std::to_string(k + 1) + " verdict changed");
    robust.require(again.values == base[k].values, "criterion " + std::to_string(k + 1) + " values changed: " +
                                                       base[k].values + " vs " + again.values);
  }
  report(10, "precision +10 reproduces every reported value", robust);
  return all ? 0 : 1;
}
