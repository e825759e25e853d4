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

#ifndef PHODGE_FORMAL_GROUP_HPP
#define PHODGE_FORMAL_GROUP_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "phodge/errors.hpp"
#include "phodge/padic.hpp"
#include "phodge/rational.hpp"
#include "phodge/series.hpp"

namespace phodge {

/// One-parameter commutative formal group law Phi(x, y), truncated.
template <class F>
class FormalGroupLaw {
 public:
  using T = typename F::value_type;

  explicit FormalGroupLaw(Series2<F> phi) : phi_(std::move(phi)) {}

  static FormalGroupLaw additive(F f, int order) {
    Series2<F> s(f, order);
    if (order >= 1) s(1, 0) = s(0, 1) = f.one();
    return FormalGroupLaw(std::move(s));
  }
  static FormalGroupLaw multiplicative(F f, int order) {
    Series2<F> s(f, order);
    if (order >= 1) s(1, 0) = s(0, 1) = f.one();
    if (order >= 2) s(1, 1) = f.one();
    return FormalGroupLaw(std::move(s));
  }

  const Series2<F>& phi() const { return phi_; }
  const F& field() const { return phi_.field(); }
  int order() const { return phi_.order(); }

 private:
  Series2<F> phi_;
};

/// Unit, commutativity and associativity modulo the truncation order.
template <class F>
bool check_axioms(const FormalGroupLaw<F>& law) {
  const auto& phi = law.phi();
  const auto& f = law.field();
  const int n = law.order();
  for (int i = 0; i <= n; ++i) {
    const typename F::value_type want = (i == 1) ? f.one() : f.zero();
    if (!(phi(i, 0) == want) || !(phi(0, i) == want)) return false;
  }
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      if (!(phi(i, j) == phi(j, i))) return false;
  // Phi(x, Phi(y, z)) = sum_i x^i sum_j a_ij W^j with W bivariate in (y, z);
  // the other side is handled the same way with the roles swapped.
  Series2<F> w = phi;
  std::vector<Series2<F>> wp;
  Series2<F> one(f, n);
  one(0, 0) = f.one();
  wp.push_back(one);
  for (int j = 1; j <= n; ++j) wp.push_back(wp.back() * w);
  for (int i = 0; i <= n; ++i) {
    // coefficient of x^i on the left: sum_j a_ij W(y,z)^j, a series in (y,z).
    Series2<F> left(f, n - i);
    for (int j = 0; i + j <= n; ++j) {
      if (f.is_zero(phi(i, j))) continue;
      left = left + phi(i, j) * wp[static_cast<size_t>(j)].truncate(n - i);
    }
    // on the right, x^i y^k z^l comes from a_{m l} V(x,y)^m, V^m coefficient (i,k).
    Series2<F> right(f, n - i);
    for (int m = 0; m <= n; ++m)
      for (int l = 0; m + l <= n; ++l) {
        if (f.is_zero(phi(m, l))) continue;
        const auto& vm = wp[static_cast<size_t>(m)];
        for (int k = 0; i + k + l <= n; ++k) {
          if (f.is_zero(vm(i, k))) continue;
          right(k, l) = right(k, l) + phi(m, l) * vm(i, k);
        }
      }
    if (!(left == right)) return false;
  }
  return true;
}

template <class F>
Series1<F> log_series(const FormalGroupLaw<F>& law) {
  const auto& f = law.field();
  const int n = law.order();
  if (n < 1) return Series1<F>(f, n);
  Series1<F> g(f, n - 1);
  for (int j = 0; j <= n - 1; ++j) g[j] = law.phi()(1, j);
  return g.inverse().integral();
}

template <class F>
Series1<F> exp_series(const FormalGroupLaw<F>& law) {
  return log_series(law).reversion();
}

/// [m](t) by double-and-add on the group law.
template <class F>
Series1<F> multiplication_by(const FormalGroupLaw<F>& law, const Integer& m) {
  if (m < 0) throw ValidationError("multiplication_by needs m >= 0");
  const auto& f = law.field();
  const int n = law.order();
  Series1<F> result(f, n);
  Series1<F> base = Series1<F>::variable(f, n);
  Integer e = m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = law.phi().evaluate(result, base);
    e >>= 1;
    if (e > 0) base = law.phi().evaluate(base, base);
  }
  return result;
}

/// Moves an integral rational law into a p-adic context.
inline FormalGroupLaw<PadicField> to_padic(const FormalGroupLaw<RationalField>& law, const Context& ctx) {
  PadicField f(ctx);
  Series2<PadicField> s(f, law.order());
  for (int i = 0; i <= law.order(); ++i)
    for (int j = 0; i + j <= law.order(); ++j) {
      const Rational& c = law.phi()(i, j);
      if (c != 0 && rational_valuation(c, ctx->p()) < 0)
        throw ValidationError("formal group law is not p-integral");
      s(i, j) = f.from_rational(c);
    }
  return FormalGroupLaw<PadicField>(std::move(s));
}

/// Coefficients of [p^n](t) / p^n, computed with n extra digits of working
/// precision and returned at the law's precision.
inline Series1<PadicField> limit_log(const FormalGroupLaw<PadicField>& law, long n) {
  if (n < 0) throw ValidationError("limit_log needs n >= 0");
  const Context& ctx = law.field().ctx;
  const int order = law.order();
  const Context work = make_context(ctx->p(), ctx->degree(), ctx->precision() + n);
  PadicField wf(work);
  Series2<PadicField> s(wf, order);
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) {
      const PadicScalar& c = law.phi()(i, j);
      if (!c.is_zero() && c.valuation().value() < 0) throw ValidationError("formal group law is not p-integral");
      s(i, j) = c.lift_to(work);
    }
  FormalGroupLaw<PadicField> lifted(std::move(s));
  Series1<PadicField> t = Series1<PadicField>::variable(wf, order);
  for (long k = 0; k < n; ++k) t = multiplication_by(lifted, Integer(ctx->p())).compose(t);
  PadicField f(ctx);
  Series1<PadicField> out(f, order);
  const PadicScalar scale = PadicScalar::p_power(work, n).inverse();
  for (int k = 0; k <= order; ++k) {
    const PadicScalar c = t[k] * scale;
    out[k] = c.lift_to(ctx);
  }
  return out;
}

/// The rational law is read at precision + n, so rounding it does not reach
/// the digits returned.
inline Series1<PadicField> limit_log(const FormalGroupLaw<RationalField>& law, const Context& ctx, long n) {
  const Context work = make_context(ctx->p(), ctx->degree(), ctx->precision() + n);
  const auto wide = limit_log(to_padic(law, work), n);
  PadicField f(ctx);
  Series1<PadicField> out(f, law.order());
  for (int k = 0; k <= law.order(); ++k) out[k] = wide[k].lift_to(ctx);
  return out;
}

/// Height of the reduction mod p, or a lower bound when [p] vanishes to the
/// truncation order.
struct FormalHeight {
  std::optional<long> height;
  long lower_bound = 0;
  std::string to_string() const {
    return height ? std::to_string(*height) : ">= " + std::to_string(lower_bound);
  }
};

inline FormalHeight formal_height(const FormalGroupLaw<RationalField>& law, long p, long h_max = 1) {
  if (!is_prime(p)) throw ValidationError("p must be prime");
  if (h_max < 1) throw ValidationError("h_max must be positive");
  const Integer needed = ipow(p, h_max);
  if (needed > law.order()) throw TruncationTooSmall("truncation order too small to decide the height", needed.get_si());
  const auto ctx = make_context(p, 1, 1);
  const auto red = to_padic(law, ctx);
  const auto pt = multiplication_by(red, Integer(p));
  for (int k = 1; k <= law.order(); ++k) {
    if (pt[k].is_zero()) continue;
    long h = 0;
    long m = k;
    while (m % p == 0) {
      m /= p;
      ++h;
    }
    if (m != 1) throw ValidationError("[p] mod p does not start at a power of p; not a formal group law");
    return FormalHeight{h, h};
  }
  long bound = 0;
  for (Integer q = p; q <= law.order(); q *= p) ++bound;
  return FormalHeight{std::nullopt, bound + 1};
}

/// w(z) = z^3 (1 + ...) for the Weierstrass model
/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 in z = -x/y, w = -1/y.
template <class F>
Series1<F> weierstrass_w(const F& f, const std::array<Rational, 5>& a, int order) {
  const auto a1 = f.from_rational(a[0]), a2 = f.from_rational(a[1]), a3 = f.from_rational(a[2]),
             a4 = f.from_rational(a[3]), a6 = f.from_rational(a[4]);
  const Series1<F> z = Series1<F>::variable(f, order);
  Series1<F> w(f, order);
  for (int it = 0; it <= order; ++it) {
    const Series1<F> w2 = w * w;
    Series1<F> next = z * z * z + a1 * (z * w) + a2 * (z * z * w) + a3 * w2 + a4 * (z * w2) + a6 * (w2 * w);
    if (next == w) break;
    w = next;
  }
  return w;
}

/// Formal group of a Weierstrass curve with coefficients (a1, a2, a3, a4, a6).
template <class F>
FormalGroupLaw<F> weierstrass_law(const F& f, const std::array<Rational, 5>& a, int order) {
  const auto a1 = f.from_rational(a[0]), a2 = f.from_rational(a[1]), a3 = f.from_rational(a[2]),
             a4 = f.from_rational(a[3]), a6 = f.from_rational(a[4]);
  // lambda, nu need degree order + 1 since they are multiplied by z1 later.
  const int n = order + 2;
  const Series1<F> w = weierstrass_w(f, a, n);
  Series2<F> lambda(f, n);
  for (int k = 3; k <= n; ++k) {
    if (f.is_zero(w[k])) continue;
    for (int i = 0; i <= k - 1; ++i) lambda(i, k - 1 - i) = lambda(i, k - 1 - i) + w[k];
  }
  Series2<F> z1(f, n), z2(f, n);
  z1(1, 0) = f.one();
  z2(0, 1) = f.one();
  const Series2<F> nu = Series2<F>::in_x(w) - lambda * z1;
  // third intersection of w = lambda z + nu with the curve: z1 + z2 + z3 = -num / den
  Series2<F> num = a1 * lambda + a2 * nu + a3 * (lambda * lambda) + f.from_rational(2) * (a4 * (lambda * nu)) +
                   f.from_rational(3) * (a6 * (lambda * lambda * nu));
  Series2<F> den(f, n);
  den(0, 0) = f.one();
  den = den + a2 * lambda + a4 * (lambda * lambda) + a6 * (lambda * lambda * lambda);
  const Series2<F> z3 = Series2<F>(f, n) - z1 - z2 - num * den.inverse();
  // inverse point: i(z) = z / (a1 z + a3 w(z) - 1)
  Series2<F> d = a1 * z3 + a3 * z3.substitute_into(w);
  d(0, 0) = d(0, 0) - f.one();
  return FormalGroupLaw<F>((z3 * d.inverse()).truncate(order));
}

/// Logarithm from the invariant differential dx / (2y + a1 x + a3).
template <class F>
Series1<F> weierstrass_log(const F& f, const std::array<Rational, 5>& a, int order) {
  const auto a1 = f.from_rational(a[0]), a3 = f.from_rational(a[2]);
  const int n = order + 3;
  const Series1<F> w = weierstrass_w(f, a, n);
  Series1<F> u(f, n - 3);
  for (int k = 0; k <= n - 3; ++k) u[k] = w[k + 3];
  const Series1<F> z = Series1<F>::variable(f, n - 3);
  const typename F::value_type two = f.from_rational(2);
  Series1<F> z3(f, n - 3);
  if (n - 3 >= 3) z3[3] = f.one();
  const Series1<F> numer = two * u + z * u.derivative();
  const Series1<F> denom = two * u - a1 * (z * u) - a3 * (z3 * u * u);
  return (numer.truncate(order - 1) * denom.truncate(order - 1).inverse()).integral();
}

/// Valuation of x^n / n! when v(x) = v.
inline long dp_exp_term_valuation(long v, long n, long p) { return n * v - factorial_valuation(n, p); }

inline long dp_log_term_valuation(long v, long n, long p) { return n * v - integer_valuation(Integer(n), p); }

namespace detail {

inline long dp_min_valuation(long p) { return p == 2 ? 2 : 1; }

}  // namespace detail

/// exp(x) = sum x^n / n! on the divided-power ideal pZ_p (4Z_2 when p = 2).
inline PadicScalar dp_exp(const PadicScalar& x) {
  const Context& ctx = x.context();
  const long p = ctx->p();
  const long prec = x.precision();
  if (x.is_zero()) return PadicScalar::one(ctx).with_precision(prec);
  const long v = x.valuation().value();
  if (v < detail::dp_min_valuation(p)) throw ValidationError("dp_exp: valuation of the argument is too small");
  long last = 1;
  while (dp_exp_term_valuation(v, last + 1, p) < prec) ++last;
  const Context work = make_context(p, ctx->degree(), prec + factorial_valuation(last, p) + 1);
  const PadicScalar xw = x.lift_to(work);
  PadicScalar sum = PadicScalar::one(work), term = PadicScalar::one(work);
  for (long n = 1; n <= last; ++n) {
    term = term * xw / PadicScalar::from_integer(work, n);
    sum = sum + term;
  }
  return sum.with_precision(prec).lift_to(ctx);
}

/// log(y) = sum (-1)^(n-1) (y-1)^n / n for y in 1 + pZ_p (1 + 4Z_2 when p = 2).
inline PadicScalar dp_log(const PadicScalar& y) {
  const Context& ctx = y.context();
  const long p = ctx->p();
  const long prec = y.precision();
  const PadicScalar x = y - PadicScalar::one(ctx);
  if (x.is_zero()) return PadicScalar::zero_to(ctx, prec);
  const long v = x.valuation().value();
  if (v < detail::dp_min_valuation(p)) throw ValidationError("dp_log: argument is not in the divided-power domain");
  long last = 1;
  for (long n = 2; n <= 64 * (prec + 2); ++n)
    if (dp_log_term_valuation(v, n, p) < prec) last = n;
  long slack = 1;
  for (long q = p; q <= last; q *= p) ++slack;
  const Context work = make_context(p, ctx->degree(), prec + slack);
  const PadicScalar xw = x.lift_to(work);
  PadicScalar sum = PadicScalar::zero(work), power = PadicScalar::one(work);
  for (long n = 1; n <= last; ++n) {
    power = power * xw;
    const PadicScalar term = power / PadicScalar::from_integer(work, n);
    sum = (n % 2 == 1) ? sum + term : sum - term;
  }
  return sum.with_precision(prec).lift_to(ctx);
}

}  // namespace phodge

#endif  // PHODGE_FORMAL_GROUP_HPP
