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

#ifndef PHODGE_ISOCRYSTAL_HPP
#define PHODGE_ISOCRYSTAL_HPP

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "phodge/errors.hpp"
#include "phodge/linalg.hpp"
#include "phodge/newton.hpp"
#include "phodge/padic.hpp"

namespace phodge {

inline constexpr size_t kMaxIsocrystalDim = 64;

/// Entrywise sigma^k.
inline PMatrix sigma(const PMatrix& m, long k = 1) {
  return m.map([k](const PadicScalar& x) { return x.frobenius_power(k); });
}

inline PMatrix lift_matrix_to(const PMatrix& m, const Context& target) {
  return m.map([&](const PadicScalar& x) { return x.lift_to(target); });
}

/// Smallest valuation among the entries; 0 when all entries are zero.
inline long min_valuation(const PMatrix& m) {
  bool any = false;
  long v = 0;
  for (const auto& x : m.data()) {
    if (x.is_zero()) continue;
    v = any ? std::min(v, x.valuation().value()) : x.valuation().value();
    any = true;
  }
  return v;
}

/// Finite-dimensional Q_q-space with F(v) = A sigma(v) for an invertible A.
class Isocrystal {
 public:
  Isocrystal(Context ctx, PMatrix frobenius);

  const Context& context() const { return ctx_; }
  size_t dim() const { return a_.rows(); }
  const PMatrix& frobenius_matrix() const { return a_; }
  PadicField field() const { return PadicField(ctx_); }

  /// F applied to a coordinate vector.
  std::vector<PadicScalar> apply_frobenius(const std::vector<PadicScalar>& v) const {
    std::vector<PadicScalar> s;
    s.reserve(v.size());
    for (const auto& x : v) s.push_back(x.frobenius());
    return apply(field(), a_, s);
  }

 private:
  Context ctx_;
  PMatrix a_;
};

namespace detail {

// The input matrix read as exact, scaled by p^shift to be integral, and
// moved to a context of larger precision.
struct WorkingCopy {
  Context ctx;
  PMatrix a;
  long shift = 0;
};

inline WorkingCopy working_copy(const Context& ctx, const PMatrix& a, long precision) {
  WorkingCopy w;
  w.ctx = make_context(ctx->p(), ctx->degree(), precision);
  w.shift = std::max(0L, -min_valuation(a));
  const PadicScalar s = PadicScalar::p_power(w.ctx, w.shift);
  w.a = a.map([&](const PadicScalar& x) { return s * x.lift_to(w.ctx); });
  return w;
}

inline PMatrix linearize_matrix(const PadicField& f, const PMatrix& a) {
  const long n = f.ctx->degree();
  PMatrix phi = a;
  for (long k = 1; k < n; ++k) phi = multiply(f, phi, sigma(a, k));
  return phi;
}

// Charpoly of the linearized Frobenius of the integral working copy,
// raising the precision until the constant term is visibly nonzero.
struct WorkingCharpoly {
  WorkingCopy work;
  PMatrix phi;
  std::vector<PadicScalar> poly;
};

inline WorkingCharpoly working_charpoly(const Context& ctx, const PMatrix& a) {
  const long d = static_cast<long>(a.rows());
  long prec = ctx->precision() + 2 * d + 4;
  const long cap = 16 * (ctx->precision() + d + 8);
  for (;;) {
    WorkingCharpoly out;
    out.work = working_copy(ctx, a, prec);
    PadicField f(out.work.ctx);
    out.phi = linearize_matrix(f, out.work.a);
    out.poly = charpoly(f, out.phi);
    if (!out.poly.back().is_zero()) return out;
    if (prec >= cap) throw PrecisionInsufficient("Frobenius is not invertible at precision " + std::to_string(prec));
    prec *= 2;
  }
}

}  // namespace detail

inline Isocrystal::Isocrystal(Context ctx, PMatrix frobenius) : ctx_(std::move(ctx)), a_(std::move(frobenius)) {
  if (a_.rows() != a_.cols()) throw ValidationError("Frobenius matrix must be square");
  if (a_.rows() > kMaxIsocrystalDim)
    throw ValidationError("dimension " + std::to_string(a_.rows()) + " exceeds the limit of " +
                          std::to_string(kMaxIsocrystalDim));
  for (const auto& x : a_.data())
    if (!x.context() || !x.context()->same_field(*ctx_)) throw ValidationError("Frobenius entry in the wrong field");
  if (a_.rows() == 0) return;
  a_ = lift_matrix_to(a_, ctx_);
  try {
    detail::working_charpoly(ctx_, a_);
  } catch (const PrecisionInsufficient&) {
    throw ValidationError("Frobenius matrix is not invertible");
  }
}

/// Matrix of F^n, n the residue degree: A sigma(A) ... sigma^{n-1}(A).
inline PMatrix linearize(const Isocrystal& N) { return detail::linearize_matrix(N.field(), N.frobenius_matrix()); }

/// det(x - Phi), leading coefficient first, at the isocrystal's precision.
inline std::vector<PadicScalar> characteristic_polynomial(const Isocrystal& N) {
  return charpoly(N.field(), linearize(N));
}

/// Slopes: Newton slopes of det(x - Phi) divided by the residue degree.
inline SlopeData slopes(const Isocrystal& N) {
  if (N.dim() == 0) return SlopeData();
  auto wc = detail::working_charpoly(N.context(), N.frobenius_matrix());
  const long n = N.context()->degree();
  std::vector<std::pair<Rational, long>> e;
  const SlopeData raw = newton_polygon_of_poly(wc.poly).slopes();
  for (const auto& [s, m] : raw.entries())
    e.emplace_back(Rational(s / n - wc.work.shift), m);
  return SlopeData(std::move(e));
}

inline NewtonPolygon newton_polygon(const Isocrystal& N) { return NewtonPolygon::from_slopes(slopes(N)); }
inline Rational newton_number(const Isocrystal& N) { return slopes(N).newton_number(); }

/// N_{r,d}: F(e_i) = e_{i+1} for i < r and F(e_r) = p^d e_1.
inline Isocrystal simple_isocrystal(const Context& ctx, long r, long d) {
  if (r <= 0) throw ValidationError("simple isocrystal needs r > 0");
  if (std::gcd(r, d) != 1) throw ValidationError("simple isocrystal needs gcd(r, d) = 1");
  if (static_cast<size_t>(r) > kMaxIsocrystalDim) throw ValidationError("dimension exceeds the limit");
  PadicField f(ctx);
  PMatrix a = zero_matrix(f, static_cast<size_t>(r), static_cast<size_t>(r));
  for (long i = 0; i + 1 < r; ++i) a(static_cast<size_t>(i + 1), static_cast<size_t>(i)) = f.one();
  const Rational pd = d >= 0 ? Rational(ipow(ctx->p(), d)) : Rational(1) / Rational(ipow(ctx->p(), -d));
  a(0, static_cast<size_t>(r - 1)) = f.from_rational(pd);
  return Isocrystal(ctx, std::move(a));
}

inline void check_same_context(const Isocrystal& a, const Isocrystal& b) {
  if (!(*a.context() == *b.context())) throw ValidationError("isocrystals over different contexts");
}

inline Isocrystal direct_sum(const Isocrystal& a, const Isocrystal& b) {
  check_same_context(a, b);
  return Isocrystal(a.context(), block_diagonal(a.field(), a.frobenius_matrix(), b.frobenius_matrix()));
}

inline Isocrystal tensor(const Isocrystal& a, const Isocrystal& b) {
  check_same_context(a, b);
  return Isocrystal(a.context(), kronecker(a.field(), a.frobenius_matrix(), b.frobenius_matrix()));
}

/// Linear dual with F(f) = sigma o f o F^{-1}; its matrix is A^{-T}.
inline Isocrystal dual(const Isocrystal& N) {
  if (N.dim() == 0) return N;
  // Invert exactly at a raised precision, then come back.
  auto w = detail::working_copy(N.context(), N.frobenius_matrix(),
                                2 * N.context()->precision() + 4 * static_cast<long>(N.dim()) + 8);
  PadicField f(w.ctx);
  PMatrix inv = inverse(f, w.a);
  const PadicScalar s = PadicScalar::p_power(w.ctx, w.shift);
  inv = scale(f, s, inv).transpose();
  return Isocrystal(N.context(), lift_matrix_to(inv, N.context()));
}

/// Slopes of the Dieudonne dual: alpha -> 1 - alpha.
inline SlopeData dieudonne_dual_slopes(const SlopeData& s) {
  std::vector<std::pair<Rational, long>> e;
  for (const auto& [a, m] : s.entries()) {
    if (a < 0 || a > 1) throw ValidationError("slope " + to_string(a) + " outside [0, 1]");
    e.emplace_back(Rational(1 - a), m);
  }
  return SlopeData(std::move(e));
}

namespace detail {

// Small polynomial helpers, coefficients low degree first.
template <class T>
void poly_trim(std::vector<T>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

template <class T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b, const T& zero) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> r(a.size() + b.size() - 1, zero);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

template <class T>
std::vector<T> poly_sub(std::vector<T> a, const std::vector<T>& b, const T& zero) {
  if (a.size() < b.size()) a.resize(b.size(), zero);
  for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
  return a;
}

template <class T>
std::vector<T> poly_add(std::vector<T> a, const std::vector<T>& b, const T& zero) {
  if (a.size() < b.size()) a.resize(b.size(), zero);
  for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
  return a;
}

// Division by b whose leading coefficient is invertible.
template <class T>
std::pair<std::vector<T>, std::vector<T>> poly_divmod(std::vector<T> a, std::vector<T> b, const T& zero) {
  poly_trim(b);
  if (b.empty()) throw ValidationError("polynomial division by zero");
  poly_trim(a);
  if (a.size() < b.size()) return {{}, a};
  const T lead_inv = b.back().inverse();
  const size_t db = b.size() - 1;
  std::vector<T> q(a.size() - db, zero);
  for (size_t k = a.size(); k > db; --k) {
    const size_t top = k - 1;
    const T c = a[top] * lead_inv;
    q[top - db] = c;
    for (size_t j = 0; j <= db; ++j) a[top - db + j] = a[top - db + j] - c * b[j];
  }
  a.resize(b.size() - 1, zero);
  poly_trim(a);
  return {q, a};
}

// s, t with s a + t b = 1 over F_q for coprime a, b.
inline std::pair<std::vector<FqElement>, std::vector<FqElement>> fq_bezout(const std::vector<FqElement>& a,
                                                                           const std::vector<FqElement>& b,
                                                                           const FqElement& zero) {
  std::vector<FqElement> r0 = a, r1 = b, s0{FqElement::one(zero.context())}, s1{}, t0{},
                         t1{FqElement::one(zero.context())};
  poly_trim(r0);
  poly_trim(r1);
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, zero);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s2 = poly_sub(s0, poly_mul(q, s1, zero), zero);
    auto t2 = poly_sub(t0, poly_mul(q, t1, zero), zero);
    poly_trim(s2);
    poly_trim(t2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw SlopeFactorizationFailed("slope factors are not coprime modulo p");
  const FqElement inv = r0[0].inverse();
  for (auto& c : s0) c = c * inv;
  for (auto& c : t0) c = c * inv;
  return {s0, t0};
}

inline std::vector<FqElement> reduce_poly(const std::vector<PadicScalar>& a) {
  std::vector<FqElement> r;
  for (const auto& c : a) r.push_back(c.residue());
  poly_trim(r);
  return r;
}

inline std::vector<PadicScalar> lift_poly(const std::vector<FqElement>& a) {
  std::vector<PadicScalar> r;
  for (const auto& c : a) r.push_back(naive_lift(c));
  return r;
}

// Factors an integral polynomial q (low degree first) whose reduction is
// x^m u(x) with u(0) != 0 as G H with G monic of degree m, G = x^m mod p.
inline std::pair<std::vector<PadicScalar>, std::vector<PadicScalar>> hensel_split(const std::vector<PadicScalar>& q,
                                                                                  size_t m) {
  const Context& ctx = q.front().context();
  const PadicScalar zero = PadicScalar::zero(ctx);
  const FqElement fzero = FqElement::zero(ctx);
  auto qbar = reduce_poly(q);
  if (qbar.size() <= m) throw SlopeFactorizationFailed("unexpected reduction of the slope polynomial");
  for (size_t k = 0; k < m; ++k)
    if (!qbar[k].is_zero()) throw SlopeFactorizationFailed("unexpected reduction of the slope polynomial");
  std::vector<FqElement> gbar(m + 1, fzero);
  gbar[m] = FqElement::one(ctx);
  std::vector<FqElement> hbar(qbar.begin() + static_cast<std::ptrdiff_t>(m), qbar.end());
  auto [s, t] = fq_bezout(gbar, hbar, fzero);
  std::vector<PadicScalar> g = lift_poly(gbar), h = lift_poly(hbar);
  for (long k = 1; k < ctx->precision(); ++k) {
    auto err = poly_sub(q, poly_mul(g, h, zero), zero);
    poly_trim(err);
    if (err.empty()) break;
    // err is divisible by p^k; work with e = err / p^k modulo p.
    const PadicScalar pk = PadicScalar::p_power(ctx, k);
    std::vector<FqElement> e;
    for (const auto& c : err) e.push_back((c / pk).residue());
    poly_trim(e);
    auto [quo, dg] = poly_divmod(poly_mul(e, t, fzero), gbar, fzero);
    auto dh = poly_add(poly_mul(e, s, fzero), poly_mul(quo, hbar, fzero), fzero);
    poly_trim(dh);
    auto dgl = lift_poly(dg), dhl = lift_poly(dh);
    for (auto& c : dgl) c = c * pk;
    for (auto& c : dhl) c = c * pk;
    g = poly_add(g, dgl, zero);
    h = poly_add(h, dhl, zero);
  }
  // The factors are no better known than q itself.
  long known = ctx->precision();
  for (const auto& c : q) known = std::min(known, c.precision());
  for (auto& c : g) c = c.with_precision(known);
  for (auto& c : h) c = c.with_precision(known);
  return {g, h};
}

// p(M) by Horner, coefficients low degree first.
inline PMatrix evaluate_poly(const PadicField& f, const std::vector<PadicScalar>& poly, const PMatrix& m) {
  PMatrix r = zero_matrix(f, m.rows(), m.cols());
  for (size_t k = poly.size(); k-- > 0;) {
    r = multiply(f, r, m);
    for (size_t i = 0; i < m.rows(); ++i) r(i, i) = r(i, i) + poly[k];
  }
  return r;
}

inline PMatrix kernel_matrix(const PadicField& f, const PMatrix& m) {
  return from_columns(f, m.cols(), kernel(f, m));
}

}  // namespace detail

/// One slope part N(alpha) of an isocrystal: basis columns in N and the
/// matrix of F on that basis.
struct IsoclinicSummand {
  Rational slope;
  PMatrix basis;
  Isocrystal part;
};

/// Restriction of F to the column span of b, which must be F-stable:
/// the matrix C with A sigma(b) = b C.
inline PMatrix restrict_frobenius(const PadicField& f, const PMatrix& a, const PMatrix& b) {
  PMatrix image = multiply(f, a, sigma(b));
  auto rows = independent_columns(f, b.transpose());
  if (rows.size() != b.cols()) throw SlopeFactorizationFailed("summand basis is degenerate at working precision");
  std::vector<size_t> all_cols(b.cols()), img_cols(image.cols());
  std::iota(all_cols.begin(), all_cols.end(), 0);
  std::iota(img_cols.begin(), img_cols.end(), 0);
  PMatrix c = multiply(f, inverse(f, submatrix(f, b, rows, all_cols)), submatrix(f, image, rows, img_cols));
  if (!(multiply(f, b, c) == image)) throw SlopeFactorizationFailed("subspace is not stable under Frobenius");
  return c;
}

/// Decomposition N = sum of N(alpha) over the distinct slopes, computed from
/// slope factors of the characteristic polynomial of a power of Phi.
inline std::vector<IsoclinicSummand> isoclinic_decomposition(const Isocrystal& N) {
  const Context& ctx = N.context();
  const SlopeData sd = slopes(N);
  std::vector<IsoclinicSummand> out;
  if (sd.entries().size() <= 1) {
    if (!sd.empty())
      out.push_back({sd.entries()[0].first, identity_matrix(N.field(), N.dim()), N});
    return out;
  }
  const long n = ctx->degree();
  // Slopes of Phi are n * alpha; a power Phi^e with e = 2 * lcm(denominators)
  // makes all of them even integers, so odd integers separate the groups.
  Integer lcm = 1;
  for (const auto& [s, m] : sd.entries()) {
    Rational sn = s * n;
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), sn.get_den_mpz_t());
  }
  const long e = 2 * lcm.get_si();
  const long d = static_cast<long>(N.dim());
  const long shift = std::max(0L, -min_valuation(N.frobenius_matrix()));
  std::vector<long> w;  // valuations of eigenvalues of the power, per group
  for (const auto& [s, m] : sd.entries()) {
    Rational v = (s + shift) * n * e;
    w.push_back(v.get_num().get_si());
  }
  const long spread = w.back() - w.front();
  for (long attempt = 0; attempt < 3; ++attempt) {
    const long prec = (ctx->precision() + 2 * d * spread + 4 * d + 8) << attempt;
    auto work = detail::working_copy(ctx, N.frobenius_matrix(), prec);
    PadicField f(work.ctx);
    try {
      PMatrix phi = detail::linearize_matrix(f, work.a);
      PMatrix psi = identity_matrix(f, N.dim());
      for (long k = 0; k < e; ++k) psi = multiply(f, psi, phi);
      std::vector<PadicScalar> chi = charpoly(f, psi);  // leading first
      // Below[j] spans eigenvalues of valuation < c_j, above[j] those > c_j.
      std::vector<PMatrix> below, above;
      for (size_t j = 0; j + 1 < w.size(); ++j) {
        const long c = w[j] + 1;
        PMatrix m = scale(f, PadicScalar::p_power(work.ctx, -c), psi);
        // Characteristic polynomial of m, low degree first, made primitive.
        std::vector<PadicScalar> q(static_cast<size_t>(d + 1), f.zero());
        for (long i = 0; i <= d; ++i) q[static_cast<size_t>(d - i)] = chi[static_cast<size_t>(i)] * PadicScalar::p_power(work.ctx, -c * i);
        long vmin = 0;
        bool first = true;
        for (const auto& x : q)
          if (!x.is_zero()) {
            vmin = first ? x.valuation().value() : std::min(vmin, x.valuation().value());
            first = false;
          }
        for (auto& x : q) x = x * PadicScalar::p_power(work.ctx, -vmin);
        size_t m_above = 0;
        for (size_t k = 0; k < w.size(); ++k)
          if (w[k] > c) m_above += static_cast<size_t>(sd.entries()[k].second);
        auto [g, h] = detail::hensel_split(q, m_above);
        above.push_back(detail::kernel_matrix(f, detail::evaluate_poly(f, g, m)));
        below.push_back(detail::kernel_matrix(f, detail::evaluate_poly(f, h, m)));
      }
      std::vector<IsoclinicSummand> parts;
      PMatrix a_work = work.a.map([&](const PadicScalar& x) { return x * PadicScalar::p_power(work.ctx, -work.shift); });
      for (size_t j = 0; j < w.size(); ++j) {
        PMatrix b;
        if (j == 0) {
          b = below[0];
        } else if (j + 1 == w.size()) {
          b = above[j - 1];
        } else {
          b = intersect_subspaces(f, above[j - 1], below[j]);
        }
        const long mult = sd.entries()[j].second;
        if (static_cast<long>(b.cols()) != mult)
          throw SlopeFactorizationFailed("slope " + to_string(sd.entries()[j].first) + " part has dimension " +
                                         std::to_string(b.cols()) + ", expected " + std::to_string(mult));
        PMatrix c = restrict_frobenius(f, a_work, b);
        PMatrix b0 = lift_matrix_to(b, ctx), c0 = lift_matrix_to(c, ctx);
        parts.push_back({sd.entries()[j].first, b0, Isocrystal(ctx, c0)});
      }
      return parts;
    } catch (const SlopeFactorizationFailed&) {
      if (attempt == 2) throw;
    } catch (const PrecisionError&) {
      if (attempt == 2) throw SlopeFactorizationFailed("precision exhausted while splitting slopes");
    }
  }
  throw SlopeFactorizationFailed("slope factorization failed");
}

}  // namespace phodge

#endif  // PHODGE_ISOCRYSTAL_HPP
