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

#ifndef PHODGE_PADIC_HPP
#define PHODGE_PADIC_HPP

#include <algorithm>
#include <climits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "phodge/errors.hpp"
#include "phodge/fp_poly.hpp"
#include "phodge/rational.hpp"

namespace phodge {

class UnramifiedContext;
using Context = std::shared_ptr<const UnramifiedContext>;

namespace detail {

// Elements of Z_q / p^k as coefficient vectors in the basis 1, g, ..., g^{n-1}.
using ZqVec = std::vector<Integer>;

}  // namespace detail

/// Z_q / p^N presented as (Z/p^N)[x] / (modulus). The modulus is the lift with
/// digits in [0, p) of the first irreducible polynomial of degree n over F_p;
/// the generator g is the class of x.
class UnramifiedContext {
 public:
  long p() const { return p_; }
  int degree() const { return n_; }
  long precision() const { return precision_; }
  /// Residue field size q = p^n.
  const Integer& q() const { return q_; }
  Integer p_power(long k) const;

  /// Monic modulus, low degree first, n + 1 entries.
  const std::vector<Integer>& modulus() const { return modulus_; }
  const fp::Poly& residue_modulus() const { return residue_modulus_; }
  /// sigma(g) to precision N.
  const detail::ZqVec& frobenius_image() const { return frobenius_image_; }
  /// Column k holds sigma(g^k).
  const std::vector<detail::ZqVec>& frobenius_columns() const { return frobenius_columns_; }

  bool same_field(const UnramifiedContext& other) const { return p_ == other.p_ && n_ == other.n_; }
  bool operator==(const UnramifiedContext& other) const {
    return same_field(other) && precision_ == other.precision_;
  }

  // Ring helpers on coefficient vectors modulo p^k.
  detail::ZqVec reduce(detail::ZqVec a, long k) const;
  detail::ZqVec mul(const detail::ZqVec& a, const detail::ZqVec& b, long k) const;
  detail::ZqVec inverse(const detail::ZqVec& a, long k) const;
  detail::ZqVec apply_frobenius(const detail::ZqVec& a, long k) const;

  friend Context make_context(long p, int n, long precision);

 private:
  UnramifiedContext() = default;

  long p_ = 0;
  int n_ = 0;
  long precision_ = 0;
  Integer q_;
  std::vector<Integer> powers_;  // p^0 .. p^{2N + 2}
  std::vector<Integer> modulus_;
  fp::Poly residue_modulus_;
  detail::ZqVec frobenius_image_;
  std::vector<detail::ZqVec> frobenius_columns_;
};

inline Integer UnramifiedContext::p_power(long k) const {
  if (k < 0) throw std::logic_error("negative power of p requested");
  if (static_cast<size_t>(k) < powers_.size()) return powers_[static_cast<size_t>(k)];
  return ipow(p_, k);
}

inline detail::ZqVec UnramifiedContext::reduce(detail::ZqVec a, long k) const {
  a.resize(static_cast<size_t>(n_));
  const Integer m = p_power(k);
  for (auto& c : a) c = mod_floor(c, m);
  return a;
}

inline detail::ZqVec UnramifiedContext::mul(const detail::ZqVec& a, const detail::ZqVec& b, long k) const {
  const auto n = static_cast<size_t>(n_);
  std::vector<Integer> prod(2 * n - 1, 0);
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
  }
  // Reduce by the monic modulus from the top down.
  for (size_t d = prod.size() - 1; d >= n; --d) {
    if (prod[d] != 0) {
      const Integer c = prod[d];
      for (size_t i = 0; i <= n; ++i) prod[d - n + i] -= c * modulus_[i];
    }
  }
  prod.resize(n);
  return reduce(std::move(prod), k);
}

inline detail::ZqVec UnramifiedContext::inverse(const detail::ZqVec& a, long k) const {
  fp::Poly abar(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) abar[static_cast<size_t>(i)] = mod_floor(a[static_cast<size_t>(i)], p_).get_si();
  fp::trim(abar);
  if (abar.empty()) throw PrecisionError("inverse of a non-unit");
  fp::Poly inv0 = fp::inverse_mod(abar, residue_modulus_, p_);
  detail::ZqVec y(static_cast<size_t>(n_), 0);
  for (size_t i = 0; i < inv0.size(); ++i) y[i] = inv0[i];
  // Newton: y <- y (2 - a y), doubling the precision each round.
  long have = 1;
  while (have < k) {
    have = std::min(2 * have, k);
    detail::ZqVec ay = mul(a, y, have);
    detail::ZqVec two_minus(static_cast<size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) two_minus[static_cast<size_t>(i)] = -ay[static_cast<size_t>(i)];
    two_minus[0] += 2;
    y = mul(y, two_minus, have);
  }
  return reduce(std::move(y), k);
}

inline detail::ZqVec UnramifiedContext::apply_frobenius(const detail::ZqVec& a, long k) const {
  const auto n = static_cast<size_t>(n_);
  detail::ZqVec out(n, 0);
  for (size_t col = 0; col < n; ++col) {
    if (a[col] == 0) continue;
    for (size_t row = 0; row < n; ++row) out[row] += a[col] * frobenius_columns_[col][row];
  }
  return reduce(std::move(out), k);
}

/// Builds Z_q / p^N with the deterministic modulus and the Hensel-lifted
/// Frobenius image of the generator.
inline Context make_context(long p, int n, long precision) {
  if (!is_prime(p)) throw ValidationError("p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw ValidationError("residue degree must be >= 1");
  if (precision < 1) throw ValidationError("precision must be >= 1");
  if (precision > 100000) throw ValidationError("precision too large");
  auto ctx = std::shared_ptr<UnramifiedContext>(new UnramifiedContext());
  ctx->p_ = p;
  ctx->n_ = n;
  ctx->precision_ = precision;
  ctx->q_ = ipow(p, n);
  ctx->powers_.reserve(static_cast<size_t>(2 * precision + 3));
  Integer pw = 1;
  for (long k = 0; k <= 2 * precision + 2; ++k) {
    ctx->powers_.push_back(pw);
    pw *= p;
  }
  ctx->residue_modulus_ = fp::first_irreducible(p, n);
  ctx->modulus_.assign(ctx->residue_modulus_.begin(), ctx->residue_modulus_.end());

  const auto nz = static_cast<size_t>(n);
  // sigma(g) is the root of the modulus congruent to g^p mod p.
  fp::Poly gp = fp::powmod(fp::Poly{0, 1}, p, ctx->residue_modulus_, p);
  if (n == 1) gp = fp::Poly{};  // g = 0 when n = 1; sigma is the identity
  detail::ZqVec r(nz, 0);
  for (size_t i = 0; i < gp.size(); ++i) r[i] = gp[i];
  if (n > 1) {
    auto eval = [&](const detail::ZqVec& x, bool derivative) {
      detail::ZqVec acc(nz, 0);
      for (int i = n; i >= (derivative ? 1 : 0); --i) {
        acc = ctx->mul(acc, x, precision);
        Integer c = ctx->modulus_[static_cast<size_t>(i)];
        if (derivative) c *= i;
        acc[0] += c;
        acc = ctx->reduce(acc, precision);
      }
      return acc;
    };
    for (int iter = 0; iter < 200; ++iter) {
      detail::ZqVec fr = eval(r, false);
      if (std::all_of(fr.begin(), fr.end(), [](const Integer& c) { return c == 0; })) break;
      detail::ZqVec step = ctx->mul(fr, ctx->inverse(eval(r, true), precision), precision);
      for (size_t i = 0; i < nz; ++i) r[i] -= step[i];
      r = ctx->reduce(r, precision);
    }
  }
  ctx->frobenius_image_ = r;
  ctx->frobenius_columns_.clear();
  detail::ZqVec power(nz, 0);
  power[0] = 1;
  for (size_t k = 0; k < nz; ++k) {
    ctx->frobenius_columns_.push_back(power);
    power = ctx->mul(power, r, precision);
  }
  return ctx;
}

/// Additive valuation with nu(p) = 1; infinite for zero-to-precision values.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(); }
  static Valuation finite(long v) { return Valuation(v); }

  bool is_infinite() const { return !value_.has_value(); }
  long value() const {
    if (!value_) throw PrecisionError("valuation is infinite (zero to precision)");
    return *value_;
  }
  bool operator==(const Valuation& o) const { return value_ == o.value_; }
  std::string to_string() const { return value_ ? std::to_string(*value_) : "+inf"; }

 private:
  Valuation() = default;
  explicit Valuation(long v) : value_(v) {}
  std::optional<long> value_;
};

class FqElement;

/// Element of Q_q known modulo p^prec (absolute precision), stored as
/// p^v * unit with the unit reduced modulo p^{prec - v}. Values congruent to 0
/// modulo p^prec are "zero to precision" and have infinite valuation.
class PadicScalar {
 public:
  PadicScalar() = default;

  static PadicScalar zero(const Context& ctx) { return zero_to(ctx, ctx->precision()); }
  static PadicScalar zero_to(const Context& ctx, long prec) {
    PadicScalar s;
    s.ctx_ = ctx;
    s.prec_ = std::min(prec, ctx->precision());
    return s;
  }
  static PadicScalar one(const Context& ctx) { return from_integer(ctx, 1); }
  static PadicScalar from_integer(const Context& ctx, const Integer& value) {
    detail::ZqVec c(static_cast<size_t>(ctx->degree()), 0);
    c[0] = value;
    return from_coefficients(ctx, std::move(c), 0, ctx->precision());
  }
  /// Exact rationals are known to the full context precision.
  static PadicScalar from_rational(const Context& ctx, const Rational& r) {
    if (r == 0) return zero(ctx);
    const long p = ctx->p();
    const long shift = rational_valuation(r, p);
    if (shift >= ctx->precision()) return zero(ctx);
    Integer num = r.get_num(), den = r.get_den();
    while (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) num /= p;
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) den /= p;
    const Integer m = ctx->p_power(ctx->precision() - shift);
    Integer den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    detail::ZqVec c(static_cast<size_t>(ctx->degree()), 0);
    c[0] = mod_floor(num * den_inv, m);
    return from_coefficients(ctx, std::move(c), shift, ctx->precision());
  }
  /// The element p^shift * sum c_k g^k, known modulo p^prec.
  static PadicScalar from_coefficients(const Context& ctx, detail::ZqVec coeffs, long shift, long prec);
  static PadicScalar p_power(const Context& ctx, long k) {
    PadicScalar s;
    s.ctx_ = ctx;
    s.val_ = k;
    s.prec_ = ctx->precision();
    if (k >= s.prec_) return zero(ctx);
    s.unit_.assign(static_cast<size_t>(ctx->degree()), 0);
    s.unit_[0] = 1;
    s.unit_ = ctx->reduce(s.unit_, s.prec_ - k);
    s.zero_ = false;
    return s;
  }
  /// The generator g of Z_q over Z_p.
  static PadicScalar generator(const Context& ctx) {
    detail::ZqVec c(static_cast<size_t>(ctx->degree()), 0);
    if (ctx->degree() > 1) c[1] = 1;
    return from_coefficients(ctx, std::move(c), 0, ctx->precision());
  }

  const Context& context() const { return ctx_; }
  long precision() const { return prec_; }
  bool is_zero() const { return zero_; }
  Valuation valuation() const { return zero_ ? Valuation::infinite() : Valuation::finite(val_); }
  /// Unit part reduced modulo p^{prec - v}; empty when zero to precision.
  const detail::ZqVec& unit() const { return unit_; }
  /// Coefficients of the value itself modulo p^prec. Requires v >= 0.
  detail::ZqVec coefficients() const;

  PadicScalar operator-() const {
    PadicScalar r = *this;
    if (!zero_) {
      for (auto& c : r.unit_) c = -c;
      r.unit_ = ctx_->reduce(r.unit_, prec_ - val_);
    }
    return r;
  }
  friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) { return add(a, b, false); }
  friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return add(a, b, true); }
  friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
  friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return a * b.inverse(); }
  PadicScalar& operator+=(const PadicScalar& b) { return *this = *this + b; }
  PadicScalar& operator-=(const PadicScalar& b) { return *this = *this - b; }
  PadicScalar& operator*=(const PadicScalar& b) { return *this = *this * b; }

  PadicScalar inverse() const;
  PadicScalar pow(long e) const;
  /// sigma, the lift of the p-power map; fixes Q_p.
  PadicScalar frobenius() const;
  PadicScalar frobenius_power(long k) const {
    PadicScalar r = *this;
    const long n = ctx_->degree();
    k %= n;
    if (k < 0) k += n;
    for (long i = 0; i < k; ++i) r = r.frobenius();
    return r;
  }
  /// Precision can only be lowered.
  PadicScalar with_precision(long prec) const;
  /// Moves to another context of the same field. When the target precision
  /// is larger, the known digits are treated as exact.
  PadicScalar lift_to(const Context& target) const;
  /// Reduction modulo p; requires valuation >= 0.
  FqElement residue() const;

  /// Equal modulo the smaller of the two precisions.
  friend bool operator==(const PadicScalar& a, const PadicScalar& b) { return (a - b).is_zero(); }
  friend bool operator!=(const PadicScalar& a, const PadicScalar& b) { return !(a == b); }

  /// "p^v * (c0 + c1*g + ...)" with the prime written as a number, followed by
  /// " + O(p^k)" when the precision is below the context's.
  std::string to_string() const;

 private:
  static PadicScalar add(const PadicScalar& a, const PadicScalar& b, bool subtract);
  static void check_same(const PadicScalar& a, const PadicScalar& b) {
    if (!a.ctx_ || !b.ctx_) throw ValidationError("uninitialised p-adic scalar");
    if (a.ctx_ != b.ctx_ && !(*a.ctx_ == *b.ctx_)) throw ValidationError("p-adic context mismatch");
  }

  Context ctx_;
  bool zero_ = true;
  long val_ = 0;
  long prec_ = 0;
  detail::ZqVec unit_;
};

inline PadicScalar PadicScalar::from_coefficients(const Context& ctx, detail::ZqVec coeffs, long shift, long prec) {
  PadicScalar s;
  s.ctx_ = ctx;
  s.prec_ = std::min(prec, ctx->precision());
  coeffs.resize(static_cast<size_t>(ctx->degree()), 0);
  // Pull out common powers of p while staying below the precision.
  long v = shift;
  if (v >= s.prec_) return s;
  coeffs = ctx->reduce(std::move(coeffs), s.prec_ - v);
  const long p = ctx->p();
  while (v < s.prec_) {
    bool all_zero = true, divisible = true;
    for (const auto& c : coeffs) {
      if (c != 0) all_zero = false;
      if (!mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(p))) divisible = false;
    }
    if (all_zero) return s;
    if (!divisible) break;
    for (auto& c : coeffs) c /= p;
    ++v;
  }
  if (v >= s.prec_) return s;
  s.zero_ = false;
  s.val_ = v;
  s.unit_ = ctx->reduce(std::move(coeffs), s.prec_ - v);
  return s;
}

inline detail::ZqVec PadicScalar::coefficients() const {
  const auto n = static_cast<size_t>(ctx_->degree());
  if (zero_) return detail::ZqVec(n, 0);
  if (val_ < 0) throw ValidationError("scalar is not integral");
  detail::ZqVec c = unit_;
  for (auto& x : c) x *= ctx_->p_power(val_);
  return c;
}

inline PadicScalar PadicScalar::add(const PadicScalar& a, const PadicScalar& b, bool subtract) {
  check_same(a, b);
  const long prec = std::min(a.prec_, b.prec_);
  if (a.zero_ && b.zero_) return zero_to(a.ctx_, prec);
  if (b.zero_) return a.with_precision(prec);
  if (a.zero_) return subtract ? (-b).with_precision(prec) : b.with_precision(prec);
  const long vmin = std::min(a.val_, b.val_);
  if (prec <= vmin) return zero_to(a.ctx_, prec);
  const auto n = static_cast<size_t>(a.ctx_->degree());
  detail::ZqVec c(n);
  const Integer sa = a.ctx_->p_power(a.val_ - vmin);
  const Integer sb = a.ctx_->p_power(b.val_ - vmin);
  for (size_t i = 0; i < n; ++i) {
    c[i] = a.unit_[i] * sa;
    if (subtract) {
      c[i] -= b.unit_[i] * sb;
    } else {
      c[i] += b.unit_[i] * sb;
    }
  }
  return from_coefficients(a.ctx_, std::move(c), vmin, prec);
}

inline PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
  PadicScalar::check_same(a, b);
  const long cap = a.ctx_->precision();
  if (a.zero_ || b.zero_) {
    const long pa = a.zero_ ? a.prec_ : a.val_;
    const long pb = b.zero_ ? b.prec_ : b.val_;
    // O(p^k) times p^v u is O(p^{k+v}).
    return PadicScalar::zero_to(a.ctx_, std::min(cap, pa + pb));
  }
  const long v = a.val_ + b.val_;
  const long rel = std::min(a.prec_ - a.val_, b.prec_ - b.val_);
  const long prec = std::min(cap, v + rel);
  if (prec <= v) return PadicScalar::zero_to(a.ctx_, prec);
  PadicScalar r;
  r.ctx_ = a.ctx_;
  r.zero_ = false;
  r.val_ = v;
  r.prec_ = prec;
  r.unit_ = a.ctx_->mul(a.unit_, b.unit_, prec - v);
  return r;
}

inline PadicScalar PadicScalar::inverse() const {
  if (!ctx_) throw ValidationError("uninitialised p-adic scalar");
  if (zero_) throw PrecisionError("division by a value that is zero to precision");
  const long rel = prec_ - val_;
  const long v = -val_;
  const long prec = std::min(ctx_->precision(), v + rel);
  if (prec <= v) return zero_to(ctx_, prec);
  PadicScalar r;
  r.ctx_ = ctx_;
  r.zero_ = false;
  r.val_ = v;
  r.prec_ = prec;
  r.unit_ = ctx_->inverse(unit_, prec - v);
  return r;
}

inline PadicScalar PadicScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  PadicScalar result = one(ctx_);
  PadicScalar base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

inline PadicScalar PadicScalar::frobenius() const {
  if (zero_) return *this;
  PadicScalar r = *this;
  r.unit_ = ctx_->apply_frobenius(unit_, prec_ - val_);
  return r;
}

inline PadicScalar PadicScalar::with_precision(long prec) const {
  if (prec >= prec_) return *this;
  if (zero_ || prec <= val_) return zero_to(ctx_, prec);
  PadicScalar r = *this;
  r.prec_ = prec;
  r.unit_ = ctx_->reduce(r.unit_, prec - val_);
  return r;
}

inline PadicScalar PadicScalar::lift_to(const Context& target) const {
  if (!ctx_->same_field(*target)) throw ValidationError("cannot move scalar between different fields");
  const long prec = target->precision() >= ctx_->precision() ? target->precision() : std::min(prec_, target->precision());
  if (zero_) return zero_to(target, prec);
  return from_coefficients(target, unit_, val_, prec);
}

inline std::string PadicScalar::to_string() const {
  const std::string p = std::to_string(ctx_->p());
  if (zero_) return prec_ < ctx_->precision() ? "O(" + p + "^" + std::to_string(prec_) + ")" : "0";
  std::string s = p + "^" + std::to_string(val_) + " * (";
  for (size_t i = 0; i < unit_.size(); ++i) {
    if (i > 0) s += " + ";
    s += unit_[i].get_str();
    if (i == 1) s += "*g";
    if (i > 1) s += "*g^" + std::to_string(i);
  }
  s += ")";
  if (prec_ < ctx_->precision()) s += " + O(" + p + "^" + std::to_string(prec_) + ")";
  return s;
}

/// Element of the residue field F_q = F_p[x] / (modulus mod p).
class FqElement {
 public:
  FqElement() = default;
  FqElement(Context ctx, fp::Poly coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) { normalize(); }

  static FqElement zero(const Context& ctx) { return FqElement(ctx, {}); }
  static FqElement one(const Context& ctx) { return FqElement(ctx, {1}); }
  static FqElement from_index(const Context& ctx, long index) {
    fp::Poly c(static_cast<size_t>(ctx->degree()), 0);
    for (auto& x : c) {
      x = index % ctx->p();
      index /= ctx->p();
    }
    return FqElement(ctx, c);
  }
  template <class Rng>
  static FqElement random(const Context& ctx, Rng& rng) {
    std::uniform_int_distribution<long> d(0, ctx->p() - 1);
    fp::Poly c(static_cast<size_t>(ctx->degree()));
    for (auto& x : c) x = d(rng);
    return FqElement(ctx, c);
  }

  const Context& context() const { return ctx_; }
  /// Coefficients padded to n entries.
  fp::Poly coefficients() const {
    fp::Poly c = c_;
    c.resize(static_cast<size_t>(ctx_->degree()), 0);
    return c;
  }
  /// Position in the enumeration used by from_index.
  long index() const {
    long idx = 0;
    for (size_t i = c_.size(); i-- > 0;) idx = idx * ctx_->p() + c_[i];
    return idx;
  }
  bool is_zero() const { return c_.empty(); }

  friend FqElement operator+(const FqElement& a, const FqElement& b) {
    check(a, b);
    fp::Poly r(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] = (r[i] + b.c_[i]) % a.ctx_->p();
    return FqElement(a.ctx_, r);
  }
  FqElement operator-() const {
    fp::Poly r = c_;
    for (auto& x : r) x = fp::mod(-x, ctx_->p());
    return FqElement(ctx_, r);
  }
  friend FqElement operator-(const FqElement& a, const FqElement& b) { return a + (-b); }
  friend FqElement operator*(const FqElement& a, const FqElement& b) {
    check(a, b);
    return FqElement(a.ctx_, fp::mulmod(a.c_, b.c_, a.ctx_->residue_modulus(), a.ctx_->p()));
  }
  FqElement& operator+=(const FqElement& b) { return *this = *this + b; }
  FqElement& operator*=(const FqElement& b) { return *this = *this * b; }
  friend bool operator==(const FqElement& a, const FqElement& b) { return a.c_ == b.c_; }
  friend bool operator!=(const FqElement& a, const FqElement& b) { return a.c_ != b.c_; }

  template <class Exp>
  FqElement pow(Exp e) const {
    return FqElement(ctx_, fp::powmod(c_, e, ctx_->residue_modulus(), ctx_->p()));
  }
  FqElement inverse() const {
    if (is_zero()) throw ValidationError("inverse of zero in F_q");
    return FqElement(ctx_, fp::inverse_mod(c_, ctx_->residue_modulus(), ctx_->p()));
  }
  /// a -> a^p.
  FqElement frobenius() const { return pow(ctx_->p()); }
  /// a -> a^{p^{-k}}, i.e. a^{p^{nj - k}} for nj >= k.
  FqElement frobenius_inverse_power(long k) const {
    const long n = ctx_->degree();
    long e = ((-k) % n + n) % n;
    FqElement r = *this;
    for (long i = 0; i < e; ++i) r = r.frobenius();
    return r;
  }

  std::string to_string() const {
    fp::Poly c = coefficients();
    std::string s = "[";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + std::to_string(c[i]);
    return s + "]";
  }

 private:
  static void check(const FqElement& a, const FqElement& b) {
    if (!a.ctx_ || !b.ctx_ || !a.ctx_->same_field(*b.ctx_)) throw ValidationError("residue field mismatch");
  }
  void normalize() {
    if (!ctx_) throw ValidationError("residue element without context");
    for (auto& x : c_) x = fp::mod(x, ctx_->p());
    c_ = fp::rem(c_, ctx_->residue_modulus(), ctx_->p());
  }

  Context ctx_;
  fp::Poly c_;
};

inline FqElement PadicScalar::residue() const {
  if (zero_ || val_ > 0) return FqElement::zero(ctx_);
  if (val_ < 0) throw ValidationError("residue of a non-integral scalar");
  fp::Poly c(unit_.size());
  for (size_t i = 0; i < unit_.size(); ++i) c[i] = mod_floor(unit_[i], ctx_->p()).get_si();
  return FqElement(ctx_, c);
}

/// Coefficient-wise lift of a residue element with digits in [0, p).
inline PadicScalar naive_lift(const FqElement& a) {
  fp::Poly c = a.coefficients();
  return PadicScalar::from_coefficients(a.context(), detail::ZqVec(c.begin(), c.end()), 0, a.context()->precision());
}

/// The Teichmueller lift: the unique root of x^q = x reducing to a.
inline PadicScalar teichmuller(const FqElement& a) {
  const Context& ctx = a.context();
  if (a.is_zero()) return PadicScalar::zero(ctx);
  // x -> x^q is a contraction on the lifts of a; N rounds give N digits.
  const long N = ctx->precision();
  const Integer& q = ctx->q();
  detail::ZqVec x = naive_lift(a).coefficients();
  for (long round = 0; round < N; ++round) {
    detail::ZqVec r(x.size(), 0);
    r[0] = 1;
    detail::ZqVec base = x;
    Integer e = q;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = ctx->mul(r, base, N);
      e >>= 1;
      if (e > 0) base = ctx->mul(base, base, N);
    }
    if (r == x) break;
    x = std::move(r);
  }
  return PadicScalar::from_coefficients(ctx, std::move(x), 0, N);
}

/// Valuation of n! computed from the scalar arithmetic.
inline Valuation factorial_scalar_valuation(const Context& ctx, long n) {
  PadicScalar f = PadicScalar::one(ctx);
  for (long k = 2; k <= n; ++k) f *= PadicScalar::from_integer(ctx, k);
  return f.valuation();
}

}  // namespace phodge

#endif  // PHODGE_PADIC_HPP
