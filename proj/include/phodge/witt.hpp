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

#ifndef PHODGE_WITT_HPP
#define PHODGE_WITT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "phodge/errors.hpp"
#include "phodge/padic.hpp"

namespace phodge {

namespace witt_detail {

using Key = unsigned __int128;

struct KeyHash {
  size_t operator()(Key k) const noexcept {
    const auto lo = static_cast<uint64_t>(k), hi = static_cast<uint64_t>(k >> 64);
    return std::hash<uint64_t>()(lo ^ (hi * 0x9E3779B97F4A7C15ULL));
  }
};

// Polynomial in X_0..X_{m-1}, Y_0..Y_{m-1}; each exponent has `bits` bits
// in the packed key. Coefficients are reduced modulo a power of p.
struct Poly {
  std::unordered_map<Key, int64_t, KeyHash> terms;
};

struct Layout {
  int vars = 0;
  int bits = 0;
  Key mask() const { return (Key(1) << bits) - 1; }
  long exponent(Key k, int v) const { return static_cast<long>((k >> (v * bits)) & mask()); }
  Key single(int v, long e) const { return Key(static_cast<uint64_t>(e)) << (v * bits); }
};

inline int64_t mulmod(int64_t a, int64_t b, int64_t m) {
  return static_cast<int64_t>((static_cast<__int128>(a) * b) % m);
}

inline void add_term(Poly& p, Key k, int64_t c, int64_t m) {
  c %= m;
  if (c < 0) c += m;
  if (c == 0) return;
  auto it = p.terms.find(k);
  if (it == p.terms.end()) {
    p.terms.emplace(k, c);
    return;
  }
  it->second = (it->second + c) % m;
  if (it->second == 0) p.terms.erase(it);
}

inline Poly mul(const Poly& a, const Poly& b, int64_t m) {
  Poly r;
  r.terms.reserve(a.terms.size() * 2 + b.terms.size());
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) add_term(r, ka + kb, mulmod(ca, cb, m), m);
  return r;
}

inline Poly power(Poly base, long e, int64_t m) {
  Poly r;
  r.terms.emplace(Key(0), 1 % m);
  while (e > 0) {
    if (e & 1) r = mul(r, base, m);
    e >>= 1;
    if (e) base = mul(base, base, m);
  }
  return r;
}

inline Poly reduce(const Poly& a, int64_t m) {
  Poly r;
  for (const auto& [k, c] : a.terms) add_term(r, k, c, m);
  return r;
}

}  // namespace witt_detail

/// Sum, product and negation polynomials of W_m over F_p, with coefficients
/// in [0, p). Built once per (p, m) from the ghost equations.
class WittPolynomials {
 public:
  static std::shared_ptr<const WittPolynomials> get(long p, int m) {
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::shared_ptr<const WittPolynomials>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, m}];
    if (!slot) slot = std::shared_ptr<const WittPolynomials>(new WittPolynomials(p, m));
    return slot;
  }

  long p() const { return p_; }
  int length() const { return m_; }
  const witt_detail::Layout& layout() const { return layout_; }
  const witt_detail::Poly& sum(int i) const { return sum_[static_cast<size_t>(i)]; }
  const witt_detail::Poly& product(int i) const { return prod_[static_cast<size_t>(i)]; }
  const witt_detail::Poly& negation(int i) const { return neg_[static_cast<size_t>(i)]; }

 private:
  WittPolynomials(long p, int m) : p_(p), m_(m) {
    using namespace witt_detail;
    if (m < 1) throw ValidationError("Witt length must be positive");
    layout_.vars = 2 * m;
    layout_.bits = 128 / layout_.vars;
    if (layout_.bits > 62) layout_.bits = 62;
    // Exponents reach p^{m-1} in a single variable and twice that in products.
    const Integer top = ipow(p, m - 1) * 2;
    // The polynomials grow like the number of monomials of weight p^{m-1};
    // beyond p^{m-1} = 128 they stop being desk-sized.
    if (m > 8 || top >= (Integer(1) << layout_.bits) || ipow(p, m - 1) > 128)
      throw ValidationError("Witt length " + std::to_string(m) + " is too large for p = " + std::to_string(p));
    auto ghost_terms = [&](int offset, int i, int64_t mod) {
      // sum_{j <= i} p^j Z_j^{p^{i-j}} modulo mod, Z = X (offset 0) or Y (offset m).
      Poly g;
      for (int j = 0; j <= i; ++j)
        add_term(g, layout_.single(offset + j, ipow(p, i - j).get_si()), ipow(p, j).get_si(), mod);
      return g;
    };
    // Coordinates modulo p are enough: p^j S_j^{p^{i-j}} mod p^{i+1} only
    // depends on S_j mod p.
    auto solve = [&](auto&& ghost_of_target, std::vector<Poly>& out) {
      for (int i = 0; i < m; ++i) {
        const int64_t mod = ipow(p, i + 1).get_si();
        Poly rhs = ghost_of_target(i, mod);
        for (int j = 0; j < i; ++j) {
          const int64_t modj = ipow(p, i - j + 1).get_si();
          Poly pw = power(out[static_cast<size_t>(j)], ipow(p, i - j).get_si(), modj);
          const int64_t scale = ipow(p, j).get_si();
          for (const auto& [k, c] : pw.terms) add_term(rhs, k, -mulmod(c, scale, mod), mod);
        }
        const int64_t div = ipow(p, i).get_si();
        Poly coord;
        for (const auto& [k, c] : rhs.terms) {
          if (c % div != 0) throw std::logic_error("Witt polynomial coefficient not divisible");
          add_term(coord, k, (c / div) % p, p);
        }
        out.push_back(std::move(coord));
      }
    };
    solve(
        [&](int i, int64_t mod) {
          Poly g = ghost_terms(0, i, mod);
          for (const auto& [k, c] : ghost_terms(m, i, mod).terms) add_term(g, k, c, mod);
          return g;
        },
        sum_);
    solve([&](int i, int64_t mod) { return mul(ghost_terms(0, i, mod), ghost_terms(m, i, mod), mod); }, prod_);
    solve(
        [&](int i, int64_t mod) {
          Poly g;
          for (const auto& [k, c] : ghost_terms(0, i, mod).terms) add_term(g, k, -c, mod);
          return g;
        },
        neg_);
  }

  long p_;
  int m_;
  witt_detail::Layout layout_;
  std::vector<witt_detail::Poly> sum_, prod_, neg_;
};

namespace witt_detail {

// F_q with discrete-log tables for fast polynomial evaluation.
class FieldTables {
 public:
  static std::shared_ptr<const FieldTables> get(const Context& ctx) {
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::shared_ptr<const FieldTables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{ctx->p(), ctx->degree()}];
    if (!slot) slot = std::shared_ptr<const FieldTables>(new FieldTables(ctx));
    return slot;
  }
  static bool supported(const Context& ctx) { return ctx->q() <= 1 << 20; }

  long q() const { return q_; }
  // log of a nonzero index; exp of a residue modulo q - 1.
  long log(long idx) const { return log_[static_cast<size_t>(idx)]; }
  long exp(long k) const { return exp_[static_cast<size_t>(k)]; }

 private:
  explicit FieldTables(const Context& ctx) {
    q_ = ctx->q().get_si();
    log_.assign(static_cast<size_t>(q_), -1);
    exp_.assign(static_cast<size_t>(q_ - 1), 0);
    for (long cand = 1; cand < q_; ++cand) {
      FqElement g = FqElement::from_index(ctx, cand);
      FqElement x = FqElement::one(ctx);
      std::fill(log_.begin(), log_.end(), -1);
      bool primitive = true;
      for (long k = 0; k < q_ - 1; ++k) {
        const long idx = x.index();
        if (log_[static_cast<size_t>(idx)] != -1) {
          primitive = false;
          break;
        }
        log_[static_cast<size_t>(idx)] = k;
        exp_[static_cast<size_t>(k)] = idx;
        x = x * g;
      }
      if (primitive) return;
    }
    throw std::logic_error("no primitive element found");
  }
  long q_ = 0;
  std::vector<long> log_, exp_;
};

// Evaluates a Witt polynomial at F_q points given by index; the result is
// accumulated in coefficient space.
inline FqElement evaluate(const Poly& poly, const Layout& layout, const std::vector<FqElement>& point,
                          const Context& ctx) {
  const long p = ctx->p();
  const auto n = static_cast<size_t>(ctx->degree());
  std::vector<long> acc(n, 0);
  if (FieldTables::supported(ctx)) {
    auto tables = FieldTables::get(ctx);
    const long qm1 = tables->q() - 1;
    std::vector<long> logs(point.size());
    for (size_t v = 0; v < point.size(); ++v) logs[v] = point[v].is_zero() ? -1 : tables->log(point[v].index());
    for (const auto& [k, c] : poly.terms) {
      long lg = 0;
      bool zero = false;
      for (int v = 0; v < layout.vars && !zero; ++v) {
        const long e = layout.exponent(k, v);
        if (e == 0) continue;
        if (logs[static_cast<size_t>(v)] < 0) {
          zero = true;
          break;
        }
        lg = static_cast<long>((lg + static_cast<__int128>(logs[static_cast<size_t>(v)]) * e) % qm1);
      }
      if (zero) continue;
      long idx = tables->exp(lg);
      for (size_t d = 0; d < n; ++d) {
        acc[d] = (acc[d] + c * (idx % p)) % p;
        idx /= p;
      }
    }
    return FqElement(ctx, fp::Poly(acc.begin(), acc.end()));
  }
  FqElement total = FqElement::zero(ctx);
  for (const auto& [k, c] : poly.terms) {
    FqElement term = FqElement(ctx, fp::Poly{static_cast<long>(c)});
    for (int v = 0; v < layout.vars; ++v) {
      const long e = layout.exponent(k, v);
      if (e) term = term * point[static_cast<size_t>(v)].pow(e);
    }
    total = total + term;
  }
  return total;
}

}  // namespace witt_detail

/// Truncated Witt vector (a_0, ..., a_{m-1}) over the residue field of ctx.
class WittVector {
 public:
  WittVector() = default;
  WittVector(Context ctx, std::vector<FqElement> coords) : ctx_(std::move(ctx)), a_(std::move(coords)) {
    if (a_.empty()) throw ValidationError("Witt vector needs length >= 1");
    for (const auto& x : a_)
      if (!x.context() || !x.context()->same_field(*ctx_)) throw ValidationError("Witt coordinate in the wrong field");
  }
  static WittVector zero(const Context& ctx, int m) {
    return WittVector(ctx, std::vector<FqElement>(static_cast<size_t>(m), FqElement::zero(ctx)));
  }
  static WittVector one(const Context& ctx, int m) { return teichmuller(FqElement::one(ctx), m); }
  /// [a] = (a, 0, ..., 0).
  static WittVector teichmuller(const FqElement& a, int m) {
    WittVector w = zero(a.context(), m);
    w.a_[0] = a;
    return w;
  }
  template <class Rng>
  static WittVector random(const Context& ctx, int m, Rng& rng) {
    std::vector<FqElement> c;
    for (int i = 0; i < m; ++i) c.push_back(FqElement::random(ctx, rng));
    return WittVector(ctx, std::move(c));
  }

  const Context& context() const { return ctx_; }
  int length() const { return static_cast<int>(a_.size()); }
  const std::vector<FqElement>& coords() const { return a_; }
  const FqElement& operator[](size_t i) const { return a_[i]; }

  friend WittVector operator+(const WittVector& x, const WittVector& y) {
    check(x, y);
    auto polys = WittPolynomials::get(x.ctx_->p(), x.length());
    return binary(x, y, [&](int i) -> const witt_detail::Poly& { return polys->sum(i); }, *polys);
  }
  friend WittVector operator*(const WittVector& x, const WittVector& y) {
    check(x, y);
    auto polys = WittPolynomials::get(x.ctx_->p(), x.length());
    return binary(x, y, [&](int i) -> const witt_detail::Poly& { return polys->product(i); }, *polys);
  }
  WittVector operator-() const {
    auto polys = WittPolynomials::get(ctx_->p(), length());
    return binary(*this, zero(ctx_, length()), [&](int i) -> const witt_detail::Poly& { return polys->negation(i); },
                  *polys);
  }
  friend WittVector operator-(const WittVector& x, const WittVector& y) { return x + (-y); }
  friend bool operator==(const WittVector& x, const WittVector& y) { return x.a_ == y.a_; }
  friend bool operator!=(const WittVector& x, const WittVector& y) { return !(x == y); }

  /// "(a0; a1; ...)" with each coordinate as its coefficient vector.
  std::string to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < a_.size(); ++i) s += (i ? "; " : "") + a_[i].to_string();
    return s + ")";
  }

 private:
  static void check(const WittVector& x, const WittVector& y) {
    if (!x.ctx_ || !y.ctx_ || !x.ctx_->same_field(*y.ctx_)) throw ValidationError("Witt vectors over different fields");
    if (x.length() != y.length()) throw ValidationError("Witt vectors of different lengths");
  }
  template <class Pick>
  static WittVector binary(const WittVector& x, const WittVector& y, Pick pick, const WittPolynomials& polys) {
    std::vector<FqElement> point = x.a_;
    point.insert(point.end(), y.a_.begin(), y.a_.end());
    std::vector<FqElement> out;
    for (int i = 0; i < x.length(); ++i) out.push_back(witt_detail::evaluate(pick(i), polys.layout(), point, x.ctx_));
    return WittVector(x.ctx_, std::move(out));
  }

  Context ctx_;
  std::vector<FqElement> a_;
};

inline WittVector witt_add(const WittVector& x, const WittVector& y) { return x + y; }
inline WittVector witt_mul(const WittVector& x, const WittVector& y) { return x * y; }

/// V(a_0, ..., a_{m-1}) = (0, a_0, ..., a_{m-2}).
inline WittVector verschiebung(const WittVector& x) {
  std::vector<FqElement> c{FqElement::zero(x.context())};
  c.insert(c.end(), x.coords().begin(), x.coords().end() - 1);
  return WittVector(x.context(), std::move(c));
}

/// F(a_0, ..., a_{m-1}) = (a_0^p, ..., a_{m-1}^p).
inline WittVector frobenius_witt(const WittVector& x) {
  std::vector<FqElement> c;
  for (const auto& a : x.coords()) c.push_back(a.frobenius());
  return WittVector(x.context(), std::move(c));
}

/// The isomorphism W_m(F_q) -> Z_q / p^m, x -> sum p^i [a_i^{p^{-i}}]. Over
/// F_p the roots are trivial and this is sum [a_i] p^i.
inline PadicScalar witt_to_padic(const WittVector& x, const Context& target) {
  if (!x.context()->same_field(*target)) throw ValidationError("Witt vector and p-adic context over different fields");
  if (x.length() > target->precision())
    throw ValidationError("Witt length " + std::to_string(x.length()) + " exceeds precision " +
                          std::to_string(target->precision()));
  PadicScalar r = PadicScalar::zero(target);
  for (int i = 0; i < x.length(); ++i) {
    FqElement root = x[static_cast<size_t>(i)].frobenius_inverse_power(i);
    FqElement lifted(target, root.coefficients());
    r = r + PadicScalar::p_power(target, i) * teichmuller(lifted);
  }
  return r.with_precision(x.length());
}

/// Inverse of witt_to_padic on integral scalars: peel off Teichmueller digits.
inline WittVector padic_to_witt(const PadicScalar& x, int m) {
  const Context& ctx = x.context();
  if (m > ctx->precision()) throw ValidationError("Witt length exceeds the scalar's context precision");
  if (!x.is_zero() && x.valuation().value() < 0) throw ValidationError("scalar is not integral");
  if (x.precision() < m) throw PrecisionInsufficient("scalar is not known modulo p^" + std::to_string(m));
  std::vector<FqElement> c;
  PadicScalar rest = x;
  for (int i = 0; i < m; ++i) {
    FqElement digit = rest.residue();
    // a_i^{p^{-i}} = digit, so a_i = digit^{p^i}.
    FqElement a = digit;
    for (int k = 0; k < i; ++k) a = a.frobenius();
    c.push_back(a);
    rest = (rest - teichmuller(digit)) / PadicScalar::p_power(ctx, 1);
  }
  return WittVector(ctx, std::move(c));
}

}  // namespace phodge

#endif  // PHODGE_WITT_HPP
