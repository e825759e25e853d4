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

#ifndef PHODGE_SERIES_HPP
#define PHODGE_SERIES_HPP

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "phodge/errors.hpp"
#include "phodge/linalg.hpp"

namespace phodge {

/// Power series in t truncated after degree order(). F is a field policy
/// (RationalField or PadicField).
template <class F>
class Series1 {
 public:
  using T = typename F::value_type;

  Series1(F f, int order) : f_(std::move(f)), n_(order), c_(static_cast<size_t>(order + 1), f_.zero()) {
    if (order < 0) throw ValidationError("truncation order must be nonnegative");
  }
  static Series1 variable(F f, int order) {
    Series1 s(std::move(f), order);
    if (order >= 1) s.c_[1] = s.f_.one();
    return s;
  }
  static Series1 constant(F f, int order, const T& c) {
    Series1 s(std::move(f), order);
    s.c_[0] = c;
    return s;
  }

  const F& field() const { return f_; }
  int order() const { return n_; }
  const T& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  T& operator[](int k) { return c_[static_cast<size_t>(k)]; }
  T coeff(int k) const { return k <= n_ ? c_[static_cast<size_t>(k)] : f_.zero(); }

  Series1 truncate(int order) const {
    Series1 s(f_, std::min(order, n_));
    for (int k = 0; k <= s.n_; ++k) s[k] = (*this)[k];
    return s;
  }

  friend Series1 operator+(const Series1& a, const Series1& b) {
    Series1 s(a.f_, std::min(a.n_, b.n_));
    for (int k = 0; k <= s.n_; ++k) s[k] = a[k] + b[k];
    return s;
  }
  friend Series1 operator-(const Series1& a, const Series1& b) {
    Series1 s(a.f_, std::min(a.n_, b.n_));
    for (int k = 0; k <= s.n_; ++k) s[k] = a[k] - b[k];
    return s;
  }
  friend Series1 operator*(const Series1& a, const Series1& b) {
    Series1 s(a.f_, std::min(a.n_, b.n_));
    for (int i = 0; i <= s.n_; ++i) {
      if (a.f_.is_zero(a[i])) continue;
      for (int j = 0; i + j <= s.n_; ++j) s[i + j] = s[i + j] + a[i] * b[j];
    }
    return s;
  }
  friend Series1 operator*(const T& c, const Series1& a) {
    Series1 s(a.f_, a.n_);
    for (int k = 0; k <= s.n_; ++k) s[k] = c * a[k];
    return s;
  }
  friend bool operator==(const Series1& a, const Series1& b) {
    const int n = std::min(a.n_, b.n_);
    for (int k = 0; k <= n; ++k)
      if (!(a[k] == b[k])) return false;
    return true;
  }

  /// 1 / s, for an invertible constant term.
  Series1 inverse() const {
    if (f_.is_zero(c_[0])) throw ValidationError("series with zero constant term is not invertible");
    Series1 r(f_, n_);
    const T inv0 = f_.one() / c_[0];
    r[0] = inv0;
    for (int k = 1; k <= n_; ++k) {
      T acc = f_.zero();
      for (int j = 1; j <= k; ++j) acc = acc + (*this)[j] * r[k - j];
      r[k] = f_.zero() - acc * inv0;
    }
    return r;
  }
  Series1 derivative() const {
    Series1 r(f_, std::max(n_ - 1, 0));
    for (int k = 1; k <= n_; ++k) r[k - 1] = f_.from_rational(Rational(k)) * (*this)[k];
    return r;
  }
  /// Antiderivative with zero constant term; the order grows by one.
  Series1 integral() const {
    Series1 r(f_, n_ + 1);
    for (int k = 0; k <= n_; ++k) r[k + 1] = (*this)[k] / f_.from_rational(Rational(k + 1));
    return r;
  }
  /// this(inner(t)); inner must have zero constant term.
  Series1 compose(const Series1& inner) const {
    if (!f_.is_zero(inner[0])) throw ValidationError("composition needs an inner series without constant term");
    const int n = std::min(n_, inner.n_);
    Series1 r(f_, n);
    for (int k = n; k >= 0; --k) {
      r = r.truncate(n) * inner.truncate(n);
      r[0] = r[0] + (*this)[k];
    }
    return r;
  }
  /// Compositional inverse of t + O(t^2).
  Series1 reversion() const {
    if (!f_.is_zero(c_[0]) || n_ < 1 || !(c_[1] == f_.one()))
      throw ValidationError("reversion needs a series of the form t + O(t^2)");
    Series1 e = variable(f_, n_);
    for (int k = 2; k <= n_; ++k) {
      Series1 comp = compose(e);
      e[k] = e[k] - comp[k];
    }
    return e;
  }

  std::string to_string(const std::function<std::string(const T&)>& fmt) const {
    std::string s;
    for (int k = 0; k <= n_; ++k) {
      if (f_.is_zero(c_[static_cast<size_t>(k)])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + fmt(c_[static_cast<size_t>(k)]) + ")";
      if (k >= 1) s += "*t";
      if (k >= 2) s += "^" + std::to_string(k);
    }
    s += (s.empty() ? "O(t^" : " + O(t^") + std::to_string(n_ + 1) + ")";
    return s;
  }

 private:
  F f_;
  int n_;
  std::vector<T> c_;
};

/// Power series in x, y truncated after total degree order().
template <class F>
class Series2 {
 public:
  using T = typename F::value_type;

  Series2(F f, int order)
      : f_(std::move(f)), n_(order), c_(static_cast<size_t>((order + 1) * (order + 1)), f_.zero()) {
    if (order < 0) throw ValidationError("truncation order must be nonnegative");
  }
  /// s(x) or s(y).
  static Series2 in_x(const Series1<F>& s) {
    Series2 r(s.field(), s.order());
    for (int k = 0; k <= s.order(); ++k) r(k, 0) = s[k];
    return r;
  }
  static Series2 in_y(const Series1<F>& s) {
    Series2 r(s.field(), s.order());
    for (int k = 0; k <= s.order(); ++k) r(0, k) = s[k];
    return r;
  }

  const F& field() const { return f_; }
  int order() const { return n_; }
  T& operator()(int i, int j) { return c_[static_cast<size_t>(i * (n_ + 1) + j)]; }
  const T& operator()(int i, int j) const { return c_[static_cast<size_t>(i * (n_ + 1) + j)]; }
  T coeff(int i, int j) const { return i + j <= n_ ? (*this)(i, j) : f_.zero(); }

  Series2 truncate(int order) const {
    Series2 r(f_, std::min(order, n_));
    for (int i = 0; i <= r.n_; ++i)
      for (int j = 0; i + j <= r.n_; ++j) r(i, j) = (*this)(i, j);
    return r;
  }

  friend Series2 operator+(const Series2& a, const Series2& b) {
    Series2 r(a.f_, std::min(a.n_, b.n_));
    for (int i = 0; i <= r.n_; ++i)
      for (int j = 0; i + j <= r.n_; ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
  }
  friend Series2 operator-(const Series2& a, const Series2& b) {
    Series2 r(a.f_, std::min(a.n_, b.n_));
    for (int i = 0; i <= r.n_; ++i)
      for (int j = 0; i + j <= r.n_; ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
  }
  friend Series2 operator*(const Series2& a, const Series2& b) {
    const int n = std::min(a.n_, b.n_);
    Series2 r(a.f_, n);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        if (a.f_.is_zero(a(i, j))) continue;
        for (int k = 0; i + j + k <= n; ++k)
          for (int l = 0; i + j + k + l <= n; ++l) r(i + k, j + l) = r(i + k, j + l) + a(i, j) * b(k, l);
      }
    return r;
  }
  friend Series2 operator*(const T& c, const Series2& a) {
    Series2 r(a.f_, a.n_);
    for (int i = 0; i <= r.n_; ++i)
      for (int j = 0; i + j <= r.n_; ++j) r(i, j) = c * a(i, j);
    return r;
  }
  friend bool operator==(const Series2& a, const Series2& b) {
    const int n = std::min(a.n_, b.n_);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j)
        if (!(a(i, j) == b(i, j))) return false;
    return true;
  }
  bool is_zero() const {
    for (int i = 0; i <= n_; ++i)
      for (int j = 0; i + j <= n_; ++j)
        if (!f_.is_zero((*this)(i, j))) return false;
    return true;
  }

  Series2 inverse() const {
    if (f_.is_zero((*this)(0, 0))) throw ValidationError("series with zero constant term is not invertible");
    // 1/(c(1 + u)) = c^{-1} sum (-u)^k.
    const T inv0 = f_.one() / (*this)(0, 0);
    Series2 u = inv0 * (*this);
    u(0, 0) = f_.zero();
    Series2 r(f_, n_), term(f_, n_);
    r(0, 0) = f_.one();
    term(0, 0) = f_.one();
    const T minus_one = f_.zero() - f_.one();
    for (int k = 1; k <= n_; ++k) {
      term = minus_one * (term * u);
      r = r + term;
    }
    return inv0 * r;
  }

  /// outer(this) for a univariate outer series; this must have no constant term.
  Series2 substitute_into(const Series1<F>& outer) const {
    if (!f_.is_zero((*this)(0, 0))) throw ValidationError("composition needs an inner series without constant term");
    const int n = std::min(n_, outer.order());
    Series2 inner = truncate(n);
    Series2 r(f_, n);
    for (int k = n; k >= 0; --k) {
      r = r * inner;
      r(0, 0) = r(0, 0) + outer[k];
    }
    return r;
  }

  /// this(a(t), b(t)) for univariate a, b without constant terms.
  Series1<F> evaluate(const Series1<F>& a, const Series1<F>& b) const {
    const int n = std::min({n_, a.order(), b.order()});
    std::vector<Series1<F>> pa{Series1<F>::constant(f_, n, f_.one())}, pb{Series1<F>::constant(f_, n, f_.one())};
    for (int k = 1; k <= n; ++k) {
      pa.push_back(pa.back() * a.truncate(n));
      pb.push_back(pb.back() * b.truncate(n));
    }
    Series1<F> r(f_, n);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        if (f_.is_zero((*this)(i, j))) continue;
        r = r + (*this)(i, j) * (pa[static_cast<size_t>(i)] * pb[static_cast<size_t>(j)]);
      }
    return r;
  }

 private:
  F f_;
  int n_;
  std::vector<T> c_;
};

}  // namespace phodge

#endif  // PHODGE_SERIES_HPP
