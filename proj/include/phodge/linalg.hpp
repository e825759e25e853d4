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

#ifndef PHODGE_LINALG_HPP
#define PHODGE_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phodge/errors.hpp"
#include "phodge/padic.hpp"
#include "phodge/rational.hpp"

namespace phodge {

/// Dense row-major matrix. Algorithms that need zero or one take a field
/// policy, so that p-adic scalars can carry their context.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> col(size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }
  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    if (rows_ * cols_ == 0) return Matrix(cols_, rows_, T{});
    Matrix t(cols_, rows_, data_[0]);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  template <class Fn>
  auto map(Fn&& fn) const -> Matrix<decltype(fn(std::declval<const T&>()))> {
    using U = decltype(fn(std::declval<const T&>()));
    Matrix<U> out;
    out.rows_ = rows_;
    out.cols_ = cols_;
    out.data_.reserve(data_.size());
    for (const auto& x : data_) out.data_.push_back(fn(x));
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_shape(a, b);
    Matrix r = a;
    for (size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.data_[k] + b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_shape(a, b);
    Matrix r = a;
    for (size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.data_[k] - b.data_[k];
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (size_t k = 0; k < a.data_.size(); ++k)
      if (!(a.data_[k] == b.data_[k])) return false;
    return true;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  template <class U>
  friend class Matrix;
  static void check_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("matrix shape mismatch");
  }
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using PMatrix = Matrix<PadicScalar>;

/// Exact rationals.
struct RationalField {
  using value_type = Rational;
  static constexpr bool exact = true;
  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational from_rational(const Rational& r) const { return r; }
  bool is_zero(const Rational& x) const { return x == 0; }
  // Any nonzero entry is as good as another; the first one wins.
  bool better_pivot(const Rational&, const Rational&) const { return false; }
};

/// Unramified p-adic scalars at the context's precision. Pivots are chosen
/// by minimal valuation.
struct PadicField {
  using value_type = PadicScalar;
  static constexpr bool exact = false;
  Context ctx;
  explicit PadicField(Context c) : ctx(std::move(c)) {}
  PadicScalar zero() const { return PadicScalar::zero(ctx); }
  PadicScalar one() const { return PadicScalar::one(ctx); }
  PadicScalar from_rational(const Rational& r) const { return PadicScalar::from_rational(ctx, r); }
  bool is_zero(const PadicScalar& x) const { return x.is_zero(); }
  bool better_pivot(const PadicScalar& a, const PadicScalar& b) const {
    return a.valuation().value() < b.valuation().value();
  }
};

template <class F>
Matrix<typename F::value_type> zero_matrix(const F& f, size_t r, size_t c) {
  return Matrix<typename F::value_type>(r, c, f.zero());
}

template <class F>
Matrix<typename F::value_type> identity_matrix(const F& f, size_t n) {
  auto m = zero_matrix(f, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

template <class F>
Matrix<typename F::value_type> multiply(const F& f, const Matrix<typename F::value_type>& a,
                                        const Matrix<typename F::value_type>& b) {
  if (a.cols() != b.rows()) throw ValidationError("matrix product shape mismatch");
  auto r = zero_matrix(f, a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (f.is_zero(a(i, k))) continue;
      for (size_t j = 0; j < b.cols(); ++j) r(i, j) = r(i, j) + a(i, k) * b(k, j);
    }
  return r;
}

template <class F>
std::vector<typename F::value_type> apply(const F& f, const Matrix<typename F::value_type>& a,
                                          const std::vector<typename F::value_type>& v) {
  if (a.cols() != v.size()) throw ValidationError("matrix-vector shape mismatch");
  std::vector<typename F::value_type> out(a.rows(), f.zero());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) out[i] = out[i] + a(i, j) * v[j];
  return out;
}

template <class F>
Matrix<typename F::value_type> scale(const F& f, const typename F::value_type& s,
                                     const Matrix<typename F::value_type>& a) {
  auto r = zero_matrix(f, a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

template <class F>
Matrix<typename F::value_type> block_diagonal(const F& f, const Matrix<typename F::value_type>& a,
                                              const Matrix<typename F::value_type>& b) {
  auto r = zero_matrix(f, a.rows() + b.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

template <class F>
Matrix<typename F::value_type> kronecker(const F& f, const Matrix<typename F::value_type>& a,
                                         const Matrix<typename F::value_type>& b) {
  auto r = zero_matrix(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

template <class F>
Matrix<typename F::value_type> hstack(const F& f, const Matrix<typename F::value_type>& a,
                                      const Matrix<typename F::value_type>& b) {
  if (a.rows() != b.rows()) throw ValidationError("hstack row mismatch");
  auto r = zero_matrix(f, a.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

template <class F>
Matrix<typename F::value_type> vstack(const F& f, const Matrix<typename F::value_type>& a,
                                      const Matrix<typename F::value_type>& b) {
  if (a.cols() != b.cols()) throw ValidationError("vstack column mismatch");
  auto r = zero_matrix(f, a.rows() + b.rows(), a.cols());
  for (size_t j = 0; j < a.cols(); ++j) {
    for (size_t i = 0; i < a.rows(); ++i) r(i, j) = a(i, j);
    for (size_t i = 0; i < b.rows(); ++i) r(a.rows() + i, j) = b(i, j);
  }
  return r;
}

/// Matrix whose columns are the given vectors, all of length n.
template <class F>
Matrix<typename F::value_type> from_columns(const F& f, size_t n,
                                            const std::vector<std::vector<typename F::value_type>>& cols) {
  auto r = zero_matrix(f, n, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != n) throw ValidationError("column length mismatch");
    for (size_t i = 0; i < n; ++i) r(i, j) = cols[j][i];
  }
  return r;
}

template <class F>
Matrix<typename F::value_type> submatrix(const F& f, const Matrix<typename F::value_type>& a,
                                         const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
  auto r = zero_matrix(f, rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) r(i, j) = a(rows[i], cols[j]);
  return r;
}

template <class T>
struct Echelon {
  Matrix<T> reduced;          // reduced row echelon form
  std::vector<size_t> pivots;  // pivot column of each nonzero row
  std::vector<size_t> row_order;  // original row index of each reduced row
};

/// Gauss-Jordan elimination. Over p-adics the pivot in each column is an
/// entry of minimal valuation (lowest row on ties); an entry that is zero to
/// precision never becomes a pivot, so the rank found is a lower bound.
template <class F>
Echelon<typename F::value_type> row_reduce(const F& f, Matrix<typename F::value_type> m) {
  Echelon<typename F::value_type> out;
  out.row_order.resize(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) out.row_order[i] = i;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::optional<size_t> best;
    for (size_t i = r; i < m.rows(); ++i) {
      if (f.is_zero(m(i, c))) continue;
      if (!best || f.better_pivot(m(i, c), m(*best, c))) best = i;
    }
    if (!best) continue;
    m.swap_rows(r, *best);
    std::swap(out.row_order[r], out.row_order[*best]);
    const typename F::value_type inv = f.one() / m(r, c);
    for (size_t j = 0; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    m(r, c) = f.one();
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const typename F::value_type factor = m(i, c);
      for (size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - factor * m(r, j);
      m(i, c) = f.zero();
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <class F>
size_t rank(const F& f, const Matrix<typename F::value_type>& m) {
  return row_reduce(f, m).pivots.size();
}

/// Basis of the right kernel {x : m x = 0}, as column vectors.
template <class F>
std::vector<std::vector<typename F::value_type>> kernel(const F& f, const Matrix<typename F::value_type>& m) {
  auto e = row_reduce(f, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::value_type>> basis;
  for (size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::value_type> v(m.cols(), f.zero());
    v[free] = f.one();
    for (size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = f.zero() - e.reduced(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Indices of a maximal linearly independent subset of the columns.
template <class F>
std::vector<size_t> independent_columns(const F& f, const Matrix<typename F::value_type>& m) {
  return row_reduce(f, m).pivots;
}

template <class F>
Matrix<typename F::value_type> inverse(const F& f, const Matrix<typename F::value_type>& m) {
  if (m.rows() != m.cols()) throw ValidationError("inverse of a non-square matrix");
  const size_t n = m.rows();
  auto e = row_reduce(f, hstack(f, m, identity_matrix(f, n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) {
    if constexpr (F::exact) {
      throw ValidationError("matrix is not invertible");
    } else {
      throw PrecisionInsufficient("matrix is not invertible at working precision");
    }
  }
  auto r = zero_matrix(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r(i, j) = e.reduced(i, n + j);
  return r;
}

/// Characteristic polynomial det(x I - m) by Berkowitz's division-free
/// algorithm. Coefficients are returned leading first: [1, c1, ..., cn].
template <class F>
std::vector<typename F::value_type> charpoly(const F& f, const Matrix<typename F::value_type>& m) {
  using T = typename F::value_type;
  if (m.rows() != m.cols()) throw ValidationError("characteristic polynomial of a non-square matrix");
  const size_t n = m.rows();
  std::vector<T> poly{f.one()};
  for (size_t k = 0; k < n; ++k) {
    // Leading principal block of size k+1: a = m(k,k), R = m(k, 0..k-1),
    // C = m(0..k-1, k), A = block of size k.
    std::vector<T> col(k, f.zero());
    for (size_t i = 0; i < k; ++i) col[i] = m(i, k);
    // Toeplitz column: 1, -a, -R C, -R A C, ..., -R A^{k-1} C.
    std::vector<T> t(k + 2, f.zero());
    t[0] = f.one();
    t[1] = f.zero() - m(k, k);
    std::vector<T> v = col;
    for (size_t j = 0; j < k; ++j) {
      T dot = f.zero();
      for (size_t i = 0; i < k; ++i) dot = dot + m(k, i) * v[i];
      t[j + 2] = f.zero() - dot;
      std::vector<T> next(k, f.zero());
      for (size_t i = 0; i < k; ++i)
        for (size_t l = 0; l < k; ++l) next[i] = next[i] + m(i, l) * v[l];
      v = std::move(next);
    }
    std::vector<T> out(k + 2, f.zero());
    for (size_t i = 0; i < k + 2; ++i)
      for (size_t j = 0; j <= i && j < poly.size(); ++j) out[i] = out[i] + t[i - j] * poly[j];
    poly = std::move(out);
  }
  return poly;
}

template <class F>
typename F::value_type determinant(const F& f, const Matrix<typename F::value_type>& m) {
  auto cp = charpoly(f, m);
  auto c = cp.back();
  return (m.rows() % 2 == 0) ? c : f.zero() - c;
}

/// Matrix of rational entries over the given field.
template <class F>
Matrix<typename F::value_type> lift_matrix(const F& f, const QMatrix& m) {
  return m.map([&](const Rational& x) { return f.from_rational(x); });
}

/// Column basis of a subspace given by spanning columns (drops dependent ones).
template <class F>
Matrix<typename F::value_type> column_basis(const F& f, const Matrix<typename F::value_type>& m) {
  std::vector<size_t> rows(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) rows[i] = i;
  return submatrix(f, m, rows, independent_columns(f, m));
}

/// Intersection of two column spaces in the same ambient space, as columns.
template <class F>
Matrix<typename F::value_type> intersect_subspaces(const F& f, const Matrix<typename F::value_type>& a,
                                                   const Matrix<typename F::value_type>& b) {
  const size_t n = a.rows();
  if (b.rows() != n) throw ValidationError("subspaces of different ambient spaces");
  if (a.cols() == 0 || b.cols() == 0) return zero_matrix(f, n, 0);
  auto ker = kernel(f, hstack(f, a, scale(f, f.zero() - f.one(), b)));
  std::vector<std::vector<typename F::value_type>> vecs;
  for (const auto& k : ker) {
    std::vector<typename F::value_type> coeffs(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(a.cols()));
    vecs.push_back(apply(f, a, coeffs));
  }
  return column_basis(f, from_columns(f, n, vecs));
}

template <class T>
std::string matrix_to_string(const Matrix<T>& m, const std::function<std::string(const T&)>& fmt) {
  std::string s = "[";
  for (size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += fmt(m(i, j));
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace phodge

#endif  // PHODGE_LINALG_HPP
