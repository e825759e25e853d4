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

#ifndef PHODGE_FILTERED_HPP
#define PHODGE_FILTERED_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phodge/errors.hpp"
#include "phodge/isocrystal.hpp"
#include "phodge/linalg.hpp"
#include "phodge/newton.hpp"

namespace phodge {

/// Decreasing filtration given by its jumps. Keys i_1 < ... < i_k carry
/// subspaces S_1 ⊇ ... ⊇ S_k (as basis columns); Fil^i is the whole space
/// for i < i_1, S_j for i_{j-1} < i <= i_j, and 0 for i > i_k.
class Filtration {
 public:
  Filtration() = default;
  Filtration(size_t dim, std::map<long, PMatrix> steps, const PadicField& f) : dim_(dim) {
    for (auto& [i, basis] : steps) {
      if (basis.rows() != dim) throw ValidationError("filtration step " + std::to_string(i) + " has vectors of the wrong length");
      PMatrix b = basis.cols() ? column_basis(f, basis) : basis;
      steps_.emplace(i, std::move(b));
    }
    const PMatrix* prev = nullptr;
    long prev_key = 0;
    for (const auto& [i, basis] : steps_) {
      if (prev && prev->cols() > 0 && basis.cols() > 0) {
        if (rank(f, hstack(f, *prev, basis)) != prev->cols())
          throw ValidationError("filtration is not decreasing: Fil^" + std::to_string(i) + " is not inside Fil^" +
                                std::to_string(prev_key));
      } else if (prev && prev->cols() == 0 && basis.cols() > 0) {
        throw ValidationError("filtration is not decreasing at Fil^" + std::to_string(i));
      }
      prev = &basis;
      prev_key = i;
    }
  }

  size_t dim() const { return dim_; }
  const std::map<long, PMatrix>& steps() const { return steps_; }

  /// Fil^i as basis columns.
  PMatrix fil(long i, const PadicField& f) const {
    if (steps_.empty()) return i <= 0 ? identity_matrix(f, dim_) : zero_matrix(f, dim_, 0);
    if (i < steps_.begin()->first) return identity_matrix(f, dim_);
    auto it = steps_.lower_bound(i);
    if (it == steps_.end()) return zero_matrix(f, dim_, 0);
    return it->second;
  }

  /// Weights with multiplicities dim gr^i, zero multiplicities omitted.
  std::map<long, long> weights() const {
    std::vector<size_t> dims;
    for (const auto& [i, b] : steps_) dims.push_back(b.cols());
    return weights_from_dims(dims, dim_);
  }

  /// Weights of the induced filtration Fil^i ∩ W on the span of w.
  std::map<long, long> induced_weights(const PadicField& f, const PMatrix& w) const {
    std::vector<size_t> dims;
    for (const auto& [i, b] : steps_) dims.push_back(intersect_subspaces(f, b, w).cols());
    return weights_from_dims(dims, w.cols());
  }

 private:
  std::map<long, long> weights_from_dims(const std::vector<size_t>& dims, size_t total) const {
    std::map<long, long> out;
    if (steps_.empty()) {
      // No jumps declared: everything sits in weight 0.
      if (total) out[0] = static_cast<long>(total);
      return out;
    }
    size_t k = 0;
    size_t above = total;
    for (const auto& [i, b] : steps_) {
      if (k == 0) {
        if (total > dims[0]) out[i - 1] += static_cast<long>(total - dims[0]);
      } else if (above > dims[k]) {
        out[std::prev(steps_.find(i))->first] += static_cast<long>(above - dims[k]);
      }
      above = dims[k];
      ++k;
    }
    if (above > 0) out[steps_.rbegin()->first] += static_cast<long>(above);
    return out;
  }

  size_t dim_ = 0;
  std::map<long, PMatrix> steps_;
};

inline long hodge_number_of_weights(const std::map<long, long>& w) {
  long t = 0;
  for (const auto& [i, m] : w) t += i * m;
  return t;
}

inline NewtonPolygon hodge_polygon_of_weights(const std::map<long, long>& w) {
  std::vector<std::pair<Rational, long>> e;
  for (const auto& [i, m] : w)
    if (m > 0) e.emplace_back(Rational(i), m);
  return NewtonPolygon::from_slopes(SlopeData(std::move(e)));
}

/// Isocrystal over K_0 with a filtration on the same space.
class FilteredIsocrystal {
 public:
  FilteredIsocrystal(Isocrystal base, std::map<long, PMatrix> steps)
      : base_(std::move(base)), fil_(base_.dim(), std::move(steps), base_.field()) {}

  const Isocrystal& base() const { return base_; }
  const Filtration& filtration() const { return fil_; }
  size_t dim() const { return base_.dim(); }

 private:
  Isocrystal base_;
  Filtration fil_;
};

/// t_H = sum of i * dim gr^i.
inline long hodge_number(const FilteredIsocrystal& N) { return hodge_number_of_weights(N.filtration().weights()); }
inline NewtonPolygon hodge_polygon(const FilteredIsocrystal& N) {
  return hodge_polygon_of_weights(N.filtration().weights());
}

struct AdmissibilityWitness {
  std::string reason;  // "top-level mismatch" or "subobject violation"
  PMatrix basis;       // columns spanning the offending F-stable subspace
  Rational t_newton;
  long t_hodge = 0;
};

struct AdmissibilityVerdict {
  enum class Kind { admissible, not_admissible, undecided };
  Kind kind = Kind::undecided;
  std::optional<AdmissibilityWitness> witness;
  std::string note;

  std::string name() const {
    switch (kind) {
      case Kind::admissible: return "admissible";
      case Kind::not_admissible: return "not_admissible";
      default: return "undecided";
    }
  }
};

/// Sum of the k largest weights of a weight multiset.
inline long top_weights(const std::map<long, long>& w, long k) {
  long total = 0;
  for (auto it = w.rbegin(); it != w.rend() && k > 0; ++it) {
    const long take = std::min(k, it->second);
    total += take * it->first;
    k -= take;
  }
  return total;
}

/// Weak admissibility. F-stable subspaces are built from the isoclinic parts:
/// any sub-isocrystal is the sum of its slope parts, and a slope-d/r part has
/// dimension divisible by r. Parts of dimension r are simple, so sums of whole
/// parts are then the only candidates and the check is exact. A partial choice
/// inside a bigger part is accepted only if the bound t_H <= (sum of the top
/// weights on the parts involved) already gives t_N >= t_H; otherwise the
/// verdict is undecided.
inline AdmissibilityVerdict is_weakly_admissible(const FilteredIsocrystal& N) {
  AdmissibilityVerdict v;
  const PadicField f = N.base().field();
  const Rational tn = newton_number(N.base());
  const long th = hodge_number(N);
  if (tn != th) {
    v.kind = AdmissibilityVerdict::Kind::not_admissible;
    v.witness = AdmissibilityWitness{"top-level mismatch", identity_matrix(f, N.dim()), tn, th};
    return v;
  }
  std::vector<IsoclinicSummand> parts;
  try {
    parts = isoclinic_decomposition(N.base());
  } catch (const SlopeFactorizationFailed& e) {
    v.kind = AdmissibilityVerdict::Kind::undecided;
    v.note = e.what();
    return v;
  }
  const size_t k = parts.size();
  if (k > 20) throw ValidationError("too many slope parts to enumerate");
  std::vector<long> step(k), full(k);
  for (size_t j = 0; j < k; ++j) {
    step[j] = parts[j].slope.get_den().get_si();
    full[j] = static_cast<long>(parts[j].basis.cols());
  }
  bool undecided = false;
  std::vector<long> choice(k, 0);
  // Odometer over choice[j] in {0, r_j, 2 r_j, ..., dim_j}.
  for (;;) {
    size_t j = 0;
    while (j < k) {
      choice[j] += step[j];
      if (choice[j] <= full[j]) break;
      choice[j] = 0;
      ++j;
    }
    if (j == k) break;
    bool exact = true;
    long total = 0;
    Rational t_newton = 0;
    PMatrix span = zero_matrix(f, N.dim(), 0);
    for (size_t i = 0; i < k; ++i) {
      if (choice[i] == 0) continue;
      if (choice[i] != full[i]) exact = false;
      total += choice[i];
      t_newton += parts[i].slope * choice[i];
      span = hstack(f, span, parts[i].basis);
    }
    const auto w = N.filtration().induced_weights(f, span);
    if (exact) {
      const long t_hodge = hodge_number_of_weights(w);
      if (t_newton < t_hodge) {
        v.kind = AdmissibilityVerdict::Kind::not_admissible;
        v.witness = AdmissibilityWitness{"subobject violation", span, t_newton, t_hodge};
        return v;
      }
    } else if (t_newton < top_weights(w, total)) {
      undecided = true;
    }
  }
  if (undecided) {
    v.kind = AdmissibilityVerdict::Kind::undecided;
    v.note = "a slope part is not simple and the Hodge bound does not settle its subspaces";
    return v;
  }
  v.kind = AdmissibilityVerdict::Kind::admissible;
  return v;
}

/// Whether X = Fil^1 generates N under F: rank of X + F(X) + F^2(X) + ...
/// saturates at dim N. Needs all weights in {0, 1}.
inline bool frobenius_span_check(const FilteredIsocrystal& N) {
  for (const auto& [i, m] : N.filtration().weights())
    if (i != 0 && i != 1) throw ValidationError("frobenius_span_check needs jumps in {0, 1}");
  const PadicField f = N.base().field();
  const size_t d = N.dim();
  const PMatrix x = N.filtration().fil(1, f);
  PMatrix span = x.cols() ? column_basis(f, x) : x;
  for (size_t it = 0; it <= d && span.cols() < d; ++it) {
    PMatrix image = multiply(f, N.base().frobenius_matrix(), sigma(span));
    PMatrix next = column_basis(f, hstack(f, span, image));
    if (next.cols() == span.cols()) break;
    span = next;
  }
  return span.cols() == d;
}

/// Coordinates over Z_p (in a degree-one context) of x in the basis
/// 1, g, ..., g^{n-1}.
inline std::vector<PadicScalar> zp_coordinates(const PadicScalar& x, const Context& zp) {
  const auto n = static_cast<size_t>(x.context()->degree());
  std::vector<PadicScalar> out;
  if (x.is_zero()) {
    for (size_t k = 0; k < n; ++k) out.push_back(PadicScalar::zero_to(zp, x.precision()));
    return out;
  }
  const long v = x.valuation().value();
  for (size_t k = 0; k < n; ++k)
    out.push_back(PadicScalar::from_coefficients(zp, {x.unit()[k]}, v, x.precision()));
  return out;
}

/// Z_p-linear matrix (size n d) of v -> A sigma(v) on Z_q^d.
inline PMatrix flatten_semilinear(const PMatrix& a, const Context& ctx, const Context& zp) {
  const auto n = static_cast<size_t>(ctx->degree());
  const size_t d = a.rows();
  PadicField fz(zp);
  PMatrix out = zero_matrix(fz, n * d, n * d);
  std::vector<PadicScalar> basis;  // g^l
  PadicScalar g = PadicScalar::generator(ctx), gl = PadicScalar::one(ctx);
  for (size_t l = 0; l < n; ++l) {
    basis.push_back(gl);
    gl = gl * g;
  }
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      for (size_t l = 0; l < n; ++l) {
        auto col = zp_coordinates(a(i, j) * basis[l].frobenius(), zp);
        for (size_t r = 0; r < n; ++r) out(i * n + r, j * n + l) = col[r];
      }
  return out;
}

/// Z_p-matrix whose columns are g^l b_j for the columns b_j of b.
inline PMatrix flatten_columns(const PMatrix& b, const Context& ctx, const Context& zp) {
  const auto n = static_cast<size_t>(ctx->degree());
  PadicField fz(zp);
  PMatrix out = zero_matrix(fz, n * b.rows(), n * b.cols());
  PadicScalar g = PadicScalar::generator(ctx);
  for (size_t j = 0; j < b.cols(); ++j) {
    PadicScalar gl = PadicScalar::one(ctx);
    for (size_t l = 0; l < n; ++l) {
      for (size_t i = 0; i < b.rows(); ++i) {
        auto c = zp_coordinates(gl * b(i, j), zp);
        for (size_t r = 0; r < n; ++r) out(i * n + r, j * n + l) = c[r];
      }
      gl = gl * g;
    }
  }
  return out;
}

/// Lattice D over W(F_q) with Frobenius F(v) = A sigma(v) and a filtration by
/// direct summands D^i, with the same key convention as Filtration.
class FilteredDieudonneModule {
 public:
  FilteredDieudonneModule(Context ctx, PMatrix frobenius, std::map<long, PMatrix> steps)
      : ctx_(ctx), a_(lift_matrix_to(frobenius, ctx)) {
    PadicField f(ctx_);
    if (a_.rows() != a_.cols()) throw ValidationError("Frobenius matrix must be square");
    if (a_.rows() > kMaxIsocrystalDim) throw ValidationError("dimension exceeds the limit");
    for (size_t i = 0; i < a_.rows(); ++i)
      for (size_t j = 0; j < a_.cols(); ++j)
        if (!a_(i, j).is_zero() && a_(i, j).valuation().value() < 0)
          throw ValidationError("Frobenius entry (" + std::to_string(i) + "," + std::to_string(j) +
                                ") is not integral");
    for (auto& [i, b] : steps) {
      b = lift_matrix_to(b, ctx_);
      for (const auto& x : b.data())
        if (!x.is_zero() && x.valuation().value() < 0)
          throw ValidationError("D^" + std::to_string(i) + " has a non-integral basis vector");
      // A direct summand: the basis stays independent modulo p.
      if (b.cols() > 0 && residue_rank(b) != b.cols())
        throw ValidationError("D^" + std::to_string(i) + " is not a direct summand");
    }
    fil_ = Filtration(a_.rows(), std::move(steps), f);
  }

  const Context& context() const { return ctx_; }
  size_t dim() const { return a_.rows(); }
  const PMatrix& frobenius_matrix() const { return a_; }
  const Filtration& filtration() const { return fil_; }

  /// D^i as basis columns.
  PMatrix step(long i) const { return fil_.fil(i, PadicField(ctx_)); }

  /// D = sum F_i(D^i) with F_i = p^{-i} F; checked modulo p. Also reports
  /// whether every F_i(D^i) is integral.
  bool divided_frobenii_integral() const {
    PadicField f(ctx_);
    for (long i = lowest(); i <= highest(); ++i) {
      PMatrix img = multiply(f, a_, sigma(step(i)));
      for (const auto& x : img.data())
        if (!x.is_zero() && x.valuation().value() < i) return false;
    }
    return true;
  }
  bool spans() const {
    PadicField f(ctx_);
    if (!divided_frobenii_integral()) return false;
    PMatrix all = zero_matrix(f, dim(), 0);
    for (long i = lowest(); i <= highest(); ++i) {
      PMatrix img = scale(f, PadicScalar::p_power(ctx_, -i), multiply(f, a_, sigma(step(i))));
      all = hstack(f, all, img);
    }
    return residue_rank(all) == dim();
  }

  Isocrystal isocrystal() const { return Isocrystal(ctx_, a_); }

 private:
  long lowest() const { return fil_.steps().empty() ? 0 : fil_.steps().begin()->first - 1; }
  long highest() const { return fil_.steps().empty() ? 0 : fil_.steps().rbegin()->first; }
  size_t residue_rank(const PMatrix& b) const {
    size_t rk = 0;
    // Rank over F_q of the reduction.
    Matrix<FqElement> m(b.rows(), b.cols(), FqElement::zero(ctx_));
    for (size_t i = 0; i < b.rows(); ++i)
      for (size_t j = 0; j < b.cols(); ++j) m(i, j) = b(i, j).residue();
    size_t row = 0;
    for (size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
      size_t piv = row;
      while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
      if (piv == m.rows()) continue;
      m.swap_rows(row, piv);
      const FqElement inv = m(row, c).inverse();
      for (size_t i = 0; i < m.rows(); ++i) {
        if (i == row || m(i, c).is_zero()) continue;
        const FqElement factor = m(i, c) * inv;
        for (size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - factor * m(row, j);
      }
      ++row;
      ++rk;
    }
    return rk;
  }

  Context ctx_;
  PMatrix a_;
  Filtration fil_;
};

/// Finitely generated Z_p-module Z_p^rank + sum Z_p / p^e.
struct ZpModule {
  long rank = 0;
  std::vector<long> torsion;  // exponents e > 0, sorted
  std::string to_string() const {
    std::string s = "Z_p^" + std::to_string(rank);
    for (long e : torsion) s += " + Z_p/p^" + std::to_string(e);
    return s;
  }
};

struct SmithForm {
  std::vector<long> pivots;  // valuations of the nonzero diagonal entries
  size_t rows = 0, cols = 0;
};

/// Smith normal form over Z_p: pivot on an entry of minimal valuation, ties
/// broken by lowest row index and then lowest column index.
inline SmithForm smith_form(PMatrix m) {
  SmithForm out;
  out.rows = m.rows();
  out.cols = m.cols();
  size_t r = 0;
  while (r < m.rows() && r < m.cols()) {
    std::optional<std::pair<size_t, size_t>> best;
    long best_v = 0;
    for (size_t i = r; i < m.rows(); ++i)
      for (size_t j = r; j < m.cols(); ++j) {
        if (m(i, j).is_zero()) continue;
        const long v = m(i, j).valuation().value();
        if (!best || v < best_v) {
          best = {i, j};
          best_v = v;
        }
      }
    if (!best) break;
    m.swap_rows(r, best->first);
    for (size_t i = 0; i < m.rows(); ++i) std::swap(m(i, r), m(i, best->second));
    const PadicScalar inv = m(r, r).inverse();
    for (size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, r).is_zero()) continue;
      const PadicScalar factor = m(i, r) * inv;
      for (size_t j = r; j < m.cols(); ++j) m(i, j) = m(i, j) - factor * m(r, j);
    }
    for (size_t j = r + 1; j < m.cols(); ++j) {
      if (m(r, j).is_zero()) continue;
      const PadicScalar factor = m(r, j) * inv;
      for (size_t i = r; i < m.rows(); ++i) m(i, j) = m(i, j) - factor * m(i, r);
    }
    out.pivots.push_back(best_v);
    ++r;
  }
  return out;
}

namespace detail {

struct FlatData {
  Context zp;
  PMatrix one_minus_f;  // on D
  PMatrix incl;         // D^0 -> D
};

inline FlatData flatten(const FilteredDieudonneModule& D) {
  FlatData fd;
  const Context& ctx = D.context();
  fd.zp = make_context(ctx->p(), 1, ctx->precision());
  PadicField fz(fd.zp);
  const size_t nd = static_cast<size_t>(ctx->degree()) * D.dim();
  fd.one_minus_f = identity_matrix(fz, nd) - flatten_semilinear(D.frobenius_matrix(), ctx, fd.zp);
  fd.incl = flatten_columns(D.step(0), ctx, fd.zp);
  return fd;
}

}  // namespace detail

/// h^0(D) = ker(1 - F : D^0 -> D), a free Z_p-module.
inline ZpModule h0(const FilteredDieudonneModule& D) {
  auto fd = detail::flatten(D);
  PadicField fz(fd.zp);
  SmithForm s = smith_form(multiply(fz, fd.one_minus_f, fd.incl));
  return ZpModule{static_cast<long>(fd.incl.cols() - s.pivots.size()), {}};
}

/// h^1(D) = coker(1 - F : D^0 -> D), with its torsion.
inline ZpModule h1(const FilteredDieudonneModule& D) {
  auto fd = detail::flatten(D);
  PadicField fz(fd.zp);
  SmithForm s = smith_form(multiply(fz, fd.one_minus_f, fd.incl));
  ZpModule m;
  m.rank = static_cast<long>(fd.one_minus_f.rows() - s.pivots.size());
  for (long e : s.pivots)
    if (e > 0) m.torsion.push_back(e);
  std::sort(m.torsion.begin(), m.torsion.end());
  return m;
}

/// dim over Q_p of D^{F=1} ⊗ Q.
inline size_t fixed_part_dim(const FilteredDieudonneModule& D) {
  auto fd = detail::flatten(D);
  PadicField fz(fd.zp);
  return fd.one_minus_f.cols() - smith_form(fd.one_minus_f).pivots.size();
}

struct ExpDMap {
  size_t source_dim = 0;  // dim (D/D^0) ⊗ Q
  size_t target_dim = 0;  // dim (D/(1-F)D^0) ⊗ Q
  PMatrix matrix;         // target_dim x source_dim over Q_p
  size_t rank = 0;
  size_t kernel_dim = 0;
  bool surjective = false;
};

/// exp_D : (D/D^0) ⊗ Q -> (D/(1-F)D^0) ⊗ Q, x -> x - F(x), over Q_p.
inline ExpDMap exp_D(const FilteredDieudonneModule& D) {
  auto fd = detail::flatten(D);
  PadicField fz(fd.zp);
  const size_t nd = fd.one_minus_f.rows();
  ExpDMap out;
  // Source: standard vectors completing D^0 to a basis.
  auto src_cols = independent_columns(fz, hstack(fz, fd.incl, identity_matrix(fz, nd)));
  std::vector<std::vector<PadicScalar>> src;
  for (size_t c : src_cols)
    if (c >= fd.incl.cols()) src.push_back(identity_matrix(fz, nd).col(c - fd.incl.cols()));
  out.source_dim = src.size();
  // Target: (1-F)D^0 and a complement of standard vectors.
  PMatrix rel = multiply(fz, fd.one_minus_f, fd.incl);
  PMatrix rel_basis = rel.cols() ? column_basis(fz, rel) : rel;
  auto tgt_cols = independent_columns(fz, hstack(fz, rel_basis, identity_matrix(fz, nd)));
  std::vector<size_t> comp;
  for (size_t c : tgt_cols)
    if (c >= rel_basis.cols()) comp.push_back(c - rel_basis.cols());
  out.target_dim = comp.size();
  PMatrix frame = rel_basis;
  for (size_t c : comp) frame = hstack(fz, frame, from_columns(fz, nd, {identity_matrix(fz, nd).col(c)}));
  PMatrix frame_inv = nd ? inverse(fz, frame) : frame;
  out.matrix = zero_matrix(fz, out.target_dim, out.source_dim);
  for (size_t j = 0; j < src.size(); ++j) {
    auto image = apply(fz, fd.one_minus_f, src[j]);
    auto coords = apply(fz, frame_inv, image);
    for (size_t i = 0; i < out.target_dim; ++i) out.matrix(i, j) = coords[rel_basis.cols() + i];
  }
  out.rank = out.matrix.empty() ? 0 : rank(fz, out.matrix);
  out.kernel_dim = out.source_dim - out.rank;
  out.surjective = out.rank == out.target_dim;
  return out;
}

}  // namespace phodge

#endif  // PHODGE_FILTERED_HPP
