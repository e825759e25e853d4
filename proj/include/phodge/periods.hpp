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

#ifndef PHODGE_PERIODS_HPP
#define PHODGE_PERIODS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phodge/errors.hpp"
#include "phodge/linalg.hpp"

namespace phodge {

inline std::string scalar_string(const Rational& x) { return to_string(x); }
inline std::string scalar_string(const PadicScalar& x) { return x.to_string(); }

struct PeriodObject {
  std::string name;
  size_t dim_f = 0;
  size_t dim_g = 0;
};

/// f: source -> target. F is covariant (dim_F(target) x dim_F(source) over Q),
/// G contravariant (dim_G(source) x dim_G(target) over U).
template <class U>
struct PeriodMorphism {
  std::string name;
  size_t source = 0;
  size_t target = 0;
  QMatrix f;
  Matrix<typename U::value_type> g;
};

/// Outer term of an exact triple: a named object or bare dimensions.
struct TripleEnd {
  std::optional<size_t> object;
  size_t dim_f = 0;
  size_t dim_g = 0;
};

template <class U>
struct ComponentMap {
  QMatrix f;
  Matrix<typename U::value_type> g;
};

/// 0 -> sub -> middle^m -> quotient -> 0 with components iota_j: sub -> middle
/// and pi_j: middle -> quotient.
template <class U>
struct ExactTriple {
  std::string name;
  TripleEnd sub;
  size_t middle = 0;
  TripleEnd quotient;
  size_t m = 1;
  std::vector<ComponentMap<U>> iota;
  std::vector<ComponentMap<U>> pi;
};

template <class U>
class PairingCategory {
 public:
  using T = typename U::value_type;

  /// omega[X] has dim_F(X) * dim_G(X) rows (row i * dim_G + j holds the
  /// pairing of nu_i with gamma_j) and vb_dim columns; leave omega empty when
  /// no comparison data is supplied.
  PairingCategory(U u, std::vector<PeriodObject> objects, std::vector<PeriodMorphism<U>> morphisms,
                  std::vector<Matrix<T>> omega, size_t vb_dim, std::vector<ExactTriple<U>> triples,
                  size_t max_word_length = 8)
      : u_(std::move(u)),
        objects_(std::move(objects)),
        morphisms_(std::move(morphisms)),
        omega_(std::move(omega)),
        vb_dim_(vb_dim),
        triples_(std::move(triples)),
        max_word_length_(max_word_length) {
    validate();
  }

  const U& field() const { return u_; }
  const std::vector<PeriodObject>& objects() const { return objects_; }
  const std::vector<PeriodMorphism<U>>& morphisms() const { return morphisms_; }
  const std::vector<ExactTriple<U>>& triples() const { return triples_; }
  bool has_omega() const { return !omega_.empty(); }
  const Matrix<T>& omega(size_t x) const { return omega_.at(x); }
  size_t vb_dim() const { return vb_dim_; }
  size_t max_word_length() const { return max_word_length_; }

  size_t ambient_dim() const { return offset(objects_.size()); }
  size_t offset(size_t x) const {
    size_t o = 0;
    for (size_t k = 0; k < x; ++k) o += objects_[k].dim_f * objects_[k].dim_g;
    return o;
  }
  std::string basis_label(size_t index) const {
    for (size_t x = 0; x < objects_.size(); ++x) {
      const size_t size = objects_[x].dim_f * objects_[x].dim_g;
      if (index < size) {
        const size_t i = index / objects_[x].dim_g, j = index % objects_[x].dim_g;
        return objects_[x].name + ":nu" + std::to_string(i + 1) + "*gamma" + std::to_string(j + 1);
      }
      index -= size;
    }
    throw ValidationError("basis index out of range");
  }

  /// (f_* nu_i) (x) gamma_j - nu_i (x) (f^* gamma_j) for every basis pair.
  std::vector<std::vector<T>> functoriality_relations(const PeriodMorphism<U>& mor) const {
    const auto& src = objects_[mor.source];
    const auto& tgt = objects_[mor.target];
    const size_t os = offset(mor.source), ot = offset(mor.target);
    std::vector<std::vector<T>> out;
    for (size_t i = 0; i < src.dim_f; ++i)
      for (size_t j = 0; j < tgt.dim_g; ++j) {
        std::vector<T> v(ambient_dim(), u_.zero());
        for (size_t k = 0; k < tgt.dim_f; ++k)
          if (mor.f(k, i) != 0) v[ot + k * tgt.dim_g + j] = v[ot + k * tgt.dim_g + j] + u_.from_rational(mor.f(k, i));
        for (size_t l = 0; l < src.dim_g; ++l) v[os + i * src.dim_g + l] = v[os + i * src.dim_g + l] - mor.g(l, j);
        out.push_back(std::move(v));
      }
    return out;
  }

  /// sum_j (iota_j)_* nu (x) (pi_j)^* gamma for nu in F(sub), gamma in G(quotient).
  std::vector<std::vector<T>> triple_relations(const ExactTriple<U>& t) const {
    const auto& mid = objects_[t.middle];
    const size_t om = offset(t.middle);
    std::vector<std::vector<T>> out;
    for (size_t a = 0; a < t.sub.dim_f; ++a)
      for (size_t c = 0; c < t.quotient.dim_g; ++c) {
        std::vector<T> v(ambient_dim(), u_.zero());
        for (size_t j = 0; j < t.m; ++j)
          for (size_t k = 0; k < mid.dim_f; ++k) {
            const Rational& x = t.iota[j].f(k, a);
            if (x == 0) continue;
            const T xs = u_.from_rational(x);
            for (size_t l = 0; l < mid.dim_g; ++l)
              v[om + k * mid.dim_g + l] = v[om + k * mid.dim_g + l] + xs * t.pi[j].g(l, c);
          }
        out.push_back(std::move(v));
      }
    return out;
  }

  /// Value in V_B of an ambient vector.
  std::vector<T> evaluate(const std::vector<T>& v) const {
    std::vector<T> out(vb_dim_, u_.zero());
    size_t idx = 0;
    for (size_t x = 0; x < objects_.size(); ++x) {
      const auto& w = omega_[x];
      for (size_t r = 0; r < w.rows(); ++r, ++idx) {
        if (u_.is_zero(v[idx])) continue;
        for (size_t b = 0; b < vb_dim_; ++b) out[b] = out[b] + v[idx] * w(r, b);
      }
    }
    return out;
  }

  /// Composites g o f up to the word-length bound; stops early once a new
  /// length adds no rank to the functoriality relations.
  std::vector<PeriodMorphism<U>> composition_closure() const {
    std::vector<PeriodMorphism<U>> all = morphisms_;
    std::vector<PeriodMorphism<U>> level = morphisms_;
    size_t current_rank = relation_rank(all);
    for (size_t len = 2; len <= max_word_length_ && !level.empty(); ++len) {
      std::vector<PeriodMorphism<U>> next;
      for (const auto& w : level)
        for (const auto& g : morphisms_) {
          if (g.source != w.target) continue;
          PeriodMorphism<U> c;
          c.name = g.name + "*" + w.name;
          c.source = w.source;
          c.target = g.target;
          c.f = multiply(RationalField{}, g.f, w.f);
          c.g = multiply(u_, w.g, g.g);
          next.push_back(std::move(c));
        }
      for (const auto& c : next) all.push_back(c);
      const size_t r = relation_rank(all);
      if (r == current_rank) break;
      current_rank = r;
      level = std::move(next);
    }
    return all;
  }

 private:
  size_t relation_rank(const std::vector<PeriodMorphism<U>>& mors) const {
    std::vector<std::vector<T>> rows;
    for (const auto& m : mors)
      for (auto& v : functoriality_relations(m)) rows.push_back(std::move(v));
    if (rows.empty()) return 0;
    Matrix<T> r(rows.size(), ambient_dim(), u_.zero());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < ambient_dim(); ++j) r(i, j) = rows[i][j];
    return rank(u_, r);
  }

  bool is_zero_vector(const std::vector<T>& v) const {
    for (const auto& x : v)
      if (!u_.is_zero(x)) return false;
    return true;
  }

  static void check_shape(size_t r, size_t c, size_t want_r, size_t want_c, const std::string& what) {
    if (r != want_r || c != want_c)
      throw ValidationError(what + ": expected a " + std::to_string(want_r) + "x" + std::to_string(want_c) +
                            " matrix, got " + std::to_string(r) + "x" + std::to_string(c));
  }

  void resolve_end(TripleEnd& e, const std::string& what) const {
    if (!e.object) return;
    if (*e.object >= objects_.size()) throw ValidationError(what + ": unknown object");
    e.dim_f = objects_[*e.object].dim_f;
    e.dim_g = objects_[*e.object].dim_g;
  }

  void validate() {
    if (vb_dim_ == 0 && !omega_.empty()) throw ValidationError("vb_dim must be positive when omega is given");
    for (const auto& m : morphisms_) {
      if (m.source >= objects_.size() || m.target >= objects_.size())
        throw ValidationError("morphism " + m.name + ": unknown source or target");
      const auto& s = objects_[m.source];
      const auto& t = objects_[m.target];
      check_shape(m.f.rows(), m.f.cols(), t.dim_f, s.dim_f, "morphism " + m.name + " F");
      check_shape(m.g.rows(), m.g.cols(), s.dim_g, t.dim_g, "morphism " + m.name + " G");
    }
    if (!omega_.empty()) {
      if (omega_.size() != objects_.size()) throw ValidationError("omega must be given for every object");
      for (size_t x = 0; x < objects_.size(); ++x)
        check_shape(omega_[x].rows(), omega_[x].cols(), objects_[x].dim_f * objects_[x].dim_g, vb_dim_,
                    "omega for " + objects_[x].name);
      for (const auto& m : morphisms_)
        for (const auto& rel : functoriality_relations(m))
          if (!is_zero_vector(evaluate(rel)))
            throw ValidationError("omega is not natural with respect to morphism " + m.name);
    }
    for (auto& t : triples_) {
      const std::string what = "exact triple " + t.name;
      if (t.middle >= objects_.size()) throw ValidationError(what + ": unknown middle object");
      if (t.m == 0) throw ValidationError(what + ": m must be positive");
      resolve_end(t.sub, what);
      resolve_end(t.quotient, what);
      if (t.iota.size() != t.m || t.pi.size() != t.m)
        throw ValidationError(what + ": expected " + std::to_string(t.m) + " iota and pi components");
      const auto& mid = objects_[t.middle];
      for (size_t j = 0; j < t.m; ++j) {
        check_shape(t.iota[j].f.rows(), t.iota[j].f.cols(), mid.dim_f, t.sub.dim_f, what + " iota F");
        check_shape(t.iota[j].g.rows(), t.iota[j].g.cols(), t.sub.dim_g, mid.dim_g, what + " iota G");
        check_shape(t.pi[j].f.rows(), t.pi[j].f.cols(), t.quotient.dim_f, mid.dim_f, what + " pi F");
        check_shape(t.pi[j].g.rows(), t.pi[j].g.cols(), mid.dim_g, t.quotient.dim_g, what + " pi G");
      }
      check_exact_f(t, what);
      check_exact_g(t, what);
      if (!omega_.empty())
        for (const auto& rel : triple_relations(t))
          if (!is_zero_vector(evaluate(rel)))
            throw ValidationError(what + ": its relations do not vanish under omega");
    }
  }

  void check_exact_f(const ExactTriple<U>& t, const std::string& what) const {
    RationalField q;
    const size_t dm = objects_[t.middle].dim_f;
    QMatrix iota(t.m * dm, t.sub.dim_f, Rational(0)), pi(t.quotient.dim_f, t.m * dm, Rational(0));
    for (size_t j = 0; j < t.m; ++j)
      for (size_t k = 0; k < dm; ++k) {
        for (size_t a = 0; a < t.sub.dim_f; ++a) iota(j * dm + k, a) = t.iota[j].f(k, a);
        for (size_t c = 0; c < t.quotient.dim_f; ++c) pi(c, j * dm + k) = t.pi[j].f(c, k);
      }
    check_exact_pair(q, iota, pi, t.sub.dim_f, t.quotient.dim_f, t.m * dm, what + " (F realization)");
  }

  // G is contravariant: 0 -> G(quotient) -> G(middle)^m -> G(sub) -> 0.
  void check_exact_g(const ExactTriple<U>& t, const std::string& what) const {
    const size_t dm = objects_[t.middle].dim_g;
    Matrix<T> pis(t.m * dm, t.quotient.dim_g, u_.zero()), iotas(t.sub.dim_g, t.m * dm, u_.zero());
    for (size_t j = 0; j < t.m; ++j)
      for (size_t k = 0; k < dm; ++k) {
        for (size_t c = 0; c < t.quotient.dim_g; ++c) pis(j * dm + k, c) = t.pi[j].g(k, c);
        for (size_t a = 0; a < t.sub.dim_g; ++a) iotas(a, j * dm + k) = t.iota[j].g(a, k);
      }
    check_exact_pair(u_, pis, iotas, t.quotient.dim_g, t.sub.dim_g, t.m * dm, what + " (G realization)");
  }

  template <class F>
  static void check_exact_pair(const F& f, const Matrix<typename F::value_type>& in,
                               const Matrix<typename F::value_type>& out, size_t d_in, size_t d_out, size_t d_mid,
                               const std::string& what) {
    const auto comp = multiply(f, out, in);
    for (size_t i = 0; i < comp.rows(); ++i)
      for (size_t j = 0; j < comp.cols(); ++j)
        if (!f.is_zero(comp(i, j))) throw ValidationError(what + ": composite is not zero");
    if (rank(f, in) != d_in) throw ValidationError(what + ": first map is not injective");
    if (rank(f, out) != d_out) throw ValidationError(what + ": second map is not surjective");
    if (d_in + d_out != d_mid) throw ValidationError(what + ": not exact in the middle");
  }

  U u_;
  std::vector<PeriodObject> objects_;
  std::vector<PeriodMorphism<U>> morphisms_;
  std::vector<Matrix<T>> omega_;
  size_t vb_dim_;
  std::vector<ExactTriple<U>> triples_;
  size_t max_word_length_;
};

/// Quotient of the ambient space by a relation matrix. Over p-adic U the
/// rank found is a lower bound; certified is set when it is provably exact.
template <class U>
struct FormalPeriodSpace {
  size_t ambient = 0;
  size_t depth = 0;  // 0 for the functoriality quotient
  Matrix<typename U::value_type> relations;
  size_t rank = 0;
  size_t dim = 0;
  std::vector<size_t> basis;
  bool certified = true;
};

namespace detail {

template <class U>
FormalPeriodSpace<U> quotient_space(const PairingCategory<U>& c, std::vector<std::vector<typename U::value_type>> rows,
                                    size_t depth) {
  FormalPeriodSpace<U> s;
  s.ambient = c.ambient_dim();
  s.depth = depth;
  s.relations = Matrix<typename U::value_type>(rows.size(), s.ambient, c.field().zero());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < s.ambient; ++j) s.relations(i, j) = rows[i][j];
  const auto e = row_reduce(c.field(), s.relations);
  s.rank = e.pivots.size();
  s.dim = s.ambient - s.rank;
  std::vector<bool> pivot(s.ambient, false);
  for (size_t p : e.pivots) pivot[p] = true;
  for (size_t j = 0; j < s.ambient; ++j)
    if (!pivot[j]) s.basis.push_back(j);
  s.certified = U::exact || s.rank == std::min(rows.size(), s.ambient);
  return s;
}

template <class U>
std::vector<std::vector<typename U::value_type>> functoriality_rows(const PairingCategory<U>& c) {
  std::vector<std::vector<typename U::value_type>> rows;
  for (const auto& m : c.composition_closure())
    for (auto& v : c.functoriality_relations(m)) rows.push_back(std::move(v));
  return rows;
}

}  // namespace detail

template <class U>
FormalPeriodSpace<U> formal_period_space(const PairingCategory<U>& c) {
  return detail::quotient_space(c, detail::functoriality_rows(c), 0);
}

/// Functoriality relations plus the relations of every exact triple with m <= i.
template <class U>
FormalPeriodSpace<U> depth_space(const PairingCategory<U>& c, size_t i) {
  if (i == 0) throw ValidationError("depth must be a positive integer");
  auto rows = detail::functoriality_rows(c);
  for (const auto& t : c.triples())
    if (t.m <= i)
      for (auto& v : c.triple_relations(t)) rows.push_back(std::move(v));
  return detail::quotient_space(c, std::move(rows), i);
}

/// vb_dim x dim matrix: column k is the value of basis representative k.
template <class U>
Matrix<typename U::value_type> evaluation_map(const PairingCategory<U>& c, const FormalPeriodSpace<U>& s) {
  if (!c.has_omega()) throw ValidationError("category has no comparison tensors");
  Matrix<typename U::value_type> m(c.vb_dim(), s.dim, c.field().zero());
  for (size_t k = 0; k < s.basis.size(); ++k) {
    std::vector<typename U::value_type> v(c.ambient_dim(), c.field().zero());
    v[s.basis[k]] = c.field().one();
    const auto val = c.evaluate(v);
    for (size_t b = 0; b < c.vb_dim(); ++b) m(b, k) = val[b];
  }
  return m;
}

template <class U>
struct PeriodVerdict {
  enum class Kind { injective, not_injective, undecided };
  Kind kind = Kind::undecided;
  size_t depth = 0;
  size_t dim = 0;
  size_t rank = 0;
  std::vector<typename U::value_type> kernel_vector;  // in basis-representative coordinates
  std::string counterexample;
  std::string name() const {
    switch (kind) {
      case Kind::injective:
        return "injective";
      case Kind::not_injective:
        return "not_injective";
      default:
        return "undecided";
    }
  }
};

/// Is the evaluation map on the depth-i space injective? Over p-adic U a
/// rank below the dimension may be a precision artefact, so it is reported
/// undecided rather than false.
template <class U>
PeriodVerdict<U> conjecture_at_depth(const PairingCategory<U>& c, size_t i) {
  const auto s = depth_space(c, i);
  const auto ev = evaluation_map(c, s);
  PeriodVerdict<U> v;
  v.depth = i;
  v.dim = s.dim;
  v.rank = s.dim == 0 ? 0 : rank(c.field(), ev);
  if (v.rank == s.dim) {
    v.kind = PeriodVerdict<U>::Kind::injective;
    return v;
  }
  if (!U::exact) {
    v.kind = PeriodVerdict<U>::Kind::undecided;
    return v;
  }
  v.kind = PeriodVerdict<U>::Kind::not_injective;
  v.kernel_vector = kernel(c.field(), ev).front();
  for (size_t k = 0; k < s.dim; ++k) {
    if (c.field().is_zero(v.kernel_vector[k])) continue;
    if (!v.counterexample.empty()) v.counterexample += " + ";
    v.counterexample += "(" + scalar_string(v.kernel_vector[k]) + ")*" + c.basis_label(s.basis[k]);
  }
  return v;
}

}  // namespace phodge

#endif  // PHODGE_PERIODS_HPP
