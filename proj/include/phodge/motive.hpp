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

#ifndef PHODGE_MOTIVE_HPP
#define PHODGE_MOTIVE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phodge/errors.hpp"
#include "phodge/isocrystal.hpp"
#include "phodge/newton.hpp"

namespace phodge {

/// Dimension data of a 1-motive [L -> G], G an extension of A by a torus T.
class MotiveShape {
 public:
  MotiveShape(long rank_l, long dim_t, long dim_a, std::optional<SlopeData> abelian_newton = std::nullopt,
              std::string label = {})
      : rank_l_(rank_l), dim_t_(dim_t), dim_a_(dim_a), newton_(std::move(abelian_newton)), label_(std::move(label)) {
    if (rank_l < 0 || dim_t < 0 || dim_a < 0) throw ValidationError("motive shape dimensions must be nonnegative");
    if (newton_) validate_abelian_newton(*newton_, dim_a);
  }

  long rank_l() const { return rank_l_; }
  long dim_t() const { return dim_t_; }
  long dim_a() const { return dim_a_; }
  const std::optional<SlopeData>& abelian_newton() const { return newton_; }
  const std::string& label() const { return label_; }

  friend bool operator==(const MotiveShape& a, const MotiveShape& b) {
    return a.rank_l_ == b.rank_l_ && a.dim_t_ == b.dim_t_ && a.dim_a_ == b.dim_a_ && a.newton_ == b.newton_;
  }

  std::string to_string() const {
    std::string s = "[Z^" + std::to_string(rank_l_) + " -> G(T=G_m^" + std::to_string(dim_t_) +
                    ", dim A=" + std::to_string(dim_a_) + ")]";
    if (!label_.empty()) s = label_ + " " + s;
    return s;
  }

  static void validate_abelian_newton(const SlopeData& s, long g) {
    std::vector<Rational> a;
    for (const auto& [slope, m] : s.entries()) {
      if (slope < 0 || slope > 1) throw ValidationError("abelian slope " + phodge::to_string(slope) + " outside [0, 1]");
      for (long k = 0; k < m; ++k) a.push_back(slope);
    }
    if (static_cast<long>(a.size()) != 2 * g)
      throw ValidationError("abelian Newton polygon must have width 2*dim_A = " + std::to_string(2 * g));
    if (s.newton_number() != g) throw ValidationError("abelian Newton polygon must end at (2g, g)");
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != 1 - a[a.size() - 1 - i]) throw ValidationError("abelian Newton polygon is not symmetric");
  }

 private:
  long rank_l_, dim_t_, dim_a_;
  std::optional<SlopeData> newton_;
  std::string label_;
};

inline long tate_rank(const MotiveShape& m) { return m.rank_l() + m.dim_t() + 2 * m.dim_a(); }

/// Multiplicities of the Hodge-Tate weights 0 and 1.
struct HodgeTateWeights {
  long weight0 = 0;
  long weight1 = 0;
  std::string to_string() const {
    return "{0^" + std::to_string(weight0) + ", 1^" + std::to_string(weight1) + "}";
  }
};

inline HodgeTateWeights hodge_tate_weights(const MotiveShape& m) {
  return {m.rank_l() + m.dim_a(), m.dim_t() + m.dim_a()};
}

struct DeRhamDims {
  long t_dr = 0;
  long fil0 = 0;
};

inline DeRhamDims de_rham_dims(const MotiveShape& m) { return {tate_rank(m), m.rank_l() + m.dim_a()}; }

inline MotiveShape cartier_dual_shape(const MotiveShape& m) {
  std::optional<SlopeData> n;
  if (m.abelian_newton()) n = dieudonne_dual_slopes(*m.abelian_newton());
  return MotiveShape(m.dim_t(), m.rank_l(), m.dim_a(), n, m.label().empty() ? "" : m.label() + "^dual");
}

inline SlopeData crystalline_slope_multiset(const MotiveShape& m) {
  std::vector<std::pair<Rational, long>> e;
  if (m.rank_l() > 0) e.emplace_back(Rational(0), m.rank_l());
  if (m.dim_t() > 0) e.emplace_back(Rational(1), m.dim_t());
  if (m.dim_a() > 0) {
    if (!m.abelian_newton()) throw ValidationError("abelian Newton data is required when dim_A > 0");
    for (const auto& x : m.abelian_newton()->entries()) e.push_back(x);
  }
  return SlopeData(std::move(e));
}

/// Componentwise additivity of 0 -> m1 -> m -> m2 -> 0.
inline bool check_exact(const MotiveShape& m1, const MotiveShape& m, const MotiveShape& m2) {
  return m1.rank_l() + m2.rank_l() == m.rank_l() && m1.dim_t() + m2.dim_t() == m.dim_t() &&
         m1.dim_a() + m2.dim_a() == m.dim_a();
}

}  // namespace phodge

#endif  // PHODGE_MOTIVE_HPP
