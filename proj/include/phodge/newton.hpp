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

#ifndef PHODGE_NEWTON_HPP
#define PHODGE_NEWTON_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "phodge/errors.hpp"
#include "phodge/padic.hpp"
#include "phodge/rational.hpp"

namespace phodge {

struct PolygonPoint {
  Rational x;
  Rational y;
  friend bool operator==(const PolygonPoint& a, const PolygonPoint& b) { return a.x == b.x && a.y == b.y; }
};

/// Slopes with multiplicities, slopes strictly increasing.
class SlopeData {
 public:
  SlopeData() = default;
  /// Merges equal slopes and sorts. Multiplicities must be positive.
  explicit SlopeData(std::vector<std::pair<Rational, long>> entries) {
    std::map<Rational, long> merged;
    for (auto& [s, m] : entries) {
      if (m <= 0) throw ValidationError("slope multiplicity must be positive");
      merged[s] += m;
    }
    for (auto& [s, m] : merged) entries_.emplace_back(s, m);
  }

  const std::vector<std::pair<Rational, long>>& entries() const { return entries_; }
  long total_multiplicity() const {
    long t = 0;
    for (const auto& e : entries_) t += e.second;
    return t;
  }
  /// t_N = sum of multiplicity * slope.
  Rational newton_number() const {
    Rational t = 0;
    for (const auto& [s, m] : entries_) t += s * m;
    return t;
  }
  bool empty() const { return entries_.empty(); }

  /// "0 (×1), 1/2 (×2)"
  std::string to_string() const {
    if (entries_.empty()) return "(none)";
    std::string out;
    for (size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ", ";
      out += phodge::to_string(entries_[i].first) + " (×" + std::to_string(entries_[i].second) + ")";
    }
    return out;
  }

  friend bool operator==(const SlopeData& a, const SlopeData& b) { return a.entries_ == b.entries_; }
  friend SlopeData operator+(const SlopeData& a, const SlopeData& b) {
    auto e = a.entries_;
    e.insert(e.end(), b.entries_.begin(), b.entries_.end());
    return SlopeData(std::move(e));
  }

 private:
  std::vector<std::pair<Rational, long>> entries_;
};

/// Lower convex polygon starting at the origin.
class NewtonPolygon {
 public:
  NewtonPolygon() : vertices_{{0, 0}} {}
  /// Polygon with the given segments, taken in order of increasing slope.
  static NewtonPolygon from_slopes(const SlopeData& s) {
    NewtonPolygon p;
    Rational x = 0, y = 0;
    for (const auto& [slope, mult] : s.entries()) {
      x += mult;
      y += slope * mult;
      p.vertices_.push_back({x, y});
    }
    return p;
  }
  const std::vector<PolygonPoint>& vertices() const { return vertices_; }
  SlopeData slopes() const {
    std::vector<std::pair<Rational, long>> e;
    for (size_t i = 1; i < vertices_.size(); ++i) {
      Rational dx = vertices_[i].x - vertices_[i - 1].x;
      Rational dy = vertices_[i].y - vertices_[i - 1].y;
      e.emplace_back(Rational(dy / dx), dx.get_num().get_si());
    }
    return SlopeData(std::move(e));
  }
  Rational width() const { return vertices_.back().x; }
  Rational height() const { return vertices_.back().y; }

  /// "(0,0) (1,0) (2,1)"
  std::string to_string() const {
    std::string out;
    for (size_t i = 0; i < vertices_.size(); ++i) {
      if (i) out += " ";
      out += "(" + phodge::to_string(vertices_[i].x) + "," + phodge::to_string(vertices_[i].y) + ")";
    }
    return out;
  }
  friend bool operator==(const NewtonPolygon& a, const NewtonPolygon& b) { return a.vertices_ == b.vertices_; }

  /// Lower convex hull of points with distinct x, sorted by x. Collinear
  /// interior points are dropped.
  static NewtonPolygon lower_hull(const std::vector<PolygonPoint>& pts) {
    if (pts.empty()) return NewtonPolygon();
    std::vector<PolygonPoint> hull;
    for (const auto& pt : pts) {
      while (hull.size() >= 2) {
        const auto& a = hull[hull.size() - 2];
        const auto& b = hull.back();
        // Drop b when it lies on or above the segment a -> pt.
        Rational cross = (b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x);
        if (cross <= 0) {
          hull.pop_back();
        } else {
          break;
        }
      }
      hull.push_back(pt);
    }
    NewtonPolygon p;
    p.vertices_.clear();
    const Rational x0 = hull.front().x, y0 = hull.front().y;
    for (const auto& pt : hull) p.vertices_.push_back({pt.x - x0, pt.y - y0});
    return p;
  }

 private:
  std::vector<PolygonPoint> vertices_;
};

/// Newton polygon of c_0 x^d + c_1 x^{d-1} + ... + c_d, coefficients given
/// leading first, so that segment slopes are the valuations of the roots.
/// A coefficient that is zero to precision is fine as long as it lies on
/// or above the polygon built from the others.
inline NewtonPolygon newton_polygon_of_poly(const std::vector<PadicScalar>& coeffs) {
  if (coeffs.empty()) throw ValidationError("empty polynomial");
  if (coeffs.front().is_zero()) throw PrecisionInsufficient("leading coefficient is zero to precision");
  if (coeffs.back().is_zero()) throw PrecisionInsufficient("constant coefficient is zero to precision");
  std::vector<PolygonPoint> pts;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) pts.push_back({Rational(static_cast<long>(i)), Rational(coeffs[i].valuation().value())});
  NewtonPolygon poly = NewtonPolygon::lower_hull(pts);
  const Rational x0 = pts.front().x, y0 = pts.front().y;
  // Height of the polygon above x, in the unshifted coordinates.
  auto height_at = [&](const Rational& x) {
    const auto& v = poly.vertices();
    for (size_t k = 1; k < v.size(); ++k) {
      Rational xa = v[k - 1].x + x0, xb = v[k].x + x0;
      if (x >= xa && x <= xb) return Rational(v[k - 1].y + y0 + (v[k].y - v[k - 1].y) * (x - xa) / (xb - xa));
    }
    return Rational(v.back().y + y0);
  };
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero()) continue;
    if (Rational(coeffs[i].precision()) < height_at(Rational(static_cast<long>(i))))
      throw PrecisionInsufficient("coefficient " + std::to_string(i) + " is zero to precision " +
                                  std::to_string(coeffs[i].precision()) + " below the Newton polygon");
  }
  return poly;
}

}  // namespace phodge

#endif  // PHODGE_NEWTON_HPP
