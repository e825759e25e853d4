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

#ifndef PHODGE_JSON_IO_HPP
#define PHODGE_JSON_IO_HPP

#include <json.hpp>

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "phodge/errors.hpp"
#include "phodge/filtered.hpp"
#include "phodge/formal_group.hpp"
#include "phodge/isocrystal.hpp"
#include "phodge/motive.hpp"
#include "phodge/padic.hpp"
#include "phodge/periods.hpp"
#include "phodge/scalar_parse.hpp"
#include "phodge/witt.hpp"

namespace phodge::io {

using json = nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ValidationError((path.empty() ? std::string("/") : path) + ": " + what);
}

/// Rejects unknown keys and reports missing required ones.
inline void check_keys(const json& j, const std::string& path, std::set<std::string> required,
                       std::set<std::string> optional = {}) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (!required.count(k) && !optional.count(k)) fail(path + "/" + k, "unknown key");
  }
  for (const auto& k : required)
    if (!j.contains(k)) fail(path + "/" + k, "missing required key");
}

inline long get_long(const json& j, const std::string& path, long lo = LONG_MIN, long hi = LONG_MAX) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const long v = j.get<long>();
  if (v < lo || v > hi) fail(path, "value " + std::to_string(v) + " out of range");
  return v;
}

inline std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline const json& get_array(const json& j, const std::string& path, std::optional<size_t> size = std::nullopt) {
  if (!j.is_array()) fail(path, "expected an array");
  if (size && j.size() != *size)
    fail(path, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  return j;
}

inline Rational get_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected an integer or a rational string");
}

inline PadicScalar get_scalar(const Context& ctx, const json& j, const std::string& path) {
  if (j.is_number_integer()) return PadicScalar::from_integer(ctx, Integer(j.get<long>()));
  if (!j.is_string()) fail(path, "expected a scalar string or an integer");
  try {
    return parse_scalar(ctx, j.get<std::string>());
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

/// Context from the keys p, n, precision (and an optional modulus check).
inline Context get_context(const json& j, const std::string& path, std::optional<long> precision_override) {
  const long p = get_long(j.at("p"), path + "/p", 2, 1L << 30);
  if (!is_prime(p)) fail(path + "/p", std::to_string(p) + " is not prime");
  const long n = j.contains("n") ? get_long(j.at("n"), path + "/n", 1, 64) : 1;
  long prec = 0;
  if (precision_override)
    prec = *precision_override;
  else if (j.contains("precision"))
    prec = get_long(j.at("precision"), path + "/precision", 1, 100000);
  else
    fail(path + "/precision", "missing required key");
  if (prec < 1) fail(path + "/precision", "precision must be positive");
  Context ctx = make_context(p, static_cast<int>(n), prec);
  if (j.contains("modulus")) {
    const auto& m = get_array(j.at("modulus"), path + "/modulus");
    std::vector<Integer> want;
    for (size_t i = 0; i < m.size(); ++i) want.push_back(Integer(get_long(m[i], path + "/modulus/" + std::to_string(i))));
    if (want != ctx->modulus()) fail(path + "/modulus", "does not match the modulus chosen for this field");
  }
  return ctx;
}

inline json context_json(const Context& ctx) {
  json m = json::array();
  for (const auto& c : ctx->modulus()) m.push_back(c.get_si());
  return {{"p", ctx->p()}, {"n", ctx->degree()}, {"precision", ctx->precision()}, {"modulus", m}};
}

inline PMatrix get_pmatrix(const Context& ctx, const json& j, const std::string& path, size_t rows, size_t cols) {
  get_array(j, path, rows);
  PMatrix m(rows, cols, PadicScalar::zero(ctx));
  for (size_t i = 0; i < rows; ++i) {
    const std::string rp = path + "/" + std::to_string(i);
    get_array(j[i], rp, cols);
    for (size_t k = 0; k < cols; ++k) m(i, k) = get_scalar(ctx, j[i][k], rp + "/" + std::to_string(k));
  }
  return m;
}

inline QMatrix get_qmatrix(const json& j, const std::string& path, size_t rows, size_t cols) {
  get_array(j, path, rows);
  QMatrix m(rows, cols, Rational(0));
  for (size_t i = 0; i < rows; ++i) {
    const std::string rp = path + "/" + std::to_string(i);
    get_array(j[i], rp, cols);
    for (size_t k = 0; k < cols; ++k) m(i, k) = get_rational(j[i][k], rp + "/" + std::to_string(k));
  }
  return m;
}

template <class U>
Matrix<typename U::value_type> get_umatrix(const U& u, const json& j, const std::string& path, size_t rows,
                                           size_t cols) {
  if constexpr (U::exact) {
    (void)u;
    return get_qmatrix(j, path, rows, cols);
  } else {
    return get_pmatrix(u.ctx, j, path, rows, cols);
  }
}

inline json scalar_json(const Rational& x) { return to_string(x); }
inline json scalar_json(const PadicScalar& x) { return x.to_string(); }

template <class T>
json matrix_json(const Matrix<T>& m) {
  json out = json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_json(m(i, k)));
    out.push_back(row);
  }
  return out;
}

inline json slopes_json(const SlopeData& s) {
  json out = json::array();
  for (const auto& [a, m] : s.entries()) out.push_back({{"slope", to_string(a)}, {"multiplicity", m}});
  return out;
}

inline json polygon_json(const NewtonPolygon& p) {
  json out = json::array();
  for (const auto& v : p.vertices()) out.push_back({to_string(v.x), to_string(v.y)});
  return out;
}

// ---- isocrystal family: slopes, newton, hodge, admissible, expd ----

struct IsocrystalDoc {
  Context ctx;
  PMatrix frobenius;
  std::map<long, PMatrix> filtration;
  bool lattice = false;
};

/// { "p", "n", "precision", "modulus"?, "dim", "frobenius", "filtration"?, "lattice"? }
inline IsocrystalDoc read_isocrystal(const json& j, std::optional<long> precision, bool filtered, bool lattice) {
  std::set<std::string> opt{"n", "modulus", "precision"};
  std::set<std::string> req{"p", "dim", "frobenius"};
  if (filtered) opt.insert("filtration");
  if (lattice) opt.insert("lattice");
  check_keys(j, "", req, opt);
  IsocrystalDoc d;
  d.ctx = get_context(j, "", precision);
  const size_t dim = static_cast<size_t>(get_long(j.at("dim"), "/dim", 0, static_cast<long>(kMaxIsocrystalDim)));
  d.frobenius = get_pmatrix(d.ctx, j.at("frobenius"), "/frobenius", dim, dim);
  if (j.contains("filtration")) {
    const auto& f = j.at("filtration");
    if (!f.is_object()) fail("/filtration", "expected an object keyed by filtration index");
    for (const auto& [key, vecs] : f.items()) {
      const std::string path = "/filtration/" + key;
      long idx = 0;
      try {
        size_t used = 0;
        idx = std::stol(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        fail(path, "filtration keys must be integers");
      }
      get_array(vecs, path);
      PMatrix b(dim, vecs.size(), PadicScalar::zero(d.ctx));
      for (size_t c = 0; c < vecs.size(); ++c) {
        const std::string vp = path + "/" + std::to_string(c);
        get_array(vecs[c], vp, dim);
        for (size_t r = 0; r < dim; ++r) b(r, c) = get_scalar(d.ctx, vecs[c][r], vp + "/" + std::to_string(r));
      }
      d.filtration[idx] = std::move(b);
    }
  }
  if (j.contains("lattice")) {
    if (!j.at("lattice").is_boolean()) fail("/lattice", "expected a boolean");
    d.lattice = j.at("lattice").get<bool>();
  }
  return d;
}

inline json isocrystal_json(const Context& ctx, const PMatrix& a) {
  json j = context_json(ctx);
  j["dim"] = a.rows();
  j["frobenius"] = matrix_json(a);
  return j;
}

// ---- witt ----

struct WittDoc {
  Context ctx;
  int length = 1;
  std::string op;
  WittVector x, y;
};

inline WittVector get_witt(const Context& ctx, const json& j, const std::string& path, int length) {
  get_array(j, path, static_cast<size_t>(length));
  std::vector<FqElement> c;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string cp = path + "/" + std::to_string(i);
    get_array(j[i], cp);
    if (j[i].size() > static_cast<size_t>(ctx->degree())) fail(cp, "too many F_q coefficients");
    fp::Poly poly;
    for (size_t k = 0; k < j[i].size(); ++k)
      poly.push_back(get_long(j[i][k], cp + "/" + std::to_string(k), 0, ctx->p() - 1));
    c.emplace_back(ctx, poly);
  }
  return WittVector(ctx, std::move(c));
}

inline json witt_json(const WittVector& w) {
  json c = json::array();
  for (const auto& a : w.coords()) {
    json v = json::array();
    auto poly = a.coefficients();
    poly.resize(static_cast<size_t>(a.context()->degree()), 0);
    for (long x : poly) v.push_back(x);
    c.push_back(v);
  }
  return c;
}

/// { "p", "n"?, "length", "op", "x", "y"? }
inline WittDoc read_witt(const json& j) {
  check_keys(j, "", {"p", "length", "op", "x"}, {"n", "y"});
  WittDoc d;
  d.length = static_cast<int>(get_long(j.at("length"), "/length", 1, 8));
  json cj = j;
  cj["precision"] = d.length;
  d.ctx = get_context(cj, "", std::nullopt);
  d.op = get_string(j.at("op"), "/op");
  static const std::set<std::string> binary{"add", "sub", "mul"}, unary{"neg", "frobenius", "verschiebung", "to_padic"};
  if (!binary.count(d.op) && !unary.count(d.op)) fail("/op", "unknown Witt operation '" + d.op + "'");
  d.x = get_witt(d.ctx, j.at("x"), "/x", d.length);
  if (binary.count(d.op)) {
    if (!j.contains("y")) fail("/y", "missing operand for binary operation");
    d.y = get_witt(d.ctx, j.at("y"), "/y", d.length);
  } else if (j.contains("y")) {
    fail("/y", "unexpected second operand for a unary operation");
  }
  return d;
}

// ---- padic ----

struct PadicDoc {
  Context ctx;
  std::string op;
  PadicScalar x;
  std::optional<PadicScalar> y;
};

/// { "p", "n"?, "precision", "modulus"?, "op", "x", "y"? }
inline PadicDoc read_padic(const json& j, std::optional<long> precision) {
  check_keys(j, "", {"p", "op", "x"}, {"n", "precision", "modulus", "y"});
  PadicDoc d;
  d.ctx = get_context(j, "", precision);
  d.op = get_string(j.at("op"), "/op");
  static const std::set<std::string> binary{"add", "sub", "mul", "div"},
      unary{"neg", "inverse", "frobenius", "teichmuller", "valuation", "residue", "dp_exp", "dp_log"};
  if (!binary.count(d.op) && !unary.count(d.op)) fail("/op", "unknown p-adic operation '" + d.op + "'");
  d.x = get_scalar(d.ctx, j.at("x"), "/x");
  if (binary.count(d.op)) {
    if (!j.contains("y")) fail("/y", "missing operand for binary operation");
    d.y = get_scalar(d.ctx, j.at("y"), "/y");
  } else if (j.contains("y")) {
    fail("/y", "unexpected second operand for a unary operation");
  }
  return d;
}

// ---- formal groups ----

struct LawDoc {
  std::variant<FormalGroupLaw<RationalField>, FormalGroupLaw<PadicField>> law;
  std::optional<std::array<Rational, 5>> weierstrass;
  std::optional<long> p;      // height prime
  long h_max = 1;
  std::optional<long> limit_n;  // iterations for the limit-definition oracle
};

template <class F>
FormalGroupLaw<F> law_from_phi(const F& f, const json& phi, int order,
                               const std::function<typename F::value_type(const json&, const std::string&)>& get) {
  if (!phi.is_object()) fail("/phi", "expected an object keyed by \"i,j\"");
  Series2<F> s(f, order);
  for (const auto& [key, val] : phi.items()) {
    const std::string path = "/phi/" + key;
    const auto comma = key.find(',');
    int i = 0, k = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument(key);
      size_t u1 = 0, u2 = 0;
      i = std::stoi(key.substr(0, comma), &u1);
      k = std::stoi(key.substr(comma + 1), &u2);
      if (u1 != comma || u2 != key.size() - comma - 1) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(path, "keys must have the form \"i,j\"");
    }
    if (i < 0 || k < 0) fail(path, "exponents must be nonnegative");
    if (i + k > order) continue;
    s(i, k) = get(val, path);
  }
  return FormalGroupLaw<F>(std::move(s));
}

/// { "order", "phi": {"i,j": scalar} | "law": name, "a"?: [a1,a2,a3,a4,a6],
///   "ring"?: {p, n, precision}, "p"?, "h_max"?, "limit_n"? }
inline LawDoc read_law(const json& j, std::optional<long> order_override, std::optional<long> precision,
                       bool want_prime) {
  std::set<std::string> opt{"order", "phi", "law", "a", "ring", "limit_n"};
  std::set<std::string> req;
  if (want_prime) {
    req.insert("p");
    opt.insert("h_max");
  }
  check_keys(j, "", req, opt);
  if (j.contains("phi") == j.contains("law")) fail("/law", "give exactly one of \"phi\" or \"law\"");
  int order = 12;
  if (j.contains("order")) order = static_cast<int>(get_long(j.at("order"), "/order", 1, 400));
  if (order_override) {
    if (*order_override < 1 || *order_override > 400) fail("--order", "order must be in [1, 400]");
    order = static_cast<int>(*order_override);
  }
  LawDoc d{FormalGroupLaw<RationalField>::additive(RationalField{}, 1), std::nullopt, std::nullopt, 1, std::nullopt};
  if (want_prime) {
    d.p = get_long(j.at("p"), "/p", 2, 1L << 30);
    if (!is_prime(*d.p)) fail("/p", std::to_string(*d.p) + " is not prime");
    if (j.contains("h_max")) d.h_max = get_long(j.at("h_max"), "/h_max", 1, 30);
  }
  if (j.contains("limit_n")) d.limit_n = get_long(j.at("limit_n"), "/limit_n", 0, 200);
  std::string name;
  if (j.contains("law")) {
    name = get_string(j.at("law"), "/law");
    if (name != "additive" && name != "multiplicative" && name != "weierstrass")
      fail("/law", "unknown law '" + name + "'");
    if ((name == "weierstrass") != j.contains("a"))
      fail("/a", name == "weierstrass" ? "weierstrass needs \"a\"" : "\"a\" is only used by weierstrass");
    if (name == "weierstrass") {
      get_array(j.at("a"), "/a", 5);
      std::array<Rational, 5> a;
      for (size_t i = 0; i < 5; ++i) a[i] = get_rational(j.at("a")[i], "/a/" + std::to_string(i));
      d.weierstrass = a;
    }
  } else if (j.contains("a")) {
    fail("/a", "\"a\" is only used by weierstrass");
  }
  auto build = [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    if (name == "additive") return FormalGroupLaw<F>::additive(f, order);
    if (name == "multiplicative") return FormalGroupLaw<F>::multiplicative(f, order);
    if (name == "weierstrass") return weierstrass_law(f, *d.weierstrass, order);
    return law_from_phi<F>(f, j.at("phi"), order, [&](const json& v, const std::string& p) {
      if constexpr (F::exact)
        return get_rational(v, p);
      else
        return get_scalar(f.ctx, v, p);
    });
  };
  if (j.contains("ring")) {
    if (want_prime) fail("/ring", "height is computed from a law with rational coefficients");
    check_keys(j.at("ring"), "/ring", {"p"}, {"n", "precision", "modulus"});
    d.law = build(PadicField(get_context(j.at("ring"), "/ring", precision)));
  } else {
    d.law = build(RationalField{});
  }
  return d;
}

template <class F>
json series_json(const Series1<F>& s) {
  json out = json::object();
  for (int k = 0; k <= s.order(); ++k)
    if (!s.field().is_zero(s[k])) out[std::to_string(k)] = scalar_json(s[k]);
  return out;
}

template <class F>
json law_json(const FormalGroupLaw<F>& law) {
  json phi = json::object();
  for (int i = 0; i <= law.order(); ++i)
    for (int k = 0; i + k <= law.order(); ++k)
      if (!law.field().is_zero(law.phi()(i, k))) phi[std::to_string(i) + "," + std::to_string(k)] = scalar_json(law.phi()(i, k));
  return {{"phi", phi}, {"order", law.order()}};
}

// ---- motives ----

/// { "rank_L", "dim_T", "dim_A", "abelian_newton"?: [[num, den, mult]], "label"? }
inline MotiveShape read_shape(const json& j, const std::string& path) {
  check_keys(j, path, {"rank_L", "dim_T", "dim_A"}, {"abelian_newton", "label"});
  const long r = get_long(j.at("rank_L"), path + "/rank_L", 0, 1L << 20);
  const long t = get_long(j.at("dim_T"), path + "/dim_T", 0, 1L << 20);
  const long a = get_long(j.at("dim_A"), path + "/dim_A", 0, 1L << 20);
  std::optional<SlopeData> n;
  if (j.contains("abelian_newton")) {
    const auto& arr = get_array(j.at("abelian_newton"), path + "/abelian_newton");
    std::vector<std::pair<Rational, long>> e;
    for (size_t i = 0; i < arr.size(); ++i) {
      const std::string ep = path + "/abelian_newton/" + std::to_string(i);
      get_array(arr[i], ep, 3);
      const long num = get_long(arr[i][0], ep + "/0");
      const long den = get_long(arr[i][1], ep + "/1", 1);
      const long mult = get_long(arr[i][2], ep + "/2", 1);
      e.emplace_back(make_rational(num, den), mult);
    }
    try {
      n = SlopeData(std::move(e));
      MotiveShape::validate_abelian_newton(*n, a);
    } catch (const ValidationError& ex) {
      fail(path + "/abelian_newton", ex.what());
    }
  }
  std::string label;
  if (j.contains("label")) label = get_string(j.at("label"), path + "/label");
  return MotiveShape(r, t, a, n, label);
}

inline json shape_json(const MotiveShape& m) {
  json j = {{"rank_L", m.rank_l()}, {"dim_T", m.dim_t()}, {"dim_A", m.dim_a()}};
  if (m.abelian_newton()) {
    json arr = json::array();
    for (const auto& [s, k] : m.abelian_newton()->entries())
      arr.push_back({s.get_num().get_si(), s.get_den().get_si(), k});
    j["abelian_newton"] = arr;
  }
  if (!m.label().empty()) j["label"] = m.label();
  return j;
}

/// A single shape, or { "exact": [M1, M, M2] } for an exactness check.
struct MotiveDoc {
  std::vector<MotiveShape> shapes;
  bool exact = false;
};

inline MotiveDoc read_motive(const json& j) {
  MotiveDoc d;
  if (j.is_object() && j.contains("exact")) {
    check_keys(j, "", {"exact"});
    const auto& arr = get_array(j.at("exact"), "/exact", 3);
    for (size_t i = 0; i < 3; ++i) d.shapes.push_back(read_shape(arr[i], "/exact/" + std::to_string(i)));
    d.exact = true;
  } else {
    d.shapes.push_back(read_shape(j, ""));
  }
  return d;
}

// ---- periods ----

template <class U>
ComponentMap<U> read_component(const U& u, const json& j, const std::string& path, size_t rf, size_t cf, size_t rg,
                               size_t cg) {
  check_keys(j, path, {"F", "G"});
  return {get_qmatrix(j.at("F"), path + "/F", rf, cf), get_umatrix(u, j.at("G"), path + "/G", rg, cg)};
}

template <class U>
PairingCategory<U> read_category_with(const U& u, const json& j) {
  std::vector<PeriodObject> objects;
  std::map<std::string, size_t> index;
  const auto& objs = get_array(j.at("objects"), "/objects");
  for (size_t i = 0; i < objs.size(); ++i) {
    const std::string path = "/objects/" + std::to_string(i);
    check_keys(objs[i], path, {"name", "dim_F", "dim_G"});
    PeriodObject o{get_string(objs[i].at("name"), path + "/name"),
                   static_cast<size_t>(get_long(objs[i].at("dim_F"), path + "/dim_F", 0, 64)),
                   static_cast<size_t>(get_long(objs[i].at("dim_G"), path + "/dim_G", 0, 64))};
    if (index.count(o.name)) fail(path + "/name", "duplicate object name '" + o.name + "'");
    index[o.name] = i;
    objects.push_back(o);
  }
  auto lookup = [&](const json& v, const std::string& path) {
    const std::string name = get_string(v, path);
    auto it = index.find(name);
    if (it == index.end()) fail(path, "unknown object '" + name + "'");
    return it->second;
  };
  std::vector<PeriodMorphism<U>> morphisms;
  if (j.contains("morphisms")) {
    const auto& ms = get_array(j.at("morphisms"), "/morphisms");
    for (size_t i = 0; i < ms.size(); ++i) {
      const std::string path = "/morphisms/" + std::to_string(i);
      check_keys(ms[i], path, {"source", "target", "F", "G"}, {"name"});
      PeriodMorphism<U> m;
      m.name = ms[i].contains("name") ? get_string(ms[i].at("name"), path + "/name") : "f" + std::to_string(i);
      m.source = lookup(ms[i].at("source"), path + "/source");
      m.target = lookup(ms[i].at("target"), path + "/target");
      m.f = get_qmatrix(ms[i].at("F"), path + "/F", objects[m.target].dim_f, objects[m.source].dim_f);
      m.g = get_umatrix(u, ms[i].at("G"), path + "/G", objects[m.source].dim_g, objects[m.target].dim_g);
      morphisms.push_back(std::move(m));
    }
  }
  const size_t vb = j.contains("vb_dim") ? static_cast<size_t>(get_long(j.at("vb_dim"), "/vb_dim", 0, 256)) : 0;
  std::vector<Matrix<typename U::value_type>> omega;
  if (j.contains("omega")) {
    const auto& om = j.at("omega");
    if (!om.is_object()) fail("/omega", "expected an object keyed by object name");
    for (const auto& o : objects) {
      const std::string path = "/omega/" + o.name;
      if (!om.contains(o.name)) fail(path, "missing comparison tensor");
      const auto& t = get_array(om.at(o.name), path, o.dim_f);
      Matrix<typename U::value_type> w(o.dim_f * o.dim_g, vb, u.zero());
      for (size_t a = 0; a < o.dim_f; ++a) {
        const std::string ap = path + "/" + std::to_string(a);
        const auto rows = get_umatrix(u, get_array(t[a], ap, o.dim_g), ap, o.dim_g, vb);
        for (size_t g = 0; g < o.dim_g; ++g)
          for (size_t b = 0; b < vb; ++b) w(a * o.dim_g + g, b) = rows(g, b);
      }
      omega.push_back(std::move(w));
    }
    for (const auto& [k, v] : om.items()) {
      (void)v;
      if (!index.count(k)) fail("/omega/" + k, "unknown object");
    }
  }
  std::vector<ExactTriple<U>> triples;
  if (j.contains("exact_triples")) {
    const auto& ts = get_array(j.at("exact_triples"), "/exact_triples");
    for (size_t i = 0; i < ts.size(); ++i) {
      const std::string path = "/exact_triples/" + std::to_string(i);
      check_keys(ts[i], path, {"sub", "middle", "quotient", "iota", "pi"}, {"name", "m"});
      ExactTriple<U> t;
      t.name = ts[i].contains("name") ? get_string(ts[i].at("name"), path + "/name") : "t" + std::to_string(i);
      auto end = [&](const json& v, const std::string& p) {
        TripleEnd e;
        if (v.is_string()) {
          e.object = lookup(v, p);
          e.dim_f = objects[*e.object].dim_f;
          e.dim_g = objects[*e.object].dim_g;
        } else {
          check_keys(v, p, {"dim_F", "dim_G"});
          e.dim_f = static_cast<size_t>(get_long(v.at("dim_F"), p + "/dim_F", 0, 512));
          e.dim_g = static_cast<size_t>(get_long(v.at("dim_G"), p + "/dim_G", 0, 512));
        }
        return e;
      };
      t.sub = end(ts[i].at("sub"), path + "/sub");
      t.quotient = end(ts[i].at("quotient"), path + "/quotient");
      t.middle = lookup(ts[i].at("middle"), path + "/middle");
      t.m = ts[i].contains("m") ? static_cast<size_t>(get_long(ts[i].at("m"), path + "/m", 1, 64)) : 1;
      const auto& mid = objects[t.middle];
      const auto& io = get_array(ts[i].at("iota"), path + "/iota", t.m);
      const auto& pi = get_array(ts[i].at("pi"), path + "/pi", t.m);
      for (size_t k = 0; k < t.m; ++k) {
        t.iota.push_back(read_component(u, io[k], path + "/iota/" + std::to_string(k), mid.dim_f, t.sub.dim_f,
                                        t.sub.dim_g, mid.dim_g));
        t.pi.push_back(read_component(u, pi[k], path + "/pi/" + std::to_string(k), t.quotient.dim_f, mid.dim_f,
                                      mid.dim_g, t.quotient.dim_g));
      }
      triples.push_back(std::move(t));
    }
  }
  size_t max_len = 8;
  if (j.contains("max_word_length"))
    max_len = static_cast<size_t>(get_long(j.at("max_word_length"), "/max_word_length", 1, 8));
  return PairingCategory<U>(u, std::move(objects), std::move(morphisms), std::move(omega), vb, std::move(triples),
                            max_len);
}

using AnyCategory = std::variant<PairingCategory<RationalField>, PairingCategory<PadicField>>;

/// { "U": "Q" | {p, n, precision}, "vb_dim"?, "objects", "morphisms"?, "omega"?,
///   "exact_triples"?, "max_word_length"? }
inline AnyCategory read_category(const json& j, std::optional<long> precision) {
  check_keys(j, "", {"objects"}, {"U", "vb_dim", "morphisms", "omega", "exact_triples", "max_word_length"});
  if (j.contains("omega") && !j.contains("vb_dim")) fail("/vb_dim", "required when omega is given");
  if (!j.contains("U") || (j.at("U").is_string() && j.at("U").get<std::string>() == "Q"))
    return read_category_with(RationalField{}, j);
  if (j.at("U").is_string()) fail("/U", "expected \"Q\" or a p-adic context object");
  check_keys(j.at("U"), "/U", {"p"}, {"n", "precision", "modulus"});
  return read_category_with(PadicField(get_context(j.at("U"), "/U", precision)), j);
}

}  // namespace phodge::io

#endif  // PHODGE_JSON_IO_HPP
