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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "phodge/json_io.hpp"

namespace {

using phodge::io::json;
using namespace phodge;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitUndecided = 3;

struct Options {
  std::string verb;
  std::string input;
  std::string format = "text";
  std::optional<long> precision;
  std::optional<long> order;
  std::optional<long> depth;
};

// Ordered report: text lines and the json object are filled side by side.
struct Report {
  std::vector<std::string> lines;
  json doc = json::object();
  int status = kExitOk;

  void add(const std::string& key, const std::string& text, json value) {
    lines.push_back(key + ": " + text);
    doc[key] = std::move(value);
  }
  void add(const std::string& key, const std::string& text) { add(key, text, text); }
};

std::string fmt_matrix(const PMatrix& m) {
  return matrix_to_string<PadicScalar>(m, [](const PadicScalar& x) { return x.to_string(); });
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

void run_witt(const json& j, Report& r) {
  auto d = io::read_witt(j);
  r.add("op", d.op);
  if (d.op == "to_padic") {
    const auto target = make_context(d.ctx->p(), d.ctx->degree(), d.length);
    const auto v = witt_to_padic(d.x, target);
    r.add("value", v.to_string());
    return;
  }
  WittVector out;
  if (d.op == "add") out = d.x + d.y;
  else if (d.op == "sub") out = d.x - d.y;
  else if (d.op == "mul") out = d.x * d.y;
  else if (d.op == "neg") out = -d.x;
  else if (d.op == "frobenius") out = frobenius_witt(d.x);
  else out = verschiebung(d.x);
  r.lines.push_back("result: " + out.to_string());
  r.doc["result"] = {{"p", d.ctx->p()}, {"n", d.ctx->degree()}, {"length", d.length}, {"coords", io::witt_json(out)}};
}

void run_padic(const json& j, const Options& o, Report& r) {
  auto d = io::read_padic(j, o.precision);
  r.add("op", d.op);
  const auto& x = d.x;
  if (d.op == "valuation") {
    r.add("valuation", x.valuation().to_string());
    return;
  }
  if (d.op == "residue") {
    r.add("residue", x.residue().to_string());
    return;
  }
  PadicScalar v;
  if (d.op == "add") v = x + *d.y;
  else if (d.op == "sub") v = x - *d.y;
  else if (d.op == "mul") v = x * *d.y;
  else if (d.op == "div") v = x / *d.y;
  else if (d.op == "neg") v = -x;
  else if (d.op == "inverse") v = x.inverse();
  else if (d.op == "frobenius") v = x.frobenius();
  else if (d.op == "teichmuller") v = teichmuller(x.residue());
  else if (d.op == "dp_exp") v = dp_exp(x);
  else v = dp_log(x);
  r.add("value", v.to_string());
  r.add("precision", std::to_string(v.precision()), v.precision());
}

void run_slopes(const json& j, const Options& o, Report& r, bool polygon) {
  auto d = io::read_isocrystal(j, o.precision, false, false);
  Isocrystal n(d.ctx, d.frobenius);
  const SlopeData s = slopes(n);
  if (polygon) {
    const NewtonPolygon np = NewtonPolygon::from_slopes(s);
    r.add("newton polygon", np.to_string(), io::polygon_json(np));
  } else {
    r.add("slopes", s.to_string(), io::slopes_json(s));
  }
  r.add("newton number", to_string(s.newton_number()));
}

void run_hodge(const json& j, const Options& o, Report& r) {
  auto d = io::read_isocrystal(j, o.precision, true, false);
  FilteredIsocrystal n(Isocrystal(d.ctx, d.frobenius), d.filtration);
  std::string w;
  json wj = json::object();
  for (const auto& [k, m] : n.filtration().weights()) {
    if (!w.empty()) w += ", ";
    w += std::to_string(k) + " (×" + std::to_string(m) + ")";
    wj[std::to_string(k)] = m;
  }
  r.add("hodge weights", w.empty() ? "(none)" : w, wj);
  r.add("hodge polygon", hodge_polygon(n).to_string(), io::polygon_json(hodge_polygon(n)));
  r.add("hodge number", std::to_string(hodge_number(n)), hodge_number(n));
}

void run_admissible(const json& j, const Options& o, Report& r) {
  auto d = io::read_isocrystal(j, o.precision, true, false);
  FilteredIsocrystal n(Isocrystal(d.ctx, d.frobenius), d.filtration);
  const auto v = is_weakly_admissible(n);
  r.add("verdict", v.name());
  r.add("newton number", to_string(newton_number(n.base())));
  r.add("hodge number", std::to_string(hodge_number(n)), hodge_number(n));
  if (v.witness) {
    const auto& w = *v.witness;
    r.lines.push_back("witness: " + w.reason + ", t_N = " + to_string(w.t_newton) + ", t_H = " + std::to_string(w.t_hodge));
    r.lines.push_back("witness basis:");
    r.lines.push_back(fmt_matrix(w.basis));
    r.doc["witness"] = {{"reason", w.reason},
                        {"t_newton", to_string(w.t_newton)},
                        {"t_hodge", w.t_hodge},
                        {"basis", io::matrix_json(w.basis)}};
  }
  if (!v.note.empty()) r.add("note", v.note);
  if (v.kind == AdmissibilityVerdict::Kind::undecided) r.status = kExitUndecided;
  bool jumps01 = true;
  for (const auto& [k, m] : n.filtration().weights()) jumps01 = jumps01 && (k == 0 || k == 1);
  if (jumps01 && v.kind == AdmissibilityVerdict::Kind::admissible)
    r.add("frobenius span", yes_no(frobenius_span_check(n)), frobenius_span_check(n));
}

void run_expd(const json& j, const Options& o, Report& r) {
  auto d = io::read_isocrystal(j, o.precision, true, true);
  if (!d.lattice) io::fail("/lattice", "expd needs a Dieudonne module (\"lattice\": true)");
  FilteredDieudonneModule D(d.ctx, d.frobenius, d.filtration);
  r.add("h0", h0(D).to_string());
  r.add("h1", h1(D).to_string());
  const auto e = exp_D(D);
  r.add("exp_D source dim", std::to_string(e.source_dim), e.source_dim);
  r.add("exp_D target dim", std::to_string(e.target_dim), e.target_dim);
  r.add("exp_D rank", std::to_string(e.rank), e.rank);
  r.add("exp_D kernel dim", std::to_string(e.kernel_dim), e.kernel_dim);
  r.add("exp_D surjective", yes_no(e.surjective), e.surjective);
  r.lines.push_back("exp_D matrix:");
  r.lines.push_back(fmt_matrix(e.matrix));
  r.doc["exp_D matrix"] = io::matrix_json(e.matrix);
  r.add("divided Frobenii integral", yes_no(D.divided_frobenii_integral()), D.divided_frobenii_integral());
  r.add("divided Frobenii span", yes_no(D.spans()), D.spans());
}

template <class F>
std::string series_text(const Series1<F>& s) {
  return s.to_string([](const typename F::value_type& x) { return scalar_string(x); });
}

void run_fglog(const json& j, const Options& o, Report& r) {
  auto d = io::read_law(j, o.order, o.precision, false);
  std::visit(
      [&](const auto& law) {
        using F = std::decay_t<decltype(law.field())>;
        r.add("order", std::to_string(law.order()), law.order());
        r.add("axioms", yes_no(check_axioms(law)), check_axioms(law));
        const auto l = log_series(law);
        r.add("log", series_text(l), io::series_json(l));
        const auto e = exp_series(law);
        r.add("exp", series_text(e), io::series_json(e));
        if (d.limit_n) {
          if constexpr (F::exact) {
            io::fail("/limit_n", "the limit oracle needs a p-adic coefficient ring");
          } else {
            const auto lim = limit_log(law, *d.limit_n);
            std::string agree;
            json aj = json::object();
            for (int k = 1; k <= law.order(); ++k) {
              const PadicScalar diff = lim[k] - l[k];
              const long v = diff.is_zero() ? std::min(lim[k].precision(), l[k].precision()) : diff.valuation().value();
              agree += (k > 1 ? " " : "") + std::to_string(v);
              aj[std::to_string(k)] = v;
            }
            r.add("limit agreement", agree, aj);
          }
        }
      },
      d.law);
}

void run_height(const json& j, const Options& o, Report& r) {
  auto d = io::read_law(j, o.order, o.precision, true);
  const auto& law = std::get<FormalGroupLaw<RationalField>>(d.law);
  try {
    const auto h = formal_height(law, *d.p, d.h_max);
    r.add("height", h.to_string(), h.height ? json(*h.height) : json(h.to_string()));
  } catch (const TruncationTooSmall& e) {
    r.add("height", "undecided");
    r.add("needed order", std::to_string(e.needed_order()), e.needed_order());
    r.status = kExitUndecided;
  }
}

void run_motive(const json& j, Report& r) {
  auto d = io::read_motive(j);
  if (d.exact) {
    const bool ok = check_exact(d.shapes[0], d.shapes[1], d.shapes[2]);
    r.add("exact", yes_no(ok), ok);
    return;
  }
  const auto& m = d.shapes[0];
  r.add("shape", m.to_string(), io::shape_json(m));
  r.add("tate rank", std::to_string(tate_rank(m)), tate_rank(m));
  const auto ht = hodge_tate_weights(m);
  r.add("hodge-tate weights", ht.to_string(), {{"0", ht.weight0}, {"1", ht.weight1}});
  const auto dr = de_rham_dims(m);
  r.add("de rham", "dim TdR = " + std::to_string(dr.t_dr) + ", dim Fil0 = " + std::to_string(dr.fil0),
        {{"dim_TdR", dr.t_dr}, {"dim_Fil0", dr.fil0}});
  const auto dual = cartier_dual_shape(m);
  r.add("cartier dual", dual.to_string(), io::shape_json(dual));
  if (m.dim_a() == 0 || m.abelian_newton()) {
    const auto s = crystalline_slope_multiset(m);
    r.add("crystalline slopes", s.to_string(), io::slopes_json(s));
  } else {
    r.add("crystalline slopes", "needs abelian_newton", nullptr);
  }
}

template <class U>
void run_periods_with(const PairingCategory<U>& c, const Options& o, Report& r) {
  size_t depth = 1;
  for (const auto& t : c.triples()) depth = std::max(depth, t.m);
  if (o.depth) {
    if (*o.depth < 1 || *o.depth > 64) io::fail("--depth", "depth must be in [1, 64]");
    depth = static_cast<size_t>(*o.depth);
  }
  const auto full = formal_period_space(c);
  r.add("ambient dim", std::to_string(full.ambient), full.ambient);
  r.add("formal period space dim", std::to_string(full.dim), full.dim);
  bool undecided = !full.certified;
  json depths = json::array();
  for (size_t i = 1; i <= depth; ++i) {
    const auto s = depth_space(c, i);
    std::string line = "dim " + std::to_string(s.dim);
    json dj = {{"depth", i}, {"dim", s.dim}, {"certified", s.certified}};
    if (!s.certified) undecided = true;
    if (c.has_omega()) {
      const auto v = conjecture_at_depth(c, i);
      line += ", evaluation " + v.name();
      dj["evaluation"] = v.name();
      if (!v.counterexample.empty()) {
        line += " (kernel: " + v.counterexample + ")";
        dj["kernel"] = v.counterexample;
      }
      if (v.kind == PeriodVerdict<U>::Kind::undecided) undecided = true;
    }
    r.lines.push_back("depth " + std::to_string(i) + ": " + line);
    depths.push_back(dj);
  }
  r.doc["depths"] = depths;
  if (undecided) r.status = kExitUndecided;
}

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open input file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": malformed JSON: " + e.what());
  }
}

int run(const Options& o) {
  Report r;
  const json j = load(o.input);
  if (o.verb == "witt") run_witt(j, r);
  else if (o.verb == "padic") run_padic(j, o, r);
  else if (o.verb == "slopes") run_slopes(j, o, r, false);
  else if (o.verb == "newton") run_slopes(j, o, r, true);
  else if (o.verb == "hodge") run_hodge(j, o, r);
  else if (o.verb == "admissible") run_admissible(j, o, r);
  else if (o.verb == "expd") run_expd(j, o, r);
  else if (o.verb == "fglog") run_fglog(j, o, r);
  else if (o.verb == "height") run_height(j, o, r);
  else if (o.verb == "motive") run_motive(j, r);
  else std::visit([&](const auto& c) { run_periods_with(c, o, r); }, io::read_category(j, o.precision));
  if (o.format == "json") {
    std::cout << r.doc.dump(2) << "\n";
  } else {
    for (const auto& l : r.lines) std::cout << l << "\n";
  }
  return r.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phodge: p-adic Hodge theory toolkit"};
  Options o;
  app.add_option("verb", o.verb, "operation to run")
      ->required()
      ->check(CLI::IsMember({"witt", "padic", "slopes", "newton", "hodge", "admissible", "expd", "fglog", "height",
                             "motive", "periods"}));
  app.add_option("input", o.input, "JSON input document")->required();
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--precision", o.precision, "override the p-adic precision");
  app.add_option("--order", o.order, "truncation order for formal groups");
  app.add_option("--depth", o.depth, "largest depth for period spaces");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }
  try {
    return run(o);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const PrecisionError& e) {
    std::cerr << "undecided: " << e.what() << " (retry with a larger --precision)\n";
    return kExitUndecided;
  }
}
