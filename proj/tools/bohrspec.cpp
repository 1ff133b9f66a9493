//  Copyright 2026 The bohrspec Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

// Command-line front end.
//
//   bohrspec lattice  --present FILE [--query Q | --normalize EXPR]
//   bohrspec spectrum (--present FILE | --algebra K | --poset FILE)
//   bohrspec bohr     (--n N | --spec FILE) [contexts|ideals|points|opens|sier|frame|opfibration|cstar]
//   bohrspec diagram  FILE [same views as bohr]
//   bohrspec aqft     FILE [poset|points|triples|check]
//   bohrspec verify   [--suite lattice|spectrum|bundle|aqft|all] [--seed N]
//   bohrspec export   (--n N | --spec FILE | --diagram FILE | --net FILE) [--graph points|contexts]
//
// Exit status: 0 success, 1 invalid input, 2 failed verification.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bohrspec/aqft.hpp"
#include "bohrspec/bohrify.hpp"
#include "bohrspec/bundle.hpp"
#include "bohrspec/json_io.hpp"
#include "bohrspec/la.hpp"
#include "bohrspec/present.hpp"
#include "bohrspec/spectrum.hpp"
#include "bohrspec/verify.hpp"

namespace {

using namespace bohrspec;
using io::json;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kVerifyFailed = 2;

struct Options {
  std::string format = "json";
  std::size_t max_size = kDefaultMaxSize;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Hasse diagram of a preorder given as rows (row p = everything above p).
std::string hasse_dot(const std::string& name, const std::vector<std::string>& labels, const std::vector<Bits>& above) {
  std::ostringstream out;
  out << "digraph " << dot_id(name) << " {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << "  n" << i << " [label=" << dot_id(labels[i]) << "];\n";
  auto strictly = [&](std::size_t a, std::size_t b) { return above[a].test(b) && !above[b].test(a); };
  for (std::size_t a = 0; a < labels.size(); ++a) {
    for (std::size_t b = 0; b < labels.size(); ++b) {
      if (!strictly(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < labels.size() && cover; ++c) cover = !(strictly(a, c) && strictly(c, b));
      if (cover) out << "  n" << a << " -> n" << b << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string poset_dot(const std::string& name, const FinPoset& P) {
  std::vector<Bits> above;
  for (std::size_t i = 0; i < P.size(); ++i) above.push_back(P.up(i));
  return hasse_dot(name, P.labels(), above);
}

std::string point_label(const ContextDiagram& d, const SpectrumPoint& pt) {
  std::string s = "v" + d.label(pt.ideal.top);
  for (const auto& [c, x] : pt.filters) s += "\n" + d.label(c) + ": " + io::filter_outcome(d, c, x);
  return s;
}

std::string points_dot(const ContextDiagram& d) {
  const auto pts = external_points(d);
  std::vector<std::string> labels;
  for (const auto& p : pts) labels.push_back(point_label(d, p));
  return hasse_dot("points", labels, specialization_from_opens(subbasic_membership(d, pts)));
}

// ---- lattice / spectrum ----

struct LatticeSource {
  std::string present_file;
  std::optional<std::size_t> algebra;
  std::string poset_file;
};

LatticeRef load_lattice(const LatticeSource& src, const Options& opt, std::optional<PresentedLattice>* presented = nullptr) {
  const int given = !src.present_file.empty() + src.algebra.has_value() + !src.poset_file.empty();
  if (given != 1) throw Error(ErrorKind::Schema, "give exactly one of --present, --algebra, --poset");
  if (!src.present_file.empty()) {
    auto p = present(io::presentation_from_json(io::read_json_file(src.present_file)), opt.max_size);
    LatticeRef L = p.lattice();
    if (presented) presented->emplace(std::move(p));
    return L;
  }
  if (src.algebra) {
    if (*src.algebra < 1) throw Error(ErrorKind::Schema, "algebra dimension must be positive", "--algebra");
    return build_LA(standard_algebra(*src.algebra)).lattice();
  }
  const FinPoset P = io::poset_from_json(io::read_json_file(src.poset_file), "");
  return std::make_shared<const DLattice>(DLattice::downsets(P));
}

int run_lattice(const LatticeSource& src, const std::string& query, const std::string& normal, const Options& opt) {
  std::optional<PresentedLattice> presented;
  const LatticeRef L = load_lattice(src, opt, &presented);
  if (!query.empty() || !normal.empty()) {
    if (!presented) throw Error(ErrorKind::Schema, "--query and --normalize need --present");
    if (!normal.empty()) {
      const auto nf = normalize(parse_expr(normal), presented->generators());
      const std::string s = nf.to_string(presented->generators());
      if (opt.format == "json") {
        emit(json{{"normal_form", s}, {"class", L->label(presented->quotient(nf))}});
      } else {
        std::cout << s << "\n";
      }
      return kOk;
    }
    const Query q = parse_query(query);
    const Elem lhs = presented->quotient(q.lhs);
    if (q.rel == Query::Rel::None) {
      std::cout << (opt.format == "json" ? json(L->label(lhs)).dump() : L->label(lhs)) << "\n";
      return kOk;
    }
    const Elem rhs = presented->quotient(*q.rhs);
    const bool holds = q.rel == Query::Rel::Leq ? L->leq(lhs, rhs) : lhs == rhs;
    std::cout << (holds ? "true" : "false") << "\n";
    return kOk;
  }
  if (opt.format == "table") {
    std::cout << "size " << L->size() << "\n";
    for (auto e : L->elements()) std::cout << L->label(e) << "\n";
    return kOk;
  }
  if (opt.format == "dot") {
    std::vector<std::string> labels;
    std::vector<Bits> above;
    for (auto a : L->elements()) {
      labels.push_back(L->label(a));
      Bits row(L->size());
      for (auto b : L->elements()) row[b.id] = L->leq(a, b);
      above.push_back(std::move(row));
    }
    std::cout << hasse_dot("lattice", labels, above);
    return kOk;
  }
  json out = io::lattice_json(*L);
  out["distributive"] = is_distributive_lattice(*L);
  if (presented) out["generators"] = presented->generators();
  emit(out);
  return kOk;
}

int run_spectrum(const LatticeSource& src, const Options& opt) {
  const LatticeRef L = load_lattice(src, opt);
  const WellInside wi(L);
  const auto normal = is_normal(*L);
  const auto rs = regular_prime_filters(wi);
  const auto ri = rounded_ideals(wi);
  json well = json::array();
  for (auto a : L->elements()) {
    for (auto b : L->elements()) {
      if (auto y = wi.witness(a, b)) well.push_back({L->label(a), L->label(b), L->label(*y)});
    }
  }
  json out{{"lattice_size", L->size()}, {"normal", normal.normal}};
  if (normal.counterexample) {
    out["counterexample"] = {L->label(normal.counterexample->first), L->label(normal.counterexample->second)};
  }
  out["well_inside"] = well;
  json pts = json::array();
  for (const auto& x : rs) pts.push_back(io::elem_set_json(*L, x.members));
  out["regular_prime_filters"] = pts;
  json ids = json::array();
  for (const auto& I : ri) ids.push_back(io::elem_set_json(*L, I.members));
  out["rounded_ideals"] = ids;
  int status = kOk;
  if (normal.normal) {
    const auto bij = regular_rounded_bijection(wi);
    const auto op = check_ridl_is_opens(wi);
    out["regular_rounded_bijection"] = bij.ok();
    out["ridl_is_opens"] = {{"points", op.points}, {"opens", op.opens}, {"rounded_ideals", op.rounded_ideals},
                            {"ok", op.ok()}};
    if (!bij.ok() || !op.ok()) status = kVerifyFailed;
  }
  if (opt.format == "table") {
    std::cout << "size " << L->size() << "\nnormal " << (normal.normal ? "yes" : "no") << "\nregular prime filters "
              << rs.size() << "\nrounded ideals " << ri.size() << "\n";
  } else {
    emit(out);
  }
  return status;
}

// ---- diagrams ----

int run_diagram_view(const ContextDiagram& d, const std::string& view, const Options& opt) {
  if (opt.format == "dot") {
    std::cout << (view == "contexts" ? poset_dot("contexts", d.poset()) : points_dot(d));
    return kOk;
  }
  const bool table = opt.format == "table";
  if (view == "contexts") {
    json out = io::poset_json(d.poset());
    json algs = json::object();
    for (std::size_t c = 0; c < d.size(); ++c) algs[d.label(c)] = d.algebra(c)->outcomes();
    out["algebras"] = algs;
    if (table) {
      for (std::size_t c = 0; c < d.size(); ++c) std::cout << d.label(c) << "\n";
    } else {
      emit(out);
    }
    return kOk;
  }
  if (view == "ideals") {
    json arr = json::array();
    for (const auto& I : ideals(d.poset())) arr.push_back(io::ideal_json(d.poset(), I));
    if (table) {
      for (const auto& I : ideals(d.poset())) std::cout << "v" << d.label(I.top) << "\n";
    } else {
      emit(json{{"count", arr.size()}, {"ideals", arr}});
    }
    return kOk;
  }
  if (view == "points") {
    const auto pts = external_points(d);
    if (table) {
      for (const auto& p : pts) {
        std::cout << "v" << d.label(p.ideal.top);
        for (const auto& [c, x] : p.filters) std::cout << "  " << d.label(c) << "=" << io::filter_outcome(d, c, x);
        std::cout << "\n";
      }
      return kOk;
    }
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(io::point_json(d, p));
    emit(json{{"count", pts.size()}, {"points", arr}});
    return kOk;
  }
  if (view == "opens") {
    const auto opens = external_opens(d, opt.max_size);
    json arr = json::array();
    for (const auto& U : opens) arr.push_back(io::open_json(d, U));
    if (table) {
      std::cout << opens.size() << " opens\n";
    } else {
      emit(json{{"count", opens.size()}, {"opens", arr}});
    }
    return kOk;
  }
  if (view == "sier") {
    const auto pts = sier_points(d);
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(io::sier_point_json(d, p));
    if (table) {
      std::cout << pts.size() << " points\n";
    } else {
      emit(json{{"count", pts.size()}, {"points", arr}});
    }
    return kOk;
  }
  if (view == "frame") {
    const auto frame = internal_frame(d, opt.max_size);
    json values = json::object();
    json restrictions = json::array();
    for (std::size_t c = 0; c < d.size(); ++c) {
      values[d.label(c)] = frame.value(c).size();
      for (std::size_t c2 = 0; c2 < d.size(); ++c2) {
        if (c == c2 || !d.poset().leq(c, c2)) continue;
        json m = json::array();
        for (std::size_t k = 0; k < frame.value(c).size(); ++k) {
          auto r = frame.restrict(c, c2, k);
          m.push_back(r ? json(*r) : json(nullptr));
        }
        restrictions.push_back({{"from", d.label(c)}, {"to", d.label(c2)}, {"map", m}});
      }
    }
    if (table) {
      for (std::size_t c = 0; c < d.size(); ++c) std::cout << d.label(c) << " " << frame.value(c).size() << "\n";
    } else {
      emit(json{{"sizes", values}, {"restrictions", restrictions}});
    }
    return kOk;
  }
  if (view == "opfibration") {
    const auto r = check_opfibration_specialization(d);
    if (table) {
      std::cout << r.points << " points, " << r.mismatches.size() << " mismatches\n";
    } else {
      emit(json{{"points", r.points}, {"related_pairs", r.related_pairs}, {"mismatches", r.mismatches.size()},
                {"ok", r.ok()}});
    }
    return r.ok() ? kOk : kVerifyFailed;
  }
  if (view == "cstar") {
    const auto v = check_componentwise_cstar(complete_data(d));
    json arr = json::array();
    for (const auto& x : v) arr.push_back({{"kind", x.kind}, {"where", x.where}, {"detail", x.detail}});
    if (table) {
      std::cout << v.size() << " violations\n";
    } else {
      emit(json{{"violations", arr}, {"ok", v.empty()}});
    }
    return v.empty() ? kOk : kVerifyFailed;
  }
  throw Error(ErrorKind::Schema, "unknown view '" + view + "'", "view");
}

ContextDiagram load_bohr(std::optional<std::size_t> n, const std::string& spec) {
  if (n.has_value() == !spec.empty()) throw Error(ErrorKind::Schema, "give exactly one of --n, --spec");
  if (n) return full_context_poset(*n).diagram;
  return io::bohr_from_json(io::read_json_file(spec)).diagram;
}

int run_diagram_file(const std::string& file, const std::string& view, const Options& opt) {
  const io::json j = io::read_json_file(file);
  // raw data first, so listed-but-broken inclusions are reported as such
  const DiagramData data = io::diagram_data_from_json(j);
  if (view == "cstar") {
    const auto v = check_componentwise_cstar(data);
    json arr = json::array();
    for (const auto& x : v) arr.push_back({{"kind", x.kind}, {"where", x.where}, {"detail", x.detail}});
    emit(json{{"violations", arr}, {"ok", v.empty()}});
    return v.empty() ? kOk : kVerifyFailed;
  }
  return run_diagram_view(ContextDiagram(data), view, opt);
}

// ---- aqft ----

int run_aqft(const std::string& file, const std::string& view, const Options& opt) {
  const Net net(io::net_from_json(io::read_json_file(file)));
  const ContextDiagram P = build_P(net);
  if (view == "poset") {
    if (opt.format == "dot") {
      std::cout << poset_dot("P", P.poset());
    } else {
      emit(io::poset_json(P.poset()));
    }
    return kOk;
  }
  if (view == "points") return run_diagram_view(P, "points", opt);
  if (view == "triples") {
    const auto ts = aqft_points(net, P);
    json arr = json::array();
    for (const auto& t : ts) arr.push_back(io::triple_json(net, P, t));
    emit(json{{"count", ts.size()}, {"triples", arr}});
    return kOk;
  }
  if (view == "check") {
    const auto r = check_triples_vs_generic(net);
    json out{{"triples", r.triples}, {"generic_points", r.generic_points}, {"total", r.total},
             {"injective", r.injective}, {"surjective", r.surjective},
             {"evaluation_preserved", r.evaluation_preserved}, {"ok", r.ok()}};
    if (opt.format == "table") {
      std::cout << r.triples << " triples, " << r.generic_points << " points, " << (r.ok() ? "bijective" : "MISMATCH")
                << "\n";
    } else {
      emit(out);
    }
    return r.ok() ? kOk : kVerifyFailed;
  }
  throw Error(ErrorKind::Schema, "unknown view '" + view + "'", "view");
}

int run_verify_cmd(const std::string& suite, std::uint64_t seed, const Options& opt) {
  const auto lines = run_verify(suite, seed);
  bool ok = true;
  std::size_t passed = 0;
  for (const auto& l : lines) {
    ok = ok && l.pass;
    passed += l.pass;
  }
  if (opt.format == "json") {
    json arr = json::array();
    for (const auto& l : lines) {
      arr.push_back({{"suite", l.suite}, {"check", l.name}, {"pass", l.pass}, {"detail", l.detail}});
    }
    emit(json{{"seed", seed}, {"checks", arr}, {"passed", passed}, {"failed", lines.size() - passed}});
  } else {
    for (const auto& l : lines) {
      std::cout << (l.pass ? "PASS " : "FAIL ") << l.suite << "/" << l.name;
      if (!l.detail.empty()) std::cout << "  " << l.detail;
      std::cout << "\n";
    }
    std::cout << passed << " passed, " << lines.size() - passed << " failed (seed " << seed << ")\n";
  }
  return ok ? kOk : kVerifyFailed;
}

void usage_error(const std::string& msg) {
  std::cerr << json{{"error", {{"kind", "Usage"}, {"message", msg}, {"path", ""}}}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spectra of commutative algebras and their context bundles"};
  app.require_subcommand(1);
  Options opt;
  std::string format;
  auto add_common = [&](CLI::App* sub, const std::string& default_format) {
    sub->add_option("--format", format, "json, dot or table")
        ->check(CLI::IsMember({"json", "dot", "table"}))
        ->default_str(default_format);
    sub->add_option("--max-size", opt.max_size, "enumeration guard");
  };

  LatticeSource lsrc;
  std::string query, normal_expr;
  auto* lat = app.add_subcommand("lattice", "finite distributive lattices and presentations");
  lat->add_option("--present", lsrc.present_file, "presentation JSON");
  lat->add_option("--algebra", lsrc.algebra, "L of Q[i]^K");
  lat->add_option("--poset", lsrc.poset_file, "down-set lattice of a poset JSON");
  lat->add_option("--query", query, "\"expr <= expr\", \"expr = expr\" or an expression");
  lat->add_option("--normalize", normal_expr, "expression to put in normal form");
  add_common(lat, "json");

  auto* spec = app.add_subcommand("spectrum", "well-inside, regular spectrum and rounded ideals");
  spec->add_option("--present", lsrc.present_file, "presentation JSON");
  spec->add_option("--algebra", lsrc.algebra, "L of Q[i]^K");
  spec->add_option("--poset", lsrc.poset_file, "down-set lattice of a poset JSON");
  add_common(spec, "json");

  std::optional<std::size_t> bohr_n;
  std::string bohr_spec, view;
  auto* bohr = app.add_subcommand("bohr", "Bohrification diagrams");
  bohr->add_option("--n", bohr_n, "all partitions of an n-set");
  bohr->add_option("--spec", bohr_spec, "Bohrification spec JSON");
  bohr->add_option("view", view, "contexts|ideals|points|opens|sier|frame|opfibration|cstar");
  add_common(bohr, "json");

  std::string file;
  auto* diag = app.add_subcommand("diagram", "context diagrams from JSON");
  diag->add_option("file", file, "diagram JSON")->required();
  diag->add_option("view", view, "contexts|ideals|points|opens|sier|frame|opfibration|cstar");
  add_common(diag, "json");

  auto* aq = app.add_subcommand("aqft", "nets of algebras over regions");
  aq->add_option("file", file, "net JSON")->required();
  aq->add_option("view", view, "poset|points|triples|check");
  add_common(aq, "json");

  std::string suite = "all";
  std::uint64_t seed = 0;
  auto* ver = app.add_subcommand("verify", "property suites");
  ver->add_option("--suite", suite, "lattice|spectrum|bundle|aqft|all")
      ->check(CLI::IsMember({"lattice", "spectrum", "bundle", "aqft", "all"}));
  ver->add_option("--seed", seed, "seed for randomized checks");
  add_common(ver, "table");

  std::string ex_diagram, ex_net, graph = "points";
  auto* ex = app.add_subcommand("export", "DOT export of points and context posets");
  ex->add_option("--n", bohr_n, "all partitions of an n-set");
  ex->add_option("--spec", bohr_spec, "Bohrification spec JSON");
  ex->add_option("--diagram", ex_diagram, "diagram JSON");
  ex->add_option("--net", ex_net, "net JSON");
  ex->add_option("--graph", graph, "points|contexts")->check(CLI::IsMember({"points", "contexts"}));
  add_common(ex, "dot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    usage_error(e.what());
    return kInvalid;
  }

  auto* sub = app.get_subcommands().front();
  opt.format = format.empty() ? sub->get_option("--format")->get_default_str() : format;

  try {
    if (sub == lat) return run_lattice(lsrc, query, normal_expr, opt);
    if (sub == spec) return run_spectrum(lsrc, opt);
    if (sub == bohr) return run_diagram_view(load_bohr(bohr_n, bohr_spec), view.empty() ? "points" : view, opt);
    if (sub == diag) return run_diagram_file(file, view.empty() ? "points" : view, opt);
    if (sub == aq) return run_aqft(file, view.empty() ? "check" : view, opt);
    if (sub == ver) return run_verify_cmd(suite, seed, opt);
    if (sub == ex) {
      const int given = bohr_n.has_value() + !bohr_spec.empty() + !ex_diagram.empty() + !ex_net.empty();
      if (given != 1) throw Error(ErrorKind::Schema, "give exactly one of --n, --spec, --diagram, --net");
      if (!ex_net.empty()) {
        const Net net(io::net_from_json(io::read_json_file(ex_net)));
        const ContextDiagram P = build_P(net);
        std::cout << (graph == "contexts" ? poset_dot("P", P.poset()) : points_dot(P));
        return kOk;
      }
      const ContextDiagram d = !ex_diagram.empty() ? io::diagram_from_json(io::read_json_file(ex_diagram))
                                                   : load_bohr(bohr_n, bohr_spec);
      Options dot = opt;
      if (opt.format != "dot") throw Error(ErrorKind::Schema, "export writes DOT only", "--format");
      return run_diagram_view(d, graph == "contexts" ? "contexts" : "points", dot);
    }
  } catch (const Error& e) {
    std::cerr << io::error_json(e).dump() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
