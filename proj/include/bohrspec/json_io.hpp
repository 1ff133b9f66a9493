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

#pragma once

// JSON input schemas (presentations, diagrams, Bohrification specs, nets)
// and JSON renderings of results. Schema errors carry a JSON pointer.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bohrspec/aqft.hpp"
#include "bohrspec/bohrify.hpp"
#include "bohrspec/bundle.hpp"
#include "bohrspec/diagram.hpp"
#include "bohrspec/error.hpp"
#include "bohrspec/expr.hpp"
#include "bohrspec/present.hpp"
#include "bohrspec/spectrum.hpp"

namespace bohrspec::io {

using json = nlohmann::ordered_json;

inline std::string escape_pointer(const std::string& token) {
  std::string out;
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + escape_pointer(key); }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline json parse_json(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Schema, source + ": " + e.what(), "");
  }
}

inline json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::Schema, "cannot open '" + file + "'", "");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), file);
}

namespace detail {

inline const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw Error(ErrorKind::Schema, "expected an object", path);
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::Schema, "missing key '" + key + "'", child(path, key));
  return *it;
}

inline const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw Error(ErrorKind::Schema, "expected an array", path);
  return j;
}

inline const json& object_at(const json& j, const std::string& path) {
  if (!j.is_object()) throw Error(ErrorKind::Schema, "expected an object", path);
  return j;
}

inline std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) throw Error(ErrorKind::Schema, "expected a string", path);
  return j.get<std::string>();
}

inline std::vector<std::string> strings_at(const json& j, const std::string& path) {
  array_at(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_at(j[i], child(path, i)));
  return out;
}

/// Rethrows library errors raised while reading the value at `path` with
/// that path, unless they already carry one.
template <class F>
auto at_path(const std::string& path, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.path().empty()) throw;
    throw Error(e.kind(), e.message(), path);
  }
}

}  // namespace detail

/// {"elements": [...], "le": [[lo, hi], ...]}
inline FinPoset poset_from_json(const json& j, const std::string& path) {
  const auto labels = detail::strings_at(detail::member(j, "elements", path), child(path, "elements"));
  std::vector<std::pair<std::size_t, std::size_t>> le;
  if (j.contains("le")) {
    const std::string lp = child(path, "le");
    const json& rel = detail::array_at(j["le"], lp);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const std::string ip = child(lp, i);
      const auto pair = detail::strings_at(rel[i], ip);
      if (pair.size() != 2) throw Error(ErrorKind::Schema, "expected [lower, upper]", ip);
      std::size_t idx[2];
      for (int k = 0; k < 2; ++k) {
        auto it = std::find(labels.begin(), labels.end(), pair[k]);
        if (it == labels.end()) throw Error(ErrorKind::Schema, "unknown element '" + pair[k] + "'", child(ip, k));
        idx[k] = static_cast<std::size_t>(it - labels.begin());
      }
      le.emplace_back(idx[0], idx[1]);
    }
  }
  return detail::at_path(path, [&] { return FinPoset::from_relation(labels, le); });
}

/// {"generators": [...], "relations": [[lhs, rhs], ...]}
inline Presentation presentation_from_json(const json& j) {
  Presentation p;
  p.generators = detail::strings_at(detail::member(j, "generators", ""), "/generators");
  if (j.contains("relations")) {
    const json& rel = detail::array_at(j["relations"], "/relations");
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const std::string ip = child("/relations", i);
      const auto pair = detail::strings_at(rel[i], ip);
      if (pair.size() != 2) throw Error(ErrorKind::Schema, "expected [lhs, rhs]", ip);
      auto lhs = detail::at_path(child(ip, 0), [&] { return parse_expr(pair[0]); });
      auto rhs = detail::at_path(child(ip, 1), [&] { return parse_expr(pair[1]); });
      for (const auto* e : {&lhs, &rhs}) {
        for (const auto& g : e->generators()) {
          if (std::find(p.generators.begin(), p.generators.end(), g) == p.generators.end()) {
            throw Error(ErrorKind::UnknownGenerator, g, ip);
          }
        }
      }
      p.relations.emplace_back(std::move(lhs), std::move(rhs));
    }
  }
  return p;
}

inline std::vector<std::string> outcomes_from_json(const json& j, const std::string& path) {
  if (j.is_array()) return detail::strings_at(j, path);
  return detail::strings_at(detail::member(j, "outcomes", path), child(path, "outcomes"));
}

/// "lo<=hi" keyed object of {"outcome_map": {target: source}} (or the bare map).
inline std::vector<InclusionSpec> inclusions_from_json(const json& j, const std::string& path, const FinPoset& P,
                                                       const std::vector<AlgebraRef>& algebras) {
  std::vector<InclusionSpec> out;
  detail::object_at(j, path);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string ep = child(path, it.key());
    const auto sep = it.key().find("<=");
    if (sep == std::string::npos) throw Error(ErrorKind::Schema, "key must be 'lower<=upper'", ep);
    auto lo = P.index_of(it.key().substr(0, sep));
    auto hi = P.index_of(it.key().substr(sep + 2));
    if (!lo || !hi) throw Error(ErrorKind::Schema, "unknown element in '" + it.key() + "'", ep);
    const json& body = it.value();
    const std::string mp = body.is_object() && body.contains("outcome_map") ? child(ep, "outcome_map") : ep;
    const json& m = body.is_object() && body.contains("outcome_map") ? body["outcome_map"] : body;
    detail::object_at(m, mp);
    std::map<std::string, std::string> labels;
    for (auto kv = m.begin(); kv != m.end(); ++kv) labels[kv.key()] = detail::string_at(kv.value(), child(mp, kv.key()));
    auto idx = detail::at_path(mp, [&] { return AlgebraHom::resolve(*algebras[*lo], *algebras[*hi], labels); });
    if (labels.size() != algebras[*hi]->dim()) {
      throw Error(ErrorKind::InvalidDiagram, "outcome_map has keys outside the target outcomes", mp);
    }
    out.push_back({*lo, *hi, std::move(idx)});
  }
  return out;
}

inline DiagramData diagram_data_from_json(const json& j) {
  const FinPoset P = poset_from_json(detail::member(j, "poset", ""), "/poset");
  DiagramData d{P, {}, {}};
  const json& algs = detail::object_at(detail::member(j, "algebras", ""), "/algebras");
  for (std::size_t c = 0; c < P.size(); ++c) {
    const std::string ap = child("/algebras", P.label(c));
    auto it = algs.find(P.label(c));
    if (it == algs.end()) throw Error(ErrorKind::Schema, "missing algebra for '" + P.label(c) + "'", ap);
    auto outs = outcomes_from_json(*it, ap);
    d.algebras.push_back(detail::at_path(ap, [&] { return make_algebra(P.label(c), outs); }));
  }
  for (auto it = algs.begin(); it != algs.end(); ++it) {
    if (!P.index_of(it.key())) {
      throw Error(ErrorKind::Schema, "algebra for unknown context '" + it.key() + "'", child("/algebras", it.key()));
    }
  }
  if (j.contains("inclusions")) d.inclusions = inclusions_from_json(j["inclusions"], "/inclusions", P, d.algebras);
  return d;
}

inline ContextDiagram diagram_from_json(const json& j) { return ContextDiagram(diagram_data_from_json(j)); }

inline Partition partition_from_json(const json& j, const std::string& path) {
  detail::array_at(j, path);
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < j.size(); ++i) blocks.push_back(detail::strings_at(j[i], child(path, i)));
  return Partition(std::move(blocks));
}

/// {"bohr": {"n": 3}} or {"bohr": {"base": [...], "contexts": [...], "order": [[a, b], ...]}}.
/// A context is a partition (array of blocks) or {"name": ..., "blocks": partition}.
inline BohrDiagram bohr_from_json(const json& j) {
  const json& b = detail::object_at(detail::member(j, "bohr", ""), "/bohr");
  if (b.contains("n")) {
    if (!b["n"].is_number_integer()) throw Error(ErrorKind::Schema, "expected an integer", "/bohr/n");
    const auto n = b["n"].get<long long>();
    return detail::at_path("/bohr/n", [&] { return full_context_poset(n < 0 ? 0 : static_cast<std::size_t>(n)); });
  }
  UserContextSpec spec;
  spec.base = detail::strings_at(detail::member(b, "base", "/bohr"), "/bohr/base");
  const json& cs = detail::array_at(detail::member(b, "contexts", "/bohr"), "/bohr/contexts");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string cp = child("/bohr/contexts", i);
    if (cs[i].is_object()) {
      UserContext u;
      if (cs[i].contains("name")) u.name = detail::string_at(cs[i]["name"], child(cp, "name"));
      u.partition = partition_from_json(detail::member(cs[i], "blocks", cp), child(cp, "blocks"));
      spec.contexts.push_back(std::move(u));
    } else {
      spec.contexts.push_back({std::nullopt, partition_from_json(cs[i], cp)});
    }
  }
  if (b.contains("order")) {
    const json& ord = detail::array_at(b["order"], "/bohr/order");
    for (std::size_t i = 0; i < ord.size(); ++i) {
      const auto pair = detail::strings_at(ord[i], child("/bohr/order", i));
      if (pair.size() != 2) throw Error(ErrorKind::Schema, "expected [lower, upper]", child("/bohr/order", i));
      spec.order.emplace_back(pair[0], pair[1]);
    }
  }
  return user_contexts(spec);
}

/// {"regions": poset, "net_outcomes": {O: [...]}, "region_maps": {"O1<=O2": {...}},
///  "contexts_per_region": {O: [partition, ...]}}
inline NetData net_from_json(const json& j) {
  const FinPoset R = poset_from_json(detail::member(j, "regions", ""), "/regions");
  NetData d{R, {}, {}, {}};
  const json& outs = detail::object_at(detail::member(j, "net_outcomes", ""), "/net_outcomes");
  std::vector<AlgebraRef> algebras;
  for (std::size_t o = 0; o < R.size(); ++o) {
    const std::string op = child("/net_outcomes", R.label(o));
    auto it = outs.find(R.label(o));
    if (it == outs.end()) throw Error(ErrorKind::Schema, "missing outcomes for '" + R.label(o) + "'", op);
    d.outcomes.push_back(outcomes_from_json(*it, op));
    algebras.push_back(detail::at_path(op, [&] { return make_algebra(R.label(o), d.outcomes.back()); }));
  }
  if (j.contains("region_maps")) d.region_maps = inclusions_from_json(j["region_maps"], "/region_maps", R, algebras);
  const json& cpr = detail::object_at(detail::member(j, "contexts_per_region", ""), "/contexts_per_region");
  for (std::size_t o = 0; o < R.size(); ++o) {
    const std::string cp = child("/contexts_per_region", R.label(o));
    auto it = cpr.find(R.label(o));
    if (it == cpr.end()) throw Error(ErrorKind::Schema, "missing contexts for '" + R.label(o) + "'", cp);
    detail::array_at(*it, cp);
    std::vector<Partition> cs;
    for (std::size_t i = 0; i < it->size(); ++i) cs.push_back(partition_from_json((*it)[i], child(cp, i)));
    d.contexts.push_back(std::move(cs));
  }
  return d;
}

// ---- output ----

inline json error_json(const Error& e) {
  return json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.message()}, {"path", e.path()}}}};
}

inline json elem_set_json(const DLattice& L, const Bits& s) {
  json out = json::array();
  for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i)) {
    out.push_back(L.label(Elem{static_cast<std::uint32_t>(i)}));
  }
  return out;
}

inline json lattice_json(const DLattice& L) {
  json elems = json::array();
  for (auto e : L.elements()) elems.push_back(L.label(e));
  json covers = json::array();
  for (auto a : L.elements()) {
    for (auto b : L.elements()) {
      if (a.id == b.id || !L.leq(a, b)) continue;
      bool cover = true;
      for (auto c : L.elements()) {
        if (c.id != a.id && c.id != b.id && L.leq(a, c) && L.leq(c, b)) {
          cover = false;
          break;
        }
      }
      if (cover) covers.push_back({L.label(a), L.label(b)});
    }
  }
  return json{{"size", L.size()}, {"elements", elems}, {"covers", covers}};
}

/// The outcome whose evaluation a prime filter of L_C is.
inline std::string filter_outcome(const ContextDiagram& d, std::size_t c, const PrimeFilter& x) {
  const DLattice& L = *d.lattice(c);
  Mask m = full_mask(L.points().size());
  for (auto e : x.elements()) m &= L.bits(e);
  for (std::size_t i = 0; i < L.points().size(); ++i) {
    if (m == (Mask{1} << i)) return L.points()[i];
  }
  return L.set_label(m);
}

inline json ideal_json(const FinPoset& P, const PosetIdeal& I) {
  json members = json::array();
  for (auto c : members_of(I.members)) members.push_back(P.label(c));
  return json{{"top", P.label(I.top)}, {"members", members}};
}

inline json point_json(const ContextDiagram& d, const SpectrumPoint& pt) {
  json filters = json::object();
  for (const auto& [c, x] : pt.filters) filters[d.label(c)] = filter_outcome(d, c, x);
  return json{{"ideal", ideal_json(d.poset(), pt.ideal)}, {"characters", filters}};
}

inline json open_json(const ContextDiagram& d, const ExternalOpen& U) {
  json fam = json::object();
  for (std::size_t c = 0; c < d.size(); ++c) {
    fam[d.label(c)] = elem_set_json(*d.lattice(c), U.family[c].members);
  }
  return fam;
}

inline json sier_point_json(const ContextDiagram& d, const SierPoint& pt) {
  json fam = json::object();
  for (const auto& [c, u] : pt.family) fam[d.label(c)] = elem_set_json(*d.lattice(c), u.members);
  return json{{"ideal", ideal_json(d.poset(), pt.ideal)}, {"family", fam}};
}

inline json poset_json(const FinPoset& P) {
  json covers = json::array();
  for (auto [lo, hi] : P.covers()) covers.push_back({P.label(lo), P.label(hi)});
  return json{{"elements", P.labels()}, {"covers", covers}};
}

inline json triple_json(const Net& net, const ContextDiagram& P, const AqftPoint& t) {
  json I = json::object();
  for (const auto& [o, io] : t.I) {
    json cs = json::array();
    for (auto c : members_of(io)) cs.push_back(net.contexts(o).label(c));
    I[net.regions().label(o)] = cs;
  }
  json lambda = json::object();
  for (const auto& [slot, ch] : t.lambda) {
    const std::size_t k = net.pair_index(slot.first, slot.second);
    lambda[P.label(k)] = P.algebra(k)->outcomes()[ch];
  }
  return json{{"R", ideal_json(net.regions(), t.R)}, {"I", I}, {"lambda", lambda}};
}

}  // namespace bohrspec::io
