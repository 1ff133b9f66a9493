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

// Property suites run by `bohrspec verify`. Each check yields one line;
// output depends only on the seed.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bohrspec/aqft.hpp"
#include "bohrspec/bohrify.hpp"
#include "bohrspec/bundle.hpp"
#include "bohrspec/fixtures.hpp"
#include "bohrspec/la.hpp"
#include "bohrspec/present.hpp"
#include "bohrspec/spectrum.hpp"

namespace bohrspec {

struct CheckLine {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Every labelled poset on n elements (n <= 4), by filtering relations.
inline std::vector<FinPoset> all_posets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  std::vector<FinPoset> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << slots.size()); ++m) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (m >> s & 1) r[slots[s].first][slots[s].second] = true;
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (i != j && r[i][j] && r[j][i]) ok = false;
        for (std::size_t k = 0; k < n && ok; ++k) {
          if (r[i][j] && r[j][k] && !r[i][k]) ok = false;
        }
      }
    }
    if (!ok) continue;
    std::vector<std::pair<std::size_t, std::size_t>> le;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (m >> s & 1) le.push_back(slots[s]);
    }
    out.push_back(FinPoset::from_relation(labels, le));
  }
  return out;
}

/// All monotone maps q -> p, as index vectors.
inline std::vector<std::vector<std::size_t>> monotone_maps(const FinPoset& q, const FinPoset& p) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> f(q.size(), 0);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == q.size()) {
      out.push_back(f);
      return;
    }
    for (std::size_t v = 0; v < p.size(); ++v) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (q.leq(j, i) && !p.leq(f[j], v)) ok = false;
        if (q.leq(i, j) && !p.leq(v, f[j])) ok = false;
      }
      if (!ok) continue;
      f[i] = v;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

/// Random lattice expression over `gens` of bounded depth.
inline LatExpr random_expr(std::mt19937_64& rng, const std::vector<std::string>& gens, int depth) {
  const auto pick = rng() % 8;
  if (depth == 0 || pick < 3) {
    if (pick == 0 && rng() % 4 == 0) return rng() % 2 ? LatExpr::top() : LatExpr::bottom();
    return LatExpr::gen(gens[rng() % gens.size()]);
  }
  LatExpr a = random_expr(rng, gens, depth - 1);
  LatExpr b = random_expr(rng, gens, depth - 1);
  return pick % 2 ? LatExpr::meet(std::move(a), std::move(b)) : LatExpr::join(std::move(a), std::move(b));
}

/// Random surjection from k outcomes onto `onto` outcomes (k >= onto).
inline std::vector<std::size_t> random_surjection(std::mt19937_64& rng, std::size_t k, std::size_t onto) {
  std::vector<std::size_t> m(k);
  for (std::size_t i = 0; i < k; ++i) m[i] = i < onto ? i : rng() % onto;
  std::shuffle(m.begin(), m.end(), rng);
  return m;
}

struct ShrinkInstance {
  std::size_t k = 0;
  LatExpr phi = LatExpr::top();
  std::vector<std::pair<std::string, AlgElement>> args;
  Mask v = 0;
};

/// An instance with v << phi(D(a_i)) on L_{Q[i]^k}: random args with
/// entries in {-2, ..., 2}/2, v a random subset of the value.
inline ShrinkInstance random_shrink_instance(std::mt19937_64& rng) {
  ShrinkInstance inst;
  inst.k = 1 + rng() % 3;
  const auto A = standard_algebra(inst.k);
  const std::vector<std::string> gens{"x", "y", "z"};
  const std::size_t n = 1 + rng() % 3;
  std::vector<std::string> used(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(n));
  inst.phi = random_expr(rng, used, 3);
  for (const auto& g : used) {
    std::vector<Rational> v;
    for (std::size_t o = 0; o < inst.k; ++o) v.emplace_back(static_cast<int>(rng() % 5) - 2, 2);
    inst.args.emplace_back(g, AlgElement::real(A, v));
  }
  const auto LA = build_LA(A);
  const Elem value = evaluate(inst.phi, *LA, [&](const std::string& name) {
    for (const auto& [g, a] : inst.args) {
      if (g == name) return LA.D(a);
    }
    throw Error(ErrorKind::UnknownGenerator, name);
  });
  inst.v = LA->bits(value) & static_cast<Mask>(rng());
  return inst;
}

class Verifier {
 public:
  explicit Verifier(std::uint64_t seed) : seed_(seed) {}

  const std::vector<CheckLine>& lines() const { return lines_; }
  bool all_passed() const {
    for (const auto& l : lines_) {
      if (!l.pass) return false;
    }
    return true;
  }

  void run(const std::string& suite) {
    if (suite == "lattice" || suite == "all") lattice();
    if (suite == "spectrum" || suite == "all") spectrum();
    if (suite == "bundle" || suite == "all") bundle();
    if (suite == "aqft" || suite == "all") aqft();
    if (suite != "lattice" && suite != "spectrum" && suite != "bundle" && suite != "aqft" && suite != "all") {
      throw Error(ErrorKind::Schema, "unknown suite '" + suite + "'", "--suite");
    }
  }

 private:
  void check(const std::string& suite, const std::string& name, bool pass, std::string detail = {}) {
    lines_.push_back({suite, name, pass, std::move(detail)});
  }

  template <class F>
  void guarded(const std::string& suite, const std::string& name, F f) {
    try {
      f();
    } catch (const std::exception& e) {
      check(suite, name, false, std::string("exception: ") + e.what());
    }
  }

  void lattice() {
    const std::string S = "lattice";
    guarded(S, "normalize-examples", [&] {
      const std::vector<std::string> g{"g1", "g2", "g3"};
      bool ok = normalize(parse_expr("(g1 & g2) v g1"), g).to_string(g) == "g1" &&
                normalize(parse_expr("(g1 v g2) & (g1 v g3)"), g).to_string(g) == "g1 v (g2 & g3)" &&
                normalize(parse_expr("T & g1"), g).to_string(g) == "g1";
      check(S, "normalize-examples", ok);
    });
    guarded(S, "normalize-laws", [&] {
      std::mt19937_64 rng(seed_);
      const std::vector<std::string> g{"g1", "g2", "g3"};
      const auto free3 = free_lattice(g);
      std::size_t bad = 0;
      for (int i = 0; i < 200; ++i) {
        const LatExpr e1 = random_expr(rng, g, 4);
        const LatExpr e2 = random_expr(rng, g, 4);
        const NormalForm n1 = normalize(e1, g);
        const NormalForm n2 = normalize(e2, g);
        if (!(normalize(LatExpr::meet(e1, e2), g) == (n1 & n2))) ++bad;
        if (!(normalize(LatExpr::join(e1, e2), g) == (n1 | n2))) ++bad;
        if (!(normalize(to_expr(n1, g), g) == n1)) ++bad;
        // equal normal forms iff equal in the free lattice
        if ((n1 == n2) != (free3.quotient(e1) == free3.quotient(e2))) ++bad;
      }
      check(S, "normalize-laws", bad == 0, "200 random pairs, " + std::to_string(bad) + " failures");
    });
    guarded(S, "present-examples", [&] {
      const auto f2 = present(fixtures::free2());
      const auto b2 = present(fixtures::boolean2());
      const auto c1 = present(fixtures::collapse1());
      check(S, "present-examples", f2.lattice()->size() == 6 && b2.lattice()->size() == 4 && c1.lattice()->size() == 2,
            "free2=" + std::to_string(f2.lattice()->size()) + " boolean2=" + std::to_string(b2.lattice()->size()) +
                " collapse=" + std::to_string(c1.lattice()->size()));
    });
    guarded(S, "present-relations-hold", [&] {
      bool ok = true;
      for (const auto& p : {fixtures::free2(), fixtures::boolean2(), fixtures::collapse1()}) {
        const auto q = present(p);
        for (const auto& [l, r] : p.relations) ok = ok && q.quotient(l) == q.quotient(r);
        ok = ok && is_distributive_lattice(*q.lattice());
      }
      check(S, "present-relations-hold", ok);
    });
    guarded(S, "LA-axioms", [&] {
      std::size_t violations = 0, instances = 0;
      for (std::size_t k = 1; k <= 3; ++k) {
        const auto A = standard_algebra(k);
        const auto sample = grid_elements(A, {-1, 0, 1});
        instances += sample.size();
        violations += check_LA_axioms(build_LA(A), sample).size();
      }
      check(S, "LA-axioms", violations == 0,
            std::to_string(instances) + " sample elements, " + std::to_string(violations) + " violations");
    });
    guarded(S, "LA-boolean", [&] {
      bool ok = true;
      for (std::size_t k = 1; k <= 4; ++k) {
        const auto LA = build_LA(standard_algebra(k));
        const DLattice& L = *LA;
        ok = ok && L.size() == (std::size_t{1} << k);
        const WellInside wi(LA.lattice());
        for (auto a : L.elements()) {
          for (auto b : L.elements()) ok = ok && wi(a, b) == L.leq(a, b);
        }
      }
      check(S, "LA-boolean", ok, "k = 1..4");
    });
    guarded(S, "induced-hom-functorial", [&] {
      std::mt19937_64 rng(seed_ + 1);
      bool ok = true;
      for (int i = 0; i < 30; ++i) {
        const std::size_t k1 = 1 + rng() % 2, k2 = k1 + rng() % 2, k3 = k2 + rng() % 2;
        const auto A1 = standard_algebra(k1), A2 = standard_algebra(k2), A3 = standard_algebra(k3);
        const AlgebraHom h1(A1, A2, random_surjection(rng, k2, k1));
        const AlgebraHom h2(A2, A3, random_surjection(rng, k3, k2));
        const auto L1 = build_LA(A1), L2 = build_LA(A2), L3 = build_LA(A3);
        const auto f1 = induced_hom(h1, L1, L2), f2 = induced_hom(h2, L2, L3);
        ok = ok && induced_hom(h2.after(h1), L1, L3) == f2.after(f1);
        ok = ok && f1.preserves_structure() && f2.preserves_structure();
        ok = ok && induced_hom(AlgebraHom::identity(A1), L1, L1) == LatticeHom::identity(L1.lattice());
      }
      check(S, "induced-hom-functorial", ok, "30 random composable pairs");
    });
  }

  void spectrum() {
    const std::string S = "spectrum";
    guarded(S, "well-inside-examples", [&] {
      const auto chain = std::make_shared<const DLattice>(DLattice::downsets(FinPoset::chain({"a", "b"})));
      const Elem m{1};
      const auto b2 = std::make_shared<const DLattice>(DLattice::powerset({"1", "2"}));
      bool ok = well_inside(*chain, m, chain->top()).has_value() && !well_inside(*chain, m, m).has_value();
      ok = ok && well_inside(*b2, Elem{1}, Elem{1}).has_value();
      check(S, "well-inside-examples", ok);
    });
    guarded(S, "normality", [&] {
      bool ok = true;
      for (std::size_t k = 0; k <= 4; ++k) {
        std::vector<std::string> pts;
        for (std::size_t i = 0; i < k; ++i) pts.push_back(std::to_string(i + 1));
        ok = ok && is_normal(DLattice::powerset(pts)).normal;
      }
      ok = ok && is_normal(DLattice::downsets(FinPoset::chain({"a", "b"}))).normal;
      check(S, "normality", ok, "Boolean 2^0..2^4 and the 3-chain");
    });
    guarded(S, "gelfand-round-trip", [&] {
      bool ok = true;
      for (std::size_t k = 1; k <= 5; ++k) {
        const auto A = standard_algebra(k);
        const auto LA = build_LA(A);
        const auto rs = regular_prime_filters(LA.lattice());
        const auto chars = characters(A);
        ok = ok && rs.size() == chars.size();
        // character o <-> {e : o in e}; commutes with D on the grid
        for (const auto& chi : chars) {
          Bits x(LA->size());
          for (auto e : LA->elements()) {
            if (LA->bits(e) >> chi.outcome() & 1) x.set(e.id);
          }
          ok = ok && std::count_if(rs.begin(), rs.end(), [&](const PrimeFilter& f) { return f.members == x; }) == 1;
          if (k <= 3) {
            for (const auto& a : grid_elements(A, {-1, 0, 1})) {
              ok = ok && x.test(LA.D(a).id) == (chi(a).re > 0);
            }
          }
        }
      }
      check(S, "gelfand-round-trip", ok, "Q[i]^1..Q[i]^5");
    });
    guarded(S, "birkhoff-bijection", [&] {
      std::size_t lattices = 0, normal = 0, bad = 0;
      for (std::size_t n = 0; n <= 4; ++n) {
        for (const auto& p : all_posets(n)) {
          ++lattices;
          const auto L = std::make_shared<const DLattice>(DLattice::downsets(p));
          if (!is_normal(*L).normal) continue;
          ++normal;
          const WellInside wi(L);
          if (!regular_rounded_bijection(wi).ok() || !check_ridl_is_opens(wi).ok()) ++bad;
        }
      }
      check(S, "birkhoff-bijection", bad == 0,
            std::to_string(lattices) + " down-set lattices, " + std::to_string(normal) + " normal, " +
                std::to_string(bad) + " failures");
    });
    guarded(S, "chain3-opens", [&] {
      const auto L = std::make_shared<const DLattice>(DLattice::downsets(FinPoset::chain({"a", "b"})));
      const auto r = check_ridl_is_opens(WellInside(L));
      check(S, "chain3-opens", r.ok() && r.points == 1 && r.opens == 2,
            std::to_string(r.points) + " points, " + std::to_string(r.opens) + " opens");
    });
    guarded(S, "shrink-lemmas", [&] {
      std::mt19937_64 rng(seed_ + 2);
      std::size_t bad = 0;
      for (int i = 0; i < 100; ++i) {
        const auto inst = random_shrink_instance(rng);
        const auto A = standard_algebra(inst.k);
        const auto LA = build_LA(A);
        const Elem v = LA->at(inst.v);
        const Rational r = shrink_witness(LA, v, inst.phi, inst.args);
        const Elem shrunk = evaluate(inst.phi, *LA, [&](const std::string& name) {
          for (const auto& [g, a] : inst.args) {
            if (g == name) return LA.D(a - AlgElement::constant(A, r));
          }
          throw Error(ErrorKind::UnknownGenerator, name);
        });
        if (!LA->leq(v, shrunk) || r <= 0) ++bad;
        // push: a random surjection onto Q[i]^k from a larger algebra
        const std::size_t k2 = inst.k + rng() % 2;
        const auto B = standard_algebra(k2);
        const auto LB = build_LA(B);
        const AlgebraHom h(A, B, random_surjection(rng, k2, inst.k));
        const Elem u = LA->at(static_cast<Mask>(rng()) & full_mask(inst.k));
        const auto Lh = induced_hom(h, LA, LB);
        const Elem w = LB->at(LB->bits(Lh(u)) & static_cast<Mask>(rng()));
        const Elem u2 = push_well_inside(h, LA, LB, u, w);
        if (!well_inside(*LA, u2, u) || !LB->leq(w, Lh(u2))) ++bad;
      }
      check(S, "shrink-lemmas", bad == 0, "100 random instances, " + std::to_string(bad) + " failures");
    });
  }

  void bundle() {
    const std::string S = "bundle";
    guarded(S, "two-context", [&] {
      const auto d = full_context_poset(2).diagram;
      const auto pts = external_points(d);
      const auto opens = external_opens(d);
      const auto sier = sier_points(d);
      const auto frame = internal_frame(d);
      bool restriction_ok = true;
      for (std::size_t k = 0; k < frame.value(0).size(); ++k) restriction_ok = restriction_ok && frame.restrict(0, 1, k);
      check(S, "two-context",
            pts.size() == 3 && opens.size() == 5 && sier.size() == 6 && frame.value(0).size() == 5 &&
                frame.value(1).size() == 4 && restriction_ok,
            std::to_string(pts.size()) + " points, " + std::to_string(opens.size()) + " opens, " +
                std::to_string(sier.size()) + " sier points, frame " + std::to_string(frame.value(0).size()) + "/" +
                std::to_string(frame.value(1).size()));
    });
    guarded(S, "bohr-3", [&] {
      const auto d = full_context_poset(3).diagram;
      const auto ids = ideals(d.poset());
      std::string counts;
      bool ok = d.size() == 5 && ids.size() == 5;
      std::size_t total = 0;
      for (const auto& I : ids) {
        const auto direct = external_points_over(d, I);
        const auto colim = external_points_via_colimit(d, I);
        ok = ok && direct == colim;
        counts += (counts.empty() ? "" : ",") + std::to_string(direct.size());
        total += direct.size();
      }
      check(S, "bohr-3", ok && total == 10 && counts == "1,2,2,2,3", std::to_string(total) + " points (" + counts + ")");
    });
    guarded(S, "bohr-counting-routes", [&] {
      bool ok = true;
      std::string counts;
      for (std::size_t n = 1; n <= 4; ++n) {
        const auto b = full_context_poset(n);
        std::size_t by_chars = 0;
        for (const auto& I : ideals(b.diagram.poset())) by_chars += characters(b.diagram.algebra(I.top)).size();
        const auto pts = external_points(b.diagram).size();
        ok = ok && pts == by_chars;
        counts += (counts.empty() ? "" : ",") + std::to_string(pts);
      }
      check(S, "bohr-counting-routes", ok, "n=1..4: " + counts);
    });
    guarded(S, "componentwise-cstar", [&] {
      std::size_t v = 0;
      for (const auto& [name, d] : fixtures::shipped_diagrams()) v += check_componentwise_cstar(complete_data(d)).size();
      check(S, "componentwise-cstar", v == 0, std::to_string(v) + " violations");
    });
    guarded(S, "opfibration", [&] {
      std::size_t mismatches = 0, points = 0;
      for (const auto& [name, d] : fixtures::shipped_diagrams()) {
        const auto r = check_opfibration_specialization(d);
        mismatches += r.mismatches.size();
        points += r.points;
      }
      check(S, "opfibration", mismatches == 0,
            std::to_string(points) + " sier points, " + std::to_string(mismatches) + " mismatches");
    });
    guarded(S, "geometricity", [&] {
      std::size_t maps = 0, bad = 0;
      const auto diagrams = fixtures::shipped_diagrams();
      for (const auto& [qn, q] : diagrams) {
        for (const auto& [pn, p] : diagrams) {
          for (const auto& f : monotone_maps(q.poset(), p.poset())) {
            ++maps;
            if (!check_geometricity(p, q.poset(), f).ok()) ++bad;
          }
        }
      }
      check(S, "geometricity", bad == 0, std::to_string(maps) + " monotone maps, " + std::to_string(bad) + " failures");
    });
    guarded(S, "frame-of-opens", [&] {
      bool ok = true;
      std::size_t checked = 0;
      for (const auto& [name, d] : fixtures::shipped_diagrams()) {
        if (d.size() > 3) continue;
        ++checked;
        const auto opens = external_opens(d);
        const auto pts = external_points(d);
        auto index = [&](const ExternalOpen& U) {
          return std::find(opens.begin(), opens.end(), U) != opens.end();
        };
        for (const auto& U : opens) {
          for (const auto& V : opens) {
            std::size_t rounds = 0;
            const auto M = open_meet(d, U, V, &rounds);
            const auto J = open_join(d, U, V);
            ok = ok && index(M) && index(J) && rounds == 0;
            for (const auto& x : pts) {
              ok = ok && evaluate(x, M) == (evaluate(x, U) && evaluate(x, V));
              ok = ok && evaluate(x, J) == (evaluate(x, U) || evaluate(x, V));
            }
            if (!(U == V)) {
              ok = ok && std::any_of(pts.begin(), pts.end(), [&](const SpectrumPoint& x) {
                return evaluate(x, U) != evaluate(x, V);
              });
            }
          }
        }
        const auto frame = internal_frame(d);
        if (auto b = d.poset().bottom()) ok = ok && frame.value(*b) == opens;
      }
      check(S, "frame-of-opens", ok, std::to_string(checked) + " diagrams with at most 3 contexts");
    });
  }

  void aqft() {
    const std::string S = "aqft";
    for (const auto& [name, net] : fixtures::shipped_nets()) {
      guarded(S, "triples-" + name, [&] {
        const auto r = check_triples_vs_generic(net);
        check(S, "triples-" + name, r.ok() && r.triples == r.generic_points,
              std::to_string(r.triples) + " triples, " + std::to_string(r.generic_points) + " generic points");
      });
      guarded(S, "completely-prime-" + name, [&] {
        const ContextDiagram P = build_P(net);
        const auto pts = external_points(P);
        std::size_t instances = 0;
        bool ok = true;
        for (std::size_t k = 0; k < P.size(); ++k) {
          const DLattice& L = *P.lattice(k);
          if (L.size() > 8) continue;
          const auto elems = L.elements();
          for (std::uint32_t w = 0; w < (1u << elems.size()); ++w) {
            std::vector<SiteElem> W;
            for (std::size_t i = 0; i < elems.size(); ++i) {
              if (w >> i & 1) W.push_back({k, elems[i]});
            }
            for (auto a : elems) {
              if (!covering_holds(P, {k, a}, W)) continue;
              ++instances;
              for (const auto& x : pts) {
                if (!in_subbasic(x, k, a)) continue;
                ok = ok && std::any_of(W.begin(), W.end(), [&](const SiteElem& s) { return in_subbasic(x, k, s.a); });
              }
            }
          }
        }
        check(S, "completely-prime-" + name, ok, std::to_string(instances) + " covering instances");
      });
    }
    guarded(S, "double-cones", [&] {
      const auto net = trivial_net(double_cone_poset(2));
      const auto r = check_triples_vs_generic(net);
      check(S, "double-cones", r.ok() && r.triples == 9, std::to_string(r.triples) + " triples on the 2x2 grid");
    });
  }

  std::uint64_t seed_;
  std::vector<CheckLine> lines_;
};

inline std::vector<CheckLine> run_verify(const std::string& suite, std::uint64_t seed) {
  Verifier v(seed);
  v.run(suite);
  return v.lines();
}

}  // namespace bohrspec
