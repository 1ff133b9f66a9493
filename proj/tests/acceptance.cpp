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

// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
// Exit status is the number of failed criteria.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include <sys/wait.h>

#include "bohrspec/aqft.hpp"
#include "bohrspec/bohrify.hpp"
#include "bohrspec/bundle.hpp"
#include "bohrspec/fixtures.hpp"
#include "bohrspec/la.hpp"
#include "bohrspec/spectrum.hpp"
#include "bohrspec/verify.hpp"
#include "oracles.hpp"

using namespace bohrspec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Mask positive_outcomes(const AlgElement& a) {
  Mask m = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    if (a[i].re > 0) m |= Mask{1} << i;
  }
  return m;
}

LatticeRef share(DLattice L) { return std::make_shared<const DLattice>(std::move(L)); }

std::size_t slots(const ContextDiagram& d) {
  std::size_t n = 0;
  for (std::size_t c = 0; c < d.size(); ++c) n += d.lattice(c)->size();
  return n;
}

Outcome axiom_audit() {
  std::size_t instances = 0, violations = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto A = standard_algebra(k);
    const auto LA = build_LA(A);
    const auto sample = grid_elements(A, {-1, 0, 1});
    violations += check_LA_axioms(LA, sample).size();
    // the same instances read off coordinates
    if (positive_outcomes(AlgElement::unit(A)) != full_mask(k)) ++violations;
    ++instances;
    for (const auto& a : sample) {
      if (LA->bits(LA.D(a)) != positive_outcomes(a)) ++violations;
      violations += (positive_outcomes(a) & positive_outcomes(-a)) != 0;
      violations += is_positive(-a) && positive_outcomes(a) != 0;
      instances += 2;
      for (const auto& b : sample) {
        violations += (positive_outcomes(a + b) & ~(positive_outcomes(a) | positive_outcomes(b))) != 0;
        const Mask rhs = (positive_outcomes(a) & positive_outcomes(b)) | (positive_outcomes(-a) & positive_outcomes(-b));
        violations += positive_outcomes(a * b) != rhs;
        instances += 2;
      }
    }
  }
  return {violations == 0, std::to_string(instances) + " instances, " + std::to_string(violations) + " violations"};
}

Outcome boolean_identification() {
  bool ok = true;
  std::string sizes;
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto LA = build_LA(standard_algebra(k));
    const DLattice& L = *LA;
    ok = ok && L.size() == (std::size_t{1} << k);
    const WellInside wi(LA.lattice());
    for (auto a : L.elements()) {
      for (auto b : L.elements()) {
        ok = ok && oracle::well_inside(L, a, b) == L.leq(a, b) && wi(a, b) == L.leq(a, b);
      }
    }
    sizes += (sizes.empty() ? "" : ",") + std::to_string(L.size());
  }
  return {ok, "|L| = " + sizes + " for k = 1..4"};
}

Outcome gelfand_round_trip() {
  bool ok = true;
  std::string counts;
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto A = standard_algebra(k);
    const auto LA = build_LA(A);
    const auto brute = oracle::regular_prime_filters(*LA);
    const auto lib = regular_prime_filters(LA.lattice());
    const auto chars = characters(A);
    ok = ok && brute.size() == chars.size() && lib.size() == chars.size();
    const auto sample = grid_elements(A, {-1, 0, 1});
    for (const auto& chi : chars) {
      Bits x(LA->size());
      for (auto e : LA->elements()) x[e.id] = (LA->bits(e) >> chi.outcome() & 1) != 0;
      ok = ok && std::count(brute.begin(), brute.end(), x) == 1;
      for (const auto& a : sample) ok = ok && x.test(LA.D(a).id) == (chi(a).re > 0);
    }
    counts += (counts.empty() ? "" : ",") + std::to_string(brute.size());
  }
  return {ok, "points = characters = " + counts + " for 1..5 outcomes"};
}

Outcome rounded_bijection() {
  std::size_t lattices = 0, normal = 0, bad = 0;
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const auto& p : all_posets(n)) {
      ++lattices;
      const auto L = share(DLattice::downsets(p));
      if (!is_normal(*L).normal) continue;
      ++normal;
      const WellInside wi(L);
      const auto ops = check_ridl_is_opens(wi);
      if (!regular_rounded_bijection(wi).ok() || !ops.ok()) ++bad;
      // opens counted from the regular points the subbasis generates
      const auto pts = oracle::regular_prime_filters(*L);
      std::vector<Bits> sub;
      for (auto a : L->elements()) {
        Bits s(pts.size());
        for (std::size_t x = 0; x < pts.size(); ++x) s[x] = pts[x].test(a.id);
        sub.push_back(s);
      }
      if (oracle::topology_size(pts.size(), sub) != rounded_ideals(wi).size() || ops.points != pts.size()) ++bad;
    }
  }
  const auto chain = share(DLattice::downsets(FinPoset::chain({"a", "b"})));
  const auto r = check_ridl_is_opens(WellInside(chain));
  const bool chain_ok = r.ok() && r.points == 1 && r.opens == 2;
  return {bad == 0 && chain_ok, std::to_string(lattices) + " down-set lattices, " + std::to_string(normal) +
                                    " normal, " + std::to_string(bad) + " failures; 3-chain " +
                                    std::to_string(r.points) + " point, " + std::to_string(r.opens) + " opens"};
}

Outcome two_context() {
  const auto d = full_context_poset(2).diagram;
  const auto pts = external_points(d);
  const auto opens = external_opens(d);
  const auto sier = sier_points(d);
  const auto frame = internal_frame(d);
  const bool brute = oracle::points(d).size() == pts.size() && oracle::opens(d).size() == opens.size() &&
                     oracle::sier_points(d).size() == sier.size();
  bool restriction = true;
  for (std::size_t k = 0; k < frame.value(0).size(); ++k) {
    auto r = frame.restrict(0, 1, k);
    restriction = restriction && r && frame.value(1)[*r].family[0] == frame.value(0)[k].family[1];
  }
  const bool ok = brute && pts.size() == 3 && opens.size() == 5 && sier.size() == 6 && frame.value(0).size() == 5 &&
                  frame.value(1).size() == 4 && restriction;
  return {ok, std::to_string(pts.size()) + " points, " + std::to_string(opens.size()) + " opens, " +
                  std::to_string(sier.size()) + " sier points, frame " + std::to_string(frame.value(0).size()) + "/" +
                  std::to_string(frame.value(1).size())};
}

Outcome bohr_three() {
  const auto d = full_context_poset(3).diagram;
  const auto ids = ideals(d.poset());
  bool ok = d.size() == 5 && ids.size() == 5 && oracle::poset_ideals(d.poset()).size() == 5;
  std::string counts;
  std::size_t total = 0;
  for (const auto& I : ids) {
    const auto direct = external_points_over(d, I);
    ok = ok && direct == external_points_via_colimit(d, I) && direct.size() == oracle::points_over(d, I.members).size();
    counts += (counts.empty() ? "" : ",") + std::to_string(direct.size());
    total += direct.size();
  }
  ok = ok && total == 10 && counts == "1,2,2,2,3" && external_points(d).size() == 10;
  return {ok, std::to_string(d.size()) + " contexts, " + std::to_string(ids.size()) + " ideals, " +
                  std::to_string(total) + " points (" + counts + ")"};
}

Outcome geometricity() {
  std::size_t maps = 0, bad = 0;
  const auto diagrams = fixtures::shipped_diagrams();
  for (const auto& [qn, q] : diagrams) {
    for (const auto& [pn, p] : diagrams) {
      for (const auto& f : oracle::monotone_maps(q.poset(), p.poset())) {
        ++maps;
        if (!check_geometricity(p, q.poset(), f).ok()) ++bad;
        std::size_t fibre = 0;
        for (const auto& J : oracle::poset_ideals(q.poset())) {
          fibre += oracle::points_over(p, p.poset().down(f[*q.poset().maximum_of(J)])).size();
        }
        if (external_points(pullback(p, q.poset(), f)).size() != fibre) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(maps) + " monotone maps, " + std::to_string(bad) + " failures"};
}

Outcome opfibration() {
  std::size_t points = 0, mismatches = 0, brute_checked = 0;
  for (const auto& [name, d] : fixtures::shipped_diagrams()) {
    const auto r = check_opfibration_specialization(d);
    points += r.points;
    mismatches += r.mismatches.size();
    if (slots(d) <= 12) {
      ++brute_checked;
      if (oracle::sier_points(d).size() != r.points) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(points) + " points over 7 diagrams, " + std::to_string(mismatches) +
                               " mismatches (" + std::to_string(brute_checked) + " point sets brute-checked)"};
}

Outcome shrink_lemmas() {
  std::mt19937_64 rng(0);
  std::size_t bad = 0;
  for (int i = 0; i < 100; ++i) {
    const auto inst = random_shrink_instance(rng);
    const auto A = standard_algebra(inst.k);
    const auto LA = build_LA(A);
    const Rational r = shrink_witness(LA, LA->at(inst.v), inst.phi, inst.args);
    const Mask shrunk = inst.phi.fold<Mask>(
        [&](const std::string& n) {
          Mask m = 0;
          for (const auto& [g, a] : inst.args) {
            if (g == n) m |= positive_outcomes(a - AlgElement::constant(A, r));
          }
          return m;
        },
        full_mask(inst.k), Mask{0}, [](Mask x, Mask y) { return x & y; }, [](Mask x, Mask y) { return x | y; });
    if (r <= 0 || (inst.v & ~shrunk) != 0) ++bad;
    // push along a random surjection onto the outcomes of A
    const std::size_t k2 = inst.k + rng() % 2;
    const auto B = standard_algebra(k2);
    const auto LB = build_LA(B);
    const AlgebraHom h(A, B, random_surjection(rng, k2, inst.k));
    const Elem u = LA->at(static_cast<Mask>(rng()) & full_mask(inst.k));
    auto preimage = [&](Mask m) {
      Mask out = 0;
      for (std::size_t t = 0; t < k2; ++t) {
        if (m >> h.outcome_map()[t] & 1) out |= Mask{1} << t;
      }
      return out;
    };
    const Elem v = LB->at(preimage(LA->bits(u)) & static_cast<Mask>(rng()));
    const Elem u2 = push_well_inside(h, LA, LB, u, v);
    if (!oracle::well_inside(*LA, u2, u) || (LB->bits(v) & ~preimage(LA->bits(u2))) != 0) ++bad;
  }
  return {bad == 0, "100 seeded instances, " + std::to_string(bad) + " failures"};
}

Outcome aqft_equivalence() {
  bool ok = true;
  std::string detail;
  for (const auto& [name, net] : fixtures::shipped_nets()) {
    const auto r = check_triples_vs_generic(net);
    const auto brute = oracle::points(build_P(net)).size();
    ok = ok && r.ok() && r.triples == brute;
    detail += (detail.empty() ? "" : ", ") + name + " " + std::to_string(r.triples) + "/" + std::to_string(brute);
  }
  return {ok, detail};
}

std::pair<int, std::string> run_cli(const std::string& env, const std::string& args) {
  const std::string cmd = env + " " + std::string(BOHRSPEC_CLI) + " " + args;
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

Outcome determinism() {
  const auto a = run_cli("BOHRSPEC_THREADS=1", "verify --suite all");
  const auto b = run_cli("BOHRSPEC_THREADS=8", "verify --suite all");
  const bool ok = a.first == 0 && b.first == 0 && a.second == b.second && !a.second.empty();
  return {ok, std::to_string(a.second.size()) + " bytes, exit " + std::to_string(a.first) + "/" +
                  std::to_string(b.first) + (a.second == b.second ? ", identical" : ", DIFFERENT")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"axiom audit", axiom_audit},
      {"Boolean identification", boolean_identification},
      {"Gelfand round-trip", gelfand_round_trip},
      {"regular/rounded bijection and opens", rounded_bijection},
      {"two-context example", two_context},
      {"Bohrification of Q[i]^3", bohr_three},
      {"geometricity", geometricity},
      {"opfibration", opfibration},
      {"shrink lemmas", shrink_lemmas},
      {"AQFT equivalence", aqft_equivalence},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << " ["
              << ms << " ms]" << std::endl;
  }
  return failed;
}
