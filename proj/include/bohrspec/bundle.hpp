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

// External description of the spectrum bundle over the ideals of a finite
// context poset: its points, its opens, the points of the Sierpinski
// exponential, the internal frame as a copresheaf, pullback along monotone
// maps and the opfibration structure of the rounded-ideal bundle.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bohrspec/diagram.hpp"
#include "bohrspec/error.hpp"
#include "bohrspec/lattice.hpp"
#include "bohrspec/parallel.hpp"
#include "bohrspec/poset.hpp"
#include "bohrspec/spectrum.hpp"

namespace bohrspec {

/// Nonempty, down-closed, directed subset of a finite poset. Always
/// principal; `top` is its maximum.
struct PosetIdeal {
  Bits members;
  std::size_t top = 0;

  bool contains(std::size_t c) const { return members.test(c); }
  friend bool operator==(const PosetIdeal& a, const PosetIdeal& b) { return a.members == b.members; }
};

inline PosetIdeal principal_ideal(const FinPoset& p, std::size_t c) { return {p.down(c), c}; }

/// All ideals, in the order of their generating elements.
inline std::vector<PosetIdeal> ideals(const FinPoset& p) {
  std::vector<PosetIdeal> out;
  for (std::size_t c = 0; c < p.size(); ++c) out.push_back(principal_ideal(p, c));
  return out;
}

inline std::vector<std::size_t> members_of(const Bits& b) {
  std::vector<std::size_t> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(i);
  return out;
}

/// Contexts of an ideal, maximum first, every context after those above it.
inline std::vector<std::size_t> top_down(const FinPoset& p, const Bits& s) {
  std::vector<std::size_t> out;
  auto order = p.linear_extension();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (s.test(*it)) out.push_back(*it);
  }
  return out;
}

/// A point of the external spectrum: an ideal of contexts and a compatible
/// family of regular prime filters on it.
struct SpectrumPoint {
  PosetIdeal ideal;
  std::map<std::size_t, PrimeFilter> filters;

  friend bool operator==(const SpectrumPoint& a, const SpectrumPoint& b) {
    return a.ideal == b.ideal && a.filters == b.filters;
  }
};

/// a in x_C iff L_CD(a) in x_D.
inline bool compatible(const ContextDiagram& d, std::size_t c, const Bits& xc, std::size_t dd, const Bits& xd) {
  const LatticeHom& f = d.lattice_map(c, dd);
  const DLattice& Lc = *d.lattice(c);
  for (auto a : Lc.elements()) {
    if (xc.test(a.id) != xd.test(f(a).id)) return false;
  }
  return true;
}

namespace detail {

/// Backtracking over choices per context (top-down), keeping only
/// assignments accepted by `fits` against every already-chosen context.
template <class Choice>
void enumerate_families(const std::vector<std::size_t>& contexts,
                        const std::function<const std::vector<Choice>&(std::size_t)>& candidates,
                        const std::function<bool(std::size_t, const Choice&, std::size_t, const Choice&)>& fits,
                        const std::function<void(const std::map<std::size_t, Choice>&)>& emit) {
  std::map<std::size_t, Choice> chosen;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == contexts.size()) {
      emit(chosen);
      return;
    }
    const std::size_t c = contexts[k];
    for (const auto& cand : candidates(c)) {
      bool ok = true;
      for (const auto& [other, ch] : chosen) {
        if (!fits(c, cand, other, ch)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.emplace(c, cand);
      go(k + 1);
      chosen.erase(c);
    }
  };
  go(0);
}

}  // namespace detail

/// Points over one ideal, by direct enumeration of compatible families.
inline std::vector<SpectrumPoint> external_points_over(const ContextDiagram& d, const PosetIdeal& I) {
  std::vector<SpectrumPoint> out;
  const FinPoset& P = d.poset();
  detail::enumerate_families<PrimeFilter>(
      top_down(P, I.members), [&](std::size_t c) -> const std::vector<PrimeFilter>& { return d.rspec(c); },
      [&](std::size_t c, const PrimeFilter& xc, std::size_t o, const PrimeFilter& xo) {
        if (P.leq(c, o)) return compatible(d, c, xc.members, o, xo.members);
        if (P.leq(o, c)) return compatible(d, o, xo.members, c, xc.members);
        return true;
      },
      [&](const std::map<std::size_t, PrimeFilter>& fam) { out.push_back({I, fam}); });
  return out;
}

inline std::vector<SpectrumPoint> external_points(const ContextDiagram& d) {
  auto ids = ideals(d.poset());
  auto per = parallel_map(ids.size(), [&](std::size_t i) { return external_points_over(d, ids[i]); });
  std::vector<SpectrumPoint> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

/// Points over an ideal with maximum M, as regular prime filters of L_M
/// pulled back to every context below M.
inline std::vector<SpectrumPoint> external_points_via_colimit(const ContextDiagram& d, const PosetIdeal& I) {
  std::vector<SpectrumPoint> out;
  const std::size_t m = I.top;
  for (const auto& y : d.rspec(m)) {
    SpectrumPoint pt{I, {}};
    for (auto c : members_of(I.members)) {
      const LatticeHom& f = d.lattice_map(c, m);
      Bits x(d.lattice(c)->size());
      for (auto a : d.lattice(c)->elements()) {
        if (y.contains(f(a))) x.set(a.id);
      }
      pt.filters.emplace(c, PrimeFilter{{d.lattice(c).lattice(), std::move(x)}});
    }
    out.push_back(std::move(pt));
  }
  return out;
}

/// Subbasic open <C, a>: the point's ideal contains C and a is in its filter at C.
inline bool in_subbasic(const SpectrumPoint& pt, std::size_t c, Elem a) {
  auto it = pt.filters.find(c);
  return it != pt.filters.end() && it->second.contains(a);
}

/// A context-indexed family of rounded ideals, monotone along inclusions.
struct ExternalOpen {
  std::vector<RoundedIdeal> family;

  friend bool operator==(const ExternalOpen& a, const ExternalOpen& b) { return a.family == b.family; }
};

/// L_CD(I) is contained in J.
inline bool image_within(const ContextDiagram& d, std::size_t c, const Bits& I, std::size_t dd, const Bits& J) {
  const LatticeHom& f = d.lattice_map(c, dd);
  for (auto a = I.find_first(); a != Bits::npos; a = I.find_next(a)) {
    if (!J.test(f(Elem{static_cast<std::uint32_t>(a)}).id)) return false;
  }
  return true;
}

inline bool is_external_open(const ContextDiagram& d, const std::vector<Bits>& fam) {
  const FinPoset& P = d.poset();
  for (std::size_t c = 0; c < d.size(); ++c) {
    if (!is_ideal(*d.lattice(c), fam[c]) || !is_rounded(d.well_inside(c), fam[c])) return false;
    for (std::size_t e = 0; e < d.size(); ++e) {
      if (c != e && P.leq(c, e) && !image_within(d, c, fam[c], e, fam[e])) return false;
    }
  }
  return true;
}

inline std::vector<ExternalOpen> external_opens(const ContextDiagram& d, std::size_t max_count = kDefaultMaxSize) {
  const FinPoset& P = d.poset();
  std::vector<ExternalOpen> out;
  auto order = P.linear_extension();
  detail::enumerate_families<RoundedIdeal>(
      order, [&](std::size_t c) -> const std::vector<RoundedIdeal>& { return d.ridl(c); },
      [&](std::size_t c, const RoundedIdeal& uc, std::size_t o, const RoundedIdeal& uo) {
        if (P.leq(o, c)) return image_within(d, o, uo.members, c, uc.members);
        if (P.leq(c, o)) return image_within(d, c, uc.members, o, uo.members);
        return true;
      },
      [&](const std::map<std::size_t, RoundedIdeal>& fam) {
        ExternalOpen U;
        for (std::size_t c = 0; c < d.size(); ++c) U.family.push_back(fam.at(c));
        out.push_back(std::move(U));
        if (out.size() > max_count) {
          throw Error(ErrorKind::TooLarge, "more than " + std::to_string(max_count) + " external opens");
        }
      });
  std::sort(out.begin(), out.end(), [](const ExternalOpen& a, const ExternalOpen& b) {
    for (std::size_t c = 0; c < a.family.size(); ++c) {
      if (a.family[c].members != b.family[c].members) return a.family[c].members < b.family[c].members;
    }
    return false;
  });
  return out;
}

inline ExternalOpen empty_open(const ContextDiagram& d) {
  ExternalOpen U;
  for (std::size_t c = 0; c < d.size(); ++c) {
    Bits b(d.lattice(c)->size());
    b.set(d.lattice(c)->bottom().id);
    U.family.push_back(RoundedIdeal{{d.lattice(c).lattice(), std::move(b)}});
  }
  return U;
}

inline ExternalOpen full_open(const ContextDiagram& d) {
  ExternalOpen U;
  for (std::size_t c = 0; c < d.size(); ++c) {
    Bits b(d.lattice(c)->size());
    b.set();
    U.family.push_back(RoundedIdeal{{d.lattice(c).lattice(), std::move(b)}});
  }
  return U;
}

inline bool open_leq(const ExternalOpen& a, const ExternalOpen& b) {
  for (std::size_t c = 0; c < a.family.size(); ++c) {
    if (!a.family[c].members.is_subset_of(b.family[c].members)) return false;
  }
  return true;
}

/// Componentwise ideal join, rounded.
inline ExternalOpen open_join(const ContextDiagram& d, const ExternalOpen& u, const ExternalOpen& v) {
  ExternalOpen out;
  for (std::size_t c = 0; c < d.size(); ++c) {
    const DLattice& L = *d.lattice(c);
    Bits j(L.size());
    for (auto a : u.family[c].elements()) {
      for (auto b : v.family[c].elements()) j |= principal_down(L, L.join(a, b));
    }
    out.family.push_back(RoundedIdeal{{d.lattice(c).lattice(), d.well_inside(c).below(j)}});
  }
  return out;
}

/// Largest open below both: componentwise intersection, then re-rounding and
/// monotonicity repair until nothing changes. `rounds` reports how many
/// repair passes changed something.
inline ExternalOpen open_meet(const ContextDiagram& d, const ExternalOpen& u, const ExternalOpen& v,
                              std::size_t* rounds = nullptr) {
  const FinPoset& P = d.poset();
  std::vector<Bits> fam;
  for (std::size_t c = 0; c < d.size(); ++c) fam.push_back(u.family[c].members & v.family[c].members);
  std::size_t changed_rounds = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t c = 0; c < d.size(); ++c) {
      Bits next = d.well_inside(c).below(fam[c]);
      for (std::size_t e = 0; e < d.size(); ++e) {
        if (e == c || !P.leq(c, e)) continue;
        const LatticeHom& f = d.lattice_map(c, e);
        for (auto a = next.find_first(); a != Bits::npos; a = next.find_next(a)) {
          if (!fam[e].test(f(Elem{static_cast<std::uint32_t>(a)}).id)) next.reset(a);
        }
      }
      if (next != fam[c]) {
        fam[c] = std::move(next);
        changed = true;
      }
    }
    if (changed) ++changed_rounds;
  }
  if (rounds) *rounds = changed_rounds;
  ExternalOpen out;
  for (std::size_t c = 0; c < d.size(); ++c) out.family.push_back(RoundedIdeal{{d.lattice(c).lattice(), fam[c]}});
  return out;
}

/// Whether the point lies in the open: some context of its ideal where the
/// open's ideal meets the point's filter.
inline bool evaluate(const SpectrumPoint& pt, const ExternalOpen& U) {
  if (pt.ideal.members.size() != U.family.size()) {
    throw Error(ErrorKind::DiagramMismatch, "point and open over different context posets");
  }
  for (const auto& [c, x] : pt.filters) {
    if (U.family[c].meets(x)) return true;
  }
  return false;
}

/// A point of the Sierpinski exponential over an ideal: a compatible
/// family of lattice ideals, rounded across the colimit.
struct SierPoint {
  PosetIdeal ideal;
  std::map<std::size_t, LatticeIdeal> family;

  friend bool operator==(const SierPoint& a, const SierPoint& b) {
    return a.ideal == b.ideal && a.family == b.family;
  }
};

/// All ideals of a finite lattice (the principal ones).
inline std::vector<LatticeIdeal> all_ideals(const LatticeRef& L) {
  std::vector<LatticeIdeal> out;
  for (auto a : L->elements()) out.push_back(LatticeIdeal{{L, principal_down(*L, a)}});
  return out;
}

inline std::vector<SierPoint> sier_points_over(const ContextDiagram& d, const PosetIdeal& I) {
  const FinPoset& P = d.poset();
  std::map<std::size_t, std::vector<LatticeIdeal>> cands;
  for (auto c : members_of(I.members)) cands.emplace(c, all_ideals(d.lattice(c).lattice()));
  std::vector<SierPoint> out;
  detail::enumerate_families<LatticeIdeal>(
      top_down(P, I.members), [&](std::size_t c) -> const std::vector<LatticeIdeal>& { return cands.at(c); },
      [&](std::size_t c, const LatticeIdeal& uc, std::size_t o, const LatticeIdeal& uo) {
        if (P.leq(c, o)) return compatible(d, c, uc.members, o, uo.members);
        if (P.leq(o, c)) return compatible(d, o, uo.members, c, uc.members);
        return true;
      },
      [&](const std::map<std::size_t, LatticeIdeal>& fam) {
        // (C, a) in U needs some (D, b) in U, C <= D, with L_CD(a) << b
        for (const auto& [c, uc] : fam) {
          for (auto a : uc.elements()) {
            bool found = false;
            for (const auto& [e, ue] : fam) {
              if (!P.leq(c, e)) continue;
              const Elem fa = d.lattice_map(c, e)(a);
              if (d.well_inside(e).below(ue.members).test(fa.id)) {
                found = true;
                break;
              }
            }
            if (!found) return;
          }
        }
        out.push_back({I, fam});
      });
  return out;
}

inline std::vector<SierPoint> sier_points(const ContextDiagram& d) {
  auto ids = ideals(d.poset());
  auto per = parallel_map(ids.size(), [&](std::size_t i) { return sier_points_over(d, ids[i]); });
  std::vector<SierPoint> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

/// I -> the elements well inside L_CD(I).
inline RoundedIdeal fibre_map(const ContextDiagram& d, std::size_t c, std::size_t dd, const ElemSubset& I) {
  if (c >= d.size() || dd >= d.size() || !d.poset().leq(c, dd)) {
    throw Error(ErrorKind::NotComparable, (c < d.size() ? d.label(c) : "?") + " <= " +
                                              (dd < d.size() ? d.label(dd) : "?"));
  }
  const LatticeHom& f = d.lattice_map(c, dd);
  Bits img(d.lattice(dd)->size());
  for (auto a : I.elements()) img.set(f(a).id);
  return RoundedIdeal{{d.lattice(dd).lattice(), d.well_inside(dd).below(img)}};
}

/// The internal frame as a copresheaf: at C, the external opens of the
/// diagram restricted to the up-set of C; along C <= C', restriction.
class InternalFrame {
 public:
  explicit InternalFrame(const ContextDiagram& d, std::size_t max_count = kDefaultMaxSize) {
    const FinPoset& P = d.poset();
    for (std::size_t c = 0; c < d.size(); ++c) {
      auto [sub, idx] = restrict_diagram(d, P.up(c));
      contexts_.push_back(idx);
      values_.push_back(external_opens(sub, max_count));
    }
  }

  std::size_t size() const { return values_.size(); }
  /// Contexts (indices in the whole poset) the families at C range over.
  const std::vector<std::size_t>& domain(std::size_t c) const { return contexts_.at(c); }
  const std::vector<ExternalOpen>& value(std::size_t c) const { return values_.at(c); }

  /// Index in value(c2) of the restriction of value(c)[k]; nullopt if the
  /// restricted family is not an element there.
  std::optional<std::size_t> restrict(std::size_t c, std::size_t c2, std::size_t k) const {
    const auto& from = contexts_.at(c);
    const auto& to = contexts_.at(c2);
    std::vector<RoundedIdeal> fam;
    for (auto ctx : to) {
      auto it = std::find(from.begin(), from.end(), ctx);
      if (it == from.end()) return std::nullopt;
      fam.push_back(values_[c][k].family[static_cast<std::size_t>(it - from.begin())]);
    }
    const ExternalOpen target{std::move(fam)};
    for (std::size_t j = 0; j < values_[c2].size(); ++j) {
      if (values_[c2][j] == target) return j;
    }
    return std::nullopt;
  }

 private:
  std::vector<std::vector<std::size_t>> contexts_;
  std::vector<std::vector<ExternalOpen>> values_;
};

inline InternalFrame internal_frame(const ContextDiagram& d, std::size_t max_count = kDefaultMaxSize) {
  return InternalFrame(d, max_count);
}

/// The diagram composed with a monotone map f: Q -> P.
inline ContextDiagram pullback(const ContextDiagram& d, const FinPoset& q, const std::vector<std::size_t>& f) {
  if (!is_monotone(q, d.poset(), f)) throw Error(ErrorKind::NotMonotone, "map into the context poset");
  DiagramData out{q, {}, {}};
  for (std::size_t a = 0; a < q.size(); ++a) out.algebras.push_back(d.algebra(f[a]));
  for (std::size_t a = 0; a < q.size(); ++a) {
    for (std::size_t b = 0; b < q.size(); ++b) {
      if (a != b && q.leq(a, b)) out.inclusions.push_back({a, b, d.inclusion(f[a], f[b]).outcome_map()});
    }
  }
  return ContextDiagram(std::move(out));
}

struct GeometricityReport {
  std::size_t pullback_points = 0;
  std::size_t fibre_points = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Points of the pulled-back diagram against pairs (ideal J of Q, point of
/// the base diagram over the ideal generated by f(J)).
inline GeometricityReport check_geometricity(const ContextDiagram& d, const FinPoset& q,
                                             const std::vector<std::size_t>& f) {
  const ContextDiagram pb = pullback(d, q, f);
  const auto pb_points = external_points(pb);
  GeometricityReport r;
  r.pullback_points = pb_points.size();
  std::vector<bool> hit(pb_points.size(), false);
  for (const auto& J : ideals(q)) {
    const PosetIdeal base = principal_ideal(d.poset(), f[J.top]);
    for (const auto& y : external_points_over(d, base)) {
      ++r.fibre_points;
      SpectrumPoint x{J, {}};
      for (auto qc : members_of(J.members)) {
        x.filters.emplace(qc, PrimeFilter{{pb.lattice(qc).lattice(), y.filters.at(f[qc]).members}});
      }
      auto it = std::find(pb_points.begin(), pb_points.end(), x);
      if (it == pb_points.end()) {
        r.failures.push_back("fibre point over " + q.label(J.top) + " is not a pullback point");
        continue;
      }
      const auto k = static_cast<std::size_t>(it - pb_points.begin());
      if (hit[k]) r.failures.push_back("two fibre points map to one pullback point");
      hit[k] = true;
      // x lies in the pulled-back <P, a> iff y lies in <P, a>
      for (std::size_t p = 0; p < d.size(); ++p) {
        for (auto a : d.lattice(p)->elements()) {
          const bool base_side = in_subbasic(y, p, a);
          const std::size_t top = J.top;
          const bool via_q = d.poset().leq(p, f[top]) && x.filters.at(top).contains(d.lattice_map(p, f[top])(a));
          if (base_side != via_q) r.failures.push_back("pulled-back evaluation differs at <" + d.label(p) + ", a>");
        }
      }
    }
  }
  for (std::size_t k = 0; k < hit.size(); ++k) {
    if (!hit[k]) r.failures.push_back("pullback point " + std::to_string(k) + " not reached");
  }
  return r;
}

/// Specialization order of a finite space given by membership of each
/// point in a list of subbasic opens: p <= p' iff every open containing p
/// contains p'.
inline std::vector<Bits> specialization_from_opens(const std::vector<Bits>& membership) {
  std::vector<Bits> out;
  for (std::size_t p = 0; p < membership.size(); ++p) {
    Bits row(membership.size());
    for (std::size_t p2 = 0; p2 < membership.size(); ++p2) {
      if (membership[p].is_subset_of(membership[p2])) row.set(p2);
    }
    out.push_back(std::move(row));
  }
  return out;
}

/// Subbasic membership of spectrum points: <C> and <C, a>.
inline std::vector<Bits> subbasic_membership(const ContextDiagram& d, const std::vector<SpectrumPoint>& pts) {
  std::size_t width = d.size();
  for (std::size_t c = 0; c < d.size(); ++c) width += d.lattice(c)->size();
  std::vector<Bits> out;
  for (const auto& pt : pts) {
    Bits m(width);
    std::size_t k = 0;
    for (std::size_t c = 0; c < d.size(); ++c, ++k) m[k] = pt.ideal.contains(c);
    for (std::size_t c = 0; c < d.size(); ++c) {
      for (auto a : d.lattice(c)->elements()) m[k++] = in_subbasic(pt, c, a);
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline std::vector<Bits> subbasic_membership(const ContextDiagram& d, const std::vector<SierPoint>& pts) {
  std::size_t width = d.size();
  for (std::size_t c = 0; c < d.size(); ++c) width += d.lattice(c)->size();
  std::vector<Bits> out;
  for (const auto& pt : pts) {
    Bits m(width);
    std::size_t k = 0;
    for (std::size_t c = 0; c < d.size(); ++c, ++k) m[k] = pt.ideal.contains(c);
    for (std::size_t c = 0; c < d.size(); ++c) {
      auto it = pt.family.find(c);
      for (auto a : d.lattice(c)->elements()) m[k++] = it != pt.family.end() && it->second.contains(a);
    }
    out.push_back(std::move(m));
  }
  return out;
}

struct OpfibrationReport {
  std::size_t points = 0;
  std::size_t related_pairs = 0;
  std::vector<std::pair<std::size_t, std::size_t>> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Specialization of the rounded-ideal bundle computed from its subbasic
/// opens, against the fibrewise criterion: I1 within I2 and the fibre map
/// of U1 below U2.
inline OpfibrationReport check_opfibration_specialization(const ContextDiagram& d) {
  const auto pts = sier_points(d);
  const auto spec = specialization_from_opens(subbasic_membership(d, pts));
  OpfibrationReport r;
  r.points = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const auto& p1 = pts[i];
      const auto& p2 = pts[j];
      bool fibrewise = false;
      if (p1.ideal.members.is_subset_of(p2.ideal.members)) {
        const RoundedIdeal moved = fibre_map(d, p1.ideal.top, p2.ideal.top, p1.family.at(p1.ideal.top));
        fibrewise = moved.members.is_subset_of(p2.family.at(p2.ideal.top).members);
      }
      if (fibrewise) ++r.related_pairs;
      if (fibrewise != spec[i].test(j)) r.mismatches.emplace_back(i, j);
    }
  }
  return r;
}

}  // namespace bohrspec
