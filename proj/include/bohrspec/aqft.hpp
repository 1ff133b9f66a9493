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

// Nets of algebras over a finite region poset. Each region carries a
// commutative skeleton (an outcome set) and a family of contexts
// (partitions of it); the combined poset of (region, context) pairs carries
// the Bohrified net, whose spectrum points are described by triples.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bohrspec/bohrify.hpp"
#include "bohrspec/bundle.hpp"
#include "bohrspec/diagram.hpp"
#include "bohrspec/error.hpp"
#include "bohrspec/poset.hpp"
#include "bohrspec/spectrum.hpp"

namespace bohrspec {

struct NetData {
  FinPoset regions;
  std::vector<std::vector<std::string>> outcomes;  // per region
  std::vector<InclusionSpec> region_maps;          // outcome maps, indices in sorted outcome order
  std::vector<std::vector<Partition>> contexts;    // per region
};

/// A validated net. Contexts of a region are ordered by refinement; the
/// pair (O1, C1) lies below (O2, C2) when O1 <= O2 and C2 refines the
/// pull-back of C1 to O2.
///
/// Besides functoriality of the region maps, validation asks for what every
/// Bohrified net has: each context of O1 appears in O2 >= O1, below every
/// context of O2 some context of O1 <= O2 sits, and two contexts of a
/// region under a common pair have an upper bound in the region under it.
class Net {
 public:
  explicit Net(NetData data) : data_(std::move(data)), region_diagram_(region_diagram(data_)) {
    const FinPoset& R = data_.regions;
    if (data_.contexts.size() != R.size()) {
      throw Error(ErrorKind::InvalidNet, "one context family per region required", "/contexts_per_region");
    }
    for (std::size_t o = 0; o < R.size(); ++o) {
      const std::string path = "/contexts_per_region/" + R.label(o);
      auto& cs = data_.contexts[o];
      if (cs.empty()) throw Error(ErrorKind::InvalidNet, "empty context family", path);
      for (std::size_t i = 0; i < cs.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        try {
          validate_partition(cs[i], data_.outcomes[o], p);
        } catch (const Error& e) {
          throw Error(ErrorKind::InvalidNet, e.message(), p);
        }
      }
      std::sort(cs.begin(), cs.end(), [](const Partition& a, const Partition& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return partition_label(a) < partition_label(b);
      });
      if (std::adjacent_find(cs.begin(), cs.end()) != cs.end()) {
        throw Error(ErrorKind::InvalidNet, "context declared twice", path);
      }
      std::vector<std::string> names;
      std::vector<std::pair<std::size_t, std::size_t>> le;
      for (std::size_t a = 0; a < cs.size(); ++a) {
        names.push_back(partition_label(cs[a]));
        for (std::size_t b = 0; b < cs.size(); ++b) {
          if (a != b && refines(cs[b], cs[a])) le.emplace_back(a, b);
        }
      }
      context_posets_.push_back(FinPoset::from_relation(std::move(names), le));
    }
    build_pairs();
    check_closure();
  }

  const NetData& data() const { return data_; }
  const FinPoset& regions() const { return data_.regions; }
  const FinPoset& contexts(std::size_t o) const { return context_posets_.at(o); }
  const Partition& partition(std::size_t o, std::size_t c) const { return data_.contexts.at(o).at(c); }
  const ContextDiagram& region_diagram() const { return region_diagram_; }

  /// Index in the combined poset of (region, context).
  std::size_t pair_index(std::size_t o, std::size_t c) const { return pair_index_.at(o).at(c); }
  const std::pair<std::size_t, std::size_t>& pair_at(std::size_t k) const { return pairs_.at(k); }
  std::size_t pair_count() const { return pairs_.size(); }
  bool pair_leq(std::size_t k1, std::size_t k2) const { return P_.leq(k1, k2); }
  const FinPoset& P() const { return P_; }

  /// Context C of O1, as a partition of the outcomes of O2 >= O1.
  Partition pulled_back(std::size_t o1, std::size_t o2, const Partition& c) const {
    const auto& map = region_diagram_.inclusion(o1, o2).outcome_map();
    const auto& src = region_diagram_.algebra(o1)->outcomes();
    const auto& tgt = region_diagram_.algebra(o2)->outcomes();
    std::vector<Block> blocks(c.size());
    for (std::size_t t = 0; t < tgt.size(); ++t) blocks[*c.block_of(src[map[t]])].push_back(tgt[t]);
    return Partition(std::move(blocks));
  }

  /// The index in contexts(o2) of the image of context c of o1.
  std::size_t image_of(std::size_t o1, std::size_t c, std::size_t o2) const {
    return image_.at(o1 * regions().size() + o2).at(c);
  }

 private:
  static ContextDiagram region_diagram(const NetData& d) {
    const FinPoset& R = d.regions;
    if (R.size() == 0) throw Error(ErrorKind::InvalidNet, "empty region poset", "/regions/elements");
    if (d.outcomes.size() != R.size()) {
      throw Error(ErrorKind::InvalidNet, "one outcome set per region required", "/net_outcomes");
    }
    DiagramData out{R, {}, d.region_maps};
    try {
      for (std::size_t o = 0; o < R.size(); ++o) out.algebras.push_back(make_algebra(R.label(o), d.outcomes[o]));
      return ContextDiagram(std::move(out));
    } catch (const Error& e) {
      std::string path = e.path();
      if (path.rfind("/inclusions", 0) == 0) path = "/region_maps" + path.substr(11);
      throw Error(ErrorKind::InvalidNet, e.message(), path);
    }
  }

  void build_pairs() {
    const FinPoset& R = regions();
    const std::size_t nr = R.size();
    image_.assign(nr * nr, {});
    for (std::size_t o1 = 0; o1 < nr; ++o1) {
      for (std::size_t o2 = 0; o2 < nr; ++o2) {
        if (!R.leq(o1, o2)) continue;
        const auto& cs2 = data_.contexts[o2];
        for (const auto& c : data_.contexts[o1]) {
          auto it = std::find(cs2.begin(), cs2.end(), pulled_back(o1, o2, c));
          if (it == cs2.end()) {
            throw Error(ErrorKind::InvalidNet,
                        "context " + partition_label(c) + " of " + R.label(o1) + " is missing from " + R.label(o2),
                        "/contexts_per_region/" + R.label(o2));
          }
          image_[o1 * nr + o2].push_back(static_cast<std::size_t>(it - cs2.begin()));
        }
      }
    }
    std::vector<std::string> labels;
    pair_index_.assign(nr, {});
    for (std::size_t o = 0; o < nr; ++o) {
      for (std::size_t c = 0; c < data_.contexts[o].size(); ++c) {
        pair_index_[o].push_back(pairs_.size());
        pairs_.emplace_back(o, c);
        labels.push_back(R.label(o) + ":" + partition_label(data_.contexts[o][c]));
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> le;
    for (std::size_t k1 = 0; k1 < pairs_.size(); ++k1) {
      for (std::size_t k2 = 0; k2 < pairs_.size(); ++k2) {
        const auto [o1, c1] = pairs_[k1];
        const auto [o2, c2] = pairs_[k2];
        if (k1 != k2 && R.leq(o1, o2) && context_posets_[o2].leq(image_of(o1, c1, o2), c2)) le.emplace_back(k1, k2);
      }
    }
    P_ = FinPoset::from_relation(std::move(labels), le);
  }

  void check_closure() const {
    const FinPoset& R = regions();
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      const auto [o2, c2] = pairs_[k];
      for (std::size_t o1 = 0; o1 < R.size(); ++o1) {
        if (!R.leq(o1, o2)) continue;
        bool found = false;
        for (std::size_t c1 = 0; c1 < data_.contexts[o1].size() && !found; ++c1) {
          found = P_.leq(pair_index(o1, c1), k);
        }
        if (!found) {
          throw Error(ErrorKind::InvalidNet, "no context of " + R.label(o1) + " lies below " + P_.label(k),
                      "/contexts_per_region/" + R.label(o1));
        }
      }
    }
    for (std::size_t o = 0; o < R.size(); ++o) {
      const std::size_t nc = data_.contexts[o].size();
      for (std::size_t a = 0; a < nc; ++a) {
        for (std::size_t b = a + 1; b < nc; ++b) {
          const std::size_t ka = pair_index(o, a);
          const std::size_t kb = pair_index(o, b);
          const Bits common = P_.up(ka) & P_.up(kb);
          for (auto u = common.find_first(); u != Bits::npos; u = common.find_next(u)) {
            bool found = false;
            for (std::size_t x = 0; x < nc && !found; ++x) {
              const std::size_t kx = pair_index(o, x);
              found = P_.leq(ka, kx) && P_.leq(kb, kx) && P_.leq(kx, u);
            }
            if (!found) {
              throw Error(ErrorKind::InvalidNet,
                          "contexts " + context_posets_[o].label(a) + " and " + context_posets_[o].label(b) + " of " +
                              R.label(o) + " have no upper bound in the region below " + P_.label(u),
                          "/contexts_per_region/" + R.label(o));
            }
          }
        }
      }
    }
  }

  NetData data_;
  ContextDiagram region_diagram_;
  std::vector<FinPoset> context_posets_;
  std::vector<std::vector<std::size_t>> image_;  // [o1 * nr + o2][c1] -> c2
  std::vector<std::vector<std::size_t>> pair_index_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  FinPoset P_;
};

/// The context diagram of the Bohrified net over the combined poset.
inline ContextDiagram build_P(const Net& net) {
  const FinPoset& P = net.P();
  DiagramData out{P, {}, {}};
  for (std::size_t k = 0; k < net.pair_count(); ++k) {
    const auto [o, c] = net.pair_at(k);
    out.algebras.push_back(block_algebra(P.label(k), net.partition(o, c)));
  }
  for (auto [lo, hi] : P.covers()) {
    const auto [o1, c1] = net.pair_at(lo);
    const auto [o2, c2] = net.pair_at(hi);
    // a fine block goes to the block of C1 holding the image of any member
    const auto& region_map = net.region_diagram().inclusion(o1, o2).outcome_map();
    const auto& o1_outcomes = net.region_diagram().algebra(o1)->outcomes();
    const Partition& p1 = net.partition(o1, c1);
    std::vector<std::size_t> m(out.algebras[hi]->dim());
    for (const auto& b : net.partition(o2, c2).blocks()) {
      const std::size_t t = *out.algebras[hi]->index_of(block_label(b));
      const std::string& image = o1_outcomes[region_map[*net.region_diagram().algebra(o2)->index_of(b.front())]];
      m[t] = *out.algebras[lo]->index_of(block_label(p1.blocks()[*p1.block_of(image)]));
    }
    out.inclusions.push_back({lo, hi, std::move(m)});
  }
  return ContextDiagram(std::move(out));
}

/// a is covered by W0 in L_C: everything well inside a is well inside the
/// join of W0. On Boolean fibres this is a <= join(W0).
inline bool covers_in(const WellInside& wi, Elem a, const std::vector<Elem>& W0) {
  const DLattice& L = wi.L();
  L.require(a);
  for (auto w : W0) L.require(w);
  const Elem j = L.join_all(W0);
  for (auto a2 : L.elements()) {
    if (wi(a2, a) && !wi(a2, j)) return false;
  }
  return true;
}

/// An element (O, C, a) of the site: the pair index in P and a in L_C.
struct SiteElem {
  std::size_t pair = 0;
  Elem a;
  friend bool operator==(const SiteElem& x, const SiteElem& y) { return x.pair == y.pair && x.a.id == y.a.id; }
};

/// (O, C, a) <| W: project W to the fibre at (O, C) and cover there.
inline bool covering_holds(const ContextDiagram& P, const SiteElem& x, const std::vector<SiteElem>& W) {
  std::vector<Elem> W0;
  for (const auto& w : W) {
    if (w.pair == x.pair) W0.push_back(w.a);
  }
  return covers_in(P.well_inside(x.pair), x.a, W0);
}

/// (O1, C1, a1) <= (O2, C2, a2) in the site: (O2, C2) <= (O1, C1) and
/// a1 <= the image of a2.
inline bool site_leq(const ContextDiagram& P, const SiteElem& x1, const SiteElem& x2) {
  if (!P.poset().leq(x2.pair, x1.pair)) return false;
  return P.lattice(x1.pair)->leq(x1.a, P.lattice_map(x2.pair, x1.pair)(x2.a));
}

/// A point described by a region ideal, a context ideal per region and a
/// character per (region, context) pair.
struct AqftPoint {
  PosetIdeal R;
  std::map<std::size_t, Bits> I;                                 // region -> contexts of that region
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lambda;  // (region, context) -> outcome of P's algebra

  friend bool operator==(const AqftPoint& a, const AqftPoint& b) {
    return a.R == b.R && a.I == b.I && a.lambda == b.lambda;
  }
};

namespace detail {

inline bool coherent(const Net& net, const std::map<std::size_t, Bits>& I) {
  const FinPoset& R = net.regions();
  for (const auto& [o1, i1] : I) {
    for (const auto& [o2, i2] : I) {
      if (o1 == o2 || !R.leq(o1, o2)) continue;
      for (std::size_t c1 = 0; c1 < net.contexts(o1).size(); ++c1) {
        if (i2.test(net.image_of(o1, c1, o2)) && !i1.test(c1)) return false;
      }
    }
  }
  std::vector<std::size_t> members;
  for (const auto& [o, io] : I) {
    for (auto c : members_of(io)) members.push_back(net.pair_index(o, c));
  }
  for (auto k1 : members) {
    for (auto k2 : members) {
      bool bound = false;
      for (auto k : members) {
        if (net.pair_leq(k1, k) && net.pair_leq(k2, k)) {
          bound = true;
          break;
        }
      }
      if (!bound) return false;
    }
  }
  return true;
}

}  // namespace detail

/// All triples satisfying the three conditions, by enumeration independent
/// of the generic spectrum points.
inline std::vector<AqftPoint> aqft_points(const Net& net, const ContextDiagram& P) {
  const FinPoset& R = net.regions();
  std::vector<AqftPoint> out;
  for (const auto& ideal : ideals(R)) {
    const auto regs = members_of(ideal.members);
    std::map<std::size_t, Bits> I;
    std::function<void(std::size_t)> choose_I = [&](std::size_t k) {
      if (k < regs.size()) {
        const std::size_t o = regs[k];
        for (const auto& ci : ideals(net.contexts(o))) {
          I[o] = ci.members;
          choose_I(k + 1);
        }
        I.erase(o);
        return;
      }
      if (!detail::coherent(net, I)) return;
      std::vector<std::pair<std::size_t, std::size_t>> slots;
      for (const auto& [o, io] : I) {
        for (auto c : members_of(io)) slots.emplace_back(o, c);
      }
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> lambda;
      std::function<void(std::size_t)> choose_lambda = [&](std::size_t s) {
        if (s == slots.size()) {
          out.push_back({ideal, I, lambda});
          return;
        }
        const auto [o, c] = slots[s];
        const std::size_t k = net.pair_index(o, c);
        for (std::size_t ch = 0; ch < P.algebra(k)->dim(); ++ch) {
          bool ok = true;
          for (const auto& [slot, ch2] : lambda) {
            const std::size_t k2 = net.pair_index(slot.first, slot.second);
            if (P.poset().leq(k2, k)) {
              ok = P.inclusion(k2, k).outcome_map()[ch] == ch2;
            } else if (P.poset().leq(k, k2)) {
              ok = P.inclusion(k, k2).outcome_map()[ch2] == ch;
            }
            if (!ok) break;
          }
          if (!ok) continue;
          lambda[slots[s]] = ch;
          choose_lambda(s + 1);
          lambda.erase(slots[s]);
        }
      };
      choose_lambda(0);
    };
    choose_I(0);
  }
  return out;
}

/// The generic point a triple describes: the ideal of P of its pairs and
/// the point-evaluation filter of each character.
inline SpectrumPoint to_spectrum_point(const Net& net, const ContextDiagram& P, const AqftPoint& t) {
  Bits members(net.pair_count());
  for (const auto& [o, io] : t.I) {
    for (auto c : members_of(io)) members.set(net.pair_index(o, c));
  }
  auto top = P.poset().maximum_of(members);
  if (!top) throw std::logic_error("triple does not determine a principal ideal");
  SpectrumPoint pt{{members, *top}, {}};
  for (const auto& [slot, ch] : t.lambda) {
    const std::size_t k = net.pair_index(slot.first, slot.second);
    const DLattice& L = *P.lattice(k);
    Bits x(L.size());
    for (auto a : L.elements()) {
      if ((L.bits(a) >> ch) & 1) x.set(a.id);
    }
    pt.filters.emplace(k, PrimeFilter{{P.lattice(k).lattice(), std::move(x)}});
  }
  return pt;
}

/// Subbasic <(O, C), a> on the triple side: O in R, C in I_O and the
/// character of (O, C) lies in a.
inline bool triple_in_subbasic(const Net& net, const ContextDiagram& P, const AqftPoint& t, std::size_t k, Elem a) {
  const auto [o, c] = net.pair_at(k);
  if (!t.R.contains(o)) return false;
  auto io = t.I.find(o);
  if (io == t.I.end() || !io->second.test(c)) return false;
  return (P.lattice(k)->bits(a) >> t.lambda.at({o, c})) & 1;
}

struct TriplesReport {
  std::size_t triples = 0;
  std::size_t generic_points = 0;
  bool total = true;
  bool injective = true;
  bool surjective = true;
  bool evaluation_preserved = true;
  std::vector<std::string> failures;
  bool ok() const { return total && injective && surjective && evaluation_preserved; }
};

inline TriplesReport check_triples_vs_generic(const Net& net) {
  const ContextDiagram P = build_P(net);
  const auto triples = aqft_points(net, P);
  const auto generic = external_points(P);
  TriplesReport r;
  r.triples = triples.size();
  r.generic_points = generic.size();
  std::vector<int> hits(generic.size(), 0);
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const SpectrumPoint pt = to_spectrum_point(net, P, triples[i]);
    auto it = std::find(generic.begin(), generic.end(), pt);
    if (it == generic.end()) {
      r.total = false;
      r.failures.push_back("triple " + std::to_string(i) + " has no generic point");
      continue;
    }
    const auto g = static_cast<std::size_t>(it - generic.begin());
    if (hits[g]++) {
      r.injective = false;
      r.failures.push_back("generic point " + std::to_string(g) + " hit twice");
    }
    for (std::size_t k = 0; k < P.size(); ++k) {
      for (auto a : P.lattice(k)->elements()) {
        if (triple_in_subbasic(net, P, triples[i], k, a) != in_subbasic(*it, k, a)) {
          r.evaluation_preserved = false;
          r.failures.push_back("evaluation differs at <" + P.label(k) + ", " + P.lattice(k)->label(a) + ">");
        }
      }
    }
  }
  for (std::size_t g = 0; g < hits.size(); ++g) {
    if (!hits[g]) {
      r.surjective = false;
      r.failures.push_back("generic point " + std::to_string(g) + " not described by a triple");
    }
  }
  return r;
}

/// (O, C) -> characters of C, (O1, C1) <= (O2, C2) -> restriction of
/// characters. No sheaf condition is asserted.
class SpectralPresheaf {
 public:
  explicit SpectralPresheaf(const ContextDiagram& P) : P_(P) {}

  std::vector<std::string> at(std::size_t k) const { return P_.algebra(k)->outcomes(); }
  /// Character index of C2 -> character index of C1.
  const std::vector<std::size_t>& restriction(std::size_t k1, std::size_t k2) const {
    return P_.inclusion(k1, k2).outcome_map();
  }

 private:
  ContextDiagram P_;
};

/// Double cones of an m x m lightcone grid: intervals [u1, u2] x [v1, v2],
/// ordered by containment.
inline FinPoset double_cone_poset(std::size_t m) {
  if (m < 1 || m > 3) throw Error(ErrorKind::TooLarge, "grid size must be between 1 and 3");
  struct Cone {
    std::size_t u1, u2, v1, v2;
  };
  std::vector<Cone> cones;
  for (std::size_t u1 = 0; u1 < m; ++u1) {
    for (std::size_t u2 = u1; u2 < m; ++u2) {
      for (std::size_t v1 = 0; v1 < m; ++v1) {
        for (std::size_t v2 = v1; v2 < m; ++v2) cones.push_back({u1, u2, v1, v2});
      }
    }
  }
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> le;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const Cone& a = cones[i];
    labels.push_back("D[" + std::to_string(a.u1) + "," + std::to_string(a.u2) + "]x[" + std::to_string(a.v1) + "," +
                     std::to_string(a.v2) + "]");
    for (std::size_t j = 0; j < cones.size(); ++j) {
      const Cone& b = cones[j];
      if (i != j && b.u1 <= a.u1 && a.u2 <= b.u2 && b.v1 <= a.v1 && a.v2 <= b.v2) le.emplace_back(i, j);
    }
  }
  return FinPoset::from_relation(std::move(labels), le);
}

/// One outcome per region, the trivial context everywhere.
inline Net trivial_net(const FinPoset& regions) {
  NetData d{regions, {}, {}, {}};
  for (std::size_t o = 0; o < regions.size(); ++o) {
    d.outcomes.push_back({"*"});
    d.contexts.push_back({Partition({{"*"}})});
  }
  for (auto [lo, hi] : regions.covers()) d.region_maps.push_back({lo, hi, {0}});
  return Net(std::move(d));
}

}  // namespace bohrspec
