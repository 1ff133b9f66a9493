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

// Diagrams of finite commutative algebras over a finite poset of contexts,
// with unital inclusions along the order.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bohrspec/algebra.hpp"
#include "bohrspec/error.hpp"
#include "bohrspec/la.hpp"
#include "bohrspec/lattice.hpp"
#include "bohrspec/poset.hpp"
#include "bohrspec/spectrum.hpp"

namespace bohrspec {

/// One listed inclusion algebra(lo) -> algebra(hi); outcome_map sends
/// outcomes of hi to outcomes of lo.
struct InclusionSpec {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::vector<std::size_t> outcome_map;
};

/// Unvalidated diagram, as read from input.
struct DiagramData {
  FinPoset poset;
  std::vector<AlgebraRef> algebras;
  std::vector<InclusionSpec> inclusions;
};

inline std::string edge_path(const FinPoset& p, std::size_t lo, std::size_t hi) {
  return "/inclusions/" + p.label(lo) + "<=" + p.label(hi);
}

class ContextDiagram {
 public:
  explicit ContextDiagram(DiagramData data) : impl_(std::make_shared<Impl>(std::move(data))) {}

  const DiagramData& data() const { return impl_->data; }
  const FinPoset& poset() const { return impl_->data.poset; }
  std::size_t size() const { return poset().size(); }
  const std::string& label(std::size_t c) const { return poset().label(c); }

  const AlgebraRef& algebra(std::size_t c) const { return impl_->data.algebras.at(c); }
  const AlgebraLattice& lattice(std::size_t c) const { return impl_->lattices.at(c); }
  const WellInside& well_inside(std::size_t c) const { return impl_->wi.at(c); }
  const std::vector<PrimeFilter>& rspec(std::size_t c) const { return impl_->rspec.at(c); }
  const std::vector<RoundedIdeal>& ridl(std::size_t c) const { return impl_->ridl.at(c); }

  const AlgebraHom& inclusion(std::size_t c, std::size_t d) const {
    return *impl_->homs.at(checked(c, d));
  }
  const LatticeHom& lattice_map(std::size_t c, std::size_t d) const {
    return *impl_->lattice_maps.at(checked(c, d));
  }

  friend bool same_diagram(const ContextDiagram& a, const ContextDiagram& b) {
    return a.impl_ == b.impl_;
  }

 private:
  std::size_t checked(std::size_t c, std::size_t d) const {
    if (c >= size() || d >= size() || !poset().leq(c, d)) {
      throw Error(ErrorKind::NotComparable,
                  (c < size() ? label(c) : "?") + " <= " + (d < size() ? label(d) : "?"));
    }
    return c * size() + d;
  }

  struct Impl {
    DiagramData data;
    std::vector<std::optional<AlgebraHom>> homs;
    std::vector<AlgebraLattice> lattices;
    std::vector<WellInside> wi;
    std::vector<std::optional<LatticeHom>> lattice_maps;
    std::vector<std::vector<PrimeFilter>> rspec;
    std::vector<std::vector<RoundedIdeal>> ridl;

    explicit Impl(DiagramData d) : data(std::move(d)) {
      const FinPoset& P = data.poset;
      const std::size_t n = P.size();
      if (n == 0) throw Error(ErrorKind::InvalidDiagram, "empty context poset", "/poset/elements");
      if (data.algebras.size() != n) {
        throw Error(ErrorKind::InvalidDiagram, "one algebra per context required", "/algebras");
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (!data.algebras[c]) {
          throw Error(ErrorKind::InvalidDiagram, "missing algebra", "/algebras/" + P.label(c));
        }
      }
      std::vector<std::optional<AlgebraHom>> given(n * n);
      for (const auto& e : data.inclusions) {
        const std::string path = edge_path(P, e.lo, e.hi);
        if (e.lo >= n || e.hi >= n || !P.leq(e.lo, e.hi)) {
          throw Error(ErrorKind::InvalidDiagram, "inclusion along a non-relation", path);
        }
        AlgebraHom h = AlgebraHom::unchecked(data.algebras[e.lo], data.algebras[e.hi], e.outcome_map);
        if (!h.is_surjective()) {
          throw Error(ErrorKind::InvalidDiagram, "outcome_map is not surjective", path + "/outcome_map");
        }
        if (given[e.lo * n + e.hi]) {
          throw Error(ErrorKind::InvalidDiagram, "inclusion listed twice", path);
        }
        given[e.lo * n + e.hi] = std::move(h);
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (given[c * n + c] && !(*given[c * n + c] == AlgebraHom::identity(data.algebras[c]))) {
          throw Error(ErrorKind::InvalidDiagram, "self-inclusion is not the identity", edge_path(P, c, c));
        }
      }
      homs.assign(n * n, std::nullopt);
      auto covers = P.covers();
      for (auto [lo, hi] : covers) {
        if (!given[lo * n + hi]) {
          throw Error(ErrorKind::InvalidDiagram, "missing inclusion for covering pair", edge_path(P, lo, hi));
        }
      }
      // rows from the top of the order down, so hom(E, D) exists before hom(C, D)
      auto order = P.linear_extension();
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t c = *it;
        homs[c * n + c] = AlgebraHom::identity(data.algebras[c]);
        for (std::size_t dd : order) {
          if (dd == c || !P.leq(c, dd)) continue;
          if (given[c * n + dd]) {
            homs[c * n + dd] = given[c * n + dd];
            continue;
          }
          for (auto [lo, hi] : covers) {
            if (lo == c && P.leq(hi, dd)) {
              homs[c * n + dd] = homs[hi * n + dd]->after(*given[c * n + hi]);
              break;
            }
          }
        }
      }
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t e = 0; e < n; ++e) {
          if (c == e || !P.leq(c, e)) continue;
          for (std::size_t dd = 0; dd < n; ++dd) {
            if (dd == e || !P.leq(e, dd)) continue;
            if (!(*homs[c * n + dd] == homs[e * n + dd]->after(*homs[c * n + e]))) {
              throw Error(ErrorKind::InvalidDiagram,
                          "inclusions do not compose: " + P.label(c) + " <= " + P.label(e) + " <= " +
                              P.label(dd),
                          edge_path(P, c, dd));
            }
          }
        }
      }
      for (std::size_t c = 0; c < n; ++c) {
        lattices.push_back(build_LA(data.algebras[c]));
        wi.emplace_back(lattices.back().lattice());
        rspec.push_back(regular_prime_filters(wi.back()));
        ridl.push_back(rounded_ideals(wi.back()));
      }
      lattice_maps.assign(n * n, std::nullopt);
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t dd = 0; dd < n; ++dd) {
          if (P.leq(c, dd)) lattice_maps[c * n + dd] = induced_hom(*homs[c * n + dd], lattices[c], lattices[dd]);
        }
      }
    }
  };

  std::shared_ptr<const Impl> impl_;
};

/// Diagram data listing every comparable pair explicitly.
inline DiagramData complete_data(const ContextDiagram& d) {
  DiagramData out{d.poset(), d.data().algebras, {}};
  for (std::size_t c = 0; c < d.size(); ++c) {
    for (std::size_t e = 0; e < d.size(); ++e) {
      if (c != e && d.poset().leq(c, e)) out.inclusions.push_back({c, e, d.inclusion(c, e).outcome_map()});
    }
  }
  return out;
}

/// The diagram restricted to a sub-poset, with the index map.
inline std::pair<ContextDiagram, std::vector<std::size_t>> restrict_diagram(const ContextDiagram& d,
                                                                            const Bits& keep) {
  auto [sub, idx] = d.poset().restrict_to(keep);
  DiagramData out{sub, {}, {}};
  for (auto i : idx) out.algebras.push_back(d.algebra(i));
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) {
      if (a != b && sub.leq(a, b)) out.inclusions.push_back({a, b, d.inclusion(idx[a], idx[b]).outcome_map()});
    }
  }
  return {ContextDiagram(std::move(out)), std::move(idx)};
}

}  // namespace bohrspec
