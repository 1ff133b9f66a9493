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

// Finite bounded distributive lattices, stored as rings of sets over at most
// 64 carrier points (every finite distributive lattice with at most 64
// join-irreducibles has such a representation, by Birkhoff duality).

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bohrspec/error.hpp"
#include "bohrspec/poset.hpp"

namespace bohrspec {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxCarrier = 64;
inline constexpr std::size_t kDefaultMaxSize = std::size_t{1} << 20;

inline Mask full_mask(std::size_t n) {
  return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

/// Handle to an element of a particular DLattice.
struct Elem {
  std::uint32_t id = 0;
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

class DLattice {
 public:
  /// Sublattice of 2^points generated by `generators`, always containing
  /// the empty set and the full carrier.
  static DLattice generated(std::vector<std::string> points,
                            std::span<const Mask> generators,
                            std::size_t max_size = kDefaultMaxSize) {
    check_carrier(points);
    const Mask full = full_mask(points.size());
    // meets of subsets of generators, then all joins of those
    std::vector<Mask> meets{full};
    for (Mask g : generators) {
      g &= full;
      std::vector<Mask> next = meets;
      for (Mask m : meets) next.push_back(m & g);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      meets = std::move(next);
    }
    std::vector<Mask> elems{0};
    std::unordered_map<Mask, bool> seen{{0, true}};
    for (Mask m : meets) {
      const std::size_t before = elems.size();
      for (std::size_t i = 0; i < before; ++i) {
        Mask u = elems[i] | m;
        if (seen.emplace(u, true).second) {
          elems.push_back(u);
          if (elems.size() > max_size) {
            throw Error(ErrorKind::TooLarge,
                        "lattice exceeds " + std::to_string(max_size) +
                            " elements");
          }
        }
      }
    }
    return DLattice(std::move(points), std::move(elems));
  }

  static DLattice powerset(std::vector<std::string> points) {
    check_carrier(points);
    if (points.size() > 20) {
      throw Error(ErrorKind::TooLarge, "powerset of more than 20 points");
    }
    std::vector<Mask> elems;
    for (Mask m = 0; m <= full_mask(points.size()); ++m) elems.push_back(m);
    return DLattice(std::move(points), std::move(elems));
  }

  /// Explicit family of subsets; must be closed under union and
  /// intersection and contain the empty set and the full carrier.
  static DLattice from_family(std::vector<std::string> points,
                              std::vector<Mask> family) {
    check_carrier(points);
    const Mask full = full_mask(points.size());
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    auto has = [&](Mask m) {
      return std::binary_search(family.begin(), family.end(), m);
    };
    if (!has(0) || !has(full)) {
      throw Error(ErrorKind::InvalidPoset, "family lacks empty or full set");
    }
    for (Mask a : family) {
      if (a & ~full) throw Error(ErrorKind::InvalidPoset, "set outside carrier");
      for (Mask b : family) {
        if (!has(a & b) || !has(a | b)) {
          throw Error(ErrorKind::InvalidPoset, "family is not a ring of sets");
        }
      }
    }
    return DLattice(std::move(points), std::move(family));
  }

  /// Lattice of down-sets of a finite poset.
  static DLattice downsets(const FinPoset& p) {
    if (p.size() > kMaxCarrier) {
      throw Error(ErrorKind::TooLarge, "poset has more than 64 elements");
    }
    std::vector<Mask> gens;
    for (std::size_t i = 0; i < p.size(); ++i) {
      Mask m = 0;
      const Bits& d = p.down(i);
      for (auto j = d.find_first(); j != Bits::npos; j = d.find_next(j)) {
        m |= Mask{1} << j;
      }
      gens.push_back(m);
    }
    // down-sets are exactly the unions of principal down-sets
    std::vector<Mask> elems{0};
    std::unordered_map<Mask, bool> seen{{0, true}};
    for (Mask g : gens) {
      const std::size_t before = elems.size();
      for (std::size_t i = 0; i < before; ++i) {
        Mask u = elems[i] | g;
        if (seen.emplace(u, true).second) elems.push_back(u);
      }
    }
    return DLattice(p.labels(), std::move(elems));
  }

  std::size_t size() const { return masks_.size(); }
  const std::vector<std::string>& points() const { return points_; }

  /// All elements in ascending mask order.
  std::vector<Elem> elements() const {
    std::vector<Elem> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i].id = static_cast<std::uint32_t>(i);
    return out;
  }

  Mask bits(Elem e) const { return masks_.at(e.id); }

  std::optional<Elem> find(Mask m) const {
    auto it = std::lower_bound(masks_.begin(), masks_.end(), m);
    if (it == masks_.end() || *it != m) return std::nullopt;
    return Elem{static_cast<std::uint32_t>(it - masks_.begin())};
  }

  Elem at(Mask m) const {
    auto e = find(m);
    if (!e) {
      throw Error(ErrorKind::ElementNotInLattice, "set " + set_label(m));
    }
    return *e;
  }

  bool contains(Elem e) const { return e.id < masks_.size(); }
  void require(Elem e) const {
    if (!contains(e)) {
      throw Error(ErrorKind::ElementNotInLattice,
                  "element #" + std::to_string(e.id));
    }
  }

  Elem bottom() const { return Elem{0}; }
  Elem top() const { return Elem{static_cast<std::uint32_t>(masks_.size() - 1)}; }
  bool is_degenerate() const { return size() == 1; }

  Elem meet(Elem a, Elem b) const { return at(bits(a) & bits(b)); }
  Elem join(Elem a, Elem b) const { return at(bits(a) | bits(b)); }
  bool leq(Elem a, Elem b) const { return (bits(a) & ~bits(b)) == 0; }

  Elem meet_all(std::span<const Elem> xs) const {
    Mask m = bits(top());
    for (auto x : xs) m &= bits(x);
    return at(m);
  }
  Elem join_all(std::span<const Elem> xs) const {
    Mask m = 0;
    for (auto x : xs) m |= bits(x);
    return at(m);
  }

  std::string label(Elem e) const {
    if (!labels_.empty()) return labels_.at(e.id);
    return set_label(bits(e));
  }

  std::string set_label(Mask m) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (m >> i & 1) {
        if (!first) out += ",";
        out += points_[i];
        first = false;
      }
    }
    return out + "}";
  }

  /// Replaces the default set-notation labels (one per element).
  void set_labels(std::vector<std::string> labels) {
    if (labels.size() != size()) {
      throw Error(ErrorKind::ElementNotInLattice, "label count mismatch");
    }
    labels_ = std::move(labels);
  }

  friend bool operator==(const DLattice& a, const DLattice& b) {
    return a.points_ == b.points_ && a.masks_ == b.masks_;
  }

 private:
  DLattice(std::vector<std::string> points, std::vector<Mask> masks)
      : points_(std::move(points)), masks_(std::move(masks)) {
    std::sort(masks_.begin(), masks_.end());
    masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
  }

  static void check_carrier(const std::vector<std::string>& points) {
    if (points.size() > kMaxCarrier) {
      throw Error(ErrorKind::TooLarge, "more than 64 carrier points");
    }
  }

  std::vector<std::string> points_;
  std::vector<Mask> masks_;  // ascending; masks_[0] = 0, back() = full
  std::vector<std::string> labels_;
};

using LatticeRef = std::shared_ptr<const DLattice>;

/// Checks the lattice laws by brute force over all pairs and triples.
inline bool is_distributive_lattice(const DLattice& L) {
  for (auto a : L.elements()) {
    for (auto b : L.elements()) {
      if (L.meet(a, b) != L.meet(b, a)) return false;
      if (L.join(a, L.meet(a, b)) != a) return false;
      for (auto c : L.elements()) {
        if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c))) {
          return false;
        }
      }
    }
  }
  return true;
}

/// Lattice homomorphism between two finite lattices, stored as a table.
class LatticeHom {
 public:
  LatticeHom(LatticeRef source, LatticeRef target, std::vector<Elem> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (map_.size() != source_->size()) {
      throw Error(ErrorKind::MismatchedLattice, "map is not total");
    }
    for (auto e : map_) target_->require(e);
  }

  static LatticeHom identity(const LatticeRef& L) {
    return LatticeHom(L, L, L->elements());
  }

  /// Built from a function on carrier masks.
  static LatticeHom from_mask_map(LatticeRef source, LatticeRef target,
                                  const std::function<Mask(Mask)>& f) {
    std::vector<Elem> m;
    m.reserve(source->size());
    for (auto e : source->elements()) m.push_back(target->at(f(source->bits(e))));
    return LatticeHom(std::move(source), std::move(target), std::move(m));
  }

  const LatticeRef& source() const { return source_; }
  const LatticeRef& target() const { return target_; }
  Elem operator()(Elem e) const {
    source_->require(e);
    return map_[e.id];
  }
  const std::vector<Elem>& table() const { return map_; }

  /// (*this) after `first`.
  LatticeHom after(const LatticeHom& first) const {
    if (!(*first.target_ == *source_)) {
      throw Error(ErrorKind::MismatchedLattice, "composition of unrelated homs");
    }
    std::vector<Elem> m;
    m.reserve(first.map_.size());
    for (auto e : first.map_) m.push_back(map_[e.id]);
    return LatticeHom(first.source_, target_, std::move(m));
  }

  bool preserves_structure() const {
    const auto& S = *source_;
    const auto& T = *target_;
    if ((*this)(S.top()) != T.top() || (*this)(S.bottom()) != T.bottom()) return false;
    for (auto a : S.elements()) {
      for (auto b : S.elements()) {
        if ((*this)(S.meet(a, b)) != T.meet((*this)(a), (*this)(b))) return false;
        if ((*this)(S.join(a, b)) != T.join((*this)(a), (*this)(b))) return false;
      }
    }
    return true;
  }

  friend bool operator==(const LatticeHom& a, const LatticeHom& b) {
    return *a.source_ == *b.source_ && *a.target_ == *b.target_ && a.map_ == b.map_;
  }

 private:
  LatticeRef source_;
  LatticeRef target_;
  std::vector<Elem> map_;
};

}  // namespace bohrspec
