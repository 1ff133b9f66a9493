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

// Point-free spectrum machinery on a finite distributive lattice: the
// well-inside relation, normality, regular prime filters and rounded
// well-inside ideals, and their finite Stone-type duality.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bohrspec/algebra.hpp"
#include "bohrspec/error.hpp"
#include "bohrspec/expr.hpp"
#include "bohrspec/la.hpp"
#include "bohrspec/lattice.hpp"
#include "bohrspec/poset.hpp"

namespace bohrspec {

/// Some y with a v y = T and a' & y = F, first in element order.
inline std::optional<Elem> well_inside(const DLattice& L, Elem a_small, Elem a) {
  L.require(a_small);
  L.require(a);
  for (auto y : L.elements()) {
    if (L.join(a, y) == L.top() && L.meet(a_small, y) == L.bottom()) return y;
  }
  return std::nullopt;
}

/// The full well-inside table of a lattice, with the first witness for
/// every related pair.
class WellInside {
 public:
  explicit WellInside(LatticeRef L) : L_(std::move(L)), n_(L_->size()), witness_(n_ * n_) {
    for (auto a : L_->elements()) {
      // candidates y with a v y = T, in element order
      std::vector<Elem> covers;
      for (auto y : L_->elements()) {
        if (L_->join(a, y) == L_->top()) covers.push_back(y);
      }
      for (auto s : L_->elements()) {
        for (auto y : covers) {
          if (L_->meet(s, y) == L_->bottom()) {
            witness_[s.id * n_ + a.id] = y;
            break;
          }
        }
      }
    }
  }

  const LatticeRef& lattice() const { return L_; }
  const DLattice& L() const { return *L_; }

  bool operator()(Elem a_small, Elem a) const { return witness(a_small, a).has_value(); }
  const std::optional<Elem>& witness(Elem a_small, Elem a) const {
    L_->require(a_small);
    L_->require(a);
    return witness_[a_small.id * n_ + a.id];
  }

  /// The set of elements well inside a.
  Bits below(Elem a) const {
    Bits out(n_);
    for (std::size_t s = 0; s < n_; ++s) {
      if (witness_[s * n_ + a.id]) out.set(s);
    }
    return out;
  }

  /// Elements well inside some member of s.
  Bits below(const Bits& s) const {
    Bits out(n_);
    for (auto a = s.find_first(); a != Bits::npos; a = s.find_next(a)) {
      out |= below(Elem{static_cast<std::uint32_t>(a)});
    }
    return out;
  }

 private:
  LatticeRef L_;
  std::size_t n_;
  std::vector<std::optional<Elem>> witness_;
};

struct NormalityReport {
  bool normal = true;
  std::optional<std::pair<Elem, Elem>> counterexample;  // a v b = T with no refinement
};

/// Whenever a v b = T there are x, y with a v y = x v b = T and x & y = F.
inline NormalityReport is_normal(const DLattice& L) {
  for (auto a : L.elements()) {
    for (auto b : L.elements()) {
      if (L.join(a, b) != L.top()) continue;
      bool found = false;
      for (auto y : L.elements()) {
        if (L.join(a, y) != L.top()) continue;
        for (auto x : L.elements()) {
          if (L.join(x, b) == L.top() && L.meet(x, y) == L.bottom()) {
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) return {false, std::make_pair(a, b)};
    }
  }
  return {};
}

inline void require_normal(const DLattice& L) {
  if (auto r = is_normal(L); !r.normal) {
    throw Error(ErrorKind::NotNormal,
                "cover " + L.label(r.counterexample->first) + " v " +
                    L.label(r.counterexample->second) + " = T does not refine");
  }
}

/// Some a'' with a' << a'' << a.
inline Elem interpolate(const WellInside& wi, Elem a_small, Elem a) {
  const DLattice& L = wi.L();
  if (!wi(a_small, a)) {
    throw Error(ErrorKind::NotWellInside, L.label(a_small) + " << " + L.label(a));
  }
  require_normal(L);
  for (auto mid : L.elements()) {
    if (wi(a_small, mid) && wi(mid, a)) return mid;
  }
  throw Error(ErrorKind::NotNormal, "no interpolant for " + L.label(a_small) + " << " + L.label(a));
}

/// A subset of the elements of one lattice.
struct ElemSubset {
  LatticeRef lattice;
  Bits members;

  bool contains(Elem e) const { return members.test(e.id); }
  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    for (auto i = members.find_first(); i != Bits::npos; i = members.find_next(i)) {
      out.push_back(Elem{static_cast<std::uint32_t>(i)});
    }
    return out;
  }
  bool meets(const ElemSubset& o) const { return members.intersects(o.members); }
  friend bool operator==(const ElemSubset& a, const ElemSubset& b) { return a.members == b.members; }
};

struct PrimeFilter : ElemSubset {};
struct RoundedIdeal : ElemSubset {};
struct LatticeIdeal : ElemSubset {};

inline std::string to_string(const ElemSubset& s) {
  std::string out = "[";
  bool first = true;
  for (auto e : s.elements()) {
    if (!first) out += ", ";
    out += s.lattice->label(e);
    first = false;
  }
  return out + "]";
}

/// Principal down-set / up-set of an element.
inline Bits principal_down(const DLattice& L, Elem a) {
  Bits out(L.size());
  for (auto e : L.elements()) {
    if (L.leq(e, a)) out.set(e.id);
  }
  return out;
}
inline Bits principal_up(const DLattice& L, Elem a) {
  Bits out(L.size());
  for (auto e : L.elements()) {
    if (L.leq(a, e)) out.set(e.id);
  }
  return out;
}

inline bool is_ideal(const DLattice& L, const Bits& s) {
  if (!s.test(L.bottom().id)) return false;
  for (auto a = s.find_first(); a != Bits::npos; a = s.find_next(a)) {
    const Elem ea{static_cast<std::uint32_t>(a)};
    if (!principal_down(L, ea).is_subset_of(s)) return false;
    for (auto b = s.find_next(a); b != Bits::npos; b = s.find_next(b)) {
      if (!s.test(L.join(ea, Elem{static_cast<std::uint32_t>(b)}).id)) return false;
    }
  }
  return true;
}

inline bool is_prime_filter(const DLattice& L, const Bits& s) {
  if (!s.test(L.top().id) || s.test(L.bottom().id)) return false;
  for (auto a : L.elements()) {
    for (auto b : L.elements()) {
      const bool in_a = s.test(a.id), in_b = s.test(b.id);
      if (in_a && L.leq(a, b) && !in_b) return false;
      if (in_a && in_b && !s.test(L.meet(a, b).id)) return false;
      if (s.test(L.join(a, b).id) && !in_a && !in_b) return false;
    }
  }
  return true;
}

/// a in x implies some a' in x with a' << a.
inline bool is_regular(const WellInside& wi, const Bits& x) {
  for (auto a = x.find_first(); a != Bits::npos; a = x.find_next(a)) {
    if (!wi.below(Elem{static_cast<std::uint32_t>(a)}).intersects(x)) return false;
  }
  return true;
}

/// I = the set of elements well inside members of I.
inline bool is_rounded(const WellInside& wi, const Bits& ideal) { return wi.below(ideal) == ideal; }

/// Every prime filter of a ring of sets is {a : p in a} for a carrier point p.
inline std::vector<PrimeFilter> prime_filters(const LatticeRef& L) {
  std::vector<PrimeFilter> out;
  for (std::size_t p = 0; p < L->points().size(); ++p) {
    Bits x(L->size());
    for (auto e : L->elements()) {
      if (L->bits(e) >> p & 1) x.set(e.id);
    }
    bool dup = false;
    for (const auto& f : out) dup = dup || f.members == x;
    if (!dup) out.push_back(PrimeFilter{{L, std::move(x)}});
  }
  return out;
}

inline std::vector<PrimeFilter> regular_prime_filters(const WellInside& wi) {
  std::vector<PrimeFilter> out;
  for (auto& f : prime_filters(wi.lattice())) {
    if (is_regular(wi, f.members)) out.push_back(std::move(f));
  }
  return out;
}
inline std::vector<PrimeFilter> regular_prime_filters(const LatticeRef& L) {
  return regular_prime_filters(WellInside(L));
}

/// Finite ideals are principal; keep the rounded ones.
inline std::vector<RoundedIdeal> rounded_ideals(const WellInside& wi) {
  std::vector<RoundedIdeal> out;
  for (auto a : wi.L().elements()) {
    Bits d = principal_down(wi.L(), a);
    if (is_rounded(wi, d)) out.push_back(RoundedIdeal{{wi.lattice(), std::move(d)}});
  }
  return out;
}
inline std::vector<RoundedIdeal> rounded_ideals(const LatticeRef& L) { return rounded_ideals(WellInside(L)); }

/// Ideals J with: (every a' << a lies in J) implies a in J.
inline std::vector<LatticeIdeal> regular_ideals(const WellInside& wi) {
  std::vector<LatticeIdeal> out;
  const DLattice& L = wi.L();
  for (auto b : L.elements()) {
    Bits d = principal_down(L, b);
    bool regular = true;
    for (auto a : L.elements()) {
      if (wi.below(a).is_subset_of(d) && !d.test(a.id)) regular = false;
    }
    if (regular) out.push_back(LatticeIdeal{{wi.lattice(), std::move(d)}});
  }
  return out;
}

/// r<I> = { a : every a' << a lies in I }.
inline Bits regularize(const WellInside& wi, const Bits& ideal) {
  Bits out(wi.L().size());
  for (auto a : wi.L().elements()) {
    if (wi.below(a).is_subset_of(ideal)) out.set(a.id);
  }
  return out;
}

struct BijectionReport {
  std::vector<LatticeIdeal> regular;
  std::vector<RoundedIdeal> rounded;
  std::vector<std::size_t> to_rounded;  // regular index -> rounded index
  std::vector<std::size_t> to_regular;  // rounded index -> regular index
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// J -> the elements well inside J, and I -> r<I>, checked mutually inverse.
inline BijectionReport regular_rounded_bijection(const WellInside& wi) {
  require_normal(wi.L());
  BijectionReport r;
  r.regular = regular_ideals(wi);
  r.rounded = rounded_ideals(wi);
  auto find_in = [](const auto& family, const Bits& s) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (family[i].members == s) return i;
    }
    return std::nullopt;
  };
  for (std::size_t j = 0; j < r.regular.size(); ++j) {
    Bits down = wi.below(r.regular[j].members);
    auto i = find_in(r.rounded, down);
    if (!i) {
      r.failures.push_back("down-image of regular ideal " + to_string(r.regular[j]) + " is not rounded");
      continue;
    }
    r.to_rounded.push_back(*i);
    if (regularize(wi, down) != r.regular[j].members) {
      r.failures.push_back("r<down J> != J for " + to_string(r.regular[j]));
    }
  }
  for (std::size_t i = 0; i < r.rounded.size(); ++i) {
    Bits reg = regularize(wi, r.rounded[i].members);
    auto j = find_in(r.regular, reg);
    if (!j) {
      r.failures.push_back("r<I> is not a regular ideal for " + to_string(r.rounded[i]));
      continue;
    }
    r.to_regular.push_back(*j);
    if (wi.below(reg) != r.rounded[i].members) {
      r.failures.push_back("down r<I> != I for " + to_string(r.rounded[i]));
    }
  }
  if (r.regular.size() != r.rounded.size()) r.failures.push_back("family sizes differ");
  return r;
}

struct OpensReport {
  std::size_t points = 0;
  std::size_t opens = 0;
  std::size_t rounded_ideals = 0;
  bool injective = true;
  bool has_empty_and_full = true;
  bool closed_under_union = true;
  bool closed_under_intersection = true;
  bool ok() const {
    return injective && has_empty_and_full && closed_under_union && closed_under_intersection &&
           opens == rounded_ideals;
  }
};

/// The finite space of regular prime filters with opens ext(I) = {x : I meets x}.
inline OpensReport check_ridl_is_opens(const WellInside& wi) {
  require_normal(wi.L());
  auto pts = regular_prime_filters(wi);
  auto ridl = rounded_ideals(wi);
  OpensReport r;
  r.points = pts.size();
  r.rounded_ideals = ridl.size();
  std::vector<Bits> ext;
  for (const auto& I : ridl) {
    Bits e(pts.size());
    for (std::size_t x = 0; x < pts.size(); ++x) {
      if (I.meets(pts[x])) e.set(x);
    }
    ext.push_back(std::move(e));
  }
  auto has = [&](const Bits& s) {
    for (const auto& e : ext) {
      if (e == s) return true;
    }
    return false;
  };
  std::vector<Bits> distinct;
  for (const auto& e : ext) {
    bool dup = false;
    for (const auto& d : distinct) dup = dup || d == e;
    if (dup) r.injective = false;
    else distinct.push_back(e);
  }
  r.opens = distinct.size();
  Bits none(pts.size()), all(pts.size());
  all.set();
  r.has_empty_and_full = has(none) && has(all);
  for (const auto& a : distinct) {
    for (const auto& b : distinct) {
      if (!has(a | b)) r.closed_under_union = false;
      if (!has(a & b)) r.closed_under_intersection = false;
    }
  }
  return r;
}

inline constexpr int kShrinkDepth = 64;

/// Some r = 1/2^m with v <= phi(D(a_i - r)), given v << phi(D(a_i)).
inline Rational shrink_witness(const AlgebraLattice& LA, Elem v, const LatExpr& phi,
                               const std::vector<std::pair<std::string, AlgElement>>& args,
                               int max_depth = kShrinkDepth) {
  const DLattice& L = *LA;
  auto eval_at = [&](const Rational& r) {
    return evaluate(phi, L, [&](const std::string& name) {
      for (const auto& [n, a] : args) {
        if (n == name) return LA.D(a - AlgElement::constant(LA.algebra(), r));
      }
      throw Error(ErrorKind::UnknownGenerator, name);
    });
  };
  const Elem u = eval_at(Rational(0));
  if (!well_inside(L, v, u)) {
    throw Error(ErrorKind::NotWellInside, L.label(v) + " << " + L.label(u));
  }
  Rational r(1, 2);
  for (int m = 1; m <= max_depth; ++m, r /= 2) {
    if (L.leq(v, eval_at(r))) return r;
  }
  throw Error(ErrorKind::SearchExhausted, "no r >= 1/2^" + std::to_string(max_depth));
}

/// Some u' << u with v <= L_h(u'), given v << L_h(u).
inline Elem push_well_inside(const AlgebraHom& h, const AlgebraLattice& source,
                             const AlgebraLattice& target, Elem u, Elem v) {
  const LatticeHom Lh = induced_hom(h, source, target);
  if (!well_inside(*target, v, Lh(u))) {
    throw Error(ErrorKind::NotWellInside, target->label(v) + " << L_h(" + source->label(u) + ")");
  }
  // u = D(a) for a representative a; shrink h(a) in the target
  const AlgElement a = source.representative(u);
  const Rational r = shrink_witness(target, v, LatExpr::gen("a"), {{"a", h(a)}});
  const Elem u2 = source.D(a - AlgElement::constant(source.algebra(), r));
  if (!well_inside(*source, u2, u) || !target->leq(v, Lh(u2))) {
    throw std::logic_error("push_well_inside produced an invalid witness");
  }
  return u2;
}

}  // namespace bohrspec
