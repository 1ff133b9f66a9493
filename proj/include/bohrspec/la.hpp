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

// The lattice L_A of a finite commutative G*-algebra: generators D(a) for
// self-adjoint a, read as "a is strictly positive here". In the finite
// function-algebra model D(a) is the set of outcomes where a > 0.

#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bohrspec/algebra.hpp"
#include "bohrspec/error.hpp"
#include "bohrspec/lattice.hpp"

namespace bohrspec {

class AlgebraLattice {
 public:
  AlgebraLattice(AlgebraRef algebra, LatticeRef lattice)
      : algebra_(std::move(algebra)), lattice_(std::move(lattice)) {}

  const AlgebraRef& algebra() const { return algebra_; }
  const LatticeRef& lattice() const { return lattice_; }
  const DLattice& operator*() const { return *lattice_; }
  const DLattice* operator->() const { return lattice_.get(); }

  /// Outcomes where a is strictly positive.
  static Mask positivity_set(const AlgElement& a) {
    detail::require_self_adjoint(a);
    Mask m = 0;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
      if (a[i].re > 0) m |= Mask{1} << i;
    }
    return m;
  }

  /// The generator map D: A_sa -> L_A.
  Elem D(const AlgElement& a) const {
    if (!same_algebra(a.parent(), algebra_)) {
      throw Error(ErrorKind::MismatchedParent, "D of element outside '" + algebra_->name() + "'");
    }
    return lattice_->at(positivity_set(a));
  }

  /// An element u with D(u) = e: +1 on e, -1 off it.
  AlgElement representative(Elem e) const {
    const Mask m = lattice_->bits(e);
    std::vector<Rational> v(algebra_->dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (m >> i & 1) ? 1 : -1;
    return AlgElement::real(algebra_, v);
  }

 private:
  AlgebraRef algebra_;
  LatticeRef lattice_;
};

inline AlgebraLattice build_LA(const AlgebraRef& A) {
  if (A->dim() > 20) throw Error(ErrorKind::TooLarge, "algebra with more than 20 outcomes");
  // generation witness: the indicator of each outcome has D = {o}
  std::vector<Mask> gens;
  for (std::size_t o = 0; o < A->dim(); ++o) {
    std::vector<Rational> v(A->dim(), Rational(0));
    v[o] = 1;
    Mask d = AlgebraLattice::positivity_set(AlgElement::real(A, v));
    if (d != (Mask{1} << o)) throw std::logic_error("indicator does not isolate its outcome");
    gens.push_back(d);
  }
  auto gen = DLattice::generated(A->outcomes(), gens);
  auto full = DLattice::powerset(A->outcomes());
  if (!(gen == full)) throw std::logic_error("D-images do not generate the powerset");
  return AlgebraLattice(A, std::make_shared<const DLattice>(std::move(full)));
}

struct AxiomViolation {
  std::string axiom;  // "1a".."1e"
  std::string instance;
};

/// Every instance of the five finitary axioms over `sample`.
inline std::vector<AxiomViolation> check_LA_axioms(const AlgebraLattice& LA,
                                                   const std::vector<AlgElement>& sample) {
  const DLattice& L = *LA;
  const AlgebraRef& A = LA.algebra();
  std::vector<AxiomViolation> bad;
  auto report = [&](const char* ax, std::string what) { bad.push_back({ax, std::move(what)}); };

  if (!L.leq(L.top(), LA.D(AlgElement::unit(A)))) report("1d", "T <= D(1)");
  for (const auto& a : sample) {
    if (!L.leq(L.meet(LA.D(a), LA.D(-a)), L.bottom())) {
      report("1a", "D(a) & D(-a) <= F for a=" + to_string(a));
    }
    if (is_positive(-a) && !L.leq(LA.D(a), L.bottom())) {
      report("1b", "D(a) <= F for a=" + to_string(a));
    }
    for (const auto& b : sample) {
      const std::string ab = "a=" + to_string(a) + ", b=" + to_string(b);
      if (!L.leq(LA.D(a + b), L.join(LA.D(a), LA.D(b)))) {
        report("1c", "D(a+b) <= D(a) v D(b) for " + ab);
      }
      const Elem rhs = L.join(L.meet(LA.D(a), LA.D(b)), L.meet(LA.D(-a), LA.D(-b)));
      if (LA.D(a * b) != rhs) report("1e", "D(ab) = (D(a)&D(b)) v (D(-a)&D(-b)) for " + ab);
    }
  }
  return bad;
}

/// All self-adjoint elements with every coordinate drawn from `values`.
inline std::vector<AlgElement> grid_elements(const AlgebraRef& A, const std::vector<Rational>& values) {
  std::vector<AlgElement> out;
  std::vector<std::size_t> idx(A->dim(), 0);
  while (true) {
    std::vector<Rational> v;
    for (auto i : idx) v.push_back(values[i]);
    out.push_back(AlgElement::real(A, v));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == values.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

/// L_h : L_A -> L_B, sending D(a) to D(h(a)); inverse image along the
/// outcome surjection.
inline LatticeHom induced_hom(const AlgebraHom& h, const AlgebraLattice& source,
                              const AlgebraLattice& target) {
  if (!same_algebra(h.source(), source.algebra()) || !same_algebra(h.target(), target.algebra())) {
    throw Error(ErrorKind::MismatchedLattice,
                "hom " + h.source()->name() + " -> " + h.target()->name() + " vs lattices of " +
                    source.algebra()->name() + ", " + target.algebra()->name());
  }
  const auto& map = h.outcome_map();
  return LatticeHom::from_mask_map(source.lattice(), target.lattice(), [&](Mask m) {
    Mask out = 0;
    for (std::size_t t = 0; t < map.size(); ++t) {
      if (m >> map[t] & 1) out |= Mask{1} << t;
    }
    return out;
  });
}

}  // namespace bohrspec
