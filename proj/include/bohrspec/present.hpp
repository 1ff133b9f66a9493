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

// Finite distributive lattices presented by generators and relations.
//
// The quotient of the free bounded distributive lattice by the congruence
// generated by the relations is computed through its prime filters: a
// finite distributive lattice embeds into 2^V, V being its homomorphisms to
// 2, and a homomorphism out of the quotient is exactly a valuation of the
// generators satisfying every relation.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bohrspec/error.hpp"
#include "bohrspec/expr.hpp"
#include "bohrspec/lattice.hpp"

namespace bohrspec {

inline constexpr std::size_t kMaxPresentedGenerators = 6;

struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::pair<LatExpr, LatExpr>> relations;
};

class PresentedLattice {
 public:
  PresentedLattice(Presentation p, LatticeRef lattice, std::vector<Mask> valuations,
                   std::vector<Mask> generator_masks)
      : presentation_(std::move(p)),
        lattice_(std::move(lattice)),
        valuations_(std::move(valuations)),
        generator_masks_(std::move(generator_masks)) {}

  const LatticeRef& lattice() const { return lattice_; }
  const std::vector<std::string>& generators() const { return presentation_.generators; }
  const Presentation& presentation() const { return presentation_; }

  /// Relation-respecting valuations (bit i = generator i true); the carrier.
  const std::vector<Mask>& valuations() const { return valuations_; }

  Elem generator(std::size_t i) const { return lattice_->at(generator_masks_.at(i)); }

  /// The quotient map on expressions.
  Elem quotient(const LatExpr& e) const {
    const auto& gens = generators();
    Mask m = evaluate(
        e,
        [&](const std::string& name) {
          for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens[i] == name) return generator_masks_[i];
          }
          throw Error(ErrorKind::UnknownGenerator, name);
        },
        full_mask(valuations_.size()));
    return lattice_->at(m);
  }

  Elem quotient(const NormalForm& nf) const { return quotient(to_expr(nf, generators())); }

 private:
  Presentation presentation_;
  LatticeRef lattice_;
  std::vector<Mask> valuations_;
  std::vector<Mask> generator_masks_;
};

inline PresentedLattice present(Presentation p, std::size_t max_size = kDefaultMaxSize) {
  const auto& gens = p.generators;
  const std::size_t n = gens.size();
  if (n > kMaxPresentedGenerators) {
    throw Error(ErrorKind::TooManyGenerators,
                std::to_string(n) + " generators (limit " +
                    std::to_string(kMaxPresentedGenerators) + ")");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gens[i] == gens[j]) throw Error(ErrorKind::Schema, "duplicate generator " + gens[i]);
    }
  }
  std::vector<std::pair<NormalForm, NormalForm>> rel;
  for (const auto& [l, r] : p.relations) rel.emplace_back(normalize(l, gens), normalize(r, gens));

  auto holds = [](const NormalForm& nf, Mask val) {
    for (Mask s : nf.meet_sets()) {
      if ((s & ~val) == 0) return true;
    }
    return false;
  };

  std::vector<Mask> valuations;
  for (Mask v = 0; v < (Mask{1} << n); ++v) {
    bool ok = true;
    for (const auto& [l, r] : rel) ok = ok && holds(l, v) == holds(r, v);
    if (ok) valuations.push_back(v);
  }

  std::vector<std::string> points;
  for (Mask v : valuations) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += (v >> i & 1) ? '1' : '0';
    points.push_back(s.empty() ? "*" : s);
  }
  std::vector<Mask> gen_masks(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < valuations.size(); ++k) {
      if (valuations[k] >> i & 1) gen_masks[i] |= Mask{1} << k;
    }
  }

  auto L = DLattice::generated(points, gen_masks, max_size);

  // canonical label: the free normal form of the largest representative
  std::vector<std::pair<Mask, Mask>> meet_masks;  // (generator set, image)
  const Mask full = full_mask(valuations.size());
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    Mask m = full;
    for (std::size_t i = 0; i < n; ++i) {
      if (s >> i & 1) m &= gen_masks[i];
    }
    meet_masks.emplace_back(s, m);
  }
  std::vector<std::string> labels;
  labels.reserve(L.size());
  for (auto e : L.elements()) {
    const Mask target = L.bits(e);
    std::vector<Mask> sets;
    for (auto [s, m] : meet_masks) {
      if ((m & ~target) == 0) sets.push_back(s);
    }
    labels.push_back(NormalForm(std::move(sets)).to_string(gens));
  }
  L.set_labels(std::move(labels));

  return PresentedLattice(std::move(p), std::make_shared<const DLattice>(std::move(L)),
                          std::move(valuations), std::move(gen_masks));
}

/// Free bounded distributive lattice on the given generators.
inline PresentedLattice free_lattice(std::vector<std::string> generators,
                                     std::size_t max_size = kDefaultMaxSize) {
  return present(Presentation{std::move(generators), {}}, max_size);
}

}  // namespace bohrspec
