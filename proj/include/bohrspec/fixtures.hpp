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

// Built-in example diagrams, nets and presentations. The JSON files under
// fixtures/ describe the same objects.

#include <string>
#include <utility>
#include <vector>

#include "bohrspec/aqft.hpp"
#include "bohrspec/bohrify.hpp"
#include "bohrspec/diagram.hpp"
#include "bohrspec/expr.hpp"
#include "bohrspec/present.hpp"

namespace bohrspec::fixtures {

/// C1 (one outcome) below D (outcomes u, d).
inline ContextDiagram two_context() {
  auto c1 = make_algebra("C1", {"*"});
  auto d = make_algebra("D", {"u", "d"});
  return ContextDiagram({FinPoset::chain({"C1", "D"}), {c1, d}, {{0, 1, {0, 0}}}});
}

inline ContextDiagram single_context(std::size_t k) {
  return ContextDiagram({FinPoset::chain({"C"}), {standard_algebra(k)}, {}});
}

/// Two maximal contexts of M2 sharing only the scalars.
inline BohrDiagram m2_contexts() {
  UserContextSpec spec{{"1", "2"}, {}, {}};
  spec.contexts.push_back({"Z", Partition({{"1"}, {"2"}})});
  spec.contexts.push_back({"X", Partition({{"1"}, {"2"}})});
  return user_contexts(spec);
}

inline std::vector<std::pair<std::string, ContextDiagram>> shipped_diagrams() {
  return {
      {"two-context", two_context()},
      {"single-2", single_context(2)},
      {"single-3", single_context(3)},
      {"bohr-1", full_context_poset(1).diagram},
      {"bohr-2", full_context_poset(2).diagram},
      {"bohr-3", full_context_poset(3).diagram},
      {"m2-contexts", m2_contexts().diagram},
  };
}

/// One region carrying every context of Q[i]^3.
inline Net net_single_region() {
  return Net({FinPoset::chain({"O"}), {{"1", "2", "3"}}, {}, {all_partitions({"1", "2", "3"})}});
}

/// O1 < O2, one outcome each.
inline Net net_chain_trivial() { return trivial_net(FinPoset::chain({"O1", "O2"})); }

/// O1 < O2, both Q[i]^2 with the identity region map and both contexts.
inline Net net_chain_bohr2() {
  return Net({FinPoset::chain({"O1", "O2"}),
              {{"1", "2"}, {"1", "2"}},
              {{0, 1, {0, 1}}},
              {all_partitions({"1", "2"}), all_partitions({"1", "2"})}});
}

/// O1 < O2 where O2 splits outcome 2 of O1 in two.
inline Net net_chain_refined() {
  return Net({FinPoset::chain({"O1", "O2"}),
              {{"1", "2"}, {"1", "2a", "2b"}},
              {{0, 1, {0, 1, 1}}},
              {all_partitions({"1", "2"}), all_partitions({"1", "2a", "2b"})}});
}

/// Two incomparable regions A, B over a common one-outcome region O.
inline Net net_vee() {
  FinPoset R = FinPoset::from_relation({"O", "A", "B"}, {{0, 1}, {0, 2}});
  return Net({R,
              {{"*"}, {"1", "2"}, {"1", "2"}},
              {{0, 1, {0, 0}}, {0, 2, {0, 0}}},
              {{Partition({{"*"}})}, all_partitions({"1", "2"}), all_partitions({"1", "2"})}});
}

inline std::vector<std::pair<std::string, Net>> shipped_nets() {
  return {
      {"single-region", net_single_region()},
      {"chain-trivial", net_chain_trivial()},
      {"chain-bohr2", net_chain_bohr2()},
      {"chain-refined", net_chain_refined()},
      {"vee", net_vee()},
  };
}

inline Presentation free2() { return {{"g1", "g2"}, {}}; }

inline Presentation boolean2() {
  return {{"g1", "g2"},
          {{parse_expr("g1 & g2"), LatExpr::bottom()}, {parse_expr("g1 v g2"), LatExpr::top()}}};
}

inline Presentation collapse1() { return {{"g"}, {{LatExpr::gen("g"), LatExpr::top()}}}; }

}  // namespace bohrspec::fixtures
