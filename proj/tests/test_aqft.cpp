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

#include <gtest/gtest.h>

#include "bohrspec/aqft.hpp"
#include "bohrspec/fixtures.hpp"
#include "oracles.hpp"

using namespace bohrspec;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::Schema;
}

}  // namespace

TEST(BuildP, SingleRegionIsItsContextPoset) {
  const auto net = fixtures::net_single_region();
  const auto P = build_P(net);
  EXPECT_EQ(P.size(), 5u);
  EXPECT_EQ(P.label(0), "O:1,2,3");
  const auto b = full_context_poset(3);
  EXPECT_EQ(external_points(P).size(), external_points(b.diagram).size());
}

TEST(BuildP, ChainOfChainsIsProductOrder) {
  const auto net = fixtures::net_chain_bohr2();
  const auto P = build_P(net);
  ASSERT_EQ(P.size(), 4u);
  for (std::size_t k1 = 0; k1 < 4; ++k1) {
    for (std::size_t k2 = 0; k2 < 4; ++k2) {
      const auto [o1, c1] = net.pair_at(k1);
      const auto [o2, c2] = net.pair_at(k2);
      EXPECT_EQ(P.poset().leq(k1, k2), o1 <= o2 && c1 <= c2);
    }
  }
}

TEST(BuildP, RefinedChainPullsBackContexts) {
  const auto net = fixtures::net_chain_refined();
  const auto P = build_P(net);
  // O1's discrete context 1|2 pulls back to 1|2a,2b in O2
  const std::size_t o1_disc = *P.poset().index_of("O1:1|2");
  EXPECT_TRUE(P.poset().leq(o1_disc, *P.poset().index_of("O2:1|2a,2b")));
  EXPECT_TRUE(P.poset().leq(o1_disc, *P.poset().index_of("O2:1|2a|2b")));
  EXPECT_FALSE(P.poset().leq(o1_disc, *P.poset().index_of("O2:1,2a|2b")));
  EXPECT_EQ(partition_label(net.pulled_back(0, 1, Partition({{"1"}, {"2"}}))), "1|2a,2b");
}

TEST(Net, Validation) {
  const auto R = FinPoset::chain({"O1", "O2"});
  EXPECT_EQ(kind_of([&] { Net({R, {{"1"}, {"1"}}, {{0, 1, {0}}}, {{Partition({{"1"}})}, {}}}); }),
            ErrorKind::InvalidNet);
  EXPECT_EQ(kind_of([&] { Net({R, {{"1", "2"}, {"1"}}, {{0, 1, {0}}}, {{Partition(std::vector<Block>{Block{"1", "2"}})}, {Partition({{"1"}})}}}); }),
            ErrorKind::InvalidNet);
  // O1's discrete context has no image among O2's contexts
  EXPECT_EQ(kind_of([&] {
              Net({R,
                   {{"1", "2"}, {"1", "2"}},
                   {{0, 1, {0, 1}}},
                   {all_partitions({"1", "2"}), {Partition(std::vector<Block>{Block{"1", "2"}})}}});
            }),
            ErrorKind::InvalidNet);
  EXPECT_EQ(kind_of([&] { Net({R, {{"1"}, {"1"}}, {}, {{Partition({{"1"}})}, {Partition({{"1"}})}}}); }),
            ErrorKind::InvalidNet);
  EXPECT_EQ(kind_of([&] { Net({R, {{"1"}, {"1"}}, {{0, 1, {0}}}, {{Partition({{"2"}})}, {Partition({{"1"}})}}}); }),
            ErrorKind::InvalidNet);
}

TEST(Covering, Examples) {
  const auto net = fixtures::net_single_region();
  const auto P = build_P(net);
  const std::size_t top = *P.poset().top();
  const DLattice& L = *P.lattice(top);
  EXPECT_TRUE(covering_holds(P, {top, L.at(3)}, {{top, L.at(3)}}));
  EXPECT_TRUE(covering_holds(P, {top, L.bottom()}, {}));
  EXPECT_TRUE(covering_holds(P, {top, L.at(3)}, {{top, L.at(1)}, {top, L.at(2)}}));
  EXPECT_FALSE(covering_holds(P, {top, L.at(7)}, {{top, L.at(1)}, {top, L.at(2)}}));
  // other fibres never help
  EXPECT_FALSE(covering_holds(P, {top, L.at(1)}, {{0, P.lattice(0)->top()}}));
  EXPECT_THROW(covering_holds(P, {top, Elem{99}}, {}), Error);
}

// On Boolean fibres the covering relation is a <= join of the projection.
TEST(Covering, FibrewiseJoinOnBooleanFibres) {
  for (const auto& [name, net] : fixtures::shipped_nets()) {
    const auto P = build_P(net);
    for (std::size_t k = 0; k < P.size(); ++k) {
      const DLattice& L = *P.lattice(k);
      const auto elems = L.elements();
      for (std::uint32_t w = 0; w < (1u << elems.size()); ++w) {
        std::vector<SiteElem> W;
        Mask j = 0;
        for (std::size_t i = 0; i < elems.size(); ++i) {
          if (w >> i & 1) {
            W.push_back({k, elems[i]});
            j |= L.bits(elems[i]);
          }
        }
        for (auto a : elems) EXPECT_EQ(covering_holds(P, {k, a}, W), (L.bits(a) & ~j) == 0) << name;
      }
    }
  }
}

TEST(Triples, CountsMatchBruteForcePoints) {
  for (const auto& [name, net] : fixtures::shipped_nets()) {
    const auto P = build_P(net);
    const auto triples = aqft_points(net, P);
    EXPECT_EQ(triples.size(), oracle::points(P).size()) << name;
    const auto r = check_triples_vs_generic(net);
    EXPECT_TRUE(r.ok()) << name;
    EXPECT_EQ(r.triples, r.generic_points);
  }
  EXPECT_EQ(aqft_points(fixtures::net_chain_trivial(), build_P(fixtures::net_chain_trivial())).size(), 2u);
}

TEST(Triples, RegionIdealsOfTrivialNets) {
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto R = double_cone_poset(m);
    const auto net = trivial_net(R);
    const auto r = check_triples_vs_generic(net);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.triples, oracle::poset_ideals(R).size()) << m;
  }
  EXPECT_EQ(double_cone_poset(2).size(), 9u);
  EXPECT_THROW(double_cone_poset(4), Error);
}

TEST(Triples, VeeSplitsPerBranch) {
  const auto net = fixtures::net_vee();
  const auto P = build_P(net);
  std::map<std::size_t, std::size_t> per_region_top;
  for (const auto& t : aqft_points(net, P)) ++per_region_top[t.R.top];
  EXPECT_EQ(per_region_top[0], 1u);
  EXPECT_EQ(per_region_top[1], 3u);
  EXPECT_EQ(per_region_top[2], 3u);
}

TEST(Triples, SubbasicMembershipMatches) {
  for (const auto& [name, net] : fixtures::shipped_nets()) {
    const auto P = build_P(net);
    for (const auto& t : aqft_points(net, P)) {
      const auto pt = to_spectrum_point(net, P, t);
      for (std::size_t k = 0; k < P.size(); ++k) {
        for (auto a : P.lattice(k)->elements()) {
          EXPECT_EQ(triple_in_subbasic(net, P, t, k, a), in_subbasic(pt, k, a)) << name;
        }
      }
    }
  }
}

TEST(SpectralPresheaf, RestrictionsCompose) {
  const auto P = build_P(fixtures::net_chain_refined());
  const SpectralPresheaf S(P);
  const auto& Q = P.poset();
  for (std::size_t a = 0; a < P.size(); ++a) {
    EXPECT_EQ(S.at(a), P.algebra(a)->outcomes());
    for (std::size_t b = 0; b < P.size(); ++b) {
      for (std::size_t c = 0; c < P.size(); ++c) {
        if (!Q.leq(a, b) || !Q.leq(b, c)) continue;
        const auto& ab = S.restriction(a, b);
        const auto& bc = S.restriction(b, c);
        const auto& ac = S.restriction(a, c);
        for (std::size_t x = 0; x < ac.size(); ++x) EXPECT_EQ(ac[x], ab[bc[x]]);
      }
    }
  }
}
