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

#include "bohrspec/bohrify.hpp"
#include "bohrspec/bundle.hpp"
#include "bohrspec/fixtures.hpp"
#include "oracles.hpp"

using namespace bohrspec;

namespace {

// Bell numbers from the Bell triangle.
std::vector<std::size_t> bell(std::size_t n) {
  std::vector<std::size_t> out{1};
  std::vector<std::size_t> row{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::size_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    out.push_back(next.front());
    row = std::move(next);
  }
  return out;
}

std::vector<std::string> base(std::size_t n) {
  std::vector<std::string> b;
  for (std::size_t i = 1; i <= n; ++i) b.push_back(std::to_string(i));
  return b;
}

}  // namespace

TEST(Partitions, CountsAreBellNumbers) {
  const auto B = bell(7);
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(all_partitions(base(n)).size(), B[n]) << n;
}

TEST(Partitions, LabelsAndRefinement) {
  const Partition p({{"3"}, {"2", "1"}});
  EXPECT_EQ(partition_label(p), "1,2|3");
  EXPECT_EQ(p.block_of("2"), std::optional<std::size_t>(0));
  EXPECT_FALSE(p.block_of("9").has_value());
  const Partition discrete({{"1"}, {"2"}, {"3"}});
  const Partition one({{"1", "2", "3"}});
  EXPECT_TRUE(refines(discrete, p));
  EXPECT_TRUE(refines(p, one));
  EXPECT_FALSE(refines(one, p));
  EXPECT_TRUE(refines(p, p));
  EXPECT_THROW(validate_partition(Partition({{"1"}, {"2"}}), {"1", "2", "3"}, "/x"), Error);
  EXPECT_THROW(validate_partition(Partition({{"1", "2"}, {"2", "3"}}), {"1", "2", "3"}, "/x"), Error);
}

TEST(FullContextPoset, SizesAndOrder) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto b = full_context_poset(n);
    EXPECT_EQ(b.diagram.size(), bell(n)[n]);
    EXPECT_TRUE(b.diagram.poset().bottom().has_value());
    EXPECT_TRUE(b.diagram.poset().top().has_value());
    EXPECT_EQ(b.diagram.algebra(*b.diagram.poset().top())->dim(), n);
  }
  EXPECT_THROW(full_context_poset(0), Error);
  EXPECT_THROW(full_context_poset(6), Error);
  const auto b3 = full_context_poset(3);
  EXPECT_EQ(ideals(b3.diagram.poset()).size(), 5u);
}

// Every partition lattice has a top, so its ideals are principal and the
// points over the ideal of a partition are its blocks.
TEST(FullContextPoset, PointCountsFromBlocks) {
  const auto B = bell(6);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto b = full_context_poset(n);
    std::size_t blocks = 0;
    for (const auto& p : b.partitions) blocks += p.size();
    EXPECT_EQ(blocks, B[n + 1] - B[n]);
    EXPECT_EQ(external_points(b.diagram).size(), blocks) << n;
  }
  EXPECT_EQ(external_points(full_context_poset(3).diagram).size(), 10u);
  EXPECT_EQ(oracle::points(full_context_poset(3).diagram).size(), 10u);
}

TEST(FullContextPoset, InclusionsAreCoarsenings) {
  const auto b = full_context_poset(4);
  const auto& d = b.diagram;
  for (std::size_t lo = 0; lo < d.size(); ++lo) {
    for (std::size_t hi = 0; hi < d.size(); ++hi) {
      if (!d.poset().leq(lo, hi)) continue;
      const auto& m = d.inclusion(lo, hi).outcome_map();
      for (std::size_t t = 0; t < m.size(); ++t) {
        const auto& fine = b.partitions[hi].blocks()[t];
        const auto& coarse = b.partitions[lo].blocks()[m[t]];
        for (const auto& o : fine) EXPECT_NE(std::find(coarse.begin(), coarse.end(), o), coarse.end());
      }
    }
  }
}

TEST(UserContexts, BottomInsertedAndDeduplicated) {
  UserContextSpec spec{{"1", "2", "3"}, {}, {}};
  spec.contexts.push_back({std::nullopt, Partition({{"1"}, {"2", "3"}})});
  spec.contexts.push_back({std::nullopt, Partition({{"1"}, {"2", "3"}})});
  spec.contexts.push_back({std::nullopt, Partition({{"1", "2", "3"}})});
  const auto b = user_contexts(spec);
  EXPECT_EQ(b.diagram.size(), 2u);
  EXPECT_EQ(b.diagram.label(0), "1,2,3");
}

TEST(UserContexts, IncompatibleContextsOfM2) {
  const auto b = fixtures::m2_contexts();
  EXPECT_EQ(b.diagram.size(), 3u);
  EXPECT_FALSE(b.diagram.poset().comparable(1, 2));
  EXPECT_EQ(ideals(b.diagram.poset()).size(), 3u);
  EXPECT_EQ(external_points(b.diagram).size(), 5u);
}

TEST(UserContexts, OrderErrors) {
  UserContextSpec spec{{"1", "2", "3"}, {}, {}};
  spec.contexts.push_back({"A", Partition({{"1"}, {"2", "3"}})});
  spec.contexts.push_back({"B", Partition({{"1"}, {"2"}, {"3"}})});
  spec.contexts.push_back({"C", Partition({{"1", "2"}, {"3"}})});
  auto expect_kind = [](const UserContextSpec& s, ErrorKind k) {
    try {
      user_contexts(s);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), k) << e.what();
    }
  };
  auto ok = spec;
  ok.order = {{"A", "B"}, {"C", "B"}};
  const auto b = user_contexts(ok);
  EXPECT_TRUE(b.diagram.poset().leq(1, 2));
  EXPECT_FALSE(b.diagram.poset().comparable(1, 3));
  auto wrong = spec;
  wrong.order = {{"B", "A"}};
  expect_kind(wrong, ErrorKind::InconsistentOrder);
  auto unknown = spec;
  unknown.order = {{"A", "Z"}};
  expect_kind(unknown, ErrorKind::InconsistentOrder);
  auto twice = spec;
  twice.contexts.push_back({"A", Partition({{"1", "2"}, {"3"}})});
  expect_kind(twice, ErrorKind::InconsistentOrder);
  UserContextSpec same{{"1", "2"}, {}, {}};
  same.contexts.push_back({"X", Partition({{"1"}, {"2"}})});
  same.contexts.push_back({"Y", Partition({{"1"}, {"2"}})});
  same.order = {{"X", "Y"}, {"Y", "X"}};
  expect_kind(same, ErrorKind::InconsistentOrder);
  UserContextSpec dup{{"1", "1"}, {}, {}};
  expect_kind(dup, ErrorKind::Schema);
}

TEST(Cstar, ShippedDiagramsAreClean) {
  for (const auto& [name, d] : fixtures::shipped_diagrams()) {
    EXPECT_TRUE(check_componentwise_cstar(complete_data(d)).empty()) << name;
  }
}

TEST(Cstar, ReportsBrokenData) {
  const auto A1 = standard_algebra(1), A2 = standard_algebra(2), A3 = standard_algebra(3);
  DiagramData gap{FinPoset::chain({"a", "b"}), {A2, A3}, {{0, 1, {0, 0, 0}}}};
  auto v = check_componentwise_cstar(gap);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, "NotUnitalInclusion");
  EXPECT_EQ(v[0].where, "a<=b");
  DiagramData partial{FinPoset::chain({"a", "b"}), {A2, A3}, {{0, 1, {0, 1}}}};
  v = check_componentwise_cstar(partial);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, "NotUnitalInclusion");
  DiagramData twisted{FinPoset::chain({"a", "b", "c"}), {A1, A2, A3},
                      {{0, 1, {0, 0}}, {1, 2, {0, 1, 1}}, {0, 2, {0, 0, 0}}}};
  EXPECT_TRUE(check_componentwise_cstar(twisted).empty());
  DiagramData bent{FinPoset::chain({"a", "b", "c"}), {A2, A2, A3},
                   {{0, 1, {1, 0}}, {1, 2, {0, 1, 1}}, {0, 2, {0, 1, 1}}}};
  v = check_componentwise_cstar(bent);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, "NotFunctorial");
  EXPECT_EQ(v[0].where, "a<=c");
  EXPECT_THROW(ContextDiagram{bent}, Error);
}
