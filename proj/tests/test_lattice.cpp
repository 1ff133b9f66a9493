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

#include <random>

#include <gtest/gtest.h>

#include "bohrspec/expr.hpp"
#include "bohrspec/fixtures.hpp"
#include "bohrspec/present.hpp"
#include "oracles.hpp"

using namespace bohrspec;

namespace {

// Monotone Boolean functions of n variables, counted over all truth tables.
std::size_t monotone_functions(std::size_t n) {
  const std::size_t rows = std::size_t{1} << n;
  std::size_t count = 0;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << rows); ++t) {
    bool ok = true;
    for (std::size_t a = 0; a < rows && ok; ++a) {
      for (std::size_t b = 0; b < rows && ok; ++b) {
        if ((a & ~b) == 0 && (t >> a & 1) && !(t >> b & 1)) ok = false;
      }
    }
    count += ok;
  }
  return count;
}

}  // namespace

TEST(FinPoset, ClosureAndErrors) {
  const auto p = FinPoset::from_relation({"a", "b", "c"}, {{0, 1}, {1, 2}});
  EXPECT_TRUE(p.leq(0, 2));
  EXPECT_FALSE(p.leq(2, 0));
  EXPECT_EQ(p.bottom(), std::optional<std::size_t>(0));
  EXPECT_EQ(p.top(), std::optional<std::size_t>(2));
  EXPECT_THROW(FinPoset::from_relation({"a", "b"}, {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(FinPoset::from_relation({"a", "a"}, {}), Error);
  EXPECT_THROW(FinPoset::from_relation({"a"}, {{0, 3}}), Error);
  const auto v = FinPoset::antichain({"x", "y"});
  EXPECT_FALSE(v.bottom().has_value());
  EXPECT_EQ(p.covers().size(), 2u);
}

TEST(DLattice, DownsetsOfSmallPosets) {
  EXPECT_EQ(DLattice::downsets(FinPoset::chain({"a", "b"})).size(), 3u);
  EXPECT_EQ(DLattice::downsets(FinPoset::antichain({"a", "b"})).size(), 4u);
  EXPECT_EQ(DLattice::downsets(FinPoset::antichain({})).size(), 1u);
  const auto L = DLattice::downsets(FinPoset::from_relation({"a", "b", "c"}, {{0, 2}, {1, 2}}));
  EXPECT_EQ(L.size(), 5u);
  EXPECT_TRUE(is_distributive_lattice(L));
  EXPECT_EQ(L.label(L.top()), "{a,b,c}");
}

TEST(DLattice, FamilyValidation) {
  EXPECT_NO_THROW(DLattice::from_family({"p", "q"}, {0, 1, 3}));
  EXPECT_THROW(DLattice::from_family({"p", "q"}, {0, 1, 2}), Error);
  EXPECT_THROW(DLattice::from_family({"p", "q"}, {1, 3}), Error);
  const auto L = DLattice::powerset({"1", "2", "3"});
  EXPECT_THROW(L.require(Elem{99}), Error);
}

TEST(Parser, GrammarAndErrors) {
  EXPECT_EQ(to_string(parse_expr("a v b & c")), to_string(parse_expr("a v (b & c)")));
  EXPECT_EQ(parse_expr("T").kind(), LatExpr::Kind::Top);
  EXPECT_EQ(parse_expr("F").kind(), LatExpr::Kind::Bottom);
  const Query q = parse_query("(g1 & g2) v g1 <= g1");
  EXPECT_EQ(q.rel, Query::Rel::Leq);
  EXPECT_EQ(parse_query("g1 = g2").rel, Query::Rel::Eq);
  EXPECT_EQ(parse_query("g1 v g2").rel, Query::Rel::None);
  for (const char* bad : {"", "a &", "(a v b", "a <= b <= c", "a b", "&a", "a <= (b <= c)"}) {
    try {
      parse_query(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
}

TEST(Normalize, Examples) {
  const std::vector<std::string> g{"g1", "g2", "g3"};
  EXPECT_EQ(normalize(parse_expr("(g1 & g2) v g1"), g).to_string(g), "g1");
  EXPECT_EQ(normalize(parse_expr("(g1 v g2) & (g1 v g3)"), g).to_string(g), "g1 v (g2 & g3)");
  EXPECT_EQ(normalize(parse_expr("g1 & F"), g).to_string(g), "F");
  EXPECT_EQ(normalize(parse_expr("g2 v T"), g).to_string(g), "T");
  EXPECT_THROW(normalize(parse_expr("g9"), g), Error);
}

// Normal forms agree with truth-table semantics on every valuation.
TEST(Normalize, MatchesTruthTables) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> g{"a", "b", "c"};
  std::function<LatExpr(int)> rnd = [&](int d) -> LatExpr {
    const auto k = rng() % 6;
    if (d == 0 || k < 2) return LatExpr::gen(g[rng() % 3]);
    if (k == 2) return rng() % 2 ? LatExpr::top() : LatExpr::bottom();
    return k % 2 ? rnd(d - 1) & rnd(d - 1) : rnd(d - 1) | rnd(d - 1);
  };
  auto table = [&](const LatExpr& e) {
    std::uint8_t t = 0;
    for (unsigned v = 0; v < 8; ++v) {
      const bool val = e.fold<bool>([&](const std::string& n) { return (v >> (n[0] - 'a') & 1) != 0; }, true, false,
                                    [](bool x, bool y) { return x && y; }, [](bool x, bool y) { return x || y; });
      t |= static_cast<std::uint8_t>(val) << v;
    }
    return t;
  };
  for (int i = 0; i < 300; ++i) {
    const LatExpr e1 = rnd(4), e2 = rnd(4);
    const auto n1 = normalize(e1, g), n2 = normalize(e2, g);
    EXPECT_EQ(n1 == n2, table(e1) == table(e2));
    EXPECT_EQ(n1.leq(n2), (table(e1) & ~table(e2)) == 0);
    EXPECT_EQ(table(to_expr(n1, g)), table(e1));
  }
}

TEST(Present, FreeLatticeSizesAreDedekindNumbers) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::string> g;
    for (std::size_t i = 0; i < n; ++i) g.push_back("g" + std::to_string(i + 1));
    EXPECT_EQ(free_lattice(g).lattice()->size(), monotone_functions(n)) << n;
  }
}

TEST(Present, AbsorptionQuery) {
  const auto f2 = present(fixtures::free2());
  const Query q = parse_query("(g1 & g2) v g1 <= g1");
  EXPECT_TRUE(f2.lattice()->leq(f2.quotient(q.lhs), f2.quotient(*q.rhs)));
  EXPECT_THROW(f2.quotient(parse_expr("g3")), Error);
}

// Every presentation on two generators with one or two relations between
// elements of FDL(2): class structure matches congruence closure.
TEST(Present, QuotientsMatchCongruenceClosure) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = a + 1; b < 6; ++b) pairs.emplace_back(a, b);
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> rels{{}};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    rels.push_back({pairs[i]});
    for (std::size_t j = i + 1; j < pairs.size(); ++j) rels.push_back({pairs[i], pairs[j]});
  }
  for (const auto& rel : rels) {
    Presentation p{{"g1", "g2"}, {}};
    for (auto [a, b] : rel) {
      p.relations.emplace_back(parse_expr(oracle::Fdl2::exprs[a]), parse_expr(oracle::Fdl2::exprs[b]));
    }
    const auto q = present(p);
    const auto cls = oracle::congruence_classes(rel);
    std::set<std::size_t> distinct(cls.begin(), cls.end());
    ASSERT_EQ(q.lattice()->size(), distinct.size());
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = 0; b < 6; ++b) {
        const bool same = q.quotient(parse_expr(oracle::Fdl2::exprs[a])) == q.quotient(parse_expr(oracle::Fdl2::exprs[b]));
        EXPECT_EQ(same, cls[a] == cls[b]);
      }
    }
  }
}

TEST(Present, Guards) {
  Presentation seven{{"a", "b", "c", "d", "e", "f", "g"}, {}};
  try {
    present(seven);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooManyGenerators);
  }
  try {
    free_lattice({"a", "b", "c", "d"}, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
  Presentation unknown{{"a"}, {{LatExpr::gen("b"), LatExpr::top()}}};
  EXPECT_THROW(present(unknown), Error);
}

TEST(LatticeHom, IdentityAndComposition) {
  auto L = std::make_shared<const DLattice>(DLattice::powerset({"1", "2"}));
  const auto id = LatticeHom::identity(L);
  EXPECT_TRUE(id.preserves_structure());
  EXPECT_EQ(id.after(id), id);
}
