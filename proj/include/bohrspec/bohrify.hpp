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

// Context diagrams of diagonal algebras: commutative unital subalgebras of
// Q[i]^n are the partitions of the outcome set, a block algebra sitting
// inside the algebra of any refinement.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bohrspec/algebra.hpp"
#include "bohrspec/diagram.hpp"
#include "bohrspec/error.hpp"
#include "bohrspec/la.hpp"
#include "bohrspec/poset.hpp"

namespace bohrspec {

using Block = std::vector<std::string>;

/// A partition of a base set; blocks and their members kept sorted.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    for (auto& b : blocks_) std::sort(b.begin(), b.end());
    std::sort(blocks_.begin(), blocks_.end());
  }

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

  std::vector<std::string> base() const {
    std::vector<std::string> out;
    for (const auto& b : blocks_) out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Index of the block holding an outcome.
  std::optional<std::size_t> block_of(const std::string& o) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (std::binary_search(blocks_[i].begin(), blocks_[i].end(), o)) return i;
    }
    return std::nullopt;
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }
  friend bool operator<(const Partition& a, const Partition& b) { return a.blocks_ < b.blocks_; }

 private:
  std::vector<Block> blocks_;
};

inline std::string block_label(const Block& b) {
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + b[i];
  return out;
}

inline std::string partition_label(const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "|" : "") + block_label(p.blocks()[i]);
  return out;
}

/// Blocks nonempty, disjoint, covering exactly `base`.
inline void validate_partition(const Partition& p, const std::vector<std::string>& base, const std::string& path) {
  for (const auto& b : p.blocks()) {
    if (b.empty()) throw Error(ErrorKind::Schema, "empty block", path);
  }
  auto sorted_base = base;
  std::sort(sorted_base.begin(), sorted_base.end());
  if (p.base() != sorted_base) {
    throw Error(ErrorKind::Schema, "blocks must be disjoint and cover the base set", path);
  }
}

/// Every block of `fine` lies inside a block of `coarse`.
inline bool refines(const Partition& fine, const Partition& coarse) {
  for (const auto& b : fine.blocks()) {
    auto home = coarse.block_of(b.front());
    if (!home) return false;
    const Block& c = coarse.blocks()[*home];
    if (!std::includes(c.begin(), c.end(), b.begin(), b.end())) return false;
  }
  return fine.base() == coarse.base();
}

/// All partitions of a base set, fewest blocks first, then by label.
inline std::vector<Partition> all_partitions(const std::vector<std::string>& base) {
  std::vector<Partition> out;
  std::vector<Block> blocks;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == base.size()) {
      out.emplace_back(blocks);
      return;
    }
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      blocks[k].push_back(base[i]);
      go(i + 1);
      blocks[k].pop_back();
    }
    blocks.push_back({base[i]});
    go(i + 1);
    blocks.pop_back();
  };
  go(0);
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return partition_label(a) < partition_label(b);
  });
  return out;
}

/// Functions constant on blocks: outcomes are the block labels.
inline AlgebraRef block_algebra(const std::string& name, const Partition& p) {
  std::vector<std::string> outs;
  for (const auto& b : p.blocks()) outs.push_back(block_label(b));
  return make_algebra(name, std::move(outs));
}

/// Outcome map of the inclusion C_coarse -> C_fine: each fine block goes to
/// the coarse block containing it.
inline std::vector<std::size_t> coarsening_map(const Partition& fine, const AlgebraRef& fine_alg,
                                               const Partition& coarse, const AlgebraRef& coarse_alg) {
  std::vector<std::size_t> m(fine_alg->dim());
  for (const auto& b : fine.blocks()) {
    const std::size_t t = *fine_alg->index_of(block_label(b));
    const std::size_t s = *coarse_alg->index_of(block_label(coarse.blocks()[*coarse.block_of(b.front())]));
    m[t] = s;
  }
  return m;
}

/// A context diagram whose contexts are partitions of one base set.
struct BohrDiagram {
  std::vector<std::string> base;
  std::vector<Partition> partitions;  // per context
  ContextDiagram diagram;
};

namespace detail {

inline BohrDiagram assemble(std::vector<std::string> base, std::vector<std::string> names,
                            std::vector<Partition> parts, const std::vector<std::pair<std::size_t, std::size_t>>& le) {
  FinPoset P = FinPoset::from_relation(names, le);
  DiagramData data{P, {}, {}};
  for (std::size_t c = 0; c < parts.size(); ++c) data.algebras.push_back(block_algebra(names[c], parts[c]));
  for (auto [lo, hi] : P.covers()) {
    data.inclusions.push_back({lo, hi, coarsening_map(parts[hi], data.algebras[hi], parts[lo], data.algebras[lo])});
  }
  return {std::move(base), std::move(parts), ContextDiagram(std::move(data))};
}

}  // namespace detail

inline constexpr std::size_t kMaxBohrN = 5;

/// All partitions of {1..n} ordered by reverse refinement: the one-block
/// partition is the bottom, the discrete partition the top.
inline BohrDiagram full_context_poset(std::size_t n) {
  if (n < 1 || n > kMaxBohrN) {
    throw Error(ErrorKind::TooLarge, "n must be between 1 and " + std::to_string(kMaxBohrN));
  }
  std::vector<std::string> base;
  for (std::size_t i = 1; i <= n; ++i) base.push_back(std::to_string(i));
  auto parts = all_partitions(base);
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> le;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    names.push_back(partition_label(parts[a]));
    for (std::size_t b = 0; b < parts.size(); ++b) {
      if (a != b && refines(parts[b], parts[a])) le.emplace_back(a, b);
    }
  }
  return detail::assemble(std::move(base), std::move(names), std::move(parts), le);
}

struct UserContext {
  std::optional<std::string> name;
  Partition partition;
};

struct UserContextSpec {
  std::vector<std::string> base;
  std::vector<UserContext> contexts;
  std::vector<std::pair<std::string, std::string>> order;  // (lower, upper) by name
};

/// A declared finite family of contexts. Unnamed contexts are named by
/// their partition label; repeats of a (name, partition) pair collapse; the
/// one-block context is always present and below everything. Other order
/// comes only from `order`, each pair of which must be a refinement.
inline BohrDiagram user_contexts(const UserContextSpec& spec) {
  if (spec.base.empty()) throw Error(ErrorKind::Schema, "empty base set", "/bohr/base");
  auto sorted_base = spec.base;
  std::sort(sorted_base.begin(), sorted_base.end());
  if (std::adjacent_find(sorted_base.begin(), sorted_base.end()) != sorted_base.end()) {
    throw Error(ErrorKind::Schema, "duplicate outcome in base set", "/bohr/base");
  }
  const Partition bottom(std::vector<Block>{sorted_base});
  std::vector<std::string> names{partition_label(bottom)};
  std::vector<Partition> parts{bottom};
  std::map<std::string, std::size_t> by_name{{names[0], 0}};
  for (std::size_t i = 0; i < spec.contexts.size(); ++i) {
    const std::string path = "/bohr/contexts/" + std::to_string(i);
    const Partition& p = spec.contexts[i].partition;
    validate_partition(p, sorted_base, path);
    const std::string name = spec.contexts[i].name.value_or(partition_label(p));
    if (p == bottom) {
      if (name != names[0]) by_name.emplace(name, 0);
      continue;
    }
    auto it = by_name.find(name);
    if (it != by_name.end()) {
      if (!(parts[it->second] == p)) {
        throw Error(ErrorKind::InconsistentOrder, "context '" + name + "' declared with two partitions", path);
      }
      continue;
    }
    by_name.emplace(name, names.size());
    names.push_back(name);
    parts.push_back(p);
  }
  std::vector<std::pair<std::size_t, std::size_t>> le;
  for (std::size_t c = 1; c < parts.size(); ++c) le.emplace_back(0, c);
  for (std::size_t i = 0; i < spec.order.size(); ++i) {
    const std::string path = "/bohr/order/" + std::to_string(i);
    auto lo = by_name.find(spec.order[i].first);
    auto hi = by_name.find(spec.order[i].second);
    if (lo == by_name.end() || hi == by_name.end()) {
      throw Error(ErrorKind::InconsistentOrder, "order names an undeclared context", path);
    }
    if (!refines(parts[hi->second], parts[lo->second])) {
      throw Error(ErrorKind::InconsistentOrder,
                  "'" + spec.order[i].second + "' does not refine '" + spec.order[i].first + "'", path);
    }
    le.emplace_back(lo->second, hi->second);
  }
  try {
    return detail::assemble(sorted_base, std::move(names), std::move(parts), le);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidPoset) throw Error(ErrorKind::InconsistentOrder, e.message(), "/bohr/order");
    throw;
  }
}

struct CStarViolation {
  std::string kind;  // NotUnitalInclusion, AlgebraLaw, HomLaw, NotFunctorial
  std::string where;
  std::string detail;
};

namespace detail {

/// Unit, zero, +-1 and i on each outcome, and the alternating vector.
inline std::vector<AlgElement> law_sample(const AlgebraRef& A) {
  std::vector<AlgElement> out{AlgElement::unit(A), AlgElement::zero(A)};
  for (std::size_t o = 0; o < A->dim(); ++o) {
    std::vector<GaussRat> e(A->dim(), 0);
    e[o] = 1;
    out.emplace_back(A, e);
    e[o] = GaussRat(0, 1);
    out.emplace_back(A, e);
  }
  std::vector<GaussRat> alt;
  for (std::size_t o = 0; o < A->dim(); ++o) alt.push_back(o % 2 ? GaussRat(-1) : GaussRat(Rational(1, 2), 1));
  out.emplace_back(A, alt);
  return out;
}

inline bool cstar_laws_hold(const AlgebraRef& A, std::string& detail) {
  const auto s = law_sample(A);
  const AlgElement one = AlgElement::unit(A);
  const AlgElement zero = AlgElement::zero(A);
  for (const auto& a : s) {
    if (!(a * one == a) || !(a + zero == a) || !(a.star().star() == a) || !is_positive(a * a.star())) {
      detail = "unit, involution or square positivity at " + to_string(a);
      return false;
    }
    for (const auto& b : s) {
      if (!(a * b == b * a) || !(a + b == b + a) || !((a * b).star() == b.star() * a.star()) ||
          !((a + b).star() == a.star() + b.star())) {
        detail = "commutativity or involution at " + to_string(a) + ", " + to_string(b);
        return false;
      }
      for (const auto& c : s) {
        if (!((a * b) * c == a * (b * c)) || !(a * (b + c) == a * b + a * c)) {
          detail = "associativity or distributivity at " + to_string(a) + ", " + to_string(b) + ", " + to_string(c);
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace detail

/// Checks every fibre algebra against the *-algebra laws on a sample, and
/// every listed inclusion for being a unital *-homomorphism preserving
/// positivity, plus agreement of composites.
inline std::vector<CStarViolation> check_componentwise_cstar(const DiagramData& d) {
  std::vector<CStarViolation> out;
  const FinPoset& P = d.poset;
  for (std::size_t c = 0; c < d.algebras.size(); ++c) {
    std::string why;
    if (!detail::cstar_laws_hold(d.algebras[c], why)) out.push_back({"AlgebraLaw", P.label(c), why});
  }
  std::map<std::pair<std::size_t, std::size_t>, AlgebraHom> homs;
  for (const auto& e : d.inclusions) {
    const std::string where = P.label(e.lo) + "<=" + P.label(e.hi);
    std::optional<AlgebraHom> h;
    try {
      h = AlgebraHom::unchecked(d.algebras[e.lo], d.algebras[e.hi], e.outcome_map);
    } catch (const Error& err) {
      out.push_back({"NotUnitalInclusion", where, err.message()});
      continue;
    }
    if (!h->is_surjective()) {
      out.push_back({"NotUnitalInclusion", where, "outcome_map is not surjective"});
      continue;
    }
    const auto s = detail::law_sample(d.algebras[e.lo]);
    bool ok = (*h)(AlgElement::unit(d.algebras[e.lo])) == AlgElement::unit(d.algebras[e.hi]);
    for (const auto& a : s) {
      ok = ok && (*h)(a.star()) == (*h)(a).star();
      ok = ok && (!a.is_self_adjoint() || is_positive(a) == is_positive((*h)(a)));
      for (const auto& b : s) ok = ok && (*h)(a * b) == (*h)(a) * (*h)(b) && (*h)(a + b) == (*h)(a) + (*h)(b);
    }
    if (!ok) out.push_back({"HomLaw", where, "not a unital *-homomorphism preserving positivity"});
    homs.emplace(std::make_pair(e.lo, e.hi), *h);
  }
  for (const auto& [ce, h1] : homs) {
    for (const auto& [ed, h2] : homs) {
      if (ce.second != ed.first) continue;
      auto direct = homs.find({ce.first, ed.second});
      if (direct != homs.end() && !(direct->second == h2.after(h1))) {
        out.push_back({"NotFunctorial", P.label(ce.first) + "<=" + P.label(ed.second),
                       "listed inclusion differs from the composite through " + P.label(ce.second)});
      }
    }
  }
  return out;
}

}  // namespace bohrspec
