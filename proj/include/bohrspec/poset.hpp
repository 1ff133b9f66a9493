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

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "bohrspec/error.hpp"

namespace bohrspec {

using Bits = boost::dynamic_bitset<>;

/// Finite partial order on labelled elements. Element order is the order
/// the labels were given in; it is used for every deterministic enumeration.
class FinPoset {
 public:
  FinPoset() = default;

  /// Reflexive-transitive closure of `generating` (pairs lo <= hi);
  /// rejects cycles.
  static FinPoset from_relation(
      std::vector<std::string> labels,
      const std::vector<std::pair<std::size_t, std::size_t>>& generating) {
    FinPoset p;
    const std::size_t n = labels.size();
    p.labels_ = std::move(labels);
    {
      auto sorted = p.labels_;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorKind::InvalidPoset, "duplicate element label");
      }
    }
    p.up_.assign(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i) p.up_[i].set(i);
    for (auto [lo, hi] : generating) {
      if (lo >= n || hi >= n) {
        throw Error(ErrorKind::InvalidPoset, "relation index out of range");
      }
      p.up_[lo].set(hi);
    }
    // Warshall closure over rows
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (p.up_[i].test(k)) p.up_[i] |= p.up_[k];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (p.up_[i].test(j) && p.up_[j].test(i)) {
          throw Error(ErrorKind::InvalidPoset,
                      "order is not antisymmetric: '" + p.labels_[i] +
                          "' and '" + p.labels_[j] + "'");
        }
      }
    }
    p.down_.assign(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (p.up_[i].test(j)) p.down_[j].set(i);
      }
    }
    return p;
  }

  static FinPoset chain(std::vector<std::string> labels) {
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t i = 0; i + 1 < labels.size(); ++i) rel.emplace_back(i, i + 1);
    return from_relation(std::move(labels), rel);
  }

  static FinPoset antichain(std::vector<std::string> labels) {
    return from_relation(std::move(labels), {});
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  bool leq(std::size_t a, std::size_t b) const { return up_[a].test(b); }
  bool comparable(std::size_t a, std::size_t b) const {
    return leq(a, b) || leq(b, a);
  }
  const Bits& up(std::size_t a) const { return up_[a]; }
  const Bits& down(std::size_t a) const { return down_[a]; }

  std::optional<std::size_t> bottom() const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (up_[i].count() == size()) return i;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> top() const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (down_[i].count() == size()) return i;
    }
    return std::nullopt;
  }

  /// Largest element of a subset, if it has one.
  std::optional<std::size_t> maximum_of(const Bits& s) const {
    for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i)) {
      if (s.is_subset_of(down_[i])) return i;
    }
    return std::nullopt;
  }

  bool is_down_closed(const Bits& s) const {
    for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i)) {
      if (!down_[i].is_subset_of(s)) return false;
    }
    return true;
  }

  /// Covering pairs (Hasse diagram edges), in index order.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a) {
      for (std::size_t b = 0; b < size(); ++b) {
        if (a == b || !leq(a, b)) continue;
        bool direct = true;
        for (std::size_t c = 0; c < size() && direct; ++c) {
          if (c != a && c != b && leq(a, c) && leq(c, b)) direct = false;
        }
        if (direct) out.emplace_back(a, b);
      }
    }
    return out;
  }

  /// Elements sorted so that every element precedes those above it.
  std::vector<std::size_t> linear_extension() const {
    std::vector<std::size_t> order(size());
    for (std::size_t i = 0; i < size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return down_[a].count() < down_[b].count();
    });
    return order;
  }

  /// Induced sub-poset on `keep` (in index order), with the index map.
  std::pair<FinPoset, std::vector<std::size_t>> restrict_to(const Bits& keep) const {
    std::vector<std::size_t> idx;
    for (auto i = keep.find_first(); i != Bits::npos; i = keep.find_next(i)) {
      idx.push_back(i);
    }
    std::vector<std::string> lab;
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      lab.push_back(labels_[idx[a]]);
      for (std::size_t b = 0; b < idx.size(); ++b) {
        if (a != b && leq(idx[a], idx[b])) rel.emplace_back(a, b);
      }
    }
    return {from_relation(std::move(lab), rel), std::move(idx)};
  }

  friend bool operator==(const FinPoset& a, const FinPoset& b) {
    return a.labels_ == b.labels_ && a.up_ == b.up_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Bits> up_;    // up_[a] = { b : a <= b }
  std::vector<Bits> down_;  // down_[a] = { b : b <= a }
};

inline bool is_monotone(const FinPoset& q, const FinPoset& p,
                        const std::vector<std::size_t>& f) {
  if (f.size() != q.size()) return false;
  for (std::size_t a = 0; a < q.size(); ++a) {
    if (f[a] >= p.size()) return false;
    for (std::size_t b = 0; b < q.size(); ++b) {
      if (q.leq(a, b) && !p.leq(f[a], f[b])) return false;
    }
  }
  return true;
}

}  // namespace bohrspec
