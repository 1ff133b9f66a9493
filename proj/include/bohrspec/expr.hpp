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

// Lattice expressions over named generators, their recursive-descent
// parser, and the canonical join-of-meets normal form of the free bounded
// distributive lattice.
//
//   join  := meet ('v' meet)*
//   meet  := atom ('&' atom)*
//   atom  := 'T' | 'F' | name | '(' join ')'
//   query := join [('<=' | '=') join]

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bohrspec/error.hpp"
#include "bohrspec/lattice.hpp"

namespace bohrspec {

class LatExpr {
 public:
  enum class Kind { Top, Bottom, Gen, Meet, Join };

  static LatExpr top() { return LatExpr(Kind::Top); }
  static LatExpr bottom() { return LatExpr(Kind::Bottom); }
  static LatExpr gen(std::string name) {
    LatExpr e(Kind::Gen);
    e.name_ = std::move(name);
    return e;
  }
  static LatExpr meet(LatExpr a, LatExpr b) { return binary(Kind::Meet, std::move(a), std::move(b)); }
  static LatExpr join(LatExpr a, LatExpr b) { return binary(Kind::Join, std::move(a), std::move(b)); }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const LatExpr& lhs() const { return *lhs_; }
  const LatExpr& rhs() const { return *rhs_; }

  friend LatExpr operator&(LatExpr a, LatExpr b) { return meet(std::move(a), std::move(b)); }
  friend LatExpr operator|(LatExpr a, LatExpr b) { return join(std::move(a), std::move(b)); }

  /// Generator names in first-occurrence order.
  std::vector<std::string> generators() const {
    std::vector<std::string> out;
    collect(out);
    return out;
  }

  template <class T>
  T fold(const std::function<T(const std::string&)>& gen, const T& top,
         const T& bottom, const std::function<T(const T&, const T&)>& meet,
         const std::function<T(const T&, const T&)>& join) const {
    switch (kind_) {
      case Kind::Top: return top;
      case Kind::Bottom: return bottom;
      case Kind::Gen: return gen(name_);
      case Kind::Meet:
        return meet(lhs_->fold(gen, top, bottom, meet, join),
                    rhs_->fold(gen, top, bottom, meet, join));
      case Kind::Join:
        return join(lhs_->fold(gen, top, bottom, meet, join),
                    rhs_->fold(gen, top, bottom, meet, join));
    }
    return bottom;
  }

 private:
  explicit LatExpr(Kind k) : kind_(k) {}
  static LatExpr binary(Kind k, LatExpr a, LatExpr b) {
    LatExpr e(k);
    e.lhs_ = std::make_shared<const LatExpr>(std::move(a));
    e.rhs_ = std::make_shared<const LatExpr>(std::move(b));
    return e;
  }
  void collect(std::vector<std::string>& out) const {
    if (kind_ == Kind::Gen) {
      if (std::find(out.begin(), out.end(), name_) == out.end()) out.push_back(name_);
    } else if (lhs_) {
      lhs_->collect(out);
      rhs_->collect(out);
    }
  }

  Kind kind_;
  std::string name_;
  std::shared_ptr<const LatExpr> lhs_;
  std::shared_ptr<const LatExpr> rhs_;
};

inline std::string to_string(const LatExpr& e) {
  using K = LatExpr::Kind;
  switch (e.kind()) {
    case K::Top: return "T";
    case K::Bottom: return "F";
    case K::Gen: return e.name();
    case K::Meet: {
      auto side = [](const LatExpr& s) {
        return s.kind() == K::Join ? "(" + to_string(s) + ")" : to_string(s);
      };
      return side(e.lhs()) + " & " + side(e.rhs());
    }
    case K::Join: return to_string(e.lhs()) + " v " + to_string(e.rhs());
  }
  return {};
}

/// Evaluates in the ring-of-sets representation.
inline Mask evaluate(const LatExpr& e, const std::function<Mask(const std::string&)>& env,
                     Mask full) {
  return e.fold<Mask>(
      env, full, Mask{0}, [](const Mask& a, const Mask& b) { return a & b; },
      [](const Mask& a, const Mask& b) { return a | b; });
}

inline Elem evaluate(const LatExpr& e, const DLattice& L,
                     const std::function<Elem(const std::string&)>& env) {
  return e.fold<Elem>(
      env, L.top(), L.bottom(), [&](const Elem& a, const Elem& b) { return L.meet(a, b); },
      [&](const Elem& a, const Elem& b) { return L.join(a, b); });
}

struct Query {
  enum class Rel { None, Leq, Eq };
  LatExpr lhs = LatExpr::bottom();
  Rel rel = Rel::None;
  std::optional<LatExpr> rhs;
};

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  LatExpr parse_expr() {
    LatExpr e = parse_join();
    expect_end();
    return e;
  }

  Query parse_query() {
    Query q;
    q.lhs = parse_join();
    skip_ws();
    if (consume("<=")) {
      q.rel = Query::Rel::Leq;
    } else if (consume("=")) {
      q.rel = Query::Rel::Eq;
    }
    if (q.rel != Query::Rel::None) q.rhs = parse_join();
    expect_end();
    return q;
  }

 private:
  LatExpr parse_join() {
    LatExpr e = parse_meet();
    while (peek_word() == "v") {
      pos_ += 1;
      e = LatExpr::join(std::move(e), parse_meet());
    }
    return e;
  }

  LatExpr parse_meet() {
    LatExpr e = parse_atom();
    skip_ws();
    while (consume("&")) {
      e = LatExpr::meet(std::move(e), parse_atom());
      skip_ws();
    }
    return e;
  }

  LatExpr parse_atom() {
    skip_ws();
    if (consume("(")) {
      LatExpr e = parse_join();
      skip_ws();
      if (!consume(")")) fail("expected ')'");
      return e;
    }
    std::string w = peek_word();
    if (w.empty()) fail("expected generator, 'T', 'F' or '('");
    if (w == "v") fail("'v' is the join operator");
    pos_ += w.size();
    if (w == "T") return LatExpr::top();
    if (w == "F") return LatExpr::bottom();
    return LatExpr::gen(std::move(w));
  }

  std::string peek_word() {
    skip_ws();
    std::size_t p = pos_;
    if (p >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[p])) || text_[p] == '_')) {
      return {};
    }
    while (p < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_' || text_[p] == '\'')) {
      ++p;
    }
    return std::string(text_.substr(pos_, p - pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(std::string_view tok) {
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, msg + " at offset " + std::to_string(pos_) +
                                           " in \"" + std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline LatExpr parse_expr(std::string_view text) { return ExprParser(text).parse_expr(); }
inline Query parse_query(std::string_view text) { return ExprParser(text).parse_query(); }

/// Irredundant join of meets: an antichain of generator subsets, each a
/// bitmask over the declared generator list. Bottom is {}, top is {0}.
class NormalForm {
 public:
  NormalForm() = default;

  static NormalForm bottom() { return NormalForm(); }
  static NormalForm top() { return NormalForm(std::vector<Mask>{0}); }
  static NormalForm generator(std::size_t i) { return NormalForm(std::vector<Mask>{Mask{1} << i}); }

  explicit NormalForm(std::vector<Mask> sets) : sets_(std::move(sets)) { minimize(); }

  const std::vector<Mask>& meet_sets() const { return sets_; }

  friend NormalForm operator|(const NormalForm& a, const NormalForm& b) {
    std::vector<Mask> s = a.sets_;
    s.insert(s.end(), b.sets_.begin(), b.sets_.end());
    return NormalForm(std::move(s));
  }
  friend NormalForm operator&(const NormalForm& a, const NormalForm& b) {
    std::vector<Mask> s;
    for (Mask x : a.sets_) {
      for (Mask y : b.sets_) s.push_back(x | y);
    }
    return NormalForm(std::move(s));
  }
  friend bool operator==(const NormalForm&, const NormalForm&) = default;

  /// Order of the free lattice: every meet-set of a contains one of b.
  bool leq(const NormalForm& b) const {
    return std::all_of(sets_.begin(), sets_.end(), [&](Mask x) {
      return std::any_of(b.sets_.begin(), b.sets_.end(),
                         [&](Mask y) { return (y & ~x) == 0; });
    });
  }

  std::string to_string(const std::vector<std::string>& gens) const {
    if (sets_.empty()) return "F";
    std::string out;
    for (std::size_t k = 0; k < sets_.size(); ++k) {
      if (k) out += " v ";
      const Mask s = sets_[k];
      if (s == 0) {
        out += "T";
        continue;
      }
      const bool paren = sets_.size() > 1 && std::popcount(s) > 1;
      if (paren) out += "(";
      bool first = true;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (s >> i & 1) {
          if (!first) out += " & ";
          out += gens[i];
          first = false;
        }
      }
      if (paren) out += ")";
    }
    return out;
  }

 private:
  void minimize() {
    std::sort(sets_.begin(), sets_.end(), [](Mask a, Mask b) {
      const int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
    std::vector<Mask> keep;
    for (Mask s : sets_) {
      bool absorbed = std::any_of(keep.begin(), keep.end(),
                                  [&](Mask k) { return (k & ~s) == 0; });
      if (!absorbed) keep.push_back(s);
    }
    sets_ = std::move(keep);
  }

  std::vector<Mask> sets_;
};

inline NormalForm normalize(const LatExpr& e, const std::vector<std::string>& generators) {
  if (generators.size() > kMaxCarrier) {
    throw Error(ErrorKind::TooManyGenerators, "more than 64 generators");
  }
  return e.fold<NormalForm>(
      [&](const std::string& name) {
        auto it = std::find(generators.begin(), generators.end(), name);
        if (it == generators.end()) throw Error(ErrorKind::UnknownGenerator, name);
        return NormalForm::generator(static_cast<std::size_t>(it - generators.begin()));
      },
      NormalForm::top(), NormalForm::bottom(),
      [](const NormalForm& a, const NormalForm& b) { return a & b; },
      [](const NormalForm& a, const NormalForm& b) { return a | b; });
}

inline LatExpr to_expr(const NormalForm& nf, const std::vector<std::string>& gens) {
  if (nf.meet_sets().empty()) return LatExpr::bottom();
  std::optional<LatExpr> out;
  for (Mask s : nf.meet_sets()) {
    std::optional<LatExpr> term;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (s >> i & 1) {
        term = term ? LatExpr::meet(*term, LatExpr::gen(gens[i])) : LatExpr::gen(gens[i]);
      }
    }
    LatExpr t = term ? *term : LatExpr::top();
    out = out ? LatExpr::join(*out, t) : t;
  }
  return *out;
}

}  // namespace bohrspec
