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

// Finite-dimensional commutative *-algebras over Q[i], realized as
// function algebras on a finite outcome set (their Gelfand spectrum).

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bohrspec/error.hpp"

namespace bohrspec {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
  return q.str();
}

/// Exact Gaussian rational re + im*i.
struct GaussRat {
  Rational re{0};
  Rational im{0};

  GaussRat() = default;
  GaussRat(Rational r) : re(std::move(r)) {}  // NOLINT: implicit from reals
  GaussRat(int r) : re(r) {}                  // NOLINT
  GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_real() const { return im == 0; }
  GaussRat conj() const { return {re, -im}; }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline std::string to_string(const GaussRat& z) {
  if (z.im == 0) return to_string(z.re);
  std::string out = z.re == 0 ? std::string{} : to_string(z.re);
  if (z.im > 0 && !out.empty()) out += "+";
  if (z.im == 1) {
    out += "i";
  } else if (z.im == -1) {
    out += "-i";
  } else {
    out += to_string(z.im) + "i";
  }
  return out;
}

/// The algebra of all functions outcomes -> Q[i]. Outcomes are kept in
/// lexicographic order so every enumeration downstream is deterministic.
class FinCommAlgebra {
 public:
  FinCommAlgebra(std::string name, std::vector<std::string> outcomes)
      : name_(std::move(name)), outcomes_(std::move(outcomes)) {
    std::sort(outcomes_.begin(), outcomes_.end());
    if (outcomes_.empty()) {
      throw Error(ErrorKind::InvalidDiagram,
                  "algebra '" + name_ + "' has no outcomes");
    }
    if (std::adjacent_find(outcomes_.begin(), outcomes_.end()) !=
        outcomes_.end()) {
      throw Error(ErrorKind::InvalidDiagram,
                  "algebra '" + name_ + "' has duplicate outcomes");
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  std::size_t dim() const { return outcomes_.size(); }

  std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), label);
    if (it == outcomes_.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - outcomes_.begin());
  }

  friend bool operator==(const FinCommAlgebra& a, const FinCommAlgebra& b) {
    return a.name_ == b.name_ && a.outcomes_ == b.outcomes_;
  }

 private:
  std::string name_;
  std::vector<std::string> outcomes_;
};

using AlgebraRef = std::shared_ptr<const FinCommAlgebra>;

inline AlgebraRef make_algebra(std::string name,
                               std::vector<std::string> outcomes) {
  return std::make_shared<const FinCommAlgebra>(std::move(name),
                                                std::move(outcomes));
}

/// Q[i]^k with outcomes "1".."k".
inline AlgebraRef standard_algebra(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(std::to_string(i));
  return make_algebra("Q[i]^" + std::to_string(k), std::move(out));
}

inline bool same_algebra(const AlgebraRef& a, const AlgebraRef& b) {
  return a == b || (a && b && *a == *b);
}

class AlgElement {
 public:
  AlgElement(AlgebraRef parent, std::vector<GaussRat> values)
      : parent_(std::move(parent)), values_(std::move(values)) {
    if (values_.size() != parent_->dim()) {
      throw Error(ErrorKind::MismatchedParent,
                  "element has " + std::to_string(values_.size()) +
                      " values, algebra '" + parent_->name() + "' has " +
                      std::to_string(parent_->dim()) + " outcomes");
    }
  }

  static AlgElement constant(AlgebraRef parent, const GaussRat& c) {
    std::vector<GaussRat> v(parent->dim(), c);
    return {std::move(parent), std::move(v)};
  }
  static AlgElement unit(AlgebraRef parent) { return constant(std::move(parent), 1); }
  static AlgElement zero(AlgebraRef parent) { return constant(std::move(parent), 0); }
  static AlgElement real(AlgebraRef parent, const std::vector<Rational>& xs) {
    return {std::move(parent), std::vector<GaussRat>(xs.begin(), xs.end())};
  }

  const AlgebraRef& parent() const { return parent_; }
  const std::vector<GaussRat>& values() const { return values_; }
  const GaussRat& operator[](std::size_t i) const { return values_[i]; }

  bool is_self_adjoint() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const GaussRat& z) { return z.is_real(); });
  }

  AlgElement star() const {
    std::vector<GaussRat> v;
    v.reserve(values_.size());
    for (const auto& z : values_) v.push_back(z.conj());
    return {parent_, std::move(v)};
  }

  AlgElement scaled(const GaussRat& c) const {
    std::vector<GaussRat> v;
    v.reserve(values_.size());
    for (const auto& z : values_) v.push_back(c * z);
    return {parent_, std::move(v)};
  }

  friend AlgElement operator+(const AlgElement& a, const AlgElement& b) {
    return zip(a, b, [](const GaussRat& x, const GaussRat& y) { return x + y; });
  }
  friend AlgElement operator-(const AlgElement& a, const AlgElement& b) {
    return zip(a, b, [](const GaussRat& x, const GaussRat& y) { return x - y; });
  }
  friend AlgElement operator*(const AlgElement& a, const AlgElement& b) {
    return zip(a, b, [](const GaussRat& x, const GaussRat& y) { return x * y; });
  }
  friend AlgElement operator-(const AlgElement& a) { return a.scaled(-1); }

  friend bool operator==(const AlgElement& a, const AlgElement& b) {
    return same_algebra(a.parent_, b.parent_) && a.values_ == b.values_;
  }

 private:
  template <class F>
  static AlgElement zip(const AlgElement& a, const AlgElement& b, F f) {
    if (!same_algebra(a.parent_, b.parent_)) {
      throw Error(ErrorKind::MismatchedParent,
                  "'" + a.parent_->name() + "' vs '" + b.parent_->name() + "'");
    }
    std::vector<GaussRat> v;
    v.reserve(a.values_.size());
    for (std::size_t i = 0; i < a.values_.size(); ++i) {
      v.push_back(f(a.values_[i], b.values_[i]));
    }
    return {a.parent_, std::move(v)};
  }

  AlgebraRef parent_;
  std::vector<GaussRat> values_;
};

inline std::string to_string(const AlgElement& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    if (i) out += ",";
    out += to_string(a[i]);
  }
  return out + ")";
}

namespace detail {
inline void require_self_adjoint(const AlgElement& a) {
  if (!a.is_self_adjoint()) {
    throw Error(ErrorKind::NotSelfAdjoint, to_string(a));
  }
}
}  // namespace detail

/// Membership in the positive cone. In a full finite function algebra the
/// cone generated by squares is the coordinatewise nonnegative orthant.
inline bool is_positive(const AlgElement& a) {
  detail::require_self_adjoint(a);
  return std::all_of(a.values().begin(), a.values().end(),
                     [](const GaussRat& z) { return z.re >= 0; });
}

/// a <= b in the preorder induced by the positive cone.
inline bool leq(const AlgElement& a, const AlgElement& b) {
  return is_positive(b - a);
}

/// Least integer r with a <= r*1.
inline Rational archimedean_bound(const AlgElement& a) {
  detail::require_self_adjoint(a);
  Rational best = a[0].re;
  for (const auto& z : a.values()) best = std::max(best, z.re);
  // ceil of a rational
  boost::multiprecision::cpp_int num = numerator(best);
  boost::multiprecision::cpp_int den = denominator(best);
  boost::multiprecision::cpp_int q = num / den;  // truncates toward zero
  if (q * den < num) q += 1;
  return Rational(q);
}

/// Evaluation at one outcome: a *-homomorphism A -> Q[i].
class Character {
 public:
  Character(AlgebraRef algebra, std::size_t outcome)
      : algebra_(std::move(algebra)), outcome_(outcome) {}

  const AlgebraRef& algebra() const { return algebra_; }
  std::size_t outcome() const { return outcome_; }
  const std::string& label() const { return algebra_->outcomes()[outcome_]; }

  GaussRat operator()(const AlgElement& a) const {
    if (!same_algebra(a.parent(), algebra_)) {
      throw Error(ErrorKind::MismatchedParent, "character of '" +
                                                   algebra_->name() + "'");
    }
    return a[outcome_];
  }

 private:
  AlgebraRef algebra_;
  std::size_t outcome_;
};

inline std::vector<Character> characters(const AlgebraRef& a) {
  std::vector<Character> out;
  for (std::size_t i = 0; i < a->dim(); ++i) out.emplace_back(a, i);
  return out;
}

/// Unital *-inclusion source -> target, given contravariantly by a map from
/// target outcomes onto source outcomes. An element is pulled back along it.
class AlgebraHom {
 public:
  AlgebraHom(AlgebraRef source, AlgebraRef target,
             std::vector<std::size_t> outcome_map)
      : AlgebraHom(unchecked(std::move(source), std::move(target),
                             std::move(outcome_map))) {
    if (!is_surjective()) {
      throw Error(ErrorKind::NotSurjective,
                  "outcome map " + target_->name() + " -> " +
                      source_->name() + " is not surjective");
    }
  }

  /// Builds from a label map target outcome -> source outcome.
  static AlgebraHom from_labels(AlgebraRef source, AlgebraRef target,
                                const std::map<std::string, std::string>& m) {
    return AlgebraHom(source, target, resolve(*source, *target, m));
  }

  /// No surjectivity check; used for raw diagrams that are audited later.
  static AlgebraHom unchecked(AlgebraRef source, AlgebraRef target,
                              std::vector<std::size_t> outcome_map) {
    if (outcome_map.size() != target->dim()) {
      throw Error(ErrorKind::InvalidDiagram,
                  "outcome map must be total on '" + target->name() + "'");
    }
    for (auto s : outcome_map) {
      if (s >= source->dim()) {
        throw Error(ErrorKind::InvalidDiagram, "outcome map leaves '" +
                                                   source->name() + "'");
      }
    }
    return AlgebraHom(Unchecked{}, std::move(source), std::move(target),
                      std::move(outcome_map));
  }

  static std::vector<std::size_t> resolve(
      const FinCommAlgebra& source, const FinCommAlgebra& target,
      const std::map<std::string, std::string>& m) {
    std::vector<std::size_t> out(target.dim());
    for (std::size_t t = 0; t < target.dim(); ++t) {
      auto it = m.find(target.outcomes()[t]);
      if (it == m.end()) {
        throw Error(ErrorKind::InvalidDiagram,
                    "outcome map missing target outcome '" +
                        target.outcomes()[t] + "'");
      }
      auto s = source.index_of(it->second);
      if (!s) {
        throw Error(ErrorKind::InvalidDiagram,
                    "unknown source outcome '" + it->second + "'");
      }
      out[t] = *s;
    }
    if (m.size() != target.dim()) {
      throw Error(ErrorKind::InvalidDiagram,
                  "outcome map has labels outside '" + target.name() + "'");
    }
    return out;
  }

  static AlgebraHom identity(const AlgebraRef& a) {
    std::vector<std::size_t> m(a->dim());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
    return AlgebraHom(a, a, std::move(m));
  }

  const AlgebraRef& source() const { return source_; }
  const AlgebraRef& target() const { return target_; }
  const std::vector<std::size_t>& outcome_map() const { return map_; }

  bool is_surjective() const {
    std::vector<bool> hit(source_->dim(), false);
    for (auto s : map_) hit[s] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

  AlgElement operator()(const AlgElement& a) const {
    if (!same_algebra(a.parent(), source_)) {
      throw Error(ErrorKind::MismatchedParent,
                  "hom from '" + source_->name() + "' applied to element of '" +
                      a.parent()->name() + "'");
    }
    std::vector<GaussRat> v;
    v.reserve(map_.size());
    for (auto s : map_) v.push_back(a[s]);
    return {target_, std::move(v)};
  }

  /// (*this) after `first`: first: A -> B, *this: B -> C, result A -> C.
  AlgebraHom after(const AlgebraHom& first) const {
    if (!same_algebra(first.target_, source_)) {
      throw Error(ErrorKind::MismatchedParent, "composing '" +
                                                   first.target_->name() +
                                                   "' with '" +
                                                   source_->name() + "'");
    }
    std::vector<std::size_t> m(map_.size());
    for (std::size_t c = 0; c < map_.size(); ++c) m[c] = first.map_[map_[c]];
    return AlgebraHom(Unchecked{}, first.source_, target_, std::move(m));
  }

  friend bool operator==(const AlgebraHom& a, const AlgebraHom& b) {
    return same_algebra(a.source_, b.source_) &&
           same_algebra(a.target_, b.target_) && a.map_ == b.map_;
  }

 private:
  struct Unchecked {};
  AlgebraHom(Unchecked, AlgebraRef source, AlgebraRef target,
             std::vector<std::size_t> m)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(m)) {}

  AlgebraRef source_;
  AlgebraRef target_;
  std::vector<std::size_t> map_;
};

inline AlgElement hom_apply(const AlgebraHom& h, const AlgElement& a) {
  return h(a);
}

}  // namespace bohrspec
