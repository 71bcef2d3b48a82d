#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <set>
#include <utility>
#include <optional>
#include <string>
#include <vector>

#include "firlab/golden.hpp"
#include "firlab/limit_monoid.hpp"
#include "firlab/presentation.hpp"

namespace firlab {

enum class DivKind { Yes, No, Unknown };

inline const char* to_string(DivKind k) {
  switch (k) {
    case DivKind::Yes: return "Yes";
    case DivKind::No: return "No";
    case DivKind::Unknown: return "Unknown";
  }
  return "?";
}

/// Outcome of a divisibility query. For Side::Left a Yes carries h with
/// b = a*h; for Side::Right, b = h*a.
template <class E>
struct Division {
  DivKind kind = DivKind::Unknown;
  std::optional<E> cofactor;

  bool yes() const { return kind == DivKind::Yes; }
  bool no() const { return kind == DivKind::No; }
};

/// Interface shared by every monoid the condition checkers run on.
template <class M>
concept ComputableMonoid = requires(const M& m, const typename M::Element& a, Side side, std::size_t n) {
  typename M::Element;
  { m.one() } -> std::same_as<typename M::Element>;
  { m.mul(a, a) } -> std::same_as<typename M::Element>;
  { m.eq(a, a) } -> std::same_as<bool>;
  { m.is_invertible(a) } -> std::same_as<bool>;
  { m.divides(a, a, side, n) } -> std::same_as<Division<typename M::Element>>;
  { m.enumerate(n) } -> std::same_as<std::vector<typename M::Element>>;
  { m.show(a) } -> std::convertible_to<std::string>;
  { m.name() } -> std::convertible_to<std::string>;
};

template <ComputableMonoid M>
typename M::Element power(const M& m, const typename M::Element& a, long n) {
  typename M::Element out = m.one();
  for (long i = 0; i < n; ++i) out = m.mul(out, a);
  return out;
}

template <ComputableMonoid M>
bool is_one(const M& m, const typename M::Element& a) {
  return m.eq(a, m.one());
}

// ---------------------------------------------------------------------------
// Free monoid on single-character letters

class FreeMonoid {
 public:
  using Element = std::string;

  explicit FreeMonoid(std::string letters) : letters_(std::move(letters)) {}

  std::string name() const { return "free<" + letters_ + ">"; }
  Element one() const { return {}; }
  Element mul(const Element& a, const Element& b) const { return a + b; }
  bool eq(const Element& a, const Element& b) const { return a == b; }
  bool is_invertible(const Element& a) const { return a.empty(); }

  Division<Element> divides(const Element& a, const Element& b, Side side, std::size_t) const {
    if (a.size() > b.size()) return {DivKind::No, std::nullopt};
    if (side == Side::Left) {
      if (b.compare(0, a.size(), a) == 0) return {DivKind::Yes, b.substr(a.size())};
    } else if (b.compare(b.size() - a.size(), a.size(), a) == 0) {
      return {DivKind::Yes, b.substr(0, b.size() - a.size())};
    }
    return {DivKind::No, std::nullopt};
  }

  std::vector<Element> enumerate(std::size_t max_len) const {
    std::vector<Element> out{""};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
      const std::size_t end = out.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (char c : letters_) out.push_back(out[i] + c);
      }
      begin = end;
    }
    return out;
  }

  std::string show(const Element& a) const { return a.empty() ? "1" : a; }

 private:
  std::string letters_;
};

// ---------------------------------------------------------------------------
// Additive submonoid of N generated by positive integers

class NumericMonoid {
 public:
  using Element = long;

  explicit NumericMonoid(std::vector<long> generators) : gens_(std::move(generators)) {
    std::sort(gens_.begin(), gens_.end());
  }

  std::string name() const {
    std::string s = "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? "," : "") + std::to_string(gens_[i]);
    return s + ">";
  }

  bool contains(long n) const {
    if (n < 0) return false;
    std::vector<bool> reach(static_cast<std::size_t>(n) + 1, false);
    reach[0] = true;
    for (long k = 1; k <= n; ++k) {
      for (long g : gens_) {
        if (g <= k && reach[static_cast<std::size_t>(k - g)]) {
          reach[static_cast<std::size_t>(k)] = true;
          break;
        }
      }
    }
    return reach[static_cast<std::size_t>(n)];
  }

  Element one() const { return 0; }
  Element mul(Element a, Element b) const { return a + b; }
  bool eq(Element a, Element b) const { return a == b; }
  bool is_invertible(Element a) const { return a == 0; }

  Division<Element> divides(Element a, Element b, Side, std::size_t) const {
    if (contains(b - a)) return {DivKind::Yes, b - a};
    return {DivKind::No, std::nullopt};
  }

  std::vector<Element> enumerate(std::size_t bound) const {
    std::vector<Element> out;
    for (long n = 0; n <= static_cast<long>(bound); ++n) {
      if (contains(n)) out.push_back(n);
    }
    return out;
  }

  std::string show(Element a) const { return std::to_string(a); }

 private:
  std::vector<long> gens_;
};

// ---------------------------------------------------------------------------
// Nonnegative elements of Z + Z*tau under addition

class GoldenPosMonoid {
 public:
  using Element = GoldenInt;

  std::string name() const { return "golden-pos"; }
  Element one() const { return {}; }
  Element mul(Element a, Element b) const { return a + b; }
  bool eq(Element a, Element b) const { return a == b; }
  bool is_invertible(Element a) const { return a == GoldenInt{}; }

  Division<Element> divides(Element a, Element b, Side, std::size_t) const {
    if ((b - a).sign() >= 0) return {DivKind::Yes, b - a};
    return {DivKind::No, std::nullopt};
  }

  /// Elements a + b*tau with |a|, |b| <= bound.
  std::vector<Element> enumerate(std::size_t bound) const {
    std::vector<Element> out;
    const auto n = static_cast<std::int64_t>(bound);
    for (std::int64_t a = -n; a <= n; ++a) {
      for (std::int64_t b = -n; b <= n; ++b) {
        if (GoldenInt(a, b).sign() >= 0) out.emplace_back(a, b);
      }
    }
    return out;
  }

  std::string show(Element a) const { return a.to_string(); }
};

// ---------------------------------------------------------------------------
// Limit monoids through the interface

class LimitView {
 public:
  using Element = LimitElement;

  explicit LimitView(const LimitMonoid& m, int level_cap = 1) : m_(&m), level_cap_(level_cap) {}

  const LimitMonoid& monoid() const { return *m_; }
  std::string name() const { return m_->name(); }
  Element one() const { return m_->one(); }
  Element mul(const Element& a, const Element& b) const { return m_->mul(a, b); }
  bool eq(const Element& a, const Element& b) const { return a == b; }
  bool is_invertible(const Element& a) const { return m_->is_invertible(a); }

  Division<Element> divides(const Element& a, const Element& b, Side side, std::size_t bound) const {
    const MembershipVerdict v = m_->divides(a, b, side, bound);
    if (v.member()) return {DivKind::Yes, v.witness};
    if (v.definitely_not()) return {DivKind::No, std::nullopt};
    return {DivKind::Unknown, std::nullopt};
  }

  std::vector<Element> enumerate(std::size_t max_len) const { return m_->enumerate(max_len, level_cap_); }

  std::string show(const Element& a) const { return m_->show(a); }

  bool has_images() const { return true; }
  GroupWord image(const Element& a) const { return m_->image(a); }

 private:
  const LimitMonoid* m_;
  int level_cap_;
};

// ---------------------------------------------------------------------------
// Presented monoids with images in G

class PresentedMonoid {
 public:
  using Element = NormalWord;

  explicit PresentedMonoid(const Presentation& p) : p_(&p) {
    positive_ = p.images.has_value();
    for (std::size_t l = 0; positive_ && l < p.size(); ++l) {
      const BiDegree d = delta(p.image(static_cast<int>(l)));
      positive_ = d.r + d.s > 0;
      componentwise_ = componentwise_ && d.r >= 0 && d.s >= 0;
    }
  }

  const Presentation& presentation() const { return *p_; }
  std::string name() const { return p_->name; }
  Element one() const { return {p_, {}}; }

  Element mul(const Element& a, const Element& b) const {
    Word w = a.letters;
    w.insert(w.end(), b.letters.begin(), b.letters.end());
    return normalize(*p_, w);
  }

  bool eq(const Element& a, const Element& b) const { return a == b; }
  bool is_invertible(const Element& a) const { return a.empty(); }

  Element parse(std::string_view text) const { return normalize(*p_, text); }

  /// The cofactor h must have image g = a^-1 b (or b a^-1) in G. When every
  /// generator image has positive total degree the search over normal words
  /// with that image is finite, so a miss is a definite No. Otherwise a
  /// bounded preimage search can only answer Yes or Unknown.
  Division<Element> divides(const Element& a, const Element& b, Side side, std::size_t) const {
    if (!p_->images) throw NoImages(p_->name + ": division needs generator images");
    const GroupWord g = side == Side::Left ? invert(image(a)) * image(b) : image(b) * invert(image(a));
    std::optional<Element> h = positive_ ? exact_preimage(g) : preimage_search(*p_, g);
    if (h && (side == Side::Left ? mul(a, *h) : mul(*h, a)) == b) return {DivKind::Yes, h};
    if (positive_) return {DivKind::No, std::nullopt};
    return {DivKind::Unknown, std::nullopt};
  }

  std::vector<Element> enumerate(std::size_t max_len) const { return enumerate_normal(*p_, max_len); }
  std::string show(const Element& a) const { return a.empty() ? "1" : to_string(a); }

  bool has_images() const { return p_->images.has_value(); }
  GroupWord image(const Element& a) const { return embed(*p_, a); }

 private:
  /// Normal word with image g, by DFS over letters; states are keyed on the
  /// image still owed and the letters that can still start a redex.
  std::optional<Element> exact_preimage(const GroupWord& g) const {
    std::size_t max_lhs = 1;
    for (const Rule& r : p_->rules) max_lhs = std::max(max_lhs, r.lhs.size());
    std::set<std::pair<GroupWord, Word>> dead;
    Word word;
    std::function<bool(const GroupWord&)> dfs = [&](const GroupWord& owed) -> bool {
      const BiDegree d = delta(owed);
      if (d.r + d.s < 0 || (componentwise_ && (d.r < 0 || d.s < 0))) return false;
      if (d.r + d.s == 0) return owed.empty();
      Word recent(word.end() - static_cast<long>(std::min(word.size(), max_lhs - 1)), word.end());
      std::pair<GroupWord, Word> key{owed, recent};
      if (dead.count(key)) return false;
      for (std::size_t l = 0; l < p_->size(); ++l) {
        word.push_back(static_cast<int>(l));
        if (detail::suffix_redex(*p_, word) < 0 && dfs(invert(p_->image(static_cast<int>(l))) * owed)) {
          return true;
        }
        word.pop_back();
      }
      dead.insert(std::move(key));
      return false;
    };
    if (!dfs(g)) return std::nullopt;
    return Element{p_, word};
  }

  const Presentation* p_;
  bool positive_ = false;
  bool componentwise_ = true;
};

static_assert(ComputableMonoid<FreeMonoid>);
static_assert(ComputableMonoid<NumericMonoid>);
static_assert(ComputableMonoid<GoldenPosMonoid>);
static_assert(ComputableMonoid<LimitView>);
static_assert(ComputableMonoid<PresentedMonoid>);

}  // namespace firlab
