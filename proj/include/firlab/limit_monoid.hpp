#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "firlab/errors.hpp"
#include "firlab/group_words.hpp"
#include "firlab/presentation.hpp"

namespace firlab {

// ---------------------------------------------------------------------------
// Base membership: which reduced words of G are images of M0 / M1 elements.

/// Reads g as a product of the segments x, y, z, (x z)^m, z (x z)^m, whose
/// reduced images are x, y, x- y- x y, y- x^m y and x- y- x^(m+1) y. Returns
/// the M0 normal word (letters x=0, y=1, z=2) or nothing.
inline std::optional<Word> parse_m0_image(const GroupWord& g) {
  const std::vector<Letter>& s = g.letters();
  Word out;
  std::size_t i = 0;
  auto run_of_x = [&]() {
    std::size_t m = 0;
    while (i < s.size() && s[i] == kX) {
      ++m;
      ++i;
    }
    return m;
  };
  while (i < s.size()) {
    const Letter l = s[i];
    if (l == kX) {
      out.push_back(0);
      ++i;
    } else if (l == kY) {
      out.push_back(1);
      ++i;
    } else if (l == -kY) {
      ++i;
      const std::size_t m = run_of_x();
      if (m == 0 || i >= s.size() || s[i] != kY) return std::nullopt;
      ++i;
      for (std::size_t k = 0; k < m; ++k) out.insert(out.end(), {0, 2});
    } else {  // x-
      ++i;
      if (i >= s.size() || s[i] != -kY) return std::nullopt;
      ++i;
      const std::size_t k = run_of_x();
      if (k == 0 || i >= s.size() || s[i] != kY) return std::nullopt;
      ++i;
      out.push_back(2);
      for (std::size_t j = 1; j < k; ++j) out.insert(out.end(), {0, 2});
    }
  }
  return out;
}

inline constexpr std::size_t kM1TableLen = 8;

namespace detail {

/// Images of all normal words up to a fixed length.
inline std::map<GroupWord, Word> build_image_table(const Presentation& p, std::size_t max_len) {
  std::map<GroupWord, Word> t;
  for (const NormalWord& w : enumerate_normal(p, max_len)) t.emplace(embed(p, w), w.letters);
  return t;
}

inline const std::map<GroupWord, Word>& m1_table() {
  static const std::map<GroupWord, Word> t = build_image_table(builtin("M1"), kM1TableLen);
  return t;
}

}  // namespace detail

/// Decides whether reduced g is the image of a normal word of M0 or M1 and
/// returns that word. M0 is read by the segment grammar; M1 is looked up in
/// the enumeration table and otherwise searched, and any disagreement
/// between the two throws std::logic_error.
inline std::optional<NormalWord> base_membership(const Presentation& p, const GroupWord& g) {
  if (p.name == "M0") {
    const auto w = parse_m0_image(g);
    if (!w) return std::nullopt;
    NormalWord nw{&p, *w};
    if (!is_irreducible(p, nw.letters) || embed(p, nw) != g) {
      throw std::logic_error("M0 segment parse inconsistent for " + to_string(g));
    }
    return nw;
  }
  if (p.name == "M1") {
    const auto& table = detail::m1_table();
    if (const auto it = table.find(g); it != table.end()) return NormalWord{&p, it->second};
    auto found = preimage_search(p, g);
    if (found && found->size() <= kM1TableLen) {
      throw std::logic_error("M1 search disagrees with table for " + to_string(g));
    }
    return found;
  }
  return preimage_search(p, g);
}

// ---------------------------------------------------------------------------
// Limit monoids

class LimitMonoid;

/// sigma^-level applied to a base normal word.
struct LimitElement {
  const LimitMonoid* monoid = nullptr;
  int level = 0;
  Word word;

  bool operator==(const LimitElement& o) const { return level == o.level && word == o.word; }
  auto operator<=>(const LimitElement& o) const {
    if (auto c = word.size() <=> o.word.size(); c != 0) return c;
    if (auto c = level <=> o.level; c != 0) return c;
    return word <=> o.word;
  }
};

enum class Verdict { Member, DefinitelyNot, Unknown };
enum class NotReason { None, NegativeEta, LeadingZ };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "Member";
    case Verdict::DefinitelyNot: return "DefinitelyNot";
    case Verdict::Unknown: return "UnknownWithinBound";
  }
  return "?";
}

inline const char* to_string(NotReason r) {
  switch (r) {
    case NotReason::None: return "None";
    case NotReason::NegativeEta: return "NegativeEta";
    case NotReason::LeadingZ: return "LeadingZ";
  }
  return "?";
}

struct MembershipVerdict {
  Verdict kind = Verdict::Unknown;
  std::optional<LimitElement> witness;
  NotReason reason = NotReason::None;
  std::size_t bound_used = 0;

  bool member() const { return kind == Verdict::Member; }
  bool definitely_not() const { return kind == Verdict::DefinitelyNot; }
};

enum class Side { Left, Right };

struct ZPower {
  long power = 0;
  bool pure = false;  // the element is a power of z
};

/// Direct limit of a base monoid under an automorphism of G that carries the
/// base into itself.
class LimitMonoid {
 public:
  /// Shifted words longer than this give up with Unknown.
  static constexpr std::size_t kLengthCap = 4096;

  LimitMonoid(std::string name, const Presentation& base, Endo shift, bool sigma_kind)
      : name_(std::move(name)), base_(&base), shift_(std::move(shift)), shift_inv_(shift_.inverse()),
        sigma_kind_(sigma_kind) {
    for (std::size_t l = 0; l < base.size(); ++l) {
      const auto w = base_membership(base, shift_(base.image(static_cast<int>(l))));
      if (!w) {
        throw InvalidPresentation(name_ + ": shift does not carry generator " + base.alphabet[l] +
                                  " into the base");
      }
      subst_.push_back(w->letters);
    }
  }

  const std::string& name() const { return name_; }
  const Presentation& base() const { return *base_; }
  const Endo& shift() const { return shift_; }
  bool has_inverse_z() const { return base_->name == "M1"; }

  // --- construction and text

  LimitElement one() const { return {this, 0, {}}; }

  LimitElement canonicalize(int level, Word word) const {
    word = normalize(*base_, word).letters;
    while (level > 0) {
      const auto down = base_membership(*base_, shift_inv_(embed_letters(*base_, word)));
      if (!down) break;
      word = down->letters;
      --level;
    }
    return {this, level, std::move(word)};
  }

  LimitElement make(int level, std::string_view tokens) const {
    return canonicalize(level, parse_letters(*base_, tokens));
  }

  /// "@n:tokens", or bare tokens for level 0.
  LimitElement parse(std::string_view text) const {
    int level = 0;
    if (!text.empty() && text[0] == '@') {
      const std::size_t colon = text.find(':');
      if (colon == std::string_view::npos) throw ParseError("missing ':' in limit element", 0);
      const std::string digits(text.substr(1, colon - 1));
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        throw ParseError("bad level '" + digits + "'", 1);
      }
      level = std::stoi(digits);
      text = text.substr(colon + 1);
    }
    return canonicalize(level, parse_letters(*base_, text));
  }

  std::string show(const LimitElement& a) const {
    return "@" + std::to_string(a.level) + ":" + show_letters(*base_, a.word);
  }

  // --- arithmetic

  GroupWord image(const LimitElement& a) const {
    GroupWord g = embed_letters(*base_, a.word);
    for (int i = 0; i < a.level; ++i) g = shift_inv_(g);
    return g;
  }

  Word shift_word(const Word& w) const {
    Word out;
    for (int l : w) {
      const Word& s = subst_[static_cast<std::size_t>(l)];
      out.insert(out.end(), s.begin(), s.end());
    }
    return normalize(*base_, out).letters;
  }

  Word lift(const LimitElement& a, int level) const {
    Word w = a.word;
    for (int i = a.level; i < level; ++i) w = shift_word(w);
    return w;
  }

  LimitElement mul(const LimitElement& a, const LimitElement& b) const {
    const int level = std::max(a.level, b.level);
    Word w = lift(a, level);
    const Word v = lift(b, level);
    w.insert(w.end(), v.begin(), v.end());
    return canonicalize(level, std::move(w));
  }

  LimitElement power(const LimitElement& a, long n) const {
    LimitElement out = one();
    for (long i = 0; i < n; ++i) out = mul(out, a);
    return out;
  }

  bool eq(const LimitElement& a, const LimitElement& b) const { return a == b; }

  // --- membership and division

  MembershipVerdict membership(const GroupWord& g, std::size_t bound) const {
    MembershipVerdict v;
    if (sigma_kind_ && eta(delta(g)).sign() < 0) {
      v.kind = Verdict::DefinitelyNot;
      v.reason = NotReason::NegativeEta;
      return v;
    }
    const Presentation* m1 = sigma_kind_ && !has_inverse_z() ? &builtin("M1") : nullptr;
    GroupWord h = g;
    for (std::size_t n = 0; n <= bound; ++n) {
      v.bound_used = n;
      if (h.size() > kLengthCap) break;
      if (const auto w = base_membership(*base_, h)) {
        v.kind = Verdict::Member;
        v.witness = canonicalize(static_cast<int>(n), w->letters);
        return v;
      }
      if (m1) {
        // Leading z-powers are shift-invariant and nonnegative on M0.
        if (const auto w1 = base_membership(*m1, h); w1 && leading_z_of(w1->letters, 2, 3).power < 0) {
          v.kind = Verdict::DefinitelyNot;
          v.reason = NotReason::LeadingZ;
          return v;
        }
      }
      if (n < bound) h = shift_(h);
    }
    v.kind = Verdict::Unknown;
    return v;
  }

  /// Left: b = a*h. Right: b = h*a. A Member verdict carries h.
  MembershipVerdict divides(const LimitElement& a, const LimitElement& b, Side side,
                            std::size_t bound) const {
    const GroupWord ga = image(a), gb = image(b);
    const GroupWord q = side == Side::Left ? invert(ga) * gb : gb * invert(ga);
    MembershipVerdict v = membership(q, bound);
    if (v.member()) {
      const LimitElement back = side == Side::Left ? mul(a, *v.witness) : mul(*v.witness, a);
      if (back != b) throw std::logic_error("division cofactor fails to re-multiply");
    }
    return v;
  }

  // --- invariants

  ZPower leading_z_power(const LimitElement& a) const {
    return leading_z_of(a.word, 2, has_inverse_z() ? 3 : -1);
  }

  bool is_invertible(const LimitElement& a) const {
    if (!has_inverse_z()) return a.word.empty();
    return std::all_of(a.word.begin(), a.word.end(), [](int l) { return l >= 2; });
  }

  /// Clauses of the stabilized form: no z right after x, no z- right after
  /// y, every x right after a y, and a final y right after an x.
  bool is_stable(const Word& w) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int prev = i ? w[i - 1] : -1;
      if (w[i] == 2 && prev == 0) return false;
      if (w[i] == 3 && prev == 1) return false;
      if (w[i] == 0 && prev != 1) return false;
    }
    if (!w.empty() && w.back() == 1 && (w.size() < 2 || w[w.size() - 2] != 0)) return false;
    return true;
  }

  /// Smallest k with sigma^k(a) in the base and in stabilized form.
  std::pair<int, NormalWord> stabilize(const LimitElement& a, int cap = 64) const {
    if (!sigma_kind_) throw Error("stabilize applies to the sigma limits only");
    int k = a.level;
    Word w = a.word;
    while (!is_stable(w)) {
      if (k - a.level >= cap) throw Error("stabilize exceeded cap for " + show(a));
      w = shift_word(w);
      ++k;
    }
    return {k, NormalWord{base_, w}};
  }

  /// Canonical elements with word length at most max_len and level at most
  /// max_level.
  std::vector<LimitElement> enumerate(std::size_t max_len, int max_level) const {
    std::vector<LimitElement> out;
    for (int level = 0; level <= max_level; ++level) {
      for (const NormalWord& w : enumerate_normal(*base_, max_len)) {
        LimitElement c = canonicalize(level, w.letters);
        if (c.level == level && c.word == w.letters) out.push_back(std::move(c));
      }
    }
    return out;
  }

 private:
  static ZPower leading_z_of(const Word& w, int z, int zinv) {
    ZPower out;
    std::size_t i = 0;
    for (; i < w.size(); ++i) {
      if (w[i] == z) ++out.power;
      else if (w[i] == zinv) --out.power;
      else break;
    }
    out.pure = i == w.size();
    return out;
  }

  std::string name_;
  const Presentation* base_;
  Endo shift_;
  Endo shift_inv_;
  bool sigma_kind_;
  std::vector<Word> subst_;
};

inline const std::vector<std::string>& limit_names() {
  static const std::vector<std::string> names{"M0-limit", "M1-limit", "Mphi"};
  return names;
}

inline const LimitMonoid& limit_monoid(std::string_view name) {
  static const LimitMonoid m0("M0-limit", builtin("M0"), sigma(), true);
  static const LimitMonoid m1("M1-limit", builtin("M1"), sigma(), true);
  static const LimitMonoid mphi("Mphi", builtin("M0"), phi(), false);
  if (name == "M0-limit") return m0;
  if (name == "M1-limit") return m1;
  if (name == "Mphi") return mphi;
  throw UnknownName("unknown limit monoid '" + std::string(name) + "'");
}

}  // namespace firlab
