#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "firlab/errors.hpp"
#include "firlab/group_words.hpp"

namespace firlab {

/// Word over a presentation's alphabet, as letter indices.
using Word = std::vector<int>;

struct Rule {
  Word lhs;
  Word rhs;
};

/// Finite rewriting system with optional images in G.
///
/// Every rule must strictly decrease the weighted length, where weights are
/// positive per-letter integers (all 1 by default). Rules are applied in the
/// order listed.
struct Presentation {
  std::string name;
  std::vector<std::string> alphabet;
  std::vector<Rule> rules;
  std::optional<std::vector<GroupWord>> images;
  std::vector<int> weights;

  std::size_t size() const { return alphabet.size(); }

  int letter(std::string_view token) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      if (alphabet[i] == token) return static_cast<int>(i);
    }
    throw UnknownLetter("unknown letter '" + std::string(token) + "' in " + name);
  }

  int weight(int l) const { return weights.empty() ? 1 : weights[static_cast<std::size_t>(l)]; }

  long weight(const Word& w) const {
    long total = 0;
    for (int l : w) total += weight(l);
    return total;
  }

  const GroupWord& image(int l) const {
    if (!images) throw NoImages("presentation " + name + " has no images in G");
    return (*images)[static_cast<std::size_t>(l)];
  }

  /// Throws InvalidPresentation if a rule fails to reduce weight, a letter
  /// is out of range, or (with images) a rule is unsound in G.
  void validate() const;
};

/// Canonical element of a presented monoid.
struct NormalWord {
  const Presentation* pres = nullptr;
  Word letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool operator==(const NormalWord& o) const { return letters == o.letters; }
  auto operator<=>(const NormalWord& o) const { return letters <=> o.letters; }
};

// ---------------------------------------------------------------------------
// Text

inline Word parse_letters(const Presentation& p, std::string_view text) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t' || text[i] == '\n') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\n') ++i;
    out.push_back(p.letter(text.substr(start, i - start)));
  }
  return out;
}

inline std::string show_letters(const Presentation& p, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += p.alphabet[static_cast<std::size_t>(w[i])];
  }
  return out;
}

inline std::string to_string(const NormalWord& w) { return show_letters(*w.pres, w.letters); }

// ---------------------------------------------------------------------------
// Rewriting

namespace detail {

inline bool ends_with(const Word& stack, const Word& suffix) {
  return stack.size() >= suffix.size() &&
         std::equal(suffix.begin(), suffix.end(), stack.end() - static_cast<long>(suffix.size()));
}

/// Index of the first rule whose lhs is a suffix of the stack, or -1.
inline int suffix_redex(const Presentation& p, const Word& stack) {
  for (std::size_t r = 0; r < p.rules.size(); ++r) {
    if (ends_with(stack, p.rules[r].lhs)) return static_cast<int>(r);
  }
  return -1;
}

}  // namespace detail

/// Leftmost-innermost normal form: scans left to right and rewrites the
/// redex that ends earliest, trying rules in order.
inline NormalWord normalize(const Presentation& p, const Word& w) {
  for (int l : w) {
    if (l < 0 || static_cast<std::size_t>(l) >= p.size()) {
      throw UnknownLetter("letter index " + std::to_string(l) + " outside " + p.name);
    }
  }
  Word stack;
  std::vector<int> input(w.rbegin(), w.rend());
  while (!input.empty()) {
    stack.push_back(input.back());
    input.pop_back();
    const int r = detail::suffix_redex(p, stack);
    if (r < 0) continue;
    const Rule& rule = p.rules[static_cast<std::size_t>(r)];
    stack.resize(stack.size() - rule.lhs.size());
    input.insert(input.end(), rule.rhs.rbegin(), rule.rhs.rend());
  }
  return {&p, stack};
}

inline NormalWord normalize(const Presentation& p, std::string_view text) {
  return normalize(p, parse_letters(p, text));
}

inline bool is_irreducible(const Presentation& p, const Word& w) {
  for (const Rule& r : p.rules) {
    if (r.lhs.size() > w.size()) continue;
    if (std::search(w.begin(), w.end(), r.lhs.begin(), r.lhs.end()) != w.end()) return false;
  }
  return true;
}

inline GroupWord embed_letters(const Presentation& p, const Word& w) {
  GroupWord out;
  for (int l : w) out = out * p.image(l);
  return out;
}

inline GroupWord embed(const Presentation& p, const NormalWord& w) { return embed_letters(p, w.letters); }

/// All irreducible words of length at most max_len, shortest first and
/// lexicographic (by alphabet order) within a length.
inline std::vector<NormalWord> enumerate_normal(const Presentation& p, std::size_t max_len) {
  std::vector<NormalWord> out{{&p, {}}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t l = 0; l < p.size(); ++l) {
        Word w = out[i].letters;
        w.push_back(static_cast<int>(l));
        if (detail::suffix_redex(p, w) < 0) out.push_back({&p, std::move(w)});
      }
    }
    level_begin = level_end;
  }
  return out;
}

/// Every word over the alphabet of length at most max_len, shortest first.
inline std::vector<Word> enumerate_all(const Presentation& p, std::size_t max_len) {
  std::vector<Word> out{{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t l = 0; l < p.size(); ++l) {
        Word w = out[i];
        w.push_back(static_cast<int>(l));
        out.push_back(std::move(w));
      }
    }
    level_begin = level_end;
  }
  return out;
}

/// All words reachable from w by one rule application anywhere.
inline std::vector<Word> one_step_rewrites(const Presentation& p, const Word& w) {
  std::vector<Word> out;
  for (const Rule& r : p.rules) {
    if (r.lhs.size() > w.size()) continue;
    for (std::size_t i = 0; i + r.lhs.size() <= w.size(); ++i) {
      if (!std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + static_cast<long>(i))) continue;
      Word next(w.begin(), w.begin() + static_cast<long>(i));
      next.insert(next.end(), r.rhs.begin(), r.rhs.end());
      next.insert(next.end(), w.begin() + static_cast<long>(i + r.lhs.size()), w.end());
      out.push_back(std::move(next));
    }
  }
  return out;
}

struct ConfluenceReport {
  std::size_t words_checked = 0;
  /// A word with two one-step successors whose normal forms differ.
  std::optional<std::pair<Word, std::pair<Word, Word>>> counterexample;
  bool ok() const { return !counterexample; }
};

/// Bounded local confluence: for every word of length at most max_len, every
/// one-step successor has the same normal form as the word itself.
inline ConfluenceReport check_confluence(const Presentation& p, std::size_t max_len) {
  ConfluenceReport rep;
  for (const Word& w : enumerate_all(p, max_len)) {
    ++rep.words_checked;
    const NormalWord nf = normalize(p, w);
    for (const Word& s : one_step_rewrites(p, w)) {
      const NormalWord snf = normalize(p, s);
      if (snf != nf) {
        rep.counterexample = {w, {nf.letters, snf.letters}};
        return rep;
      }
    }
  }
  return rep;
}

inline void Presentation::validate() const {
  if (!weights.empty() && weights.size() != alphabet.size()) {
    throw InvalidPresentation(name + ": weights and alphabet differ in size");
  }
  for (int w : weights) {
    if (w <= 0) throw InvalidPresentation(name + ": letter weights must be positive");
  }
  if (images && images->size() != alphabet.size()) {
    throw InvalidPresentation(name + ": images and alphabet differ in size");
  }
  for (const Rule& r : rules) {
    for (const Word* side : {&r.lhs, &r.rhs}) {
      for (int l : *side) {
        if (l < 0 || static_cast<std::size_t>(l) >= alphabet.size()) {
          throw InvalidPresentation(name + ": rule letter out of range");
        }
      }
    }
    if (r.lhs.empty() || weight(r.lhs) <= weight(r.rhs)) {
      throw InvalidPresentation(name + ": rule " + show_letters(*this, r.lhs) + " -> " +
                                show_letters(*this, r.rhs) + " does not reduce weight");
    }
    if (images && embed_letters(*this, r.lhs) != embed_letters(*this, r.rhs)) {
      throw InvalidPresentation(name + ": rule " + show_letters(*this, r.lhs) + " -> " +
                                show_letters(*this, r.rhs) + " is unsound in G");
    }
  }
}

// ---------------------------------------------------------------------------
// Builtins

namespace detail {

inline Presentation make_presentation(std::string name, std::vector<std::string> alphabet,
                                      const std::vector<std::pair<std::string, std::string>>& rules,
                                      std::optional<std::vector<std::string>> images,
                                      std::vector<int> weights = {}) {
  Presentation p{std::move(name), std::move(alphabet), {}, std::nullopt, std::move(weights)};
  for (const auto& [lhs, rhs] : rules) p.rules.push_back({parse_letters(p, lhs), parse_letters(p, rhs)});
  if (images) {
    p.images.emplace();
    for (const std::string& img : *images) p.images->push_back(parse_word(img));
  }
  p.validate();
  return p;
}

}  // namespace detail

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"M0", "M1", "VYWU", "YXW", "FREE_XY"};
  return names;
}

inline const Presentation& builtin(std::string_view name) {
  static const std::map<std::string, Presentation, std::less<>> table = [] {
    std::map<std::string, Presentation, std::less<>> t;
    t.emplace("M0", detail::make_presentation("M0", {"x", "y", "z"}, {{"y x z", "x y"}},
                                              std::vector<std::string>{"x", "y", "z"}));
    t.emplace("M1", detail::make_presentation(
                        "M1", {"x", "y", "z", "z-"},
                        {{"y x z", "x y"}, {"x y z-", "y x"}, {"z z-", ""}, {"z- z", ""}},
                        std::vector<std::string>{"x", "y", "z", "z-"}));
    // vy -> yu and vw -> wu keep the length, so v carries weight 2.
    t.emplace("VYWU", detail::make_presentation("VYWU", {"y", "w", "u", "v"},
                                                {{"v y", "y u"}, {"v w", "w u"}},
                                                std::vector<std::string>{"y", "y x", "x x", "y x x y-"},
                                                {1, 1, 1, 2}));
    t.emplace("YXW", detail::make_presentation("YXW", {"x", "y", "w"}, {{"y x w", "x"}},
                                               std::vector<std::string>{"x", "y", "x- y- x"}));
    t.emplace("FREE_XY", detail::make_presentation("FREE_XY", {"x", "y"}, {},
                                                   std::vector<std::string>{"x", "y"}));
    return t;
  }();
  const auto it = table.find(name);
  if (it == table.end()) throw UnknownName("unknown presentation '" + std::string(name) + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// Preimage search

/// Searches for an irreducible word whose image is g. The search extends
/// irreducible words letter by letter and prunes any branch whose image,
/// minus its last `slack` letters, is not a prefix of g. States are memoized
/// on (matched prefix, unmatched tail, recent letters), so the search is
/// polynomial in |g|. Complete only under a bounded-cancellation assumption
/// on the presentation; callers cross-check against an enumeration oracle.
inline std::optional<NormalWord> preimage_search(const Presentation& p, const GroupWord& g,
                                                 std::size_t slack = 4) {
  std::size_t max_lhs = 1;
  for (const Rule& r : p.rules) max_lhs = std::max(max_lhs, r.lhs.size());
  const std::vector<Letter>& target = g.letters();

  struct Frame {
    std::size_t agree;            // length of common prefix of image and g
    std::vector<Letter> tail;     // image letters after the common prefix
  };
  using Key = std::tuple<std::size_t, std::vector<Letter>, Word>;
  std::set<Key> dead;
  std::set<Key> active;
  Word word;

  std::function<bool(const Frame&)> dfs = [&](const Frame& f) -> bool {
    if (f.agree == target.size() && f.tail.empty()) return true;
    Word recent(word.end() - static_cast<long>(std::min(word.size(), max_lhs - 1)), word.end());
    Key key{f.agree, f.tail, recent};
    if (dead.count(key) || active.count(key)) return false;
    active.insert(key);
    for (std::size_t l = 0; l < p.size(); ++l) {
      word.push_back(static_cast<int>(l));
      if (detail::suffix_redex(p, word) >= 0) {
        word.pop_back();
        continue;
      }
      Frame next = f;
      for (Letter m : p.image(static_cast<int>(l)).letters()) {
        if (!next.tail.empty()) {
          if (next.tail.back() == -m) next.tail.pop_back();
          else next.tail.push_back(m);
        } else if (next.agree > 0 && target[next.agree - 1] == -m) {
          --next.agree;
        } else if (next.agree < target.size() && target[next.agree] == m) {
          ++next.agree;
        } else {
          next.tail.push_back(m);
        }
      }
      if (next.tail.size() <= slack && dfs(next)) {
        active.erase(key);
        return true;
      }
      word.pop_back();
    }
    active.erase(key);
    dead.insert(std::move(key));
    return false;
  };

  if (!dfs(Frame{0, {}})) return std::nullopt;
  return NormalWord{&p, word};
}

}  // namespace firlab
