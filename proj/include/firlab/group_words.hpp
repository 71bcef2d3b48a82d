#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "firlab/errors.hpp"
#include "firlab/golden.hpp"

namespace firlab {

/// A letter of the free group on x, y: +1 = x, -1 = x^-1, +2 = y, -2 = y^-1.
using Letter = std::int8_t;

inline constexpr Letter kX = 1;
inline constexpr Letter kY = 2;

/// Reduced word in the free group G on x and y. The empty word is 1.
class GroupWord {
 public:
  GroupWord() = default;

  /// Builds the reduced form of an arbitrary letter sequence.
  static GroupWord reduce(const std::vector<Letter>& letters) {
    GroupWord w;
    for (Letter l : letters) w.push(l);
    return w;
  }

  static GroupWord x() { return reduce({kX}); }
  static GroupWord y() { return reduce({kY}); }
  /// z = x^-1 y^-1 x y.
  static GroupWord z() { return reduce({-kX, -kY, kX, kY}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  /// Appends one letter, cancelling against the last letter if inverse.
  void push(Letter l) {
    if (!letters_.empty() && letters_.back() == -l) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  auto operator<=>(const GroupWord&) const = default;

 private:
  std::vector<Letter> letters_;
};

inline GroupWord concat_reduce(const GroupWord& u, const GroupWord& v) {
  GroupWord out = u;
  for (Letter l : v.letters()) out.push(l);
  return out;
}

inline GroupWord operator*(const GroupWord& u, const GroupWord& v) { return concat_reduce(u, v); }

inline GroupWord invert(const GroupWord& u) {
  std::vector<Letter> out(u.letters().rbegin(), u.letters().rend());
  for (Letter& l : out) l = static_cast<Letter>(-l);
  return GroupWord::reduce(out);
}

inline GroupWord power(const GroupWord& u, long n) {
  GroupWord base = n < 0 ? invert(u) : u;
  GroupWord out;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
  return out;
}

// ---------------------------------------------------------------------------
// Text format: tokens x, y, x-, y-; z and z- expand to x- y- x y and its inverse.

inline GroupWord parse_word(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t' || text[i] == '\n') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\n') ++i;
    const std::string_view tok = text.substr(start, i - start);
    if (tok == "x") {
      letters.push_back(kX);
    } else if (tok == "x-") {
      letters.push_back(-kX);
    } else if (tok == "y") {
      letters.push_back(kY);
    } else if (tok == "y-") {
      letters.push_back(-kY);
    } else if (tok == "z") {
      letters.insert(letters.end(), {-kX, -kY, kX, kY});
    } else if (tok == "z-") {
      letters.insert(letters.end(), {-kY, -kX, kY, kX});
    } else {
      throw ParseError("unknown token '" + std::string(tok) + "'", start);
    }
  }
  return GroupWord::reduce(letters);
}

inline std::string letter_token(Letter l) {
  switch (l) {
    case kX: return "x";
    case -kX: return "x-";
    case kY: return "y";
    case -kY: return "y-";
  }
  return "?";
}

inline std::string to_string(const GroupWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += letter_token(w[i]);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const GroupWord& w) { return os << to_string(w); }

// ---------------------------------------------------------------------------
// Endomorphisms

/// Endomorphism of G given by the images of x and y, with an optional
/// declared inverse supplied as data.
struct Endo {
  std::string name;
  GroupWord image_x;
  GroupWord image_y;
  std::optional<std::pair<GroupWord, GroupWord>> inverse_images;

  GroupWord operator()(const GroupWord& u) const {
    GroupWord out;
    const GroupWord inv_x = invert(image_x);
    const GroupWord inv_y = invert(image_y);
    for (Letter l : u.letters()) {
      const GroupWord& img = l == kX ? image_x : l == -kX ? inv_x : l == kY ? image_y : inv_y;
      for (Letter m : img.letters()) out.push(m);
    }
    return out;
  }

  bool has_inverse() const { return inverse_images.has_value(); }

  Endo inverse() const {
    if (!inverse_images) throw Error("endomorphism " + name + " has no declared inverse");
    return Endo{name + "^-1", inverse_images->first, inverse_images->second,
                std::pair{image_x, image_y}};
  }

  /// Checks that the declared inverse composes to the identity on both sides.
  bool inverse_is_valid() const {
    if (!inverse_images) return false;
    const Endo inv = inverse();
    return inv((*this)(GroupWord::x())) == GroupWord::x() &&
           inv((*this)(GroupWord::y())) == GroupWord::y() &&
           (*this)(inv(GroupWord::x())) == GroupWord::x() &&
           (*this)(inv(GroupWord::y())) == GroupWord::y();
  }
};

inline GroupWord apply_endo(const Endo& e, const GroupWord& u) { return e(u); }

/// e after f.
inline Endo compose(const Endo& e, const Endo& f) {
  Endo out{e.name + "*" + f.name, e(f.image_x), e(f.image_y), std::nullopt};
  if (e.inverse_images && f.inverse_images) {
    const Endo ei = e.inverse();
    const Endo fi = f.inverse();
    out.inverse_images = std::pair{fi(ei.image_x), fi(ei.image_y)};
  }
  return out;
}

/// Every reduced word of length at most n, shortest first.
inline std::vector<GroupWord> enumerate_reduced(std::size_t n) {
  std::vector<GroupWord> out{GroupWord{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Letter l : {kX, static_cast<Letter>(-kX), kY, static_cast<Letter>(-kY)}) {
        if (!out[i].empty() && out[i].letters().back() == -l) continue;
        GroupWord w = out[i];
        w.push(l);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

inline std::vector<GroupWord> endo_orbit(const Endo& e, const GroupWord& u, std::size_t n) {
  std::vector<GroupWord> out{u};
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) out.push_back(e(out.back()));
  return out;
}

inline Endo sigma() {
  // sigma^-1: x -> y^-1 x x, y -> x^-1 y
  return {"sigma", parse_word("y x"), parse_word("y x y"),
          std::pair{parse_word("y- x x"), parse_word("x- y")}};
}

inline Endo sigma_half() {
  return {"sigma-half", parse_word("y"), parse_word("y x"),
          std::pair{parse_word("x- y"), parse_word("x")}};
}

inline Endo phi() {
  return {"phi", parse_word("x"), parse_word("x y"), std::pair{parse_word("x"), parse_word("x- y")}};
}

inline Endo theta() {
  return {"theta", parse_word("y x"), parse_word("y"), std::pair{parse_word("y- x"), parse_word("y")}};
}

inline Endo endo_by_name(std::string_view name) {
  for (const Endo& e : {sigma(), sigma_half(), phi(), theta()}) {
    if (e.name == name) return e;
    if (e.name + "-inv" == name) return e.inverse();
  }
  throw UnknownName("unknown endomorphism '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Degrees

/// Exponent-sum vector (x-count, y-count) in Z x Z.
struct BiDegree {
  std::int64_t r = 0;
  std::int64_t s = 0;

  constexpr BiDegree operator+(BiDegree o) const { return {r + o.r, s + o.s}; }
  constexpr BiDegree operator-(BiDegree o) const { return {r - o.r, s - o.s}; }
  constexpr BiDegree operator-() const { return {-r, -s}; }
  constexpr BiDegree operator*(std::int64_t k) const { return {r * k, s * k}; }
  constexpr auto operator<=>(const BiDegree&) const = default;

  std::string to_string() const {
    return "(" + std::to_string(r) + "," + std::to_string(s) + ")";
  }
};

inline std::ostream& operator<<(std::ostream& os, const BiDegree& d) { return os << d.to_string(); }

inline BiDegree delta(const GroupWord& u) {
  BiDegree d;
  for (Letter l : u.letters()) {
    if (l == kX) ++d.r;
    else if (l == -kX) --d.r;
    else if (l == kY) ++d.s;
    else --d.s;
  }
  return d;
}

/// eta(r, s) = r + s*tau.
inline GoldenInt eta(BiDegree d) { return {d.r, d.s}; }

/// Integer matrix of the map induced by an endomorphism on Z x Z; columns
/// are delta(e(x)) and delta(e(y)).
struct DegreeMap {
  BiDegree col_x;
  BiDegree col_y;
  BiDegree operator()(BiDegree d) const { return col_x * d.r + col_y * d.s; }
};

inline DegreeMap degree_map(const Endo& e) { return {delta(e.image_x), delta(e.image_y)}; }

/// A nonzero homomorphism h(r, s) = p*r + q*s from Z x Z to Z.
struct LinearForm {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t operator()(BiDegree d) const { return p * d.r + q * d.s; }
  bool operator==(const LinearForm&) const = default;

  /// Primitive generator g of ker h, signed so that eta(g) > 0.
  BiDegree kernel_generator() const {
    const std::int64_t g = std::gcd(p, q);
    BiDegree k{q / g, -p / g};
    if (eta(k).sign() < 0) k = -k;
    return k;
  }

  std::string to_string() const {
    return "h(r,s)=" + std::to_string(p) + "r" + (q < 0 ? "-" : "+") +
           std::to_string(q < 0 ? -q : q) + "s";
  }
};

}  // namespace firlab
