#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "firlab/errors.hpp"
#include "firlab/group_words.hpp"
#include "firlab/limit_monoid.hpp"

namespace firlab {

// ---------------------------------------------------------------------------
// Coefficients

using Rational = boost::multiprecision::cpp_rational;

template <class F>
concept Field = requires(const F& a, const F& b) {
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
  { -a } -> std::convertible_to<F>;
  { a == b } -> std::convertible_to<bool>;
  F(0);
  F(1);
};

/// Prime field Z/P.
template <std::int64_t P>
struct Fp {
  std::int64_t v = 0;

  Fp() = default;
  Fp(std::int64_t x) : v(((x % P) + P) % P) {}  // NOLINT: implicit from integers like Rational

  friend Fp operator+(Fp a, Fp b) { return Fp(a.v + b.v); }
  friend Fp operator-(Fp a, Fp b) { return Fp(a.v - b.v); }
  friend Fp operator*(Fp a, Fp b) { return Fp(a.v * b.v); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return Fp(-v); }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }

  Fp inverse() const {
    if (v == 0) throw Error("division by zero in Z/" + std::to_string(P));
    std::int64_t r = 1, b = v, e = P - 2;
    while (e) {
      if (e & 1) r = r * b % P;
      b = b * b % P;
      e >>= 1;
    }
    return Fp(r);
  }
};

inline std::string coeff_string(const Rational& c) { return c.str(); }

template <std::int64_t P>
std::string coeff_string(const Fp<P>& c) {
  return std::to_string(c.v);
}

inline Rational parse_coeff(std::string_view s, const Rational*) { return Rational(std::string(s)); }

template <std::int64_t P>
Fp<P> parse_coeff(std::string_view s, const Fp<P>*) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Fp<P>(std::stoll(std::string(s)));
  return Fp<P>(std::stoll(std::string(s.substr(0, slash)))) / Fp<P>(std::stoll(std::string(s.substr(slash + 1))));
}

static_assert(Field<Rational>);
static_assert(Field<Fp<7>>);

// ---------------------------------------------------------------------------
// Ambient monoids

/// Free monoid on single-character letters; monomials are strings, ordered
/// degree-lexicographically.
class FreeAlgebra {
 public:
  using Mono = std::string;
  struct Order {
    bool operator()(const Mono& a, const Mono& b) const {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    }
  };

  explicit FreeAlgebra(std::string letters) : letters_(std::move(letters)) {}

  const std::string& letters() const { return letters_; }
  std::string name() const { return "free:" + letters_; }
  Mono one() const { return {}; }
  Mono mul(const Mono& a, const Mono& b) const { return a + b; }
  long degree(const Mono& a) const { return static_cast<long>(a.size()); }
  std::string show(const Mono& a) const { return a.empty() ? "1" : a; }

  std::vector<std::string> tokens(const Mono& a) const {
    std::vector<std::string> out;
    for (char c : a) out.emplace_back(1, c);
    return out;
  }

  Mono from_tokens(const std::vector<std::string>& ts) const {
    Mono out;
    for (const auto& t : ts) {
      for (char c : t) {
        if (letters_.find(c) == std::string::npos) throw UnknownLetter(std::string("unknown letter '") + c + "'");
        out += c;
      }
    }
    return out;
  }

  /// Bidegree (count of x, count of y); only for subsets of {x, y}.
  std::optional<BiDegree> delta(const Mono& a) const {
    BiDegree d{};
    for (char c : a) {
      if (c == 'x') ++d.r;
      else if (c == 'y') ++d.s;
      else return std::nullopt;
    }
    return d;
  }

  bool operator==(const FreeAlgebra& o) const { return letters_ == o.letters_; }

 private:
  std::string letters_;
};

/// Powers of z: the polynomial ring, or the Laurent ring when `laurent`.
class ZRing {
 public:
  using Mono = long;
  using Order = std::less<long>;

  explicit ZRing(bool laurent) : laurent_(laurent) {}

  bool laurent() const { return laurent_; }
  std::string name() const { return laurent_ ? "laurent:z" : "poly:z"; }
  Mono one() const { return 0; }
  Mono mul(Mono a, Mono b) const { return a + b; }
  long degree(Mono a) const { return a; }

  std::string show(Mono a) const {
    if (a == 0) return "1";
    if (a == 1) return "z";
    return "z^" + std::to_string(a);
  }

  std::vector<std::string> tokens(Mono a) const {
    return std::vector<std::string>(static_cast<std::size_t>(a < 0 ? -a : a), a < 0 ? "z-" : "z");
  }

  Mono from_tokens(const std::vector<std::string>& ts) const {
    long e = 0;
    for (const auto& t : ts) {
      if (t == "z") ++e;
      else if (t == "z-") --e;
      else throw UnknownLetter("unknown token '" + t + "' in z-ring monomial");
    }
    if (e < 0 && !laurent_) throw UnknownLetter("negative z power outside the Laurent ring");
    return e;
  }

  std::optional<BiDegree> delta(Mono) const { return BiDegree{}; }

  bool operator==(const ZRing& o) const { return laurent_ == o.laurent_; }

 private:
  bool laurent_;
};

/// Monoid ring of a limit monoid.
class LimitRing {
 public:
  using Mono = LimitElement;
  using Order = std::less<LimitElement>;

  explicit LimitRing(const LimitMonoid& m) : m_(&m) {}

  const LimitMonoid& monoid() const { return *m_; }
  std::string name() const { return m_->name(); }
  Mono one() const { return m_->one(); }
  Mono mul(const Mono& a, const Mono& b) const { return m_->mul(a, b); }
  long degree(const Mono& a) const { return static_cast<long>(a.word.size()); }
  /// "yxz" at level 0, "@1:y" above.
  std::string show(const Mono& a) const {
    std::string s = a.level ? "@" + std::to_string(a.level) + ":" : "";
    for (int l : a.word) s += m_->base().alphabet[static_cast<std::size_t>(l)];
    return a.word.empty() && a.level == 0 ? "1" : s;
  }

  std::vector<std::string> tokens(const Mono& a) const {
    std::vector<std::string> out{"@" + std::to_string(a.level)};
    for (int l : a.word) out.push_back(m_->base().alphabet[static_cast<std::size_t>(l)]);
    return out;
  }

  Mono from_tokens(const std::vector<std::string>& ts) const {
    std::string text;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i == 0 && !ts[i].empty() && ts[i][0] == '@') {
        text = ts[i] + ":";
        continue;
      }
      if (!text.empty() && text.back() != ':') text += ' ';
      text += ts[i];
    }
    return m_->parse(text);
  }

  std::optional<BiDegree> delta(const Mono& a) const { return firlab::delta(m_->image(a)); }

  bool operator==(const LimitRing& o) const { return m_ == o.m_; }

 private:
  const LimitMonoid* m_;
};

template <class A>
concept RingAmbient = requires(const A& a, const typename A::Mono& m) {
  typename A::Mono;
  typename A::Order;
  { a.one() } -> std::same_as<typename A::Mono>;
  { a.mul(m, m) } -> std::same_as<typename A::Mono>;
  { a.show(m) } -> std::convertible_to<std::string>;
  { a.degree(m) } -> std::convertible_to<long>;
  { a.delta(m) } -> std::same_as<std::optional<BiDegree>>;
  { a.tokens(m) } -> std::same_as<std::vector<std::string>>;
  { a.name() } -> std::convertible_to<std::string>;
};

// ---------------------------------------------------------------------------
// Ring elements

/// Finite linear combination of monomials with nonzero coefficients.
template <RingAmbient A, Field F = Rational>
class RingElt {
 public:
  using Mono = typename A::Mono;
  using Terms = std::map<Mono, F, typename A::Order>;

  RingElt() = default;
  explicit RingElt(const A& amb) : amb_(&amb) {}

  static RingElt zero(const A& amb) { return RingElt(amb); }
  static RingElt one(const A& amb) { return mono(amb, amb.one()); }
  static RingElt mono(const A& amb, const Mono& m, F c = F(1)) {
    RingElt out(amb);
    out.add_term(m, c);
    return out;
  }
  static RingElt constant(const A& amb, F c) { return mono(amb, amb.one(), c); }

  const A& ambient() const { return *amb_; }
  const A* ambient_ptr() const { return amb_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Mono& m, const F& c) {
    if (c == F(0)) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (fresh) return;
    it->second = it->second + c;
    if (it->second == F(0)) terms_.erase(it);
  }

  F coeff(const Mono& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? F(0) : it->second;
  }

  /// Largest monomial degree; -1 for zero.
  long degree() const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, amb_->degree(m));
    return d;
  }

  /// Smallest monomial degree (z-rings: lowest power); 0 for zero.
  long low_degree() const {
    if (terms_.empty()) return 0;
    long d = amb_->degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_) d = std::min(d, amb_->degree(m));
    return d;
  }

  /// Terms of exactly degree d.
  RingElt component(long d) const {
    RingElt out(*amb_);
    for (const auto& [m, c] : terms_) {
      if (amb_->degree(m) == d) out.terms_.emplace(m, c);
    }
    return out;
  }

  RingElt operator-() const {
    RingElt out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  RingElt& operator+=(const RingElt& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  RingElt& operator-=(const RingElt& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend RingElt operator+(RingElt a, const RingElt& b) { return a += b; }
  friend RingElt operator-(RingElt a, const RingElt& b) { return a -= b; }

  friend RingElt operator*(const RingElt& a, const RingElt& b) {
    a.check(b);
    RingElt out(*a.amb_);
    for (const auto& [m, c] : a.terms_) {
      for (const auto& [n, d] : b.terms_) out.add_term(a.amb_->mul(m, n), c * d);
    }
    return out;
  }

  RingElt scaled(const F& k) const {
    RingElt out(*amb_);
    for (const auto& [m, c] : terms_) out.add_term(m, c * k);
    return out;
  }

  bool operator==(const RingElt& o) const { return terms_ == o.terms_; }

  /// Highest terms first, e.g. "yxy - yx + 1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string cs = coeff_string(c);
      const bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs = cs.substr(1);
      if (s.empty()) s = neg ? "-" : "";
      else s += neg ? " - " : " + ";
      const std::string ms = amb_->show(m);
      if (ms == "1") s += cs;
      else s += (cs == "1" ? "" : cs + "*") + ms;
    }
    return s;
  }

  /// Checks that every monomial has the same delta; returns it.
  std::optional<BiDegree> delta_degree() const {
    std::optional<BiDegree> d;
    for (const auto& [m, c] : terms_) {
      const auto e = amb_->delta(m);
      if (!e || (d && *d != *e)) return std::nullopt;
      d = e;
    }
    return d;
  }

 private:
  void check(const RingElt& o) const {
    if (amb_ == nullptr || o.amb_ == nullptr || !(*amb_ == *o.amb_)) {
      throw AmbientMismatch("ring elements from different ambients");
    }
  }

  const A* amb_ = nullptr;
  Terms terms_;
};

template <RingAmbient A, Field F>
std::ostream& operator<<(std::ostream& os, const RingElt<A, F>& r) {
  return os << r.to_string();
}

/// Parses "yxy - yx + 1", "2*xy - 1/3", "z^2 + z^-1" in the free algebra or
/// a z-ring. Terms are coefficient, optional '*', monomial.
template <Field F = Rational>
RingElt<FreeAlgebra, F> parse_free(const FreeAlgebra& amb, std::string_view text) {
  RingElt<FreeAlgebra, F> out(amb);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  skip();
  if (i == text.size()) throw ParseError("empty polynomial", 0);
  if (text.substr(i) == "0") return out;
  while (i < text.size()) {
    const std::size_t start = i;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
      neg = text[i] == '-';
      ++i;
      skip();
    } else if (start != 0 && !out.is_zero()) {
      throw ParseError("expected '+' or '-'", i);
    }
    std::string num;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) num += text[i++];
    if (i < text.size() && text[i] == '*') ++i;
    std::string mono;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
      if (amb.letters().find(text[i]) == std::string::npos) {
        throw ParseError(std::string("unknown letter '") + text[i] + "'", i);
      }
      mono += text[i++];
    }
    if (num.empty() && mono.empty()) throw ParseError("expected a term", i);
    F c = num.empty() ? F(1) : parse_coeff(num, static_cast<const F*>(nullptr));
    out.add_term(mono, neg ? -c : c);
    skip();
  }
  return out;
}

template <Field F = Rational>
RingElt<ZRing, F> parse_z(const ZRing& amb, std::string_view text) {
  RingElt<ZRing, F> out(amb);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  skip();
  if (text.substr(i) == "0") return out;
  bool first = true;
  while (i < text.size()) {
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
      neg = text[i] == '-';
      ++i;
      skip();
    } else if (!first) {
      throw ParseError("expected '+' or '-'", i);
    }
    first = false;
    std::string num;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) num += text[i++];
    if (i < text.size() && text[i] == '*') ++i;
    long e = 0;
    if (i < text.size() && text[i] == 'z') {
      ++i;
      e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::string exp;
        if (i < text.size() && text[i] == '-') exp += text[i++];
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) exp += text[i++];
        if (exp.empty() || exp == "-") throw ParseError("bad exponent", i);
        e = std::stol(exp);
      }
    } else if (num.empty()) {
      throw ParseError("expected a term", i);
    }
    if (e < 0 && !amb.laurent()) throw ParseError("negative power outside the Laurent ring", i);
    F c = num.empty() ? F(1) : parse_coeff(num, static_cast<const F*>(nullptr));
    out.add_term(e, neg ? -c : c);
    skip();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gradings

template <RingAmbient A, Field F>
struct GradedPart {
  BiDegree degree;
  RingElt<A, F> part;
};

/// Splits r into delta-homogeneous parts (h = nullopt), or into parts
/// homogeneous for h o delta, keyed by (h value, 0). Parts are in
/// increasing degree order.
template <RingAmbient A, Field F>
std::vector<GradedPart<A, F>> grade_decompose(const RingElt<A, F>& r,
                                              const std::optional<LinearForm>& h = std::nullopt) {
  std::map<BiDegree, RingElt<A, F>> parts;
  for (const auto& [m, c] : r.terms()) {
    const auto d = r.ambient().delta(m);
    if (!d) throw NotHomogeneous("ambient has no delta grading for " + r.ambient().show(m));
    const BiDegree key = h ? BiDegree{h->p * d->r + h->q * d->s, 0} : *d;
    auto it = parts.try_emplace(key, r.ambient()).first;
    it->second.add_term(m, c);
  }
  std::vector<GradedPart<A, F>> out;
  for (auto& [d, p] : parts) out.push_back({d, std::move(p)});
  return out;
}

// ---------------------------------------------------------------------------
// sigma on limit monoids

/// sigma^k applied to a (k may be negative).
inline LimitElement sigma_power(const LimitMonoid& m, const LimitElement& a, int k) {
  if (k <= 0) return m.canonicalize(a.level - k, a.word);
  int level = a.level;
  Word w = a.word;
  for (int i = 0; i < k; ++i) {
    if (level > 0) --level;
    else w = m.shift_word(w);
  }
  return m.canonicalize(level, std::move(w));
}

template <Field F>
RingElt<LimitRing, F> sigma_power(const RingElt<LimitRing, F>& r, int k) {
  RingElt<LimitRing, F> out(r.ambient());
  for (const auto& [m, c] : r.terms()) out.add_term(sigma_power(r.ambient().monoid(), m, k), c);
  return out;
}

}  // namespace firlab
