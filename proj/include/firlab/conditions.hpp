#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "firlab/errors.hpp"
#include "firlab/monoids.hpp"

namespace firlab {

enum class Outcome { Pass, Fail, Unknown };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "Pass";
    case Outcome::Fail: return "Fail";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

namespace detail {

/// Bounds 1, 2, 4, ... up to and including `bound`.
inline std::vector<std::size_t> deepening(std::size_t bound) {
  std::vector<std::size_t> out;
  for (std::size_t b = 1; b < bound; b *= 2) out.push_back(b);
  out.push_back(std::max<std::size_t>(bound, 1));
  return out;
}

template <ComputableMonoid M>
void require_equal(const M& m, const typename M::Element& lhs, const typename M::Element& rhs,
                   const std::string& what) {
  if (!m.eq(lhs, rhs)) {
    throw NotARelation(what + ": " + m.show(lhs) + " != " + m.show(rhs));
  }
}

template <ComputableMonoid M>
void check_witness(const M& m, const typename M::Element& lhs, const typename M::Element& rhs,
                   const char* what) {
  if (!m.eq(lhs, rhs)) throw std::logic_error(std::string("witness fails to re-multiply: ") + what);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cancellation

/// Fail when a*b = a*c or b*a = c*a with b != c.
template <ComputableMonoid M>
Outcome check_cancellative(const M& m, const typename M::Element& a, const typename M::Element& b,
                           const typename M::Element& c) {
  if (m.eq(b, c)) return Outcome::Pass;
  if (m.eq(m.mul(a, b), m.mul(a, c)) || m.eq(m.mul(b, a), m.mul(c, a))) return Outcome::Fail;
  return Outcome::Pass;
}

// ---------------------------------------------------------------------------
// Overlap refinement

enum class RefinementKind { LeftDivisor, RightMultiple, NoRefinement, Unknown };

inline const char* to_string(RefinementKind k) {
  switch (k) {
    case RefinementKind::LeftDivisor: return "LeftDivisor";
    case RefinementKind::RightMultiple: return "RightMultiple";
    case RefinementKind::NoRefinement: return "NoRefinement";
    case RefinementKind::Unknown: return "Unknown";
  }
  return "?";
}

template <class E>
struct Refinement {
  using Kind = RefinementKind;
  Kind kind = Kind::Unknown;
  std::optional<E> witness;  // f with a = b*f, or e with b = a*e
  std::size_t bound = 0;
};

/// Given a*c = b*d, finds f with a = b*f (LeftDivisor) or e with b = a*e
/// (RightMultiple), deepening the divisibility bound in both directions.
template <ComputableMonoid M>
Refinement<typename M::Element> refine_overlap(const M& m, const typename M::Element& a,
                                               const typename M::Element& b,
                                               const typename M::Element& c,
                                               const typename M::Element& d, std::size_t bound) {
  using R = Refinement<typename M::Element>;
  detail::require_equal(m, m.mul(a, c), m.mul(b, d), "refine_overlap needs a*c = b*d");
  for (std::size_t k : detail::deepening(bound)) {
    const auto ab = m.divides(b, a, Side::Left, k);
    if (ab.yes()) {
      detail::check_witness(m, m.mul(b, *ab.cofactor), a, "a = b*f");
      return {R::Kind::LeftDivisor, ab.cofactor, k};
    }
    const auto ba = m.divides(a, b, Side::Left, k);
    if (ba.yes()) {
      detail::check_witness(m, m.mul(a, *ba.cofactor), b, "b = a*e");
      return {R::Kind::RightMultiple, ba.cofactor, k};
    }
    if (ab.no() && ba.no()) return {R::Kind::NoRefinement, std::nullopt, k};
  }
  return {R::Kind::Unknown, std::nullopt, bound};
}

// ---------------------------------------------------------------------------
// a = c*a*d

template <class E>
struct IdentityVerdict {
  Outcome outcome = Outcome::Pass;
  std::optional<std::pair<E, E>> violation;  // (c, d)
};

template <ComputableMonoid M>
IdentityVerdict<typename M::Element> check_internal_identity(const M& m, const typename M::Element& a,
                                                             const typename M::Element& c,
                                                             const typename M::Element& d) {
  detail::require_equal(m, m.mul(c, m.mul(a, d)), a, "check_internal_identity needs c*a*d = a");
  if ((is_one(m, c) && is_one(m, d)) || m.is_invertible(a)) return {};
  return {Outcome::Fail, std::pair{c, d}};
}

// ---------------------------------------------------------------------------
// a*b = c*a

enum class ConjugationKind { Found, Failure, Unknown };

inline const char* to_string(ConjugationKind k) {
  switch (k) {
    case ConjugationKind::Found: return "Found";
    case ConjugationKind::Failure: return "Failure";
    case ConjugationKind::Unknown: return "Unknown";
  }
  return "?";
}

template <class E>
struct Conjugation {
  using Kind = ConjugationKind;
  Kind kind = Kind::Unknown;
  long n = 0;
  std::optional<E> e;
  std::optional<E> f;
  bool deep = false;  // Failure because c^max_n still left divides a
};

/// Given a*b = c*a, finds n, e, f with a = (ef)^n e, b = fe, c = ef. The
/// exponent is the largest n <= max_n with c^n left dividing a; Failure
/// means c^max_n still divides a.
template <ComputableMonoid M>
Conjugation<typename M::Element> decompose_conjugation(const M& m, const typename M::Element& a,
                                                       const typename M::Element& b,
                                                       const typename M::Element& c, long max_n,
                                                       std::size_t bound) {
  using E = typename M::Element;
  using C = Conjugation<E>;
  detail::require_equal(m, m.mul(a, b), m.mul(c, a), "decompose_conjugation needs a*b = c*a");
  if (is_one(m, b) && is_one(m, c)) throw Error("decompose_conjugation: b and c are both 1");

  auto verified = [&](long n, const E& e, const E& f) -> std::optional<C> {
    const E ef = m.mul(e, f);
    if (!m.eq(ef, c) || !m.eq(m.mul(f, e), b) || !m.eq(m.mul(power(m, ef, n), e), a)) {
      return std::nullopt;
    }
    return C{C::Kind::Found, n, e, f};
  };

  if (m.is_invertible(a)) {
    const auto f = m.divides(a, c, Side::Left, bound);
    if (f.yes()) {
      if (auto r = verified(0, a, *f.cofactor)) return *r;
    }
    return {f.no() ? C::Kind::Failure : C::Kind::Unknown};
  }

  // cofactors[n] = e with a = c^n e
  std::vector<E> cofactors{a};
  bool unknown = false;
  E cn = m.one();
  for (long n = 1; n <= max_n; ++n) {
    cn = m.mul(cn, c);
    const auto q = m.divides(cn, a, Side::Left, bound);
    if (!q.yes()) {
      unknown = !q.no();
      break;
    }
    cofactors.push_back(*q.cofactor);
  }
  if (static_cast<long>(cofactors.size()) > max_n) {
    return {C::Kind::Failure, max_n, std::nullopt, std::nullopt, true};
  }

  for (long n = static_cast<long>(cofactors.size()) - 1; n >= 0; --n) {
    const E& e = cofactors[static_cast<std::size_t>(n)];
    const auto f = m.divides(e, c, Side::Left, bound);
    if (f.yes()) {
      if (auto r = verified(n, e, *f.cofactor)) return *r;
    }
    unknown = unknown || !f.no();
  }
  return {unknown ? C::Kind::Unknown : C::Kind::Failure};
}

/// With a*b = c*a, c != 1 and a noninvertible (Side::Left), or b != 1 and a
/// noninvertible (Side::Right), a must not be divisible by every power of c
/// (resp. b) on that side. A finite search cannot refute this, so the
/// max_n-th power still dividing gives Unknown.
template <ComputableMonoid M>
Outcome check_power_divisibility(const M& m, const typename M::Element& a, const typename M::Element& b,
                                 const typename M::Element& c, Side side, long max_n, std::size_t bound) {
  detail::require_equal(m, m.mul(a, b), m.mul(c, a), "check_power_divisibility needs a*b = c*a");
  const auto& t = side == Side::Left ? c : b;
  if (is_one(m, t) || m.is_invertible(a)) return Outcome::Pass;
  auto tn = m.one();
  for (long n = 1; n <= max_n; ++n) {
    tn = m.mul(tn, t);
    const auto q = m.divides(tn, a, side, bound);
    if (q.no()) return Outcome::Pass;
    if (!q.yes()) return Outcome::Unknown;
  }
  return Outcome::Unknown;
}

// ---------------------------------------------------------------------------
// a*b = c*a*d

enum class SkewKind { Left, Witness, Failure, Unknown };

inline const char* to_string(SkewKind k) {
  switch (k) {
    case SkewKind::Left: return "Left";
    case SkewKind::Witness: return "Witness";
    case SkewKind::Failure: return "Failure";
    case SkewKind::Unknown: return "Unknown";
  }
  return "?";
}

template <class E>
struct Skew {
  using Kind = SkewKind;
  Kind kind = Kind::Unknown;
  std::optional<E> b_prime;  // a*b' = c^n
  long n = 0;
};

/// Given a*b = c*a*d, returns Left when c = 1, or b' and n with a*b' = c^n.
/// Tries the reduction through b = b'd (conjugation case) and the invertible
/// case first, then searches n <= max_n directly.
template <ComputableMonoid M>
Skew<typename M::Element> decompose_skew(const M& m, const typename M::Element& a,
                                         const typename M::Element& b, const typename M::Element& c,
                                         const typename M::Element& d, long max_n, std::size_t bound) {
  using E = typename M::Element;
  using S = Skew<E>;
  detail::require_equal(m, m.mul(a, b), m.mul(c, m.mul(a, d)), "decompose_skew needs a*b = c*a*d");
  if (is_one(m, c)) return {S::Kind::Left, std::nullopt, 0};

  auto witness = [&](const E& bp, long n) -> std::optional<S> {
    if (!m.eq(m.mul(a, bp), power(m, c, n))) return std::nullopt;
    return S{S::Kind::Witness, bp, n};
  };

  const auto bd = m.divides(d, b, Side::Right, bound);
  if (bd.yes()) {
    // b = b' d, so a b' = c a.
    const auto conj = decompose_conjugation(m, a, *bd.cofactor, c, max_n, bound);
    if (conj.kind == Conjugation<E>::Kind::Found) {
      if (auto r = witness(*conj.f, conj.n + 1)) return *r;
    }
  } else if (m.is_invertible(a)) {
    // d = d' b would give a = c a d', which only an invertible a survives.
    const auto inv = m.divides(a, m.one(), Side::Left, bound);
    if (inv.yes()) {
      if (auto r = witness(*inv.cofactor, 0)) return *r;
    }
  }

  bool unknown = false;
  E cn = m.one();
  for (long n = 0; n <= max_n; ++n) {
    const auto q = m.divides(a, cn, Side::Left, bound);
    if (q.yes()) {
      if (auto r = witness(*q.cofactor, n)) return *r;
    }
    unknown = unknown || !q.no();
    cn = m.mul(cn, c);
  }
  return {unknown ? S::Kind::Unknown : S::Kind::Failure, std::nullopt, 0};
}

// ---------------------------------------------------------------------------
// c0 a1 c1 ... an cn = a1 ... an

template <ComputableMonoid M>
Outcome check_products_rigid(const M& m, const std::vector<typename M::Element>& as,
                             const std::vector<typename M::Element>& cs) {
  if (cs.size() != as.size() + 1) throw NotARelation("check_products_rigid needs n+1 interleaved factors");
  for (const auto& a : as) {
    if (m.is_invertible(a)) throw NotARelation("check_products_rigid needs noninvertible a_i");
  }
  auto plain = m.one();
  auto mixed = cs[0];
  for (std::size_t i = 0; i < as.size(); ++i) {
    plain = m.mul(plain, as[i]);
    mixed = m.mul(m.mul(mixed, as[i]), cs[i + 1]);
  }
  detail::require_equal(m, mixed, plain, "check_products_rigid needs equal products");
  for (const auto& c : cs) {
    if (!is_one(m, c)) return Outcome::Fail;
  }
  return Outcome::Pass;
}

// ---------------------------------------------------------------------------
// a*b = b*a*g

/// Solves a*b = (b*a)*g when b*a left divides a*b within the bound.
template <ComputableMonoid M>
std::optional<typename M::Element> probe_abg(const M& m, const typename M::Element& a,
                                             const typename M::Element& b, std::size_t bound) {
  const auto ab = m.mul(a, b);
  const auto ba = m.mul(b, a);
  const auto q = m.divides(ba, ab, Side::Left, bound);
  if (!q.yes()) return std::nullopt;
  detail::check_witness(m, m.mul(ba, *q.cofactor), ab, "a*b = b*a*g");
  return q.cofactor;
}

// ---------------------------------------------------------------------------
// Commuting elements

template <class E>
struct CyclicGenerator {
  bool ok = false;
  std::optional<E> generator;
  std::vector<long> exponents;
  std::string reason;
};

/// Finds c and exponents k_i with elems[i] = c^k_i. Pairs are merged by the
/// subtractive Euclidean algorithm on divisibility; every exponent is
/// verified by rebuilding the power.
template <ComputableMonoid M>
CyclicGenerator<typename M::Element> common_cyclic_generator(const M& m,
                                                             const std::vector<typename M::Element>& elems,
                                                             std::size_t bound, long max_steps = 4096) {
  using E = typename M::Element;
  CyclicGenerator<E> out;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (!m.eq(m.mul(elems[i], elems[j]), m.mul(elems[j], elems[i]))) {
        out.reason = "Incompatible: " + m.show(elems[i]) + " and " + m.show(elems[j]) + " do not commute";
        return out;
      }
    }
  }
  std::optional<E> c;
  for (const E& x : elems) {
    if (is_one(m, x)) continue;
    if (!c) {
      c = x;
      continue;
    }
    E p = *c, q = x;
    long steps = 0;
    while (!is_one(m, p) && !is_one(m, q)) {
      if (++steps > max_steps) {
        out.reason = "Incompatible: Euclidean steps exhausted on " + m.show(*c) + ", " + m.show(x);
        return out;
      }
      if (m.eq(p, q)) {
        q = m.one();
        break;
      }
      if (const auto h = m.divides(p, q, Side::Left, bound); h.yes()) {
        q = *h.cofactor;
      } else if (const auto k = m.divides(q, p, Side::Left, bound); k.yes()) {
        p = *k.cofactor;
      } else {
        out.reason = "Incompatible: neither of " + m.show(p) + ", " + m.show(q) + " divides the other";
        return out;
      }
    }
    c = is_one(m, p) ? q : p;
  }
  if (!c) c = m.one();
  for (const E& x : elems) {
    long k = 0;
    E acc = m.one();
    while (!m.eq(acc, x)) {
      if (is_one(m, *c) || ++k > max_steps) {
        out.reason = "Incompatible: " + m.show(x) + " is not a power of " + m.show(*c);
        return out;
      }
      acc = m.mul(acc, *c);
    }
    out.exponents.push_back(k);
  }
  out.ok = true;
  out.generator = c;
  return out;
}

template <class E>
struct CommutationAudit {
  std::size_t elements = 0;
  std::size_t commuting_pairs = 0;
  std::size_t chains = 0;
  std::vector<std::array<E, 3>> transitivity_violations;
  std::vector<std::pair<E, E>> invertibility_violations;
  bool ok() const { return transitivity_violations.empty() && invertibility_violations.empty(); }
};

/// Checks that commuting is transitive on the nonidentity elements of the
/// sample and that commuting elements are both or neither invertible.
template <ComputableMonoid M>
CommutationAudit<typename M::Element> audit_commutation_equivalence(
    const M& m, const std::vector<typename M::Element>& sample) {
  using E = typename M::Element;
  std::vector<E> xs;
  for (const E& x : sample) {
    if (!is_one(m, x)) xs.push_back(x);
  }
  const std::size_t n = xs.size();
  std::vector<std::vector<char>> comm(n, std::vector<char>(n, 0));
  CommutationAudit<E> out;
  out.elements = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const bool c = m.eq(m.mul(xs[i], xs[j]), m.mul(xs[j], xs[i]));
      comm[i][j] = comm[j][i] = c;
      if (c && i != j) {
        ++out.commuting_pairs;
        if (m.is_invertible(xs[i]) != m.is_invertible(xs[j])) out.invertibility_violations.push_back({xs[i], xs[j]});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !comm[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j || !comm[j][k]) continue;
        ++out.chains;
        if (!comm[i][k]) out.transitivity_violations.push_back({xs[i], xs[j], xs[k]});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Left N-equivalence

template <class E>
struct NEquivalence {
  Outcome outcome = Outcome::Unknown;
  std::optional<E> coset;  // z with x, y in N z
};

/// Searches z among `candidates`, x and y with x = n1*z, y = n2*z, n1, n2 in N.
/// A miss is reported as Unknown: the search is bounded by the candidates.
template <ComputableMonoid M>
NEquivalence<typename M::Element> left_n_equivalent(
    const M& m, const std::function<bool(const typename M::Element&)>& in_n, const typename M::Element& x,
    const typename M::Element& y, std::vector<typename M::Element> candidates, std::size_t bound) {
  candidates.push_back(x);
  candidates.push_back(y);
  for (const auto& z : candidates) {
    const auto qx = m.divides(z, x, Side::Right, bound);
    if (!qx.yes() || !in_n(*qx.cofactor)) continue;
    const auto qy = m.divides(z, y, Side::Right, bound);
    if (!qy.yes() || !in_n(*qy.cofactor)) continue;
    return {Outcome::Pass, z};
  }
  return {Outcome::Unknown, std::nullopt};
}

/// ab in N and a in N imply b in N, over the given sample.
template <ComputableMonoid M>
bool is_left_division_closed_on(const M& m, const std::function<bool(const typename M::Element&)>& in_n,
                                const std::vector<typename M::Element>& sample) {
  for (const auto& a : sample) {
    if (!in_n(a)) continue;
    for (const auto& b : sample) {
      if (in_n(m.mul(a, b)) && !in_n(b)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// ac = gb, ad = ga, ae = fa, bc = hb, bd = ha

struct FiveRelations {
  Outcome outcome = Outcome::Pass;
  std::vector<std::string> failed;
};

template <ComputableMonoid M>
FiveRelations five_relations_check(const M& m, const typename M::Element& a, const typename M::Element& b,
                                   const typename M::Element& c, const typename M::Element& d,
                                   const typename M::Element& e, const typename M::Element& f,
                                   const typename M::Element& g, const typename M::Element& h) {
  FiveRelations out;
  auto need = [&](const char* label, const auto& lhs, const auto& rhs) {
    if (!m.eq(lhs, rhs)) out.failed.emplace_back(label);
  };
  need("ac=gb", m.mul(a, c), m.mul(g, b));
  need("ad=ga", m.mul(a, d), m.mul(g, a));
  need("ae=fa", m.mul(a, e), m.mul(f, a));
  need("bc=hb", m.mul(b, c), m.mul(h, b));
  need("bd=ha", m.mul(b, d), m.mul(h, a));
  if (!out.failed.empty()) out.outcome = Outcome::Fail;
  return out;
}

}  // namespace firlab
