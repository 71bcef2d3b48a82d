#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "firlab/errors.hpp"
#include "firlab/ring.hpp"

namespace firlab {

// ---------------------------------------------------------------------------
// Relations

/// sum_i u_i * v_i = 0, with optional degree lifts alpha_i and beta.
template <RingAmbient A, Field F = Rational>
struct Relation {
  using Elt = RingElt<A, F>;

  std::vector<Elt> u;
  std::vector<Elt> v;
  std::optional<std::vector<BiDegree>> alpha;
  std::optional<BiDegree> beta;

  std::size_t size() const { return u.size(); }
  const A& ambient() const { return u.front().ambient(); }

  Elt sum() const {
    Elt s(ambient());
    for (std::size_t i = 0; i < size(); ++i) s += u[i] * v[i];
    return s;
  }

  bool holds() const { return sum().is_zero(); }
  bool active(std::size_t i) const { return !u[i].is_zero() && !v[i].is_zero(); }

  /// Each index has u_i = 0 or v_i = 0.
  bool trivial() const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (active(i)) return false;
    }
    return true;
  }

  std::vector<std::size_t> active_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (active(i)) out.push_back(i);
    }
    return out;
  }

  bool operator==(const Relation& o) const { return u == o.u && v == o.v; }

  std::string to_string() const {
    auto list = [](const std::vector<Elt>& xs) {
      std::string s = "(";
      for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].to_string();
      return s + ")";
    };
    return "u = " + list(u) + "; v = " + list(v);
  }
};

template <RingAmbient A, Field F>
Relation<A, F> make_relation(std::vector<RingElt<A, F>> u, std::vector<RingElt<A, F>> v) {
  if (u.empty() || u.size() != v.size()) throw NotARelation("u and v must be nonempty and of equal length");
  Relation<A, F> rel{std::move(u), std::move(v), std::nullopt, std::nullopt};
  if (!rel.holds()) throw NotARelation("sum u_i v_i = " + rel.sum().to_string());
  return rel;
}

// ---------------------------------------------------------------------------
// Elementary operations

enum class OpKind { Swap, AddRightMultiple, ScaleUnit };

/// Swap(i, j); AddRightMultiple(i, j, r): u_i += u_j r, v_j -= r v_i;
/// ScaleUnit(i, r, r_inv): u_i = u_i r, v_i = r_inv v_i.
template <RingAmbient A, Field F = Rational>
struct ElementaryOp {
  using Elt = RingElt<A, F>;

  OpKind kind = OpKind::Swap;
  std::size_t i = 0;
  std::size_t j = 0;
  Elt r;
  Elt r_inv;

  static ElementaryOp swap(std::size_t i, std::size_t j) { return {OpKind::Swap, i, j, {}, {}}; }
  static ElementaryOp add(std::size_t i, std::size_t j, Elt r) { return {OpKind::AddRightMultiple, i, j, std::move(r), {}}; }
  static ElementaryOp scale(std::size_t i, Elt r, Elt r_inv) {
    return {OpKind::ScaleUnit, i, i, std::move(r), std::move(r_inv)};
  }

  ElementaryOp inverse() const {
    switch (kind) {
      case OpKind::Swap: return *this;
      case OpKind::AddRightMultiple: return add(i, j, -r);
      case OpKind::ScaleUnit: return scale(i, r_inv, r);
    }
    return *this;
  }

  /// 1-based indices.
  std::string to_string() const {
    const std::string a = std::to_string(i + 1), b = std::to_string(j + 1);
    switch (kind) {
      case OpKind::Swap: return "swap " + a + " " + b;
      case OpKind::AddRightMultiple: return "u" + a + " += u" + b + " * (" + r.to_string() + ")";
      case OpKind::ScaleUnit: return "u" + a + " *= (" + r.to_string() + ")";
    }
    return "?";
  }
};

template <RingAmbient A, Field F>
void apply_op(Relation<A, F>& rel, const ElementaryOp<A, F>& op) {
  if (op.i >= rel.size() || op.j >= rel.size()) throw IndexOutOfRange("operation index out of range");
  switch (op.kind) {
    case OpKind::Swap:
      std::swap(rel.u[op.i], rel.u[op.j]);
      std::swap(rel.v[op.i], rel.v[op.j]);
      if (rel.alpha) std::swap((*rel.alpha)[op.i], (*rel.alpha)[op.j]);
      break;
    case OpKind::AddRightMultiple:
      if (op.i == op.j) throw IndexOutOfRange("AddRightMultiple needs distinct indices");
      rel.u[op.i] += rel.u[op.j] * op.r;
      rel.v[op.j] -= op.r * rel.v[op.i];
      break;
    case OpKind::ScaleUnit:
      rel.u[op.i] = rel.u[op.i] * op.r;
      rel.v[op.i] = op.r_inv * rel.v[op.i];
      break;
  }
}

template <RingAmbient A, Field F>
struct Certificate {
  std::vector<ElementaryOp<A, F>> ops;
  Relation<A, F> final_relation;
};

/// Relation after each prefix of ops, starting with rel itself.
template <RingAmbient A, Field F>
std::vector<Relation<A, F>> replay(const Relation<A, F>& rel, const std::vector<ElementaryOp<A, F>>& ops) {
  std::vector<Relation<A, F>> out{rel};
  for (const auto& op : ops) {
    out.push_back(out.back());
    apply_op(out.back(), op);
  }
  return out;
}

/// Certificate running from cert's final relation back to rel.
template <RingAmbient A, Field F>
Certificate<A, F> inverse(const Relation<A, F>& rel, const Certificate<A, F>& cert) {
  Certificate<A, F> out{{}, rel};
  for (auto it = cert.ops.rbegin(); it != cert.ops.rend(); ++it) out.ops.push_back(it->inverse());
  return out;
}

struct VerifyReport {
  bool ok = false;
  std::string message;
  std::size_t step = 0;  // ops applied before the failure was seen
  explicit operator bool() const { return ok; }
};

/// Replays cert on rel checking the sum after every op, that the end is
/// trivial (unless require_trivial is off) and equals the snapshot, and that
/// the inverse ops lead back to rel.
template <RingAmbient A, Field F>
VerifyReport verify_certificate(const Relation<A, F>& rel, const Certificate<A, F>& cert,
                                bool require_trivial = true) {
  if (rel.size() == 0 || !rel.holds()) return {false, "input is not a relation", 0};
  Relation<A, F> cur = rel;
  for (std::size_t k = 0; k < cert.ops.size(); ++k) {
    const auto& op = cert.ops[k];
    if (op.kind == OpKind::ScaleUnit) {
      const auto one = RingElt<A, F>::one(rel.ambient());
      if (!(op.r * op.r_inv == one) || !(op.r_inv * op.r == one)) {
        return {false, "op " + std::to_string(k + 1) + " scales by a non-unit pair", k};
      }
    }
    try {
      apply_op(cur, op);
    } catch (const Error& e) {
      return {false, "op " + std::to_string(k + 1) + ": " + e.what(), k};
    }
    if (!cur.holds()) return {false, "op " + std::to_string(k + 1) + " changes the sum", k + 1};
  }
  const std::size_t n = cert.ops.size();
  if (require_trivial && !cur.trivial()) return {false, "final relation is not trivial", n};
  if (!(cur == cert.final_relation)) return {false, "final relation differs from the snapshot", n};
  Relation<A, F> back = cur;
  for (auto it = cert.ops.rbegin(); it != cert.ops.rend(); ++it) apply_op(back, it->inverse());
  if (!(back == rel)) return {false, "inverse replay does not restore the input", n};
  return {true, "certificate verified", n};
}

template <RingAmbient A, Field F>
Certificate<A, F> finish_certificate(const Relation<A, F>& rel, std::vector<ElementaryOp<A, F>> ops) {
  Certificate<A, F> cert{std::move(ops), rel};
  for (const auto& op : cert.ops) apply_op(cert.final_relation, op);
  if (const auto rep = verify_certificate(rel, cert); !rep) {
    throw std::logic_error("trivializer produced a bad certificate: " + rep.message);
  }
  return cert;
}

template <RingAmbient A, Field F>
struct TrivializeResult {
  std::optional<Certificate<A, F>> certificate;
  std::string diagnostic;                  // why it gave up
  std::optional<Relation<A, F>> stuck;     // the relation it gave up on
  std::vector<long> layers;                // successive l values of the layer loop
  bool ok() const { return certificate.has_value(); }
};

// ---------------------------------------------------------------------------
// Free algebras

inline const FreeAlgebra& free_xy() {
  static const FreeAlgebra a("xy");
  return a;
}

inline const FreeAlgebra& free_vwxyz() {
  static const FreeAlgebra a("vwxyz");
  return a;
}

namespace detail {

/// Solves a x = b by row reduction; free variables are set to zero.
template <Field F>
std::optional<std::vector<F>> solve_linear(std::vector<std::vector<F>> a, std::vector<F> b, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == F(0)) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const F inv = F(1) / a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] = a[r][k] * inv;
    b[r] = b[r] * inv;
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == r || a[q][c] == F(0)) continue;
      const F f = a[q][c];
      for (std::size_t k = c; k < cols; ++k) a[q][k] = a[q][k] - f * a[r][k];
      b[q] = b[q] - f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t q = r; q < rows; ++q) {
    if (!(b[q] == F(0))) return std::nullopt;
  }
  std::vector<F> x(cols, F(0));
  for (std::size_t q = 0; q < r; ++q) x[pivot_col[q]] = b[q];
  return x;
}

/// Homogeneous r_j (length degree of target minus that of gens[j]) with
/// target = sum_j gens[j] * r_j. Unknown monomials are limited to those
/// that can reach the support of target through cancellation chains.
template <Field F>
std::optional<std::vector<RingElt<FreeAlgebra, F>>> right_combination(const RingElt<FreeAlgebra, F>& target,
                                                                      const std::vector<RingElt<FreeAlgebra, F>>& gens) {
  const FreeAlgebra& amb = target.ambient();
  std::set<std::string> rows;
  for (const auto& [m, c] : target.terms()) rows.insert(m);
  std::vector<std::set<std::string>> unknowns(gens.size());
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<std::string> snapshot(rows.begin(), rows.end());
    for (std::size_t j = 0; j < gens.size(); ++j) {
      for (const auto& [m, c] : gens[j].terms()) {
        for (const std::string& t : snapshot) {
          if (t.size() < m.size() || t.compare(0, m.size(), m) != 0) continue;
          const std::string w = t.substr(m.size());
          if (!unknowns[j].insert(w).second) continue;
          grew = true;
          for (const auto& [m2, c2] : gens[j].terms()) rows.insert(m2 + w);
        }
      }
    }
  }
  std::map<std::string, std::size_t> row_of;
  for (const std::string& t : rows) row_of.emplace(t, row_of.size());
  std::vector<std::pair<std::size_t, std::string>> cols;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (const std::string& w : unknowns[j]) cols.emplace_back(j, w);
  }
  std::vector<std::vector<F>> a(rows.size(), std::vector<F>(cols.size(), F(0)));
  std::vector<F> b(rows.size(), F(0));
  for (const auto& [m, c] : target.terms()) b[row_of.at(m)] = c;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const auto& [j, w] = cols[k];
    for (const auto& [m, c] : gens[j].terms()) {
      auto& cell = a[row_of.at(m + w)][k];
      cell = cell + c;
    }
  }
  const auto x = solve_linear(std::move(a), std::move(b), cols.size());
  if (!x) return std::nullopt;
  std::vector<RingElt<FreeAlgebra, F>> out(gens.size(), RingElt<FreeAlgebra, F>(amb));
  for (std::size_t k = 0; k < cols.size(); ++k) out[cols[k].first].add_term(cols[k].second, (*x)[k]);
  return out;
}

/// Keeps the part of r in delta degree d.
template <RingAmbient A, Field F>
RingElt<A, F> delta_component(const RingElt<A, F>& r, BiDegree d) {
  RingElt<A, F> out(r.ambient());
  for (const auto& [m, c] : r.terms()) {
    if (r.ambient().delta(m) == d) out.add_term(m, c);
  }
  return out;
}

}  // namespace detail

/// Weak-algorithm trivialization in a free algebra, using the length
/// degree and degree-lexicographic monomial order.
template <Field F>
Certificate<FreeAlgebra, F> trivialize_free(const Relation<FreeAlgebra, F>& rel) {
  using Elt = RingElt<FreeAlgebra, F>;
  if (rel.size() == 0 || !rel.holds()) throw NotARelation("trivialize_free: input is not a relation");
  Relation<FreeAlgebra, F> cur = rel;
  std::vector<ElementaryOp<FreeAlgebra, F>> ops;
  while (!cur.trivial()) {
    const auto act = cur.active_indices();
    long top = -1;
    for (std::size_t i : act) top = std::max(top, cur.u[i].degree() + cur.v[i].degree());
    std::vector<std::size_t> lead;
    for (std::size_t i : act) {
      if (cur.u[i].degree() + cur.v[i].degree() == top) lead.push_back(i);
    }
    std::stable_sort(lead.begin(), lead.end(),
                     [&](std::size_t a, std::size_t b) { return cur.u[a].degree() > cur.u[b].degree(); });
    bool moved = false;
    for (std::size_t i : lead) {
      const long di = cur.u[i].degree();
      std::vector<std::size_t> js;
      std::vector<Elt> gens;
      for (std::size_t j : lead) {
        if (j == i || cur.u[j].degree() > di) continue;
        js.push_back(j);
        gens.push_back(cur.u[j].component(cur.u[j].degree()));
      }
      if (js.empty()) continue;
      const Elt target = cur.u[i].component(di);
      auto rs = detail::right_combination(target, gens);
      if (!rs) continue;
      if (const auto dt = target.delta_degree()) {
        std::vector<Elt> proj;
        Elt check(target.ambient());
        bool graded = true;
        for (std::size_t k = 0; k < js.size() && graded; ++k) {
          const auto dg = gens[k].delta_degree();
          graded = dg.has_value();
          if (graded) {
            proj.push_back(detail::delta_component((*rs)[k], *dt - *dg));
            check += gens[k] * proj.back();
          }
        }
        if (graded && check == target) rs = std::move(proj);
      }
      for (std::size_t k = 0; k < js.size(); ++k) {
        if ((*rs)[k].is_zero()) continue;
        ops.push_back(ElementaryOp<FreeAlgebra, F>::add(i, js[k], -(*rs)[k]));
        apply_op(cur, ops.back());
      }
      if (cur.u[i].degree() >= di) throw std::logic_error("trivialize_free: leading term did not cancel");
      moved = true;
      break;
    }
    if (!moved) throw std::logic_error("trivialize_free: no leading dependence in " + cur.to_string());
  }
  return finish_certificate(rel, std::move(ops));
}

// ---------------------------------------------------------------------------
// Polynomials and Laurent polynomials in z

inline const ZRing& z_polynomials() {
  static const ZRing r(false);
  return r;
}

inline const ZRing& z_laurent() {
  static const ZRing r(true);
  return r;
}

namespace detail {

template <Field F>
F leading_coeff(const RingElt<ZRing, F>& a) {
  return a.terms().rbegin()->second;
}

/// a = q b + r with deg r < deg b, dividing by leading terms.
template <Field F>
std::pair<RingElt<ZRing, F>, RingElt<ZRing, F>> divmod(RingElt<ZRing, F> a, const RingElt<ZRing, F>& b) {
  if (b.is_zero()) throw Error("division by zero polynomial");
  RingElt<ZRing, F> q(b.ambient());
  const long db = b.degree();
  const F lb = leading_coeff(b);
  while (!a.is_zero() && a.degree() >= db) {
    const auto t = RingElt<ZRing, F>::mono(b.ambient(), a.degree() - db, leading_coeff(a) / lb);
    q += t;
    a -= t * b;
  }
  return {q, a};
}

/// Steps (target, source, r) meaning x_target += x_source * r that drive
/// one of (a, b) to zero.
template <Field F>
std::vector<std::tuple<int, int, RingElt<ZRing, F>>> euclid_steps(RingElt<ZRing, F> a, RingElt<ZRing, F> b) {
  std::vector<std::tuple<int, int, RingElt<ZRing, F>>> out;
  while (!a.is_zero() && !b.is_zero()) {
    if (a.degree() >= b.degree()) {
      auto [q, r] = divmod(a, b);
      out.emplace_back(0, 1, -q);
      a = std::move(r);
    } else {
      auto [q, r] = divmod(b, a);
      out.emplace_back(1, 0, -q);
      b = std::move(r);
    }
  }
  return out;
}

}  // namespace detail

/// Euclidean trivialization over Q[z] or Q[z, 1/z]. Laurent entries are first
/// scaled by powers of z into polynomials with nonzero constant term.
template <Field F>
Certificate<ZRing, F> trivialize_principal(const Relation<ZRing, F>& rel) {
  using Elt = RingElt<ZRing, F>;
  using Op = ElementaryOp<ZRing, F>;
  if (rel.size() == 0 || !rel.holds()) throw NotARelation("trivialize_principal: input is not a relation");
  const ZRing& amb = rel.ambient();
  Relation<ZRing, F> cur = rel;
  std::vector<Op> ops;
  if (amb.laurent()) {
    for (std::size_t i : cur.active_indices()) {
      const long low = cur.u[i].low_degree();
      if (low == 0) continue;
      ops.push_back(Op::scale(i, Elt::mono(amb, -low), Elt::mono(amb, low)));
      apply_op(cur, ops.back());
    }
  }
  for (auto act = cur.active_indices(); !act.empty(); act = cur.active_indices()) {
    if (act.size() == 1) throw std::logic_error("trivialize_principal: zero divisor in a domain");
    const std::size_t p = act[0], q = act[1];
    for (auto& [t, s, r] : detail::euclid_steps(cur.u[p], cur.u[q])) {
      ops.push_back(Op::add(t == 0 ? p : q, s == 0 ? p : q, std::move(r)));
      apply_op(cur, ops.back());
    }
  }
  return finish_certificate(rel, std::move(ops));
}

// ---------------------------------------------------------------------------
// Limit-monoid rings

inline const LimitRing& limit_ring(std::string_view name) {
  static const LimitRing m0(limit_monoid("M0-limit"));
  static const LimitRing m1(limit_monoid("M1-limit"));
  static const LimitRing mphi(limit_monoid("Mphi"));
  if (name == "M0-limit") return m0;
  if (name == "M1-limit") return m1;
  if (name == "Mphi") return mphi;
  throw UnknownName("unknown limit ring '" + std::string(name) + "'");
}

/// sigma^k(m) as a word over x, y, if it is one.
inline std::optional<std::string> to_free_word(const LimitMonoid& m, const LimitElement& a, int k) {
  if (k < a.level) return std::nullopt;
  std::string out;
  for (int l : m.lift(a, k)) {
    if (l == 0) out += 'x';
    else if (l == 1) out += 'y';
    else return std::nullopt;
  }
  return out;
}

/// sigma^-k of a word over x, y.
inline LimitElement from_free_word(const LimitMonoid& m, const std::string& w, int k) {
  Word letters;
  for (char c : w) letters.push_back(c == 'x' ? 0 : 1);
  return m.canonicalize(k, std::move(letters));
}

template <Field F>
RingElt<LimitRing, F> from_free(const LimitRing& ring, const RingElt<FreeAlgebra, F>& r, int k) {
  RingElt<LimitRing, F> out(ring);
  for (const auto& [w, c] : r.terms()) out.add_term(from_free_word(ring.monoid(), w, k), c);
  return out;
}

template <Field F>
struct ShiftedRelation {
  int k = 0;
  Relation<FreeAlgebra, F> rel;
};

/// Smallest k <= cap with every monomial of sigma^k(rel) z-free at level 0,
/// and the image in the free algebra on x, y.
template <Field F>
std::optional<ShiftedRelation<F>> shift_to_free(const Relation<LimitRing, F>& rel, int cap = 6) {
  const LimitMonoid& m = rel.ambient().monoid();
  for (int k = 0; k <= cap; ++k) {
    auto conv = [&](const RingElt<LimitRing, F>& r) -> std::optional<RingElt<FreeAlgebra, F>> {
      RingElt<FreeAlgebra, F> out(free_xy());
      for (const auto& [a, c] : r.terms()) {
        const auto w = to_free_word(m, a, k);
        if (!w) return std::nullopt;
        out.add_term(*w, c);
      }
      return out;
    };
    ShiftedRelation<F> s{k, {}};
    bool ok = true;
    for (std::size_t i = 0; ok && i < rel.size(); ++i) {
      auto u = conv(rel.u[i]);
      auto v = conv(rel.v[i]);
      ok = u && v;
      if (ok) {
        s.rel.u.push_back(std::move(*u));
        s.rel.v.push_back(std::move(*v));
      }
    }
    if (ok) return s;
  }
  return std::nullopt;
}

template <Field F>
std::vector<ElementaryOp<LimitRing, F>> ops_from_free(const LimitRing& ring,
                                                      const std::vector<ElementaryOp<FreeAlgebra, F>>& ops, int k) {
  std::vector<ElementaryOp<LimitRing, F>> out;
  for (const auto& op : ops) {
    out.push_back({op.kind, op.i, op.j, from_free(ring, op.r, k), from_free(ring, op.r_inv, k)});
    if (op.kind == OpKind::Swap) out.back().r = out.back().r_inv = RingElt<LimitRing, F>();
  }
  return out;
}

struct TrivializeOptions {
  int shift_cap = 6;
  int max_iterations = 64;
  int max_depth = 12;
  std::size_t bound = 32;
};

namespace detail {

template <Field F>
Relation<LimitRing, F> restrict_relation(const Relation<LimitRing, F>& rel, const std::vector<std::size_t>& idx) {
  Relation<LimitRing, F> out;
  for (std::size_t i : idx) {
    out.u.push_back(rel.u[i]);
    out.v.push_back(rel.v[i]);
  }
  return out;
}

template <RingAmbient A, Field F>
ElementaryOp<A, F> remap(ElementaryOp<A, F> op, const std::vector<std::size_t>& idx) {
  op.i = idx[op.i];
  op.j = idx[op.j];
  return op;
}

/// Reduction steps on a delta-homogeneous relation.
template <Field F>
class DeltaSolver {
 public:
  using Elt = RingElt<LimitRing, F>;
  using Rel = Relation<LimitRing, F>;
  using Op = ElementaryOp<LimitRing, F>;

  DeltaSolver(const LimitRing& ring, TrivializeOptions opt) : ring_(ring), m_(ring.monoid()), opt_(opt) {}

  std::string diagnostic;
  std::optional<Rel> stuck;

  /// Ops on rel's indices that trivialize it; nullopt after recording why not.
  std::optional<std::vector<Op>> solve(const Rel& rel, int depth) {
    if (depth > opt_.max_depth) return give_up("recursion depth cap reached", rel);
    Rel cur = rel;
    std::vector<Op> ops;
    for (int iter = 0; iter < opt_.max_iterations; ++iter) {
      if (cur.trivial()) return ops;
      const auto act = cur.active_indices();
      const auto step = one_step(restrict_relation(cur, act), depth);
      if (!step) return std::nullopt;
      if (step->empty()) return give_up("no reduction applies", cur);
      for (const Op& op : *step) {
        ops.push_back(remap(op, act));
        apply_op(cur, ops.back());
      }
    }
    return give_up("iteration cap reached", cur);
  }

 private:
  std::nullopt_t give_up(const std::string& why, const Rel& rel) {
    if (!stuck) {
      diagnostic = why;
      stuck = rel;
    }
    return std::nullopt;
  }

  std::optional<std::vector<Op>> one_step(const Rel& rel, int depth) {
    if (auto s = shift_to_free(rel, opt_.shift_cap)) {
      return ops_from_free(ring_, trivialize_free(s->rel).ops, s->k);
    }
    for (std::size_t i = 0; i < rel.size(); ++i) {
      if (!rel.u[i].delta_degree() || !rel.v[i].delta_degree()) {
        throw NotHomogeneous("relation is not delta-homogeneous at index " + std::to_string(i + 1));
      }
    }
    std::vector<std::size_t> central;  // u_i in the z-ring
    for (std::size_t i = 0; i < rel.size(); ++i) {
      if (*rel.u[i].delta_degree() == BiDegree{}) central.push_back(i);
    }
    if (central.size() >= 2) return euclid_pair(rel, central[0], central[1]);
    const auto a = minimal_support(rel);
    if (m_.is_invertible(a)) {
      if (central.empty()) return give_up("unit in the support outside the z-ring", rel);
      return reduce_mod(rel, central[0]);
    }
    Rel derived = rel;
    bool any = false;
    for (std::size_t i = 0; i < rel.size(); ++i) {
      derived.u[i] = Elt(ring_);
      for (const auto& [mono, c] : rel.u[i].terms()) {
        const auto d = m_.divides(a, mono, Side::Left, opt_.bound);
        if (!d.member()) continue;
        derived.u[i].add_term(*d.witness, c);
        any = true;
      }
    }
    if (!any) return give_up("no monomial divisible by " + m_.show(a), rel);
    if (!derived.holds()) return give_up("derived relation fails after removing " + m_.show(a), rel);
    return solve(derived, depth + 1);
  }

  /// A support element of the u side that is no proper right multiple of
  /// another.
  LimitElement minimal_support(const Rel& rel) const {
    std::set<LimitElement> supp;
    for (const Elt& x : rel.u) {
      for (const auto& [mono, c] : x.terms()) supp.insert(mono);
    }
    for (const LimitElement& e : supp) {
      bool proper = false;
      for (const LimitElement& b : supp) {
        if (b == e) continue;
        const auto d = m_.divides(b, e, Side::Left, opt_.bound);
        if (d.member() && !m_.is_invertible(*d.witness)) {
          proper = true;
          break;
        }
      }
      if (!proper) return e;
    }
    return *supp.begin();
  }

  Elt z_power(long e) const {
    Word w(static_cast<std::size_t>(e < 0 ? -e : e), e < 0 ? 3 : 2);
    return Elt::mono(ring_, m_.canonicalize(0, std::move(w)));
  }

  Elt from_z(const RingElt<ZRing, F>& p) const {
    Elt out(ring_);
    for (const auto& [e, c] : p.terms()) out += z_power(e).scaled(c);
    return out;
  }

  RingElt<ZRing, F> to_z(const Elt& r) const {
    RingElt<ZRing, F> out(m_.has_inverse_z() ? z_laurent() : z_polynomials());
    for (const auto& [mono, c] : r.terms()) {
      const ZPower z = m_.leading_z_power(mono);
      if (!z.pure || mono.level != 0) throw std::logic_error("element outside the z-ring: " + m_.show(mono));
      out.add_term(z.power, c);
    }
    return out;
  }

  /// Scales u_i by a power of z so its lowest z-power is 0 (z a unit).
  std::vector<Op> normalize_low(Rel& rel, std::size_t i) const {
    const long low = to_z(rel.u[i]).low_degree();
    if (low == 0 || !m_.has_inverse_z()) return {};
    const Op op = Op::scale(i, z_power(-low), z_power(low));
    apply_op(rel, op);
    return {op};
  }

  std::optional<std::vector<Op>> euclid_pair(Rel rel, std::size_t p, std::size_t q) const {
    std::vector<Op> ops = normalize_low(rel, p);
    for (const Op& op : normalize_low(rel, q)) ops.push_back(op);
    for (auto& [t, s, r] : euclid_steps(to_z(rel.u[p]), to_z(rel.u[q]))) {
      ops.push_back(Op::add(t == 0 ? p : q, s == 0 ? p : q, from_z(r)));
    }
    return ops;
  }

  /// Reduces every other u_k modulo p(z) = u_i, coefficientwise over the
  /// elements with no leading z.
  std::optional<std::vector<Op>> reduce_mod(Rel rel, std::size_t i) {
    std::vector<Op> ops = normalize_low(rel, i);
    const RingElt<ZRing, F> p = to_z(rel.u[i]);
    if (p.low_degree() != 0) return give_up("z-ring entry " + p.to_string() + " has no constant term", rel);
    for (std::size_t k = 0; k < rel.size(); ++k) {
      if (k == i) continue;
      std::map<LimitElement, RingElt<ZRing, F>> parts;
      for (const auto& [mono, c] : rel.u[k].terms()) {
        const ZPower z = m_.leading_z_power(mono);
        const std::size_t strip = leading_z_letters(mono.word);
        const LimitElement b = m_.canonicalize(mono.level, Word(mono.word.begin() + static_cast<long>(strip), mono.word.end()));
        parts.try_emplace(b, p.ambient()).first->second.add_term(z.power, c);
      }
      Elt r(ring_);
      for (const auto& [b, q] : parts) {
        r -= from_z(quotient(q, p)) * Elt::mono(ring_, b);
      }
      if (r.is_zero()) continue;
      ops.push_back(Op::add(k, i, r));
      apply_op(rel, ops.back());
    }
    return ops;
  }

  static std::size_t leading_z_letters(const Word& w) {
    std::size_t n = 0;
    while (n < w.size() && w[n] >= 2) ++n;
    return n;
  }

  /// Q with q - Q p of degree below p; for Laurent q the remainder is taken
  /// in Q[z]/(p), where z is invertible because p(0) != 0.
  RingElt<ZRing, F> quotient(const RingElt<ZRing, F>& q, const RingElt<ZRing, F>& p) const {
    const long low = q.low_degree();
    if (low >= 0) return divmod(q, p).first;
    // z^-low q = Q' p + R'; need R with z^low R' = R mod p, i.e. R = R' * w^-low
    // where w = z^-1 mod p.
    const ZRing& amb = p.ambient();
    RingElt<ZRing, F> shifted(amb);
    for (const auto& [e, c] : q.terms()) shifted.add_term(e - low, c);
    RingElt<ZRing, F> rem = divmod(shifted, p).second;
    // z^-1 = -(p - p0)/(p0 z) mod p.
    const F p0 = p.coeff(0);
    RingElt<ZRing, F> w(amb);
    for (const auto& [e, c] : p.terms()) {
      if (e != 0) w.add_term(e - 1, -c / p0);
    }
    for (long t = 0; t < -low; ++t) rem = divmod(rem * w, p).second;
    // q - rem is divisible by p in the Laurent ring.
    RingElt<ZRing, F> diff = shifted;
    RingElt<ZRing, F> rem_shifted(amb);
    for (const auto& [e, c] : rem.terms()) rem_shifted.add_term(e - low, c);
    diff -= rem_shifted;
    auto [quo, zero] = divmod(diff, p);
    if (!zero.is_zero()) throw std::logic_error("Laurent reduction is inexact");
    RingElt<ZRing, F> out(amb);
    for (const auto& [e, c] : quo.terms()) out.add_term(e + low, c);
    return out;
  }

  const LimitRing& ring_;
  const LimitMonoid& m_;
  TrivializeOptions opt_;
};

}  // namespace detail

/// Trivializes a relation over a limit-monoid ring: by a shift into the
/// free algebra on x, y when one exists, otherwise by the reduction steps
/// for delta-homogeneous relations. Gives up with the stuck relation when
/// the caps are hit.
template <Field F>
TrivializeResult<LimitRing, F> trivialize_delta_homogeneous(const Relation<LimitRing, F>& rel,
                                                            TrivializeOptions opt = {}) {
  if (rel.size() == 0 || !rel.holds()) throw NotARelation("trivialize: input is not a relation");
  TrivializeResult<LimitRing, F> out;
  detail::DeltaSolver<F> solver(rel.ambient(), opt);
  auto ops = solver.solve(rel, 0);
  if (!ops) {
    out.diagnostic = solver.diagnostic;
    out.stuck = solver.stuck;
    return out;
  }
  out.certificate = finish_certificate(rel, std::move(*ops));
  return out;
}

// ---------------------------------------------------------------------------
// h o delta gradings

namespace detail {

/// Largest x in {d + n g} with eta(x) <= cap, for eta(g) > 0.
inline BiDegree largest_below(BiDegree d, BiDegree g, GoldenInt cap) {
  while (eta(d) > cap) d = d - g;
  while (eta(d + g) <= cap) d = d + g;
  return d;
}

template <RingAmbient A, Field F>
std::optional<std::int64_t> h_degree(const RingElt<A, F>& r, const LinearForm& h) {
  std::optional<std::int64_t> out;
  for (const auto& [m, c] : r.terms()) {
    const auto d = r.ambient().delta(m);
    if (!d) return std::nullopt;
    if (out && *out != h(*d)) return std::nullopt;
    out = h(*d);
  }
  return out;
}

}  // namespace detail

/// Lifts with eta(alpha_i) <= 0 and eta(beta) <= min eta(alpha_i): each
/// alpha_i is the largest such element of its coset mod ker h.
template <Field F>
std::pair<std::vector<BiDegree>, BiDegree> canonical_lifts(const Relation<LimitRing, F>& rel, const LinearForm& h) {
  const BiDegree g = h.kernel_generator();
  const LimitRing& ring = rel.ambient();
  std::vector<BiDegree> alpha(rel.size());
  std::optional<GoldenInt> floor;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (rel.u[i].is_zero()) continue;
    alpha[i] = detail::largest_below(*ring.delta(rel.u[i].terms().begin()->first), g, GoldenInt{});
    if (!floor || eta(alpha[i]) < *floor) floor = eta(alpha[i]);
  }
  BiDegree beta{};
  if (!floor) return {alpha, beta};
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (rel.u[i].is_zero() || rel.v[i].is_zero()) continue;
    beta = detail::largest_below(alpha[i] + *ring.delta(rel.v[i].terms().begin()->first), g, *floor);
    break;
  }
  return {alpha, beta};
}

/// Layer loop for h o delta-homogeneous relations: the top layer is
/// delta-homogeneous, is trivialized by the delta trivializer, and the same
/// ops lower the top layer index l of the whole relation.
template <Field F>
TrivializeResult<LimitRing, F> trivialize_h_homogeneous(const Relation<LimitRing, F>& rel, const LinearForm& h,
                                                        TrivializeOptions opt = {}) {
  using Rel = Relation<LimitRing, F>;
  using Op = ElementaryOp<LimitRing, F>;
  if (h.p == 0 && h.q == 0) throw Error("h must be nonzero");
  if (rel.size() == 0 || !rel.holds()) throw NotARelation("trivialize: input is not a relation");
  const LimitRing& ring = rel.ambient();
  std::optional<std::int64_t> total;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const auto du = detail::h_degree(rel.u[i], h), dv = detail::h_degree(rel.v[i], h);
    if ((!du && !rel.u[i].is_zero()) || (!dv && !rel.v[i].is_zero())) throw NotHomogeneous("entry " + std::to_string(i + 1) + " is not h-homogeneous");
    if (rel.u[i].is_zero() || rel.v[i].is_zero()) continue;
    if (total && *total != *du + *dv) throw NotHomogeneous("products have different h-degrees");
    total = *du + *dv;
  }

  const BiDegree g = h.kernel_generator();
  std::vector<BiDegree> alpha;
  BiDegree beta;
  if (rel.alpha && rel.beta) {
    alpha = *rel.alpha;
    beta = *rel.beta;
  } else {
    std::tie(alpha, beta) = canonical_lifts(rel, h);
  }
  auto layer = [&](BiDegree d, BiDegree base) {
    const BiDegree diff = d - base;
    const std::int64_t j = g.r != 0 ? diff.r / g.r : diff.s / g.s;
    if (g * j != diff) throw NotHomogeneous("degree " + d.to_string() + " is off the lifted coset");
    return static_cast<long>(j);
  };
  auto top_layer = [&](const RingElt<LimitRing, F>& r, BiDegree base) {
    long top = -1;
    for (const auto& [m, c] : r.terms()) top = std::max(top, layer(*ring.delta(m), base));
    return top;
  };
  auto layer_part = [&](const RingElt<LimitRing, F>& r, BiDegree base, long j) {
    RingElt<LimitRing, F> out(ring);
    for (const auto& [m, c] : r.terms()) {
      if (layer(*ring.delta(m), base) == j) out.add_term(m, c);
    }
    return out;
  };

  TrivializeResult<LimitRing, F> out;
  Rel cur = rel;
  std::vector<Op> ops;
  detail::DeltaSolver<F> solver(ring, opt);
  while (!cur.trivial()) {
    const auto act = cur.active_indices();
    std::vector<long> ju(cur.size()), kv(cur.size());
    long ell = -1;
    for (std::size_t i : act) {
      ju[i] = top_layer(cur.u[i], alpha[i]);
      kv[i] = top_layer(cur.v[i], beta - alpha[i]);
      ell = std::max(ell, ju[i] + kv[i]);
    }
    if (!out.layers.empty() && ell >= out.layers.back()) {
      throw std::logic_error("layer index did not decrease: " + std::to_string(ell));
    }
    out.layers.push_back(ell);
    std::vector<std::size_t> top;
    Rel piece;
    for (std::size_t i : act) {
      if (ju[i] + kv[i] != ell) continue;
      top.push_back(i);
      piece.u.push_back(layer_part(cur.u[i], alpha[i], ju[i]));
      piece.v.push_back(layer_part(cur.v[i], beta - alpha[i], kv[i]));
    }
    if (!piece.holds()) throw std::logic_error("top layer is not a relation");
    auto inner = solver.solve(piece, 0);
    if (!inner) {
      out.diagnostic = solver.diagnostic;
      out.stuck = solver.stuck;
      return out;
    }
    for (const Op& op : *inner) {
      const Op full = detail::remap(op, top);
      // Forced degree of r: the u-side top degrees differ by it.
      const BiDegree want = full.kind == OpKind::AddRightMultiple
                                ? (alpha[full.i] + g * ju[full.i]) - (alpha[full.j] + g * ju[full.j])
                                : BiDegree{};
      if (full.kind != OpKind::Swap) {
        for (const auto& [m, c] : full.r.terms()) {
          if (*ring.delta(m) != want) throw std::logic_error("op " + full.to_string() + " is not homogeneous");
        }
      }
      if (full.kind == OpKind::Swap) {
        std::swap(alpha[full.i], alpha[full.j]);
        std::swap(ju[full.i], ju[full.j]);
      }
      ops.push_back(full);
      apply_op(cur, full);
    }
  }
  out.certificate = finish_certificate(rel, std::move(ops));
  out.certificate->final_relation.alpha = alpha;
  out.certificate->final_relation.beta = beta;
  return out;
}

/// For relations a(b - c) - (d - e)f = 0: a nonzero h taking equal values on
/// the degrees of all monomial products u_i * v_i, when at most two occur.
template <RingAmbient A, Field F>
std::optional<LinearForm> find_homogenizing_h(const Relation<A, F>& rel) {
  std::set<BiDegree> ds;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    for (const auto& [m, c] : rel.u[i].terms()) {
      for (const auto& [n, d] : rel.v[i].terms()) {
        const auto dm = rel.ambient().delta(m), dn = rel.ambient().delta(n);
        if (!dm || !dn) return std::nullopt;
        ds.insert(*dm + *dn);
      }
    }
  }
  if (ds.size() > 2) return std::nullopt;
  if (ds.size() < 2) return LinearForm{1, 0};
  const BiDegree diff = *ds.rbegin() - *ds.begin();
  const std::int64_t k = std::gcd(diff.r, diff.s);
  LinearForm h{diff.s / k, -diff.r / k};
  if (h.p < 0 || (h.p == 0 && h.q < 0)) h = {-h.p, -h.q};
  return h;
}

// ---------------------------------------------------------------------------
// Constructions

/// From ab = c(ad): a(b - d) - (c - 1)(ad) = 0.
template <Field F = Rational>
Relation<LimitRing, F> build_cedo_relation(const LimitRing& ring, const LimitElement& a, const LimitElement& b,
                                           const LimitElement& c, const LimitElement& d) {
  using Elt = RingElt<LimitRing, F>;
  const LimitMonoid& m = ring.monoid();
  const LimitElement ad = m.mul(a, d);
  if (m.mul(a, b) != m.mul(c, ad)) {
    throw NotARelation(m.show(a) + m.show(b) + " != " + m.show(c) + m.show(a) + m.show(d));
  }
  return make_relation<LimitRing, F>({Elt::mono(ring, a), Elt::one(ring) - Elt::mono(ring, c)},
                                     {Elt::mono(ring, b) - Elt::mono(ring, d), Elt::mono(ring, ad)});
}

/// Continuant p(x_1, ..., x_n): p() = 1, p(x1) = x1, and
/// p(x1..xn) = p(x1..x_{n-1}) xn + p(x1..x_{n-2}).
template <Field F = Rational>
RingElt<FreeAlgebra, F> continuant(const FreeAlgebra& amb, const std::string& xs) {
  RingElt<FreeAlgebra, F> prev = RingElt<FreeAlgebra, F>::one(amb), cur = prev;
  for (std::size_t n = 0; n < xs.size(); ++n) {
    RingElt<FreeAlgebra, F> next = cur * RingElt<FreeAlgebra, F>::mono(amb, std::string(1, xs[n]));
    if (n > 0) next += prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// k-th identity p(x1..x_{k-1}) p(x_k..x1) = p(x1..x_k) p(x_{k-1}..x1) with
/// x1..x5 = x, y, z, w, v, as the relation with u = (p(x1..x_{k-1}),
/// -p(x1..x_k)) and v = (p(x_k..x1), p(x_{k-1}..x1)).
template <Field F = Rational>
Relation<FreeAlgebra, F> leapfrog(int k) {
  if (k < 1 || k > 5) throw IndexOutOfRange("leapfrog index must be in 1..5");
  const std::string letters = std::string("xyzwv").substr(0, static_cast<std::size_t>(k));
  const std::string head = letters.substr(0, letters.size() - 1);
  auto rev = [](std::string s) {
    std::reverse(s.begin(), s.end());
    return s;
  };
  const FreeAlgebra& amb = free_vwxyz();
  return make_relation<FreeAlgebra, F>({continuant<F>(amb, head), -continuant<F>(amb, letters)},
                                       {continuant<F>(amb, rev(letters)), continuant<F>(amb, rev(head))});
}

}  // namespace firlab
