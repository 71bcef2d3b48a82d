#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "firlab/trivialize.hpp"

namespace firlab {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// ---------------------------------------------------------------------------
// Round trips: random elementary ops applied to trivial relations

namespace detail {

inline Rational small_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  int c = 0;
  while (c == 0) c = d(rng);
  return c;
}

inline RingElt<FreeAlgebra> random_free_poly(std::mt19937_64& rng, const FreeAlgebra& amb, int max_deg, int terms) {
  RingElt<FreeAlgebra> out(amb);
  std::uniform_int_distribution<int> deg(0, max_deg), letter(0, static_cast<int>(amb.letters().size()) - 1);
  while (static_cast<int>(out.size()) < terms) {
    std::string w;
    for (int n = deg(rng); n > 0; --n) w += amb.letters()[static_cast<std::size_t>(letter(rng))];
    out.add_term(w, small_coeff(rng));
  }
  return out;
}

inline RingElt<ZRing> random_z_poly(std::mt19937_64& rng, const ZRing& amb, int low, int high, int terms) {
  RingElt<ZRing> out(amb);
  std::uniform_int_distribution<int> e(low, high);
  while (static_cast<int>(out.size()) < terms) out.add_term(e(rng), small_coeff(rng));
  return out;
}

/// Half the indices carry u, the rest carry v; at least one of each.
template <RingAmbient A>
Relation<A, Rational> random_trivial(std::mt19937_64& rng, std::size_t n,
                                     const std::function<RingElt<A>()>& entry, const A& amb) {
  Relation<A, Rational> rel;
  std::bernoulli_distribution side(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    const bool u_side = i == 0 || (i != 1 && side(rng));
    rel.u.push_back(u_side ? entry() : RingElt<A>(amb));
    rel.v.push_back(u_side ? RingElt<A>(amb) : entry());
  }
  return rel;
}

template <RingAmbient A>
long spread(const Relation<A, Rational>& rel) {
  long d = 0;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    for (const auto* x : {&rel.u[i], &rel.v[i]}) {
      if (!x->is_zero()) d = std::max(d, x->degree() - std::min(0L, x->low_degree()));
    }
  }
  return d;
}

/// Applies `count` ops drawn by `draw`, skipping those that push any entry
/// past max_degree; retries until the result is nontrivial.
template <RingAmbient A>
Relation<A, Rational> scramble(std::mt19937_64& rng, Relation<A, Rational> rel, int count, long max_degree,
                               const std::function<ElementaryOp<A, Rational>(std::size_t)>& draw) {
  const Relation<A, Rational> start = rel;
  for (int attempt = 0; attempt < 64; ++attempt) {
    rel = start;
    for (int k = 0, tries = 0; k < count && tries < 1000; ++tries) {
      Relation<A, Rational> next = rel;
      apply_op(next, draw(rel.size()));
      if (spread(next) > max_degree) continue;
      rel = std::move(next);
      ++k;
    }
    if (!rel.trivial()) return rel;
  }
  return rel;
}

inline std::pair<std::size_t, std::size_t> two_indices(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> d(0, n - 1);
  const std::size_t i = d(rng);
  std::size_t j = d(rng);
  while (j == i) j = d(rng);
  return {i, j};
}

}  // namespace detail

/// Free algebra on x, y: up to 4 terms, entries of degree at most 5.
inline Relation<FreeAlgebra> random_free_relation(std::mt19937_64& rng, int ops = 10) {
  const FreeAlgebra& amb = free_xy();
  std::uniform_int_distribution<std::size_t> size(2, 4);
  auto rel = detail::random_trivial<FreeAlgebra>(
      rng, size(rng), [&] { return detail::random_free_poly(rng, amb, 2, 2); }, amb);
  return detail::scramble<FreeAlgebra>(rng, std::move(rel), ops, 5, [&](std::size_t n) {
    const auto [i, j] = detail::two_indices(rng, n);
    std::uniform_int_distribution<int> kind(0, 9);
    const int k = kind(rng);
    using Op = ElementaryOp<FreeAlgebra>;
    if (k == 0) return Op::swap(i, j);
    if (k == 1) {
      const Rational c = detail::small_coeff(rng);
      return Op::scale(i, RingElt<FreeAlgebra>::constant(amb, c), RingElt<FreeAlgebra>::constant(amb, 1 / c));
    }
    return Op::add(i, j, detail::random_free_poly(rng, amb, 1, 1 + k % 2));
  });
}

/// Q[z] (laurent = false) or Q[z, 1/z]: up to 4 terms.
inline Relation<ZRing> random_z_relation(std::mt19937_64& rng, bool laurent, int ops = 10) {
  const ZRing& amb = laurent ? z_laurent() : z_polynomials();
  const int low = laurent ? -1 : 0;
  std::uniform_int_distribution<std::size_t> size(2, 4);
  auto rel = detail::random_trivial<ZRing>(
      rng, size(rng), [&] { return detail::random_z_poly(rng, amb, low, 2, 2); }, amb);
  return detail::scramble<ZRing>(rng, std::move(rel), ops, 6, [&](std::size_t n) {
    const auto [i, j] = detail::two_indices(rng, n);
    std::uniform_int_distribution<int> kind(0, 9), e(-2, 2);
    const int k = kind(rng);
    using Op = ElementaryOp<ZRing>;
    if (k == 0) return Op::swap(i, j);
    if (k == 1) {
      const Rational c = detail::small_coeff(rng);
      const long p = laurent ? e(rng) : 0;
      return Op::scale(i, RingElt<ZRing>::mono(amb, p, c), RingElt<ZRing>::mono(amb, -p, 1 / c));
    }
    return Op::add(i, j, detail::random_z_poly(rng, amb, low, 1, 1 + k % 2));
  });
}

// ---------------------------------------------------------------------------
// Relations from monoid equalities

/// a b - c d = 0 for every ab = cd with (a, b) != (c, d) and a < c.
inline std::vector<Relation<LimitRing>> product_relations(const LimitRing& ring, const std::vector<LimitElement>& xs) {
  using Elt = RingElt<LimitRing>;
  const LimitMonoid& m = ring.monoid();
  std::map<GroupWord, std::vector<std::pair<std::size_t, std::size_t>>> by_product;
  std::vector<GroupWord> img;
  for (const auto& x : xs) img.push_back(m.image(x));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) by_product[img[i] * img[j]].push_back({i, j});
  }
  std::vector<Relation<LimitRing>> out;
  for (const auto& [g, pairs] : by_product) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      for (std::size_t q = p + 1; q < pairs.size(); ++q) {
        const auto [a, b] = pairs[p];
        const auto [c, d] = pairs[q];
        if (a == c) continue;  // then b = d
        out.push_back(make_relation<LimitRing, Rational>({Elt::mono(ring, xs[a]), -Elt::mono(ring, xs[c])},
                                                         {Elt::mono(ring, xs[b]), Elt::mono(ring, xs[d])}));
      }
    }
  }
  return out;
}

/// a(b - c) - (d - e)f = 0 for every pair of equalities ab = df, ac = ef
/// with b != c (so d != e).
inline std::vector<Relation<LimitRing>> two_equality_relations(const LimitRing& ring,
                                                               const std::vector<LimitElement>& xs) {
  using Elt = RingElt<LimitRing>;
  const LimitMonoid& m = ring.monoid();
  std::vector<GroupWord> img;
  for (const auto& x : xs) img.push_back(m.image(x));
  std::map<GroupWord, std::vector<std::pair<std::size_t, std::size_t>>> by_product;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) by_product[img[i] * img[j]].push_back({i, j});
  }
  // (a, f) -> list of (b, d) with ab = df.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>> by_ends;
  for (const auto& [g, pairs] : by_product) {
    for (const auto& [a, b] : pairs) {
      for (const auto& [d, f] : pairs) by_ends[{a, f}].push_back({b, d});
    }
  }
  std::vector<Relation<LimitRing>> out;
  for (const auto& [af, bds] : by_ends) {
    const auto [a, f] = af;
    for (std::size_t p = 0; p < bds.size(); ++p) {
      for (std::size_t q = p + 1; q < bds.size(); ++q) {
        const auto [b, d] = bds[p];
        const auto [c, e] = bds[q];
        if (b == c) continue;
        out.push_back(make_relation<LimitRing, Rational>(
            {Elt::mono(ring, xs[a]), -(Elt::mono(ring, xs[d]) - Elt::mono(ring, xs[e]))},
            {Elt::mono(ring, xs[b]) - Elt::mono(ring, xs[c]), Elt::mono(ring, xs[f])}));
      }
    }
  }
  return out;
}

}  // namespace firlab
