#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "firlab/conditions.hpp"
#include "firlab/group_words.hpp"
#include "firlab/limit_monoid.hpp"
#include "firlab/monoids.hpp"
#include "firlab/presentation.hpp"
#include "firlab/samples.hpp"
#include "firlab/suite.hpp"
#include "firlab/trivialize.hpp"

namespace firlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace selftest {

/// Collects failures; the first one becomes the detail line.
struct Checker {
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool pass() const { return failures.empty(); }
  std::string detail() const {
    if (pass()) return summary;
    return failures.front() + (failures.size() > 1 ? " (+" + std::to_string(failures.size() - 1) + " more)" : "") +
           (summary.empty() ? "" : "; " + summary);
  }
};

inline void embedding_injective(Checker& c) {
  std::string counts;
  for (const auto& [name, len] : {std::pair<const char*, std::size_t>{"M0", 8}, {"M1", 6}}) {
    const Presentation& p = builtin(name);
    const auto words = enumerate_normal(p, len);
    std::set<GroupWord> images;
    for (const auto& w : words) images.insert(embed(p, w));
    c.expect(images.size() == words.size(), std::string(name) + ": " + std::to_string(words.size() - images.size()) +
                                                " normal words share an image");
    counts += std::string(counts.empty() ? "" : ", ") + name + " " + std::to_string(words.size()) + " words";
  }
  c.summary = counts;
}

inline void orbit_fibonacci(Checker& c) {
  const auto orbit = endo_orbit(sigma_half(), parse_word("x"), 20);
  std::size_t f0 = 1, f1 = 1;  // F_{n+1}, F_{n+2}
  for (std::size_t n = 0; n <= 20; ++n) {
    c.expect(orbit[n].size() == f0, "orbit word " + std::to_string(n) + " has length " +
                                         std::to_string(orbit[n].size()) + ", expected " + std::to_string(f0));
    f0 = std::exchange(f1, f0 + f1);
  }
  for (std::size_t n = 0; n + 2 <= 20; ++n) {
    c.expect(orbit[n + 2] == orbit[n + 1] * orbit[n], "orbit word " + std::to_string(n + 2) + " is not the product");
  }
  c.summary = "21 words, last of length " + std::to_string(orbit[20].size());
}

inline void eta_scaling(Checker& c) {
  const auto words = enumerate_reduced(8);
  const Endo s = sigma_half();
  for (const GroupWord& w : words) {
    if (eta(delta(s(w))) != GoldenInt::tau() * eta(delta(w))) {
      c.expect(false, "fails on " + to_string(w));
      break;
    }
  }
  c.summary = std::to_string(words.size()) + " reduced words";
}

inline void limit_suites(Checker& c) {
  for (const char* name : {"M0-limit", "M1-limit"}) {
    LimitView m(limit_monoid(name), 1);
    const auto rep = run_condition_suite(m, m.enumerate(3));
    const std::string n(name);
    for (const char* key : {"overlap", "internal identity", "conjugation"}) {
      const auto* r = rep.find(key);
      c.expect(r && r->outcome == Outcome::Pass && r->cases > 0,
               n + " " + key + ": " + (r ? to_string(r->outcome) : "missing") +
                   (r && r->witness ? " on " + *r->witness : "") +
                   (r && r->unknown_case ? " undecided on " + *r->unknown_case : ""));
    }
    const auto* abg = rep.find("abg");
    c.expect(abg && abg->outcome == Outcome::Fail, n + " abg: expected a failure");
    const LimitMonoid& lm = m.monoid();
    const auto g = probe_abg(m, lm.parse("x"), lm.parse("y"), 32);
    c.expect(g && *g == lm.parse("z"), n + ": x*y = y*x*g does not give g = z");
    c.summary += (c.summary.empty() ? "" : ", ") + n + " " + std::to_string(rep.sample_size) + " elements";
  }
}

inline void counterexamples(Checker& c) {
  const NumericMonoid n23({2, 3});
  c.expect(n23.mul(2, 3) == n23.mul(3, 2), "<2,3>: 2+3 != 3+2");
  c.expect(refine_overlap(n23, 2L, 3L, 3L, 2L, 16).kind == RefinementKind::NoRefinement,
           "<2,3>: overlap of 2+3 = 3+2 refined");
  c.expect(decompose_conjugation(n23, 2L, 3L, 3L, 8, 16).kind == ConjugationKind::Failure,
           "<2,3>: conjugation of 2+3 = 3+2 decomposed");

  PresentedMonoid vywu(builtin("VYWU"));
  const auto v = vywu.parse("v"), y = vywu.parse("y"), u = vywu.parse("u");
  c.expect(vywu.mul(v, y) == vywu.mul(y, u), "VYWU: vy != yu");
  c.expect(refine_overlap(vywu, v, y, y, u, 16).kind == RefinementKind::NoRefinement, "VYWU: vy = yu refined");

  PresentedMonoid yxw(builtin("YXW"));
  const auto x1 = yxw.parse("x"), y1 = yxw.parse("y"), w1 = yxw.parse("w");
  c.expect(yxw.mul(y1, yxw.mul(x1, w1)) == x1, "YXW: yxw != x");
  c.expect(check_internal_identity(yxw, x1, y1, w1).outcome == Outcome::Fail, "YXW: x = yxw not flagged");

  const LimitMonoid& phi = limit_monoid("Mphi");
  const LimitElement x = phi.parse("x"), yy = phi.parse("y");
  for (long k = 0; k <= 20; ++k) {
    const LimitElement xk = phi.power(x, k);
    const MembershipVerdict d = phi.divides(xk, yy, Side::Left, 32);
    c.expect(d.member() && d.witness && phi.mul(xk, *d.witness) == yy,
             "Mphi: x^" + std::to_string(k) + " does not left divide y");
  }
  c.summary = "4 refusals, 21 divisibilities";
}

inline void seven_trace(Checker& c) {
  const LimitRing& ring = limit_ring("M0-limit");
  const LimitMonoid& m = ring.monoid();
  const auto rel = build_cedo_relation(ring, m.parse("y"), m.parse("x z"), m.parse("x"), m.one());
  c.expect(rel.to_string() == "u = (y, -x + 1); v = (xz - 1, y)", "relation is " + rel.to_string());
  const auto shifted = shift_to_free(rel);
  c.expect(shifted && shifted->k == 1, "no shift by 1 to the free algebra");
  if (!shifted) return;
  const auto cert = trivialize_free(shifted->rel);
  std::vector<std::string> trace;
  for (const auto& r : replay(shifted->rel, cert.ops)) {
    trace.push_back("(" + r.u[0].to_string() + ", " + r.u[1].to_string() + ")");
  }
  const std::vector<std::string> want{"(yxy, -yx + 1)", "(y, -yx + 1)", "(y, 1)", "(0, 1)"};
  std::string got;
  for (const auto& t : trace) got += (got.empty() ? "" : " -> ") + t;
  c.expect(trace == want, "trace " + got);
  c.expect(static_cast<bool>(verify_certificate(shifted->rel, cert)), "free certificate rejected");
  const auto res = trivialize_delta_homogeneous(rel);
  c.expect(res.ok() && verify_certificate(rel, *res.certificate), "limit-ring certificate missing or rejected");
  c.summary = got;
}

template <RingAmbient A, class Solve>
void round_trips(Checker& c, const std::string& label, int count, const std::function<Relation<A>()>& draw,
                 Solve solve) {
  for (int k = 0; k < count; ++k) {
    const Relation<A> rel = draw();
    const auto cert = solve(rel);
    const VerifyReport rep = verify_certificate(rel, cert);
    c.expect(rep.ok, label + " #" + std::to_string(k) + ": " + rep.message + " on " + rel.to_string());
    const VerifyReport back = verify_certificate(cert.final_relation, inverse(rel, cert), false);
    c.expect(back.ok, label + " #" + std::to_string(k) + " inverse: " + back.message);
  }
}

inline void seeded_round_trips(Checker& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  round_trips<FreeAlgebra>(
      c, "free", 100, [&] { return random_free_relation(rng); },
      [](const auto& r) { return trivialize_free(r); });
  round_trips<ZRing>(
      c, "Q[z]", 50, [&] { return random_z_relation(rng, false); },
      [](const auto& r) { return trivialize_principal(r); });
  round_trips<ZRing>(
      c, "Q[z,1/z]", 50, [&] { return random_z_relation(rng, true); },
      [](const auto& r) { return trivialize_principal(r); });
  c.summary = "seed " + std::to_string(seed) + ", 200 relations";
}

inline void monoid_relations(Checker& c) {
  const LimitRing& ring = limit_ring("M0-limit");
  const auto xs = ring.monoid().enumerate(3, 1);
  std::size_t total = 0, max_layers = 0;
  for (const auto& [label, rels] : {std::pair{"ab = cd", product_relations(ring, xs)},
                                    std::pair{"ab = df, ac = ef", two_equality_relations(ring, xs)}}) {
    for (const auto& rel : rels) {
      ++total;
      const auto h = find_homogenizing_h(rel);
      if (!h) {
        c.expect(false, std::string(label) + ": no grading for " + rel.to_string());
        continue;
      }
      const auto res = trivialize_h_homogeneous(rel, *h);
      if (!res.ok()) {
        c.expect(false, std::string(label) + ": gave up on " + rel.to_string() + ": " + res.diagnostic);
        continue;
      }
      c.expect(static_cast<bool>(verify_certificate(rel, *res.certificate)),
               std::string(label) + ": certificate rejected for " + rel.to_string());
      for (std::size_t k = 1; k < res.layers.size(); ++k) {
        c.expect(res.layers[k] < res.layers[k - 1], std::string(label) + ": layer index did not drop");
      }
      max_layers = std::max(max_layers, res.layers.size());
    }
  }
  c.summary = std::to_string(total) + " relations from " + std::to_string(xs.size()) +
              " elements, at most " + std::to_string(max_layers) + " layers";
}

inline void leapfrog_and_five(Checker& c) {
  const FreeAlgebra& amb = free_vwxyz();
  const std::string letters = "xyzwv";
  for (int k = 1; k <= 5; ++k) {
    const std::string xs = letters.substr(0, static_cast<std::size_t>(k));
    const std::string head = xs.substr(0, xs.size() - 1);
    std::string rx(xs.rbegin(), xs.rend()), rh(head.rbegin(), head.rend());
    const auto lhs = continuant(amb, head) * continuant(amb, rx);
    const auto rhs = continuant(amb, xs) * continuant(amb, rh);
    c.expect(lhs == rhs, "identity " + std::to_string(k) + " does not expand: " + lhs.to_string() + " vs " +
                             rhs.to_string());
    const auto rel = leapfrog(k);
    c.expect(rel.holds(), "relation " + std::to_string(k) + " does not sum to 0");
    c.expect(static_cast<bool>(verify_certificate(rel, trivialize_free(rel))),
             "relation " + std::to_string(k) + " certificate rejected");
  }
  FreeMonoid f("vwxyz");
  const auto good = five_relations_check(f, "x", "z", "wz", "wx", "yx", "xy", "xw", "zw");
  c.expect(good.outcome == Outcome::Pass, "five relations fail on the given words");
  const auto bad = five_relations_check(f, "x", "z", "wz", "wx", "yx", "xy", "xw", "wz");
  c.expect(bad.outcome == Outcome::Fail && !bad.failed.empty() && bad.failed.front() == "bc=hb",
           "mutated h = wz not refused on bc=hb");
  c.summary = "5 identities; mutation refused on bc=hb";
}

template <ComputableMonoid M>
std::string cyclic_pairs(Checker& c, const M& m, const std::vector<typename M::Element>& xs, std::size_t bound) {
  std::size_t pairs = 0, ok = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (!m.eq(m.mul(xs[i], xs[j]), m.mul(xs[j], xs[i]))) continue;
      ++pairs;
      const auto r = common_cyclic_generator(m, {xs[i], xs[j]}, bound);
      if (r.ok) {
        ++ok;
      } else {
        c.expect(false, m.name() + ": (" + m.show(xs[i]) + ", " + m.show(xs[j]) + ") " + r.reason);
      }
    }
  }
  return m.name() + " " + std::to_string(ok) + "/" + std::to_string(pairs);
}

inline void commuting_generators(Checker& c) {
  std::vector<std::string> parts;
  const NumericMonoid n23({2, 3});
  parts.push_back(cyclic_pairs(c, n23, n23.enumerate(12), 16));
  const FreeMonoid f("tu");
  parts.push_back(cyclic_pairs(c, f, f.enumerate(4), 16));
  const GoldenPosMonoid g;
  parts.push_back(cyclic_pairs(c, g, g.enumerate(2), 16));
  LimitView m0(limit_monoid("M0-limit"), 1);
  std::vector<LimitElement> zs;
  for (long k = 0; k <= 6; ++k) zs.push_back(m0.monoid().power(m0.monoid().parse("z"), k));
  parts.push_back(cyclic_pairs(c, m0, zs, 16));
  const auto audit = audit_commutation_equivalence(m0, m0.enumerate(3));
  c.expect(audit.ok(), "M0-limit: commuting is not an equivalence on the sample");
  for (const auto& p : parts) c.summary += (c.summary.empty() ? "" : ", ") + p;
  c.summary += "; audit " + std::to_string(audit.chains) + " chains";
}

}  // namespace selftest

/// Runs every acceptance criterion in order.
inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kDefaultSeed) {
  using Body = std::function<void(selftest::Checker&)>;
  const std::vector<std::pair<std::string, Body>> criteria{
      {"normal words embed injectively", selftest::embedding_injective},
      {"sigma-half orbit of x is Fibonacci", selftest::orbit_fibonacci},
      {"sigma-half scales eta by tau", selftest::eta_scaling},
      {"condition suite on M0 and M1 limits", selftest::limit_suites},
      {"counterexamples refuse their conditions", selftest::counterexamples},
      {"worked trivialization trace", selftest::seven_trace},
      {"seeded certificate round trips", [seed](selftest::Checker& c) { selftest::seeded_round_trips(c, seed); }},
      {"monoid-equality relations trivialize", selftest::monoid_relations},
      {"leapfrog identities and five relations", selftest::leapfrog_and_five},
      {"commuting pairs share a cyclic generator", selftest::commuting_generators},
  };
  std::vector<CriterionResult> out;
  int id = 0;
  for (const auto& [name, body] : criteria) {
    selftest::Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("threw: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back({++id, name, c.pass(), c.detail(), dt});
  }
  return out;
}

}  // namespace firlab
