#include <gtest/gtest.h>

#include <set>

#include "firlab/conditions.hpp"
#include "firlab/suite.hpp"

using namespace firlab;

namespace {

const LimitMonoid& M0L() { return limit_monoid("M0-limit"); }
const LimitMonoid& M1L() { return limit_monoid("M1-limit"); }

LimitElement e0(std::string_view s) { return M0L().parse(s); }

NumericMonoid two_three() { return NumericMonoid({2, 3}); }

}  // namespace

// --- refine_overlap

TEST(Overlap, FreeMonoidLeftDivisor) {
  FreeMonoid f("abcd");
  const auto r = refine_overlap(f, "ab", "a", "c", "bc", 8);
  ASSERT_EQ(r.kind, RefinementKind::LeftDivisor);
  EXPECT_EQ(*r.witness, "b");
}

TEST(Overlap, FreeMonoidRightMultiple) {
  FreeMonoid f("abcd");
  const auto r = refine_overlap(f, "a", "ab", "bc", "c", 8);
  ASSERT_EQ(r.kind, RefinementKind::RightMultiple);
  EXPECT_EQ(*r.witness, "b");
}

TEST(Overlap, M0RelationYxzEqualsXy) {
  LimitView m(M0L());
  const auto r = refine_overlap(m, e0("y"), e0("x"), e0("x z"), e0("y"), 16);
  ASSERT_EQ(r.kind, RefinementKind::LeftDivisor);
  EXPECT_EQ(*r.witness, e0("@1:y"));
  EXPECT_EQ(m.mul(e0("x"), *r.witness), e0("y"));
}

TEST(Overlap, TwoThreeHasNoRefinement) {
  const auto m = two_three();
  const auto r = refine_overlap(m, 2L, 3L, 3L, 2L, 8);
  EXPECT_EQ(r.kind, RefinementKind::NoRefinement);
}

TEST(Overlap, VywuHasNoRefinement) {
  PresentedMonoid m(builtin("VYWU"));
  const auto r = refine_overlap(m, m.parse("v"), m.parse("y"), m.parse("y"), m.parse("u"), 16);
  EXPECT_EQ(r.kind, RefinementKind::NoRefinement);
}

TEST(Overlap, RejectsNonRelation) {
  FreeMonoid f("ab");
  EXPECT_THROW(refine_overlap(f, "a", "b", "a", "b", 4), NotARelation);
}

// --- internal identity

TEST(InternalIdentity, YxwViolates) {
  PresentedMonoid m(builtin("YXW"));
  const auto v = check_internal_identity(m, m.parse("x"), m.parse("y"), m.parse("w"));
  EXPECT_EQ(v.outcome, Outcome::Fail);
  ASSERT_TRUE(v.violation);
  EXPECT_EQ(v.violation->first, m.parse("y"));
}

TEST(InternalIdentity, TrivialFactorsPass) {
  FreeMonoid f("ab");
  EXPECT_EQ(check_internal_identity(f, "ab", "", "").outcome, Outcome::Pass);
  EXPECT_THROW(check_internal_identity(f, "ab", "a", ""), NotARelation);
}

TEST(InternalIdentity, M0SampleHasNoViolation) {
  LimitView m(M0L());
  const auto xs = m.enumerate(2);
  std::size_t hits = 0;
  for (const auto& a : xs) {
    for (const auto& c : xs) {
      for (const auto& d : xs) {
        if (!(m.mul(c, m.mul(a, d)) == a)) continue;
        ++hits;
        EXPECT_EQ(check_internal_identity(m, a, c, d).outcome, Outcome::Pass) << m.show(a);
      }
    }
  }
  EXPECT_GE(hits, xs.size());
}

// --- conjugation

TEST(Conjugation, FreeMonoidShapes) {
  FreeMonoid f("uv");
  auto r = decompose_conjugation(f, "uvu", "vu", "uv", 8, 8);
  ASSERT_EQ(r.kind, ConjugationKind::Found);
  EXPECT_EQ(r.n, 1);
  EXPECT_EQ(*r.e, "u");
  EXPECT_EQ(*r.f, "v");

  r = decompose_conjugation(f, "u", "vu", "uv", 8, 8);
  ASSERT_EQ(r.kind, ConjugationKind::Found);
  EXPECT_EQ(r.n, 0);
  EXPECT_EQ(*r.e, "u");
  EXPECT_EQ(*r.f, "v");
}

TEST(Conjugation, M0Example) {
  LimitView m(M0L());
  const auto r = decompose_conjugation(m, e0("y"), e0("x z"), e0("x"), 8, 16);
  ASSERT_EQ(r.kind, ConjugationKind::Found);
  EXPECT_EQ(r.n, 1);
  EXPECT_EQ(*r.e, e0("@1:y"));
  EXPECT_EQ(*r.f, e0("@1:x"));
  EXPECT_EQ(m.mul(*r.e, *r.f), e0("x"));
  EXPECT_EQ(m.mul(*r.f, *r.e), e0("x z"));
}

TEST(Conjugation, TwoThreeFails) {
  const auto m = two_three();
  EXPECT_EQ(decompose_conjugation(m, 2L, 3L, 3L, 8, 8).kind, ConjugationKind::Failure);
}

TEST(Conjugation, Preconditions) {
  FreeMonoid f("uv");
  EXPECT_THROW(decompose_conjugation(f, "u", "v", "u", 4, 4), NotARelation);
  EXPECT_THROW(decompose_conjugation(f, "u", "", "", 4, 4), Error);
}

TEST(PowerDivisibility, TwoThreePassesBothSides) {
  const auto m = two_three();
  EXPECT_EQ(check_power_divisibility(m, 2L, 3L, 3L, Side::Left, 8, 8), Outcome::Pass);
  EXPECT_EQ(check_power_divisibility(m, 2L, 3L, 3L, Side::Right, 8, 8), Outcome::Pass);
}

// --- skew

TEST(Skew, LeftWhenCIsOne) {
  FreeMonoid f("uv");
  EXPECT_EQ(decompose_skew(f, "uv", "u", "", "u", 8, 8).kind, SkewKind::Left);
}

TEST(Skew, FreeMonoidWitness) {
  FreeMonoid f("uv");
  const auto r = decompose_skew(f, "uvu", "vuu", "uv", "u", 8, 8);
  ASSERT_EQ(r.kind, SkewKind::Witness);
  EXPECT_EQ(*r.b_prime, "v");
  EXPECT_EQ(r.n, 2);
}

TEST(Skew, RejectsNonRelation) {
  FreeMonoid f("uv");
  EXPECT_THROW(decompose_skew(f, "u", "u", "v", "u", 8, 8), NotARelation);
}

// --- rigid products

TEST(ProductsRigid, Cases) {
  FreeMonoid f("uv");
  EXPECT_EQ(check_products_rigid(f, {}, {""}), Outcome::Pass);
  EXPECT_EQ(check_products_rigid(f, {"u", "vu"}, {"", "", ""}), Outcome::Pass);
  EXPECT_THROW(check_products_rigid(f, {""}, {"", ""}), NotARelation);

  PresentedMonoid m(builtin("YXW"));
  EXPECT_EQ(check_products_rigid(m, {m.parse("x")}, {m.parse("y"), m.parse("w")}), Outcome::Fail);
}

// --- a*b = b*a*g

TEST(Abg, M0GivesZ) {
  LimitView m(M0L());
  const auto g = probe_abg(m, e0("x"), e0("y"), 16);
  ASSERT_TRUE(g);
  EXPECT_EQ(*g, e0("z"));
}

TEST(Abg, CommutativeAndFree) {
  GoldenPosMonoid g;
  for (const auto& a : g.enumerate(2)) {
    for (const auto& b : g.enumerate(2)) {
      const auto r = probe_abg(g, a, b, 8);
      ASSERT_TRUE(r);
      EXPECT_EQ(*r, GoldenInt{});
    }
  }
  FreeMonoid f("uv");
  EXPECT_EQ(probe_abg(f, "u", "u", 4), std::optional<std::string>(""));
  EXPECT_FALSE(probe_abg(f, "u", "v", 4));
}

// --- commuting elements

TEST(CyclicGenerator, Examples) {
  const auto n = two_three();
  auto r = common_cyclic_generator(n, {4L, 6L}, 8);
  ASSERT_TRUE(r.ok) << r.reason;
  EXPECT_EQ(*r.generator, 2);
  EXPECT_EQ(r.exponents, (std::vector<long>{2, 3}));

  FreeMonoid f("tu");
  auto s = common_cyclic_generator(f, {"tt", "ttt"}, 8);
  ASSERT_TRUE(s.ok);
  EXPECT_EQ(*s.generator, "t");
  EXPECT_EQ(s.exponents, (std::vector<long>{2, 3}));

  LimitView m(M0L());
  auto z = common_cyclic_generator(m, {e0("z"), e0("z z")}, 8);
  ASSERT_TRUE(z.ok);
  EXPECT_EQ(*z.generator, e0("z"));
  EXPECT_EQ(z.exponents, (std::vector<long>{1, 2}));
}

TEST(CyclicGenerator, Incompatible) {
  FreeMonoid f("tu");
  EXPECT_FALSE(common_cyclic_generator(f, {"t", "u"}, 8).ok);
  // commute, but 1 is missing from <2,3>
  EXPECT_FALSE(common_cyclic_generator(two_three(), {2L, 3L}, 8).ok);
}

TEST(CyclicGenerator, FreeMonoidCommutingPairs) {
  FreeMonoid f("tu");
  const auto xs = f.enumerate(6);
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      if (a + b != b + a) continue;
      const auto r = common_cyclic_generator(f, {a, b}, 16);
      ASSERT_TRUE(r.ok) << a << " " << b;
      for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(power(f, *r.generator, r.exponents[i]), i ? b : a);
      }
    }
  }
}

TEST(CommutationAudit, Samples) {
  LimitView m(M0L());
  std::vector<LimitElement> xs;
  for (int k = 1; k <= 4; ++k) {
    xs.push_back(power(m, e0("z"), k));
    xs.push_back(power(m, e0("x"), k));
  }
  const auto a = audit_commutation_equivalence(m, xs);
  EXPECT_TRUE(a.ok());
  EXPECT_GT(a.chains, 0u);

  FreeMonoid f("uv");
  const auto b = audit_commutation_equivalence(f, {"u", "uu", "v"});
  EXPECT_TRUE(b.ok());
  EXPECT_EQ(b.commuting_pairs, 1u);

  GoldenPosMonoid g;
  EXPECT_TRUE(audit_commutation_equivalence(g, g.enumerate(2)).ok());
}

TEST(CommutationAudit, M0EnumeratedSample) {
  LimitView m(M0L());
  EXPECT_TRUE(audit_commutation_equivalence(m, m.enumerate(3)).ok());
}

// --- left N-equivalence

TEST(LeftNEquivalence, ExtremeSubmonoids) {
  FreeMonoid f("uv");
  const auto xs = f.enumerate(3);
  std::function<bool(const std::string&)> all = [](const std::string&) { return true; };
  std::function<bool(const std::string&)> trivial = [](const std::string& s) { return s.empty(); };
  EXPECT_TRUE(is_left_division_closed_on(f, all, xs));
  EXPECT_TRUE(is_left_division_closed_on(f, trivial, xs));
  for (const auto& x : xs) {
    for (const auto& y : xs) {
      EXPECT_EQ(left_n_equivalent(f, all, x, y, {""}, 8).outcome, Outcome::Pass);
      const auto t = left_n_equivalent(f, trivial, x, y, xs, 8);
      EXPECT_EQ(t.outcome == Outcome::Pass, x == y);
    }
  }
}

TEST(LeftNEquivalence, M0ZPowers) {
  LimitView m(M0L());
  std::function<bool(const LimitElement&)> zpow = [](const LimitElement& a) {
    return a.level == 0 && std::all_of(a.word.begin(), a.word.end(), [](int l) { return l == 2; });
  };
  const auto sample = m.enumerate(3);
  EXPECT_TRUE(is_left_division_closed_on(m, zpow, sample));
  const auto r = left_n_equivalent(m, zpow, e0("x"), m.mul(e0("z"), e0("x")), sample, 8);
  ASSERT_EQ(r.outcome, Outcome::Pass);
  EXPECT_EQ(*r.coset, e0("x"));
  EXPECT_NE(left_n_equivalent(m, zpow, e0("x"), e0("y"), sample, 8).outcome, Outcome::Pass);
}

TEST(LeftNEquivalence, EquivalenceLawsOnSample) {
  FreeMonoid f("uv");
  std::function<bool(const std::string&)> upow = [](const std::string& s) {
    return s.find('v') == std::string::npos;
  };
  const auto xs = f.enumerate(3);
  ASSERT_TRUE(is_left_division_closed_on(f, upow, xs));
  auto eq = [&](const std::string& x, const std::string& y) {
    return left_n_equivalent(f, upow, x, y, xs, 8).outcome == Outcome::Pass;
  };
  for (const auto& x : xs) {
    EXPECT_TRUE(eq(x, x));
    for (const auto& y : xs) {
      EXPECT_EQ(eq(x, y), eq(y, x));
      for (const auto& z : xs) {
        if (eq(x, y) && eq(y, z)) EXPECT_TRUE(eq(x, z)) << x << " " << y << " " << z;
      }
    }
  }
}

// --- five relations

TEST(FiveRelations, Cases) {
  FreeMonoid f("vwxyz");
  auto r = five_relations_check(f, "x", "z", "wz", "wx", "yx", "xy", "xw", "zw");
  EXPECT_EQ(r.outcome, Outcome::Pass);
  EXPECT_EQ(five_relations_check(f, "", "", "", "", "", "", "", "").outcome, Outcome::Pass);
  r = five_relations_check(f, "x", "z", "wz", "wx", "yx", "xy", "xw", "wz");
  EXPECT_EQ(r.outcome, Outcome::Fail);
  EXPECT_EQ(r.failed, (std::vector<std::string>{"bc=hb", "bd=ha"}));
}

// --- sample-wide sweeps

namespace {

Outcome outcome_of(const SuiteReport& r, std::string_view key) {
  const auto* c = r.find(key);
  EXPECT_NE(c, nullptr) << key;
  return c ? c->outcome : Outcome::Unknown;
}

}  // namespace

TEST(Suite, GoldenPosPassesEverything) {
  GoldenPosMonoid g;
  const auto rep = run_condition_suite(g, g.enumerate(5), {32, 128});
  for (const auto& c : rep.conditions) {
    EXPECT_EQ(c.outcome, Outcome::Pass) << c.key << " " << c.witness.value_or("");
  }
  EXPECT_GT(rep.find("overlap")->cases, 0u);
  EXPECT_GT(rep.find("skew")->cases, 0u);
}

TEST(Suite, TwoThreeProfile) {
  const auto m = two_three();
  const auto rep = run_condition_suite(m, m.enumerate(12));
  EXPECT_EQ(outcome_of(rep, "cancellative"), Outcome::Pass);
  EXPECT_EQ(outcome_of(rep, "overlap"), Outcome::Fail);
  EXPECT_EQ(outcome_of(rep, "internal identity"), Outcome::Pass);
  EXPECT_EQ(outcome_of(rep, "conjugation"), Outcome::Fail);
  EXPECT_EQ(outcome_of(rep, "power divisibility left"), Outcome::Pass);
  EXPECT_EQ(outcome_of(rep, "power divisibility right"), Outcome::Pass);
}

TEST(Suite, VywuFailsOverlap) {
  PresentedMonoid m(builtin("VYWU"));
  const auto rep = run_condition_suite(m, m.enumerate(2));
  EXPECT_EQ(outcome_of(rep, "overlap"), Outcome::Fail);
  EXPECT_EQ(outcome_of(rep, "conjugation"), Outcome::Fail);
}

TEST(Suite, YxwFailsInternalIdentity) {
  PresentedMonoid m(builtin("YXW"));
  const auto rep = run_condition_suite(m, m.enumerate(2), {8, 8});
  EXPECT_EQ(outcome_of(rep, "internal identity"), Outcome::Fail);
}

TEST(Suite, M0SmallSample) {
  LimitView m(M0L());
  const auto rep = run_condition_suite(m, m.enumerate(2));
  for (const char* k : {"cancellative", "overlap", "internal identity", "conjugation", "skew"}) {
    EXPECT_EQ(outcome_of(rep, k), Outcome::Pass) << k;
  }
  const auto* abg = rep.find("abg");
  EXPECT_EQ(abg->outcome, Outcome::Fail);
}

TEST(Suite, M1SmallSample) {
  LimitView m(M1L());
  const auto rep = run_condition_suite(m, m.enumerate(2));
  for (const char* k : {"cancellative", "overlap", "internal identity", "conjugation", "skew"}) {
    EXPECT_EQ(outcome_of(rep, k), Outcome::Pass) << k;
  }
}

// Where cancellation, overlap, internal identity and conjugation pass, every skew
// relation gets a witness.
TEST(Suite, SkewConsistency) {
  auto consistent = [](const SuiteReport& r) {
    const bool premise = r.find("cancellative")->outcome == Outcome::Pass &&
                         r.find("overlap")->outcome == Outcome::Pass &&
                         r.find("internal identity")->outcome == Outcome::Pass &&
                         r.find("conjugation")->outcome == Outcome::Pass;
    return !premise || r.find("skew")->outcome == Outcome::Pass;
  };
  GoldenPosMonoid g;
  EXPECT_TRUE(consistent(run_condition_suite(g, g.enumerate(3))));
  FreeMonoid f("uv");
  EXPECT_TRUE(consistent(run_condition_suite(f, f.enumerate(4))));
  LimitView m(M0L());
  EXPECT_TRUE(consistent(run_condition_suite(m, m.enumerate(2))));
}
