#include <gtest/gtest.h>

#include <random>

#include "firlab/samples.hpp"
#include "firlab/trivialize.hpp"

using namespace firlab;

namespace {

using FreeElt = RingElt<FreeAlgebra>;
using ZElt = RingElt<ZRing>;
using LimElt = RingElt<LimitRing>;
using FreeRel = Relation<FreeAlgebra>;
using LimRel = Relation<LimitRing>;

FreeElt f(std::string_view s) { return parse_free(free_xy(), s); }
ZElt zp(std::string_view s) { return parse_z(z_polynomials(), s); }
ZElt zl(std::string_view s) { return parse_z(z_laurent(), s); }

const LimitRing& m0() { return limit_ring("M0-limit"); }
const LimitRing& m1() { return limit_ring("M1-limit"); }

LimElt lm(const LimitRing& r, std::string_view text) {
  return text == "1" ? LimElt::one(r) : LimElt::mono(r, r.monoid().parse(text));
}
LimElt lm(std::string_view text) { return lm(m0(), text); }

FreeRel seven_free() { return make_relation<FreeAlgebra, Rational>({f("yxy"), f("-yx + 1")}, {f("xy - 1"), f("yxy")}); }

LimRel seven() {
  const LimitMonoid& m = m0().monoid();
  return build_cedo_relation(m0(), m.parse("y"), m.parse("x z"), m.parse("x"), m.one());
}

std::vector<std::string> u_trace(const FreeRel& rel, const Certificate<FreeAlgebra, Rational>& cert) {
  std::vector<std::string> out;
  for (const auto& r : replay(rel, cert.ops)) out.push_back("(" + r.u[0].to_string() + ", " + r.u[1].to_string() + ")");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Relations and certificates

TEST(Relation, ConstructionChecksTheSum) {
  EXPECT_NO_THROW(seven_free());
  auto build = [](std::vector<FreeElt> u, std::vector<FreeElt> v) { return make_relation(std::move(u), std::move(v)); };
  EXPECT_THROW(build({f("x")}, {f("y")}), NotARelation);
  EXPECT_THROW(build({f("x")}, {}), NotARelation);
}

TEST(Relation, OpsPreserveTheSum) {
  FreeRel rel = seven_free();
  using Op = ElementaryOp<FreeAlgebra>;
  for (const Op& op : {Op::swap(0, 1), Op::add(0, 1, f("2xy - 1")), Op::scale(1, f("3"), f("1/3"))}) {
    apply_op(rel, op);
    EXPECT_TRUE(rel.holds()) << op.to_string();
  }
  EXPECT_THROW(apply_op(rel, Op::add(0, 0, f("x"))), IndexOutOfRange);
  EXPECT_THROW(apply_op(rel, Op::swap(0, 2)), IndexOutOfRange);
}

TEST(Certificate, EmptyCertificateOnNontrivialRelationFails) {
  const FreeRel rel = seven_free();
  const Certificate<FreeAlgebra, Rational> empty{{}, rel};
  const VerifyReport rep = verify_certificate(rel, empty);
  EXPECT_FALSE(rep);
  EXPECT_EQ(rep.message, "final relation is not trivial");
}

TEST(Certificate, PerturbedMultiplierIsCaught) {
  const FreeRel rel = seven_free();
  auto cert = trivialize_free(rel);
  ASSERT_TRUE(verify_certificate(rel, cert));
  for (std::size_t k = 0; k < cert.ops.size(); ++k) {
    auto bad = cert;
    bad.ops[k].r += f("1");
    EXPECT_FALSE(verify_certificate(rel, bad)) << k;
  }
}

TEST(Certificate, PerturbedInverseIsCaughtAtTheSumCheck) {
  FreeRel rel = seven_free();
  using Op = ElementaryOp<FreeAlgebra>;
  auto cert = trivialize_free(rel);
  cert.ops.insert(cert.ops.begin(), Op::scale(0, f("2"), f("1/3")));
  const VerifyReport rep = verify_certificate(rel, cert);
  EXPECT_FALSE(rep);
  EXPECT_EQ(rep.step, 0u);

  // A non-unit pair that still preserves the sum is rejected as well.
  const FreeRel triv = make_relation<FreeAlgebra, Rational>({f("x"), FreeElt(free_xy())}, {FreeElt(free_xy()), f("y")});
  Certificate<FreeAlgebra, Rational> c2{{Op::scale(1, f("x"), f("y"))}, triv};
  apply_op(c2.final_relation, c2.ops[0]);
  EXPECT_FALSE(verify_certificate(triv, c2));
}

TEST(Certificate, SnapshotMismatchFails) {
  const FreeRel rel = seven_free();
  auto cert = trivialize_free(rel);
  cert.final_relation.v[0] = f("1");
  EXPECT_FALSE(verify_certificate(rel, cert));
}

TEST(Certificate, InverseLeadsBack) {
  const FreeRel rel = seven_free();
  const auto cert = trivialize_free(rel);
  const auto back = inverse(rel, cert);
  EXPECT_TRUE(verify_certificate(cert.final_relation, back, false));
  EXPECT_EQ(replay(cert.final_relation, back.ops).back(), rel);
}

// ---------------------------------------------------------------------------
// Free algebras

TEST(TrivializeFree, SevenTrace) {
  const FreeRel rel = seven_free();
  const auto cert = trivialize_free(rel);
  ASSERT_EQ(cert.ops.size(), 3u);
  EXPECT_EQ(cert.ops[0].to_string(), "u1 += u2 * (y)");
  EXPECT_EQ(cert.ops[1].to_string(), "u2 += u1 * (x)");
  EXPECT_EQ(cert.ops[2].to_string(), "u1 += u2 * (-y)");
  EXPECT_EQ(u_trace(rel, cert),
            (std::vector<std::string>{"(yxy, -yx + 1)", "(y, -yx + 1)", "(y, 1)", "(0, 1)"}));
  EXPECT_EQ(cert.final_relation.v[1], FreeElt(free_xy()));
  EXPECT_EQ(cert.final_relation.v[0], f("-1"));
}

TEST(TrivializeFree, TrivialRelationGivesEmptyCertificate) {
  const FreeRel rel = make_relation<FreeAlgebra, Rational>({f("xy"), FreeElt(free_xy())}, {FreeElt(free_xy()), f("y")});
  EXPECT_TRUE(trivialize_free(rel).ops.empty());
}

TEST(TrivializeFree, RejectsNonRelations) {
  FreeRel bad{{f("x")}, {f("y")}, std::nullopt, std::nullopt};
  EXPECT_THROW(trivialize_free(bad), NotARelation);
}

TEST(TrivializeFree, ThreeTerms) {
  // x*y + y*(-x) + (xy - yx)*(-1) = 0
  const FreeRel rel = make_relation<FreeAlgebra, Rational>({f("x"), f("y"), f("xy - yx")}, {f("y"), f("-x"), f("-1")});
  EXPECT_TRUE(verify_certificate(rel, trivialize_free(rel)));
}

TEST(TrivializeFree, FiniteFieldCoefficients) {
  using E = RingElt<FreeAlgebra, Fp<7>>;
  const auto p = [](std::string_view s) { return parse_free<Fp<7>>(free_xy(), s); };
  const auto rel = make_relation<FreeAlgebra, Fp<7>>(std::vector<E>{p("yxy"), p("6yx + 1")}, std::vector<E>{p("xy - 1"), p("yxy")});
  EXPECT_TRUE(verify_certificate(rel, trivialize_free(rel)));
}

TEST(TrivializeFree, SeededRoundTrips) {
  std::mt19937_64 rng(kDefaultSeed);
  for (int n = 0; n < 100; ++n) {
    const FreeRel rel = random_free_relation(rng);
    ASSERT_TRUE(rel.holds());
    const auto cert = trivialize_free(rel);
    const auto rep = verify_certificate(rel, cert);
    EXPECT_TRUE(rep) << n << ": " << rel.to_string() << ": " << rep.message;
    EXPECT_TRUE(verify_certificate(cert.final_relation, inverse(rel, cert), false)) << n;
  }
}

TEST(TrivializeFree, ActiveDegreesDropEachStep) {
  std::mt19937_64 rng(kDefaultSeed + 1);
  for (int n = 0; n < 20; ++n) {
    const FreeRel rel = random_free_relation(rng);
    const auto states = replay(rel, trivialize_free(rel).ops);
    auto weight = [](const FreeRel& r) {
      long w = 0;
      for (std::size_t i : r.active_indices()) w += r.u[i].degree() + r.v[i].degree();
      return w;
    };
    // Ops sharing a target form one step; the total never increases.
    for (std::size_t k = 1; k < states.size(); ++k) EXPECT_LE(weight(states[k]), weight(states[0]));
  }
}

// ---------------------------------------------------------------------------
// Polynomials in z

TEST(TrivializePrincipal, OneEuclideanStep) {
  const auto rel = make_relation<ZRing, Rational>({zp("z^2"), zp("z")}, {zp("1"), zp("-z")});
  const auto cert = trivialize_principal(rel);
  ASSERT_EQ(cert.ops.size(), 1u);
  EXPECT_EQ(cert.ops[0].kind, OpKind::AddRightMultiple);
  EXPECT_EQ(cert.ops[0].r, zp("-z"));
  EXPECT_TRUE(cert.final_relation.u[0].is_zero());
}

TEST(TrivializePrincipal, LaurentScalesFirst) {
  const auto rel = make_relation<ZRing, Rational>({zl("z^-1"), zl("1")}, {zl("1"), zl("-z^-1")});
  const auto cert = trivialize_principal(rel);
  ASSERT_EQ(cert.ops.size(), 2u);
  EXPECT_EQ(cert.ops[0].kind, OpKind::ScaleUnit);
  EXPECT_EQ(cert.ops[0].i, 0u);
  EXPECT_EQ(cert.ops[0].r, zl("z"));
  EXPECT_EQ(cert.ops[1].kind, OpKind::AddRightMultiple);
  EXPECT_TRUE(verify_certificate(rel, cert));
}

TEST(TrivializePrincipal, DegenerateAlreadyTrivial) {
  const auto rel = make_relation<ZRing, Rational>({zp("z^2 + 1"), ZElt(z_polynomials())}, {ZElt(z_polynomials()), zp("z")});
  EXPECT_TRUE(trivialize_principal(rel).ops.empty());
}

TEST(TrivializePrincipal, SeededRoundTrips) {
  std::mt19937_64 rng(kDefaultSeed);
  for (bool laurent : {false, true}) {
    for (int n = 0; n < 50; ++n) {
      const auto rel = random_z_relation(rng, laurent);
      const auto rep = verify_certificate(rel, trivialize_principal(rel));
      EXPECT_TRUE(rep) << laurent << " " << n << ": " << rel.to_string() << ": " << rep.message;
    }
  }
}

// ---------------------------------------------------------------------------
// Limit-monoid rings

TEST(Cedo, SevenRelation) {
  EXPECT_EQ(seven().to_string(), "u = (y, -x + 1); v = (xz - 1, y)");
}

TEST(Cedo, EqualFactorsGiveTrivialRelation) {
  const LimitMonoid& m = m0().monoid();
  const LimRel rel = build_cedo_relation(m0(), m.parse("x"), m.parse("y"), m.one(), m.parse("y"));
  EXPECT_TRUE(rel.trivial());
}

TEST(Cedo, RejectsNonEquality) {
  const LimitMonoid& m = m0().monoid();
  EXPECT_THROW(build_cedo_relation(m0(), m.parse("x"), m.parse("y"), m.parse("y"), m.one()), NotARelation);
}

TEST(ShiftToFree, SevenBecomesFree) {
  const auto s = shift_to_free(seven());
  ASSERT_TRUE(s);
  EXPECT_EQ(s->k, 1);
  EXPECT_EQ(s->rel, seven_free());
}

TEST(ShiftToFree, LeadingZNeverShiftsAway) {
  const LimRel rel = make_relation<LimitRing, Rational>({lm("z x"), -lm("z")}, {lm("y"), lm("x y")});
  EXPECT_FALSE(shift_to_free(rel));
}

TEST(TrivializeDelta, SevenThroughTheShift) {
  const auto res = trivialize_delta_homogeneous(seven());
  ASSERT_TRUE(res.ok());
  const auto& ops = res.certificate->ops;
  ASSERT_EQ(ops.size(), 3u);
  EXPECT_EQ(ops[0].r, lm("@1:y"));
  EXPECT_EQ(ops[1].r, lm("@1:x"));
  EXPECT_EQ(ops[2].r, -lm("@1:y"));
}

TEST(TrivializeDelta, TrivialRelation) {
  const LimRel rel = make_relation<LimitRing, Rational>({lm("x"), LimElt(m0())}, {LimElt(m0()), lm("y")});
  const auto res = trivialize_delta_homogeneous(rel);
  ASSERT_TRUE(res.ok());
  EXPECT_TRUE(res.certificate->ops.empty());
}

TEST(TrivializeDelta, LeadingZThroughTheReductionSteps) {
  const LimRel rel = make_relation<LimitRing, Rational>({lm("z x"), -lm("z")}, {lm("y"), lm("x y")});
  const auto res = trivialize_delta_homogeneous(rel);
  ASSERT_TRUE(res.ok()) << res.diagnostic;
  EXPECT_TRUE(verify_certificate(rel, *res.certificate));
}

TEST(TrivializeDelta, ZRingEntriesInM1) {
  const LimRel rel = make_relation<LimitRing, Rational>({lm(m1(), "z-"), -lm(m1(), "z") - lm(m1(), "1")},
                                                        {lm(m1(), "z x") + lm(m1(), "z z x"), lm(m1(), "x")});
  const auto res = trivialize_delta_homogeneous(rel);
  ASSERT_TRUE(res.ok()) << res.diagnostic;
}

TEST(TrivializeDelta, NonHomogeneousWithoutShiftThrows) {
  const LimRel rel = make_relation<LimitRing, Rational>({lm("z"), -lm("z")}, {lm("x") + lm("y"), lm("x") + lm("y")});
  EXPECT_THROW(trivialize_delta_homogeneous(rel), NotHomogeneous);
}

TEST(TrivializeDelta, CapsGiveUpWithTheStuckRelation) {
  const LimRel rel = make_relation<LimitRing, Rational>({lm("z x"), -lm("z")}, {lm("y"), lm("x y")});
  TrivializeOptions opt;
  opt.max_depth = 0;
  opt.shift_cap = 0;
  const auto res = trivialize_delta_homogeneous(rel, opt);
  EXPECT_FALSE(res.ok());
  EXPECT_EQ(res.diagnostic, "recursion depth cap reached");
  ASSERT_TRUE(res.stuck);
}

TEST(TrivializeDelta, ProductRelationsOfShortWords) {
  for (const char* name : {"M0-limit", "M1-limit"}) {
    const LimitRing& ring = limit_ring(name);
    const auto rels = product_relations(ring, ring.monoid().enumerate(2, 1));
    EXPECT_FALSE(rels.empty());
    for (const auto& rel : rels) {
      const auto res = trivialize_delta_homogeneous(rel);
      EXPECT_TRUE(res.ok()) << name << " " << rel.to_string() << ": " << res.diagnostic;
    }
  }
}

// ---------------------------------------------------------------------------
// h o delta gradings

TEST(FindH, SevenKillsTheFirstCoordinate) {
  EXPECT_EQ(find_homogenizing_h(seven()), (LinearForm{0, 1}));
}

TEST(FindH, EqualProductsDefaultToR) {
  const LimRel rel = make_relation<LimitRing, Rational>({lm("y"), -lm("x")}, {lm("x z"), lm("y")});
  EXPECT_EQ(find_homogenizing_h(rel), (LinearForm{1, 0}));
}

TEST(FindH, ThreeDegreesHaveNone) {
  const LimRel rel = make_relation<LimitRing, Rational>({lm("1"), -lm("1")}, {lm("x") + lm("y") + lm("x x"), lm("x") + lm("y") + lm("x x")});
  EXPECT_FALSE(find_homogenizing_h(rel));
}

TEST(CanonicalLifts, Seven) {
  const auto [alpha, beta] = canonical_lifts(seven(), LinearForm{0, 1});
  EXPECT_EQ(alpha, (std::vector<BiDegree>{{-2, 1}, {0, 0}}));
  EXPECT_EQ(beta, (BiDegree{-2, 1}));
}

TEST(TrivializeH, SevenLayers) {
  const LimRel rel = seven();
  const auto res = trivialize_h_homogeneous(rel, LinearForm{0, 1});
  ASSERT_TRUE(res.ok()) << res.diagnostic;
  EXPECT_EQ(res.layers, (std::vector<long>{3, 2, 1}));
  const auto& ops = res.certificate->ops;
  ASSERT_EQ(ops.size(), 3u);
  EXPECT_EQ(ops[0].to_string(), "u1 += u2 * (@1:y)");
  const auto states = replay(rel, ops);
  EXPECT_EQ(states[1].u[0], lm("@1:y"));
  EXPECT_TRUE(states.back().u[0].is_zero());
}

TEST(TrivializeH, SingleLayerIsOneInnerCall) {
  const LimRel rel = make_relation<LimitRing, Rational>({lm("y"), -lm("x")}, {lm("x z"), lm("y")});
  const auto res = trivialize_h_homogeneous(rel, LinearForm{1, 0});
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(res.layers.size(), 1u);
}

TEST(TrivializeH, RejectsInhomogeneous) {
  EXPECT_THROW(trivialize_h_homogeneous(seven(), LinearForm{1, 0}), NotHomogeneous);
  EXPECT_THROW(trivialize_h_homogeneous(seven(), LinearForm{0, 0}), Error);
}

TEST(TrivializeH, OpsHaveForcedDegrees) {
  const LimRel rel = seven();
  const LinearForm h{0, 1};
  const auto res = trivialize_h_homogeneous(rel, h);
  ASSERT_TRUE(res.ok());
  const auto [alpha, beta] = canonical_lifts(rel, h);
  for (const auto& op : res.certificate->ops) {
    for (const auto& [m, c] : op.r.terms()) EXPECT_EQ(h(*m0().delta(m)), h(alpha[op.i] - alpha[op.j]));
  }
}

TEST(TrivializeH, TwoEqualityRelationsOfShortWords) {
  const LimitRing& ring = m0();
  const auto rels = two_equality_relations(ring, ring.monoid().enumerate(2, 1));
  EXPECT_FALSE(rels.empty());
  for (const auto& rel : rels) {
    const auto h = find_homogenizing_h(rel);
    ASSERT_TRUE(h) << rel.to_string();
    const auto res = trivialize_h_homogeneous(rel, *h);
    ASSERT_TRUE(res.ok()) << rel.to_string() << ": " << res.diagnostic;
    for (std::size_t k = 1; k < res.layers.size(); ++k) EXPECT_LT(res.layers[k], res.layers[k - 1]);
    EXPECT_LE(static_cast<long>(res.layers.size()), res.layers.front() + 1);
  }
}

// ---------------------------------------------------------------------------
// Leapfrog identities

TEST(Leapfrog, FirstTwo) {
  const auto p = [](std::string_view s) { return parse_free(free_vwxyz(), s); };
  const auto one = leapfrog(1);
  EXPECT_EQ(one.u[0], p("1"));
  EXPECT_EQ(one.v[0], p("x"));
  const auto two = leapfrog(2);
  EXPECT_EQ(two.u[0] * two.v[0], p("xyx + x"));
  EXPECT_EQ(two.u[1], p("-xy - 1"));
}

TEST(Leapfrog, ThirdAndFourthMatchTheDisplayedFactors) {
  const auto p = [](std::string_view s) { return parse_free(free_vwxyz(), s); };
  const auto three = leapfrog(3);
  EXPECT_EQ(three.u[0], p("xy + 1"));
  EXPECT_EQ(three.v[0], p("zyx + z + x"));
  EXPECT_EQ(-three.u[1], p("xyz + x + z"));
  EXPECT_EQ(three.v[1], p("yx + 1"));
  const auto four = leapfrog(4);
  EXPECT_EQ(four.v[0], p("wzyx + wz + wx + yx + 1"));
  EXPECT_EQ(-four.u[1], p("xyzw + xy + xw + zw + 1"));
  EXPECT_EQ(four.u[0] * four.v[0], -four.u[1] * four.v[1]);
}

TEST(Leapfrog, AllTrivializeToTheUnitForm) {
  for (int k = 1; k <= 5; ++k) {
    const auto rel = leapfrog(k);
    const auto cert = trivialize_free(rel);
    EXPECT_TRUE(verify_certificate(rel, cert)) << k;
  }
  EXPECT_THROW(leapfrog(0), IndexOutOfRange);
  EXPECT_THROW(leapfrog(6), IndexOutOfRange);
}
