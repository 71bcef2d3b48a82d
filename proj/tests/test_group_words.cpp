#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "firlab/group_words.hpp"
#include "oracles.hpp"

using namespace firlab;

namespace {

GroupWord w(const char* s) { return parse_word(s); }

}  // namespace

TEST(GroupWord, ConcatCancelsInversePair) {
  EXPECT_TRUE(concat_reduce(w("x"), w("x-")).empty());
}

TEST(GroupWord, ConcatWithoutCancellation) {
  const GroupWord g = concat_reduce(w("x- y-"), w("x y"));
  EXPECT_EQ(to_string(g), "x- y- x y");
  EXPECT_EQ(g, GroupWord::z());
}

TEST(GroupWord, RelationOfM0HoldsInG) {
  EXPECT_EQ(concat_reduce(w("y x"), w("z")), w("x y"));
}

TEST(GroupWord, Invert) {
  EXPECT_TRUE(invert(GroupWord{}).empty());
  EXPECT_EQ(to_string(invert(w("x y"))), "y- x-");
  EXPECT_EQ(to_string(invert(w("z"))), "y- x- y x");
}

TEST(GroupWord, ParsePrintRoundTrip) {
  for (const GroupWord& g : oracle::reduced_words(5)) {
    EXPECT_EQ(parse_word(to_string(g)), g);
  }
  EXPECT_EQ(to_string(w("z-")), "y- x- y x");
  EXPECT_THROW(w("x q"), ParseError);
  try {
    w("x y q");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 4u);
  }
}

TEST(GroupWord, ReductionAgreesWithNaiveOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Letter> raw;
    const int len = std::uniform_int_distribution<int>(0, 14)(rng);
    for (int j = 0; j < len; ++j) {
      static const Letter ls[] = {1, -1, 2, -2};
      raw.push_back(ls[std::uniform_int_distribution<int>(0, 3)(rng)]);
    }
    EXPECT_EQ(GroupWord::reduce(raw).letters(), oracle::naive_reduce(raw));
  }
}

TEST(GroupWord, AssociativeOnShortWords) {
  const auto words = oracle::reduced_words(3);
  for (const auto& a : words) {
    for (const auto& b : words) {
      const GroupWord ab = a * b;
      for (const auto& c : words) ASSERT_EQ(ab * c, a * (b * c));
    }
  }
}

TEST(GroupWord, UnitalAndInverseOnLength8) {
  for (const GroupWord& g : oracle::reduced_words(8)) {
    ASSERT_EQ(g * GroupWord{}, g);
    ASSERT_EQ(GroupWord{} * g, g);
    ASSERT_TRUE((g * invert(g)).empty());
  }
}

TEST(GroupWord, AssociativeRandomLength8) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5000; ++i) {
    const GroupWord a = oracle::random_reduced(rng, 8);
    const GroupWord b = oracle::random_reduced(rng, 8);
    const GroupWord c = oracle::random_reduced(rng, 8);
    ASSERT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Endo, Images) {
  EXPECT_EQ(apply_endo(sigma(), GroupWord::z()), GroupWord::z());
  EXPECT_EQ(apply_endo(sigma_half(), GroupWord::z()), invert(GroupWord::z()));
  EXPECT_EQ(to_string(apply_endo(sigma(), w("x"))), "y x");
}

TEST(Endo, DeclaredInversesAreValid) {
  for (const Endo& e : {sigma(), sigma_half(), phi(), theta()}) {
    EXPECT_TRUE(e.inverse_is_valid()) << e.name;
  }
  Endo bad = sigma();
  bad.inverse_images->first = w("x");
  EXPECT_FALSE(bad.inverse_is_valid());
}

TEST(Endo, InverseRoundTripOnLength8) {
  const auto words = oracle::reduced_words(8);
  for (const Endo& e : {sigma(), sigma_half(), phi(), theta()}) {
    const Endo inv = e.inverse();
    for (const GroupWord& g : words) ASSERT_EQ(inv(e(g)), g) << e.name << " " << g;
  }
}

TEST(Endo, OrbitOfSigmaHalf) {
  const auto orbit = endo_orbit(sigma_half(), w("x"), 4);
  ASSERT_EQ(orbit.size(), 5u);
  EXPECT_EQ(orbit[0], w("x"));
  EXPECT_EQ(orbit[1], w("y"));
  EXPECT_EQ(orbit[2], w("y x"));
  EXPECT_EQ(orbit[3], w("y x y"));
  EXPECT_EQ(orbit[4], w("y x y y x"));
  EXPECT_EQ(endo_orbit(sigma_half(), w("x"), 6)[6].size(), 13u);
}

TEST(Endo, SigmaHalfSquaredIsSigma) {
  const Endo sq = compose(sigma_half(), sigma_half());
  EXPECT_EQ(sq.image_x, sigma().image_x);
  EXPECT_EQ(sq.image_y, sigma().image_y);
  EXPECT_EQ(endo_orbit(sq, w("x"), 1)[1], apply_endo(sigma(), w("x")));
  EXPECT_TRUE(sq.inverse_is_valid());
}

TEST(Endo, FibonacciConcatenationLaw) {
  const auto orbit = endo_orbit(sigma_half(), w("x"), 20);
  for (std::size_t n = 0; n + 2 < orbit.size(); ++n) {
    ASSERT_EQ(orbit[n + 2].size(), orbit[n + 1].size() + orbit[n].size());
    // The next term is the previous one followed by the one before it.
    ASSERT_EQ(orbit[n + 2], orbit[n + 1] * orbit[n]) << n;
  }
}

TEST(Endo, ByName) {
  EXPECT_EQ(endo_by_name("phi").image_y, w("x y"));
  EXPECT_EQ(endo_by_name("sigma-inv").image_y, w("x- y"));
  EXPECT_THROW(endo_by_name("psi"), UnknownName);
}

TEST(Degree, Delta) {
  EXPECT_EQ(delta(GroupWord::z()), (BiDegree{0, 0}));
  EXPECT_EQ(delta(w("y x y")), (BiDegree{1, 2}));
  EXPECT_EQ(delta(apply_endo(sigma(), w("x"))), (BiDegree{1, 1}));
}

TEST(Degree, SigmaActsByMatrix) {
  const DegreeMap m = degree_map(sigma());
  EXPECT_EQ(m.col_x, (BiDegree{1, 1}));
  EXPECT_EQ(m.col_y, (BiDegree{1, 2}));
  for (const GroupWord& g : oracle::reduced_words(5)) {
    ASSERT_EQ(delta(sigma()(g)), m(delta(g)));
  }
}

TEST(Degree, DeltaIsHomomorphism) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const GroupWord u = oracle::random_reduced(rng, 12);
    const GroupWord v = oracle::random_reduced(rng, 12);
    ASSERT_EQ(delta(u * v), delta(u) + delta(v));
  }
}

TEST(Degree, Eta) {
  EXPECT_EQ(eta({1, 0}), GoldenInt(1, 0));
  const GoldenInt tau = GoldenInt::tau();
  EXPECT_EQ(eta({1, 1}), tau * tau);
  EXPECT_EQ(eta(delta(GroupWord::z())), GoldenInt{});
}

TEST(Degree, GoldenScalingUnderSigmaHalf) {
  const GoldenInt tau = GoldenInt::tau();
  for (const GroupWord& g : oracle::reduced_words(8)) {
    ASSERT_EQ(eta(delta(sigma_half()(g))), tau * eta(delta(g)));
    ASSERT_EQ(eta(delta(sigma()(g))), tau * tau * eta(delta(g)));
  }
}

TEST(Golden, RingLaws) {
  const GoldenInt tau = GoldenInt::tau();
  EXPECT_EQ(tau * tau, GoldenInt(1, 1));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> d(-50, 50);
  for (int i = 0; i < 500; ++i) {
    const GoldenInt a{d(rng), d(rng)}, b{d(rng), d(rng)}, c{d(rng), d(rng)};
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a * b, b * a);
  }
}

TEST(Golden, SignAgreesWithRationalBrackets) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> d(-1000000, 1000000);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t a = d(rng), b = d(rng);
    ASSERT_EQ(GoldenInt(a, b).sign(), oracle::golden_sign(a, b)) << a << " " << b;
  }
  // Near-misses around Fibonacci ratios.
  ASSERT_EQ(GoldenInt(-832040, 514229).sign(), oracle::golden_sign(-832040, 514229));
  ASSERT_EQ(GoldenInt(832040, -514229).sign(), oracle::golden_sign(832040, -514229));
  ASSERT_EQ(GoldenInt(-1346269, 832040).sign(), oracle::golden_sign(-1346269, 832040));
  EXPECT_EQ(GoldenInt(0, 0).sign(), 0);
}

TEST(LinearForm, KernelGenerator) {
  const LinearForm h{0, 1};
  const BiDegree g = h.kernel_generator();
  EXPECT_EQ(g, (BiDegree{1, 0}));
  EXPECT_EQ(h(g), 0);
  const LinearForm k{1, -1};
  EXPECT_EQ(k.kernel_generator(), (BiDegree{1, 1}));
  const LinearForm m{2, 4};
  EXPECT_EQ(m.kernel_generator(), (BiDegree{2, -1}));
}

TEST(EnumerateReduced, MatchesTheOracle) {
  for (std::size_t n = 0; n <= 5; ++n) {
    auto lib = enumerate_reduced(n);
    auto ref = oracle::reduced_words(n);
    std::sort(lib.begin(), lib.end());
    std::sort(ref.begin(), ref.end());
    EXPECT_EQ(lib, ref) << n;
  }
  // 1 + 4 (3^n - 1) / 2 words of length <= n
  EXPECT_EQ(enumerate_reduced(8).size(), 13121u);
}
