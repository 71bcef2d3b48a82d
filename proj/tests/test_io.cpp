#include <gtest/gtest.h>

#include <random>

#include "firlab/io.hpp"
#include "firlab/samples.hpp"

using namespace firlab;

namespace {

Relation<LimitRing> seven() {
  const LimitRing& ring = limit_ring("M0-limit");
  const LimitMonoid& m = ring.monoid();
  return build_cedo_relation(ring, m.parse("y"), m.parse("x z"), m.parse("x"), m.one());
}

}  // namespace

TEST(Io, PolyTermsHighestFirst) {
  const auto r = parse_free(free_xy(), "1/2*yx - 3");
  EXPECT_EQ(poly_to_json(r).dump(), R"([["1/2",["y","x"]],["-3",[]]])");
  EXPECT_EQ(poly_from_json(free_xy(), poly_to_json(r), "p"), r);
}

TEST(Io, RelationRoundTrips) {
  const auto rel = seven();
  const json j = relation_to_json(rel);
  EXPECT_EQ(ambient_of(j), "M0-limit");
  EXPECT_EQ(relation_from_json(limit_ring("M0-limit"), j), rel);

  std::mt19937_64 rng(kDefaultSeed);
  for (int k = 0; k < 20; ++k) {
    const auto f = random_free_relation(rng);
    EXPECT_EQ(relation_from_json(free_xy(), json::parse(relation_to_json(f).dump())), f);
    const auto z = random_z_relation(rng, true);
    EXPECT_EQ(relation_from_json(z_laurent(), json::parse(relation_to_json(z).dump())), z);
  }
}

TEST(Io, CertificateRoundTripStillVerifies) {
  const auto rel = seven();
  const auto res = trivialize_delta_homogeneous(rel);
  ASSERT_TRUE(res.ok());
  const json j = json::parse(certificate_to_json(*res.certificate).dump());
  const auto back = certificate_from_json(limit_ring("M0-limit"), j);
  EXPECT_EQ(back.ops.size(), res.certificate->ops.size());
  EXPECT_TRUE(verify_certificate(rel, back));
  EXPECT_EQ(j["ops"][0]["i"], 1);
  EXPECT_EQ(j["ops"][0]["j"], 2);
}

TEST(Io, ScaleOpsKeepBothFactors) {
  using Op = ElementaryOp<ZRing>;
  const auto z = [](long e) { return RingElt<ZRing>::mono(z_laurent(), e); };
  const json j = op_to_json(Op::scale(0, z(1), z(-1)));
  EXPECT_EQ(j["op"], "scale");
  const auto op = op_from_json(z_laurent(), j, "op");
  EXPECT_EQ(op.r, z(1));
  EXPECT_EQ(op.r_inv, z(-1));
}

TEST(Io, AmbientNames) {
  EXPECT_TRUE(std::holds_alternative<const FreeAlgebra*>(ambient_by_name("free:ab")));
  EXPECT_EQ(&free_algebra("ab"), &free_algebra("ab"));
  EXPECT_TRUE(std::holds_alternative<const ZRing*>(ambient_by_name("poly:z")));
  EXPECT_TRUE(std::holds_alternative<const LimitRing*>(ambient_by_name("M1-limit")));
  EXPECT_THROW(ambient_by_name("free:"), UnknownName);
  EXPECT_THROW(ambient_by_name("nowhere"), UnknownName);
}

TEST(Io, MalformedInputsNameTheirPlace) {
  const auto bad = [](const char* text) {
    try {
      relation_from_json(free_xy(), json::parse(text));
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(bad(R"({"u": []})").find("missing field 'v'"), std::string::npos);
  EXPECT_NE(bad(R"({"u": [[["x", []]]], "v": [[["1", []]]]})").find("relation.u[0][0]: bad coefficient"),
            std::string::npos);
  EXPECT_NE(bad(R"({"u": [[["1", ["q"]]]], "v": [[["1", []]]]})").find("unknown letter"), std::string::npos);
  EXPECT_THROW(relation_from_json(free_xy(), json::parse(R"({"u": [[["1", ["x"]]]], "v": [[["1", []]]]})")),
               NotARelation);
}

TEST(Io, PresentationFromJson) {
  const json j = json::parse(R"({"name": "M0copy", "alphabet": ["x", "y", "z"],
                                 "rules": [[["y", "x", "z"], ["x", "y"]]],
                                 "images": [["x"], ["y"], ["x-", "y-", "x", "y"]]})");
  const Presentation p = presentation_from_json(j);
  EXPECT_EQ(to_string(normalize(p, "y x z")), "x y");
  EXPECT_EQ(embed(p, normalize(p, "z")), embed(builtin("M0"), normalize(builtin("M0"), "z")));
  EXPECT_THROW(presentation_from_json(json::parse(R"({"alphabet": ["x"], "rules": [[["x"], ["x", "x"]]]})")),
               InvalidPresentation);
}
