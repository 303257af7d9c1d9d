#include <gtest/gtest.h>

#include <algorithm>

#include "facloc/error.hpp"
#include "facloc/mechanisms.hpp"
#include "test_support.hpp"

namespace facloc {
namespace {

using testing::P;
using testing::pt;
using testing::q;

Lottery L(std::vector<Lottery::Entry> entries) { return Lottery(std::move(entries)); }

TEST(RandomDictatorTest, Examples) {
  EXPECT_EQ(random_dictator(P({"-1/4", "0", "1/4"})),
            L({{pt(-1, 4), q(1, 3)}, {pt(0), q(1, 3)}, {pt(1, 4), q(1, 3)}}));
  EXPECT_EQ(random_dictator(P({"0", "0", "1/2"})), L({{pt(0), q(2, 3)}, {pt(-1, 2), q(1, 3)}}));
  EXPECT_EQ(random_dictator(P({"1/7", "1/7", "1/7"})), Lottery::point(pt(1, 7)));
}

TEST(RandomDictatorTest, AcceptsEvenN) {
  EXPECT_EQ(random_dictator(P({"0", "1/4"})), L({{pt(0), q(1, 2)}, {pt(1, 4), q(1, 2)}}));
}

TEST(PcdTest, Examples) {
  EXPECT_EQ(pcd(P({"-1/4", "0", "1/4"})),
            L({{pt(-1, 4), q(1, 4)}, {pt(0), q(1, 2)}, {pt(1, 4), q(1, 4)}}));
  EXPECT_EQ(pcd(P({"0", "0", "1/2"})), Lottery::point(pt(0)));
  EXPECT_EQ(pcd(P({"-2/5", "-2/5", "-2/5"})), Lottery::point(pt(-2, 5)));
}

TEST(PcdTest, RejectsEvenOrTinyN) {
  EXPECT_THROW(pcd(P({"0", "1/4"})), UnsupportedMechanism);
  EXPECT_THROW(pcd(P({"0"})), UnsupportedMechanism);
  EXPECT_THROW(pcd(P({"0", "1/4", "1/3", "-1/3"})), UnsupportedMechanism);
}

TEST(PcdTest, MatchesOpposingArcDefinition) {
  for (const Profile& b :
       {P({"-1/4", "0", "1/4"}), P({"1/3", "-1/2", "0", "0", "1/10"}),
        P({"1/8", "1/8", "-3/8", "1/4", "-1/2", "0", "3/7"}), P({"0", "0", "0", "0", "1/2"})}) {
    EXPECT_EQ(pcd(b), testing::pcd_by_definition(b)) << "n=" << b.n();
  }
}

TEST(MixTest, Examples) {
  EXPECT_EQ(mix(Lottery::point(pt(0)), Lottery::point(pt(0))), Lottery::point(pt(0)));
  EXPECT_EQ(mix(Lottery::point(pt(0)), Lottery::point(pt(1, 2))),
            L({{pt(0), q(1, 2)}, {pt(-1, 2), q(1, 2)}}));
  EXPECT_EQ(mix(L({{pt(0), q(2, 3)}, {pt(1, 4), q(1, 3)}}), L({{pt(0), q(1, 3)}, {pt(1, 4), q(2, 3)}})),
            L({{pt(0), q(1, 2)}, {pt(1, 4), q(1, 2)}}));
}

TEST(ApplyTest, Examples) {
  const Profile b = P({"-1/4", "0", "1/4"});
  EXPECT_EQ(apply(MechanismId::rd(), b), random_dictator(b));
  EXPECT_EQ(apply(MechanismId::rd_pcd(), b),
            L({{pt(-1, 4), q(7, 24)}, {pt(0), q(5, 12)}, {pt(1, 4), q(7, 24)}}));
  EXPECT_EQ(apply(MechanismId::rd_pcd(), P({"1/3", "1/3", "1/3"})), Lottery::point(pt(1, 3)));
  EXPECT_THROW(apply(MechanismId::rd_pcd(), P({"0", "1/4"})), UnsupportedMechanism);
}

TEST(ApproximationRatioTest, Examples) {
  const ApxResult rd = approximation_ratio(MechanismId::rd(), P({"0", "0", "1/2"}));
  EXPECT_EQ(rd.ratio, q(4, 3));  // 2 - 2/n with n = 3
  EXPECT_EQ(rd.mechanism_sc, q(2, 3));
  EXPECT_EQ(rd.opt, q(1, 2));

  const ApxResult unanimous = approximation_ratio(MechanismId::rd_pcd(), P({"1/5", "1/5", "1/5"}));
  EXPECT_EQ(unanimous.ratio, q(1));
  EXPECT_EQ(unanimous.mechanism_sc, q(0));
  EXPECT_EQ(unanimous.opt, q(0));

  const ApxResult mixed = approximation_ratio(MechanismId::rd_pcd(), P({"-1/4", "0", "1/4"}));
  EXPECT_EQ(mixed.ratio, q(31, 24));
  EXPECT_EQ(mixed.mechanism_sc, q(31, 48));
  EXPECT_EQ(mixed.opt, q(1, 2));
  EXPECT_EQ(mixed.opt_point, pt(0));
}

TEST(MechanismIdTest, ParseAndFormat) {
  EXPECT_EQ(parse_mechanism("rd"), MechanismId::rd());
  EXPECT_EQ(parse_mechanism("PCD"), MechanismId::pcd());
  EXPECT_EQ(parse_mechanism("rd+pcd"), MechanismId::rd_pcd());
  const MechanismId nested = MechanismId::mix(MechanismId::rd_pcd(), MechanismId::rd());
  EXPECT_EQ(to_string(nested), "(rd+pcd)+rd");
  EXPECT_EQ(parse_mechanism(to_string(nested)), nested);
  for (const char* bad : {"", "rd+", "rd+pcd+rd", "qcd", "(rd", "rd)"}) {
    EXPECT_THROW(parse_mechanism(bad), ParseError) << bad;
  }
  EXPECT_FALSE(MechanismId::rd().requires_odd_n());
  EXPECT_TRUE(MechanismId::rd_pcd().requires_odd_n());
}

TEST(ApproximationRatioTest, NestedMixWeightsAreQuarters) {
  const Profile b = P({"0", "0", "1/2"});
  const MechanismId nested = MechanismId::mix(MechanismId::rd_pcd(), MechanismId::rd());
  const Rational rd = approximation_ratio(MechanismId::rd(), b).ratio;
  const Rational pcd_ratio = approximation_ratio(MechanismId::pcd(), b).ratio;
  EXPECT_EQ(approximation_ratio(nested, b).ratio, (rd + pcd_ratio) / 4 + rd / 2);
}

}  // namespace
}  // namespace facloc
