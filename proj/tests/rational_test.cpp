#include <gtest/gtest.h>

#include "facloc/error.hpp"
#include "facloc/rational.hpp"

namespace facloc {
namespace {

TEST(RationalTest, ParsesFractionsInLowestTerms) {
  EXPECT_EQ(parse_rational("-1/4"), Rational(-1, 4));
  EXPECT_EQ(parse_rational(" 2/8 "), Rational(1, 4));
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("+5/10"), Rational(1, 2));
  EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
}

TEST(RationalTest, RejectsMalformedInput) {
  for (const char* bad : {"", "1/", "/2", "1/0", "0.5", "a/b", "1/2/3", "1//2", "1/-2"}) {
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
  }
}

TEST(RationalTest, FormatsIntegersWithoutDenominator) {
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_EQ(to_string(Rational(31, 24)), "31/24");
}

TEST(RationalTest, DecimalRenderingIsExactAndRounded) {
  EXPECT_EQ(to_decimal(Rational(31, 24), 6), "1.291667");
  EXPECT_EQ(to_decimal(Rational(7, 4), 2), "1.75");
  EXPECT_EQ(to_decimal(Rational(-1, 3), 3), "-0.333");
  EXPECT_EQ(to_decimal(Rational(1, 2000), 3), "0.001");
  EXPECT_EQ(to_decimal(Rational(-1, 4000), 3), "0.000");
  EXPECT_EQ(to_decimal(Rational(5), 0), "5");
}

}  // namespace
}  // namespace facloc
