#include <gtest/gtest.h>

#include <sstream>

#include "facloc/error.hpp"
#include "facloc/io.hpp"
#include "test_support.hpp"

namespace facloc {
namespace {

using testing::P;
using testing::q;

TEST(RationalListTest, Parses) {
  EXPECT_EQ(parse_rational_list("-1/4,0,1/4"), (std::vector<Rational>{q(-1, 4), q(0), q(1, 4)}));
  EXPECT_EQ(parse_rational_list("1/3;2/6", ';'), (std::vector<Rational>{q(1, 3), q(1, 3)}));
  EXPECT_THROW(parse_rational_list("1/4,,0"), ParseError);
  EXPECT_THROW(parse_rational_list("0.25"), ParseError);
  EXPECT_THROW(parse_rational_list(""), ParseError);
}

TEST(FormatTest, ProfileAndLottery) {
  EXPECT_EQ(format_profile(P({"-1/4", "0", "1/4"})), "-1/4,0,1/4");
  EXPECT_EQ(format_profile(P({"-1/4", "0"}), ';'), "-1/4;0");
  EXPECT_EQ(format_lottery(Lottery({{CyclePoint(0), q(1, 2)}, {CyclePoint(1, 4), q(1, 2)}})),
            "{0: 1/2, 1/4: 1/2}");
}

TEST(JsonTest, RoundTrip) {
  const Profile b = P({"-1/2", "1/3", "2/7"});
  EXPECT_EQ(profile_to_json(b), R"(["-1/2","1/3","2/7"])");
  EXPECT_EQ(profile_from_json(profile_to_json(b)), b);
  EXPECT_THROW(profile_from_json("[0.5]"), ParseError);
  EXPECT_THROW(profile_from_json("[]"), ParseError);
  EXPECT_THROW(profile_from_json("{"), ParseError);
  EXPECT_THROW(profile_from_json(R"(["3/4"])"), DomainError);
}

TEST(CsvTest, RoundTripsExactValues) {
  ApxRecord r;
  r.n = 3;
  r.l = 4;
  r.max_ratio = q(31, 24);
  r.witness = P({"-1/2", "-1/4", "0"});
  r.canonical_classes = 5;
  ApxRecord s = r;
  s.n = 5;
  s.max_ratio = q(1);
  const std::vector<SearchRow> rows{{r, false}, {s, true}};

  std::ostringstream out;
  write_search_csv(out, rows);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), search_csv_header());
  EXPECT_EQ(search_csv_line(rows[0]), "3,4,31,24,1.291667,-1/2;-1/4;0,5,0");
  EXPECT_EQ(text.find('\r'), std::string::npos);

  std::istringstream in(text);
  const std::vector<ParsedSearchRow> parsed = read_search_csv(in);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].n, 3);
  EXPECT_EQ(parsed[0].l, 4);
  EXPECT_EQ(parsed[0].max_ratio, q(31, 24));
  EXPECT_EQ(parsed[0].witness, r.witness);
  EXPECT_EQ(parsed[0].classes, 5u);
  EXPECT_FALSE(parsed[0].restricted);
  EXPECT_EQ(parsed[1].max_ratio, q(1));
  EXPECT_TRUE(parsed[1].restricted);
}

TEST(CsvTest, RejectsMalformedInput) {
  const std::string header = search_csv_header() + "\n";
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_search_csv(in);
  };
  EXPECT_THROW(read("n,l\n"), ParseError);
  EXPECT_THROW(read(header + "3,4,31,24,1.29,0\n"), ParseError);
  EXPECT_THROW(read(header + "3,4,31,0,1.29,0,5,0\n"), ParseError);
  EXPECT_THROW(read(header + "x,4,31,24,1.29,0,5,0\n"), ParseError);
  EXPECT_THROW(read(header + "3,4,31,24,1.29,0,5,yes\n"), ParseError);
  EXPECT_TRUE(read(header).empty());
}

}  // namespace
}  // namespace facloc
