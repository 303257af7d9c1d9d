#pragma once

// Text formats shared by the CLI and tests. Every rational is written as an
// exact fraction string; decimal columns are derived for display only.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "facloc/cycle.hpp"
#include "facloc/search.hpp"

namespace facloc {

// "-1/4,0,1/4" -> {-1/4, 0, 1/4}. Throws ParseError.
std::vector<Rational> parse_rational_list(std::string_view text, char separator = ',');

// Coordinates joined by `separator`, e.g. "-1/4,0,1/4".
std::string format_profile(const Profile& b, char separator = ',');
std::string format_lottery(const Lottery& l);

// JSON array of fraction strings: ["-1/4","0","1/4"].
std::string profile_to_json(const Profile& b);
// Accepts the array form above; numbers must be given as strings.
Profile profile_from_json(std::string_view text);

// One row of the search CSV.
struct SearchRow {
  ApxRecord record;
  bool restricted = false;
};

// Header: n,l,max_ratio_num,max_ratio_den,max_ratio_decimal,witness,classes,restricted_flag
// Witness coordinates are joined with ';'. LF line endings.
void write_search_csv(std::ostream& out, const std::vector<SearchRow>& rows);
std::string search_csv_header();
std::string search_csv_line(const SearchRow& row);

// Parsed back from the CSV; profiles_examined is not part of the file.
struct ParsedSearchRow {
  int n = 0;
  int l = 0;
  Rational max_ratio;
  Profile witness;
  std::uint64_t classes = 0;
  bool restricted = false;
};
std::vector<ParsedSearchRow> read_search_csv(std::istream& in);

}  // namespace facloc
