#include "facloc/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "facloc/error.hpp"

namespace facloc {
namespace {

std::vector<std::string_view> split(std::string_view text, char separator) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(separator, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::vector<Rational> parse_rational_list(std::string_view text, char separator) {
  std::vector<Rational> values;
  for (const std::string_view token : split(text, separator)) {
    values.push_back(parse_rational(token));
  }
  return values;
}

std::string format_profile(const Profile& b, char separator) {
  std::string out;
  for (std::size_t i = 0; i < b.n(); ++i) {
    if (i > 0) out.push_back(separator);
    out += to_string(b[i].coord());
  }
  return out;
}

std::string format_lottery(const Lottery& l) {
  std::string out = "{";
  bool first = true;
  for (const auto& [point, prob] : l.entries()) {
    if (!first) out += ", ";
    first = false;
    out += to_string(point.coord()) + ": " + to_string(prob);
  }
  return out + "}";
}

std::string profile_to_json(const Profile& b) {
  nlohmann::json array = nlohmann::json::array();
  for (const CyclePoint& p : b.reports()) array.push_back(to_string(p.coord()));
  return array.dump();
}

Profile profile_from_json(std::string_view text) {
  nlohmann::json array;
  try {
    array = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed profile JSON: ") + e.what());
  }
  if (!array.is_array() || array.empty()) {
    throw ParseError("profile JSON must be a non-empty array of fraction strings");
  }
  std::vector<CyclePoint> reports;
  for (const auto& item : array) {
    if (!item.is_string()) throw ParseError("profile JSON entries must be strings");
    reports.emplace_back(parse_rational(item.get<std::string>()));
  }
  return Profile(std::move(reports));
}

std::string search_csv_header() {
  return "n,l,max_ratio_num,max_ratio_den,max_ratio_decimal,witness,classes,restricted_flag";
}

std::string search_csv_line(const SearchRow& row) {
  const ApxRecord& r = row.record;
  std::ostringstream line;
  line << r.n << ',' << r.l << ',' << numerator_of(r.max_ratio) << ','
       << denominator_of(r.max_ratio) << ',' << to_decimal(r.max_ratio, 6) << ','
       << format_profile(r.witness, ';') << ',' << r.canonical_classes << ','
       << (row.restricted ? 1 : 0);
  return line.str();
}

void write_search_csv(std::ostream& out, const std::vector<SearchRow>& rows) {
  out << search_csv_header() << '\n';
  for (const SearchRow& row : rows) out << search_csv_line(row) << '\n';
}

std::vector<ParsedSearchRow> read_search_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != search_csv_header()) {
    throw ParseError("search CSV: missing or unexpected header");
  }
  std::vector<ParsedSearchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string_view> fields = split(line, ',');
    if (fields.size() != 8) throw ParseError("search CSV: expected 8 fields in '" + line + "'");
    try {
      ParsedSearchRow row;
      row.n = std::stoi(std::string(fields[0]));
      row.l = std::stoi(std::string(fields[1]));
      row.max_ratio = parse_rational(std::string(fields[2]) + "/" + std::string(fields[3]));
      std::vector<CyclePoint> witness;
      for (const Rational& c : parse_rational_list(fields[5], ';')) witness.emplace_back(c);
      row.witness = Profile(std::move(witness));
      row.classes = std::stoull(std::string(fields[6]));
      if (fields[7] != "0" && fields[7] != "1") {
        throw ParseError("search CSV: restricted_flag must be 0 or 1 in '" + line + "'");
      }
      row.restricted = fields[7] == "1";
      rows.push_back(std::move(row));
    } catch (const std::invalid_argument&) {
      throw ParseError("search CSV: malformed row '" + line + "'");
    } catch (const std::out_of_range&) {
      throw ParseError("search CSV: malformed row '" + line + "'");
    }
  }
  return rows;
}

}  // namespace facloc
