#include "facloc/rational.hpp"

#include <cctype>

#include "facloc/error.hpp"

namespace facloc {
namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool is_integer_literal(std::string_view text, bool allow_sign) {
  if (allow_sign && !text.empty() && (text.front() == '-' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  if (text.empty()) return false;
  for (const char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  return Integer(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view token = trim(text);
  const auto slash = token.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(token, true)) {
      throw ParseError("malformed fraction: '" + std::string(token) + "'");
    }
    return Rational(parse_integer(token));
  }
  const std::string_view num = token.substr(0, slash);
  const std::string_view den = token.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
    throw ParseError("malformed fraction: '" + std::string(token) + "'");
  }
  const Integer d = parse_integer(den);
  if (d == 0) {
    throw ParseError("zero denominator: '" + std::string(token) + "'");
  }
  return Rational(parse_integer(num), d);
}

std::string to_string(const Rational& value) {
  const Integer den = denominator_of(value);
  if (den == 1) return numerator_of(value).str();
  return numerator_of(value).str() + "/" + den.str();
}

Integer numerator_of(const Rational& value) {
  return boost::multiprecision::numerator(value);
}

Integer denominator_of(const Rational& value) {
  return boost::multiprecision::denominator(value);
}

std::string to_decimal(const Rational& value, int digits) {
  const bool negative = value < 0;
  const Rational magnitude = abs(value);
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const Integer num = numerator_of(magnitude) * scale;
  const Integer den = denominator_of(magnitude);
  Integer q = num / den;
  const Integer r = num % den;
  if (2 * r >= den) q += 1;

  std::string body = q.str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && q != 0) body.insert(0, "-");
  return body;
}

}  // namespace facloc
