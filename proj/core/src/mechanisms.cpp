#include "facloc/mechanisms.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "facloc/error.hpp"

namespace facloc {

MechanismId MechanismId::mix(MechanismId first, MechanismId second) {
  MechanismId m(Kind::Mix);
  m.first_ = std::make_shared<const MechanismId>(std::move(first));
  m.second_ = std::make_shared<const MechanismId>(std::move(second));
  return m;
}

bool MechanismId::requires_odd_n() const {
  switch (kind_) {
    case Kind::RD:
      return false;
    case Kind::PCD:
      return true;
    case Kind::Mix:
      return first_->requires_odd_n() || second_->requires_odd_n();
  }
  return false;
}

bool operator==(const MechanismId& a, const MechanismId& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != MechanismId::Kind::Mix) return true;
  return *a.first_ == *b.first_ && *a.second_ == *b.second_;
}

std::string to_string(const MechanismId& m) {
  switch (m.kind()) {
    case MechanismId::Kind::RD:
      return "rd";
    case MechanismId::Kind::PCD:
      return "pcd";
    case MechanismId::Kind::Mix: {
      auto operand = [](const MechanismId& sub) {
        const std::string s = to_string(sub);
        return sub.kind() == MechanismId::Kind::Mix ? "(" + s + ")" : s;
      };
      return operand(m.first()) + "+" + operand(m.second());
    }
  }
  return {};
}

namespace {

// mechanism := operand ('+' operand)?
// operand   := 'rd' | 'pcd' | '(' mechanism ')'
class MechanismParser {
 public:
  explicit MechanismParser(std::string_view text) {
    for (const char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        text_.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      }
    }
  }

  MechanismId parse() {
    MechanismId m = mechanism();
    if (pos_ != text_.size()) fail();
    return m;
  }

 private:
  MechanismId mechanism() {
    MechanismId first = operand();
    if (pos_ < text_.size() && text_[pos_] == '+') {
      ++pos_;
      return MechanismId::mix(std::move(first), operand());
    }
    return first;
  }

  MechanismId operand() {
    if (consume("rd")) return MechanismId::rd();
    if (consume("pcd")) return MechanismId::pcd();
    if (consume("(")) {
      MechanismId inner = mechanism();
      if (!consume(")")) fail();
      return inner;
    }
    fail();
  }

  bool consume(std::string_view token) {
    if (text_.compare(pos_, token.size(), token) != 0) return false;
    pos_ += token.size();
    return true;
  }

  [[noreturn]] void fail() const {
    throw ParseError("unknown mechanism '" + text_ +
                     "' (expected rd, pcd, rd+pcd, ...)");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

MechanismId parse_mechanism(std::string_view text) {
  return MechanismParser(text).parse();
}

Lottery random_dictator(const Profile& b) {
  const Rational share(1, static_cast<long long>(b.n()));
  std::vector<Lottery::Entry> entries;
  entries.reserve(b.n());
  for (const CyclePoint& report : b.reports()) entries.emplace_back(report, share);
  return Lottery(std::move(entries));
}

Lottery pcd(const Profile& b) {
  const std::size_t n = b.n();
  if (n < 3 || n % 2 == 0) {
    throw UnsupportedMechanism("PCD is defined only for odd n >= 3 (got n = " +
                               std::to_string(n) + ")");
  }
  const std::size_t k = (n - 1) / 2;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return b[x] < b[y];
  });

  // gap[j]: clockwise arc from the j-th to the (j+1)-th report in order.
  std::vector<Rational> gap(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    gap[j] = b[order[j + 1]].coord() - b[order[j]].coord();
  }
  gap[n - 1] = 1 - (b[order[n - 1]].coord() - b[order[0]].coord());

  std::vector<Lottery::Entry> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& arc = gap[(i + k) % n];
    if (arc != 0) entries.emplace_back(b[order[i]], arc);
  }
  return Lottery(std::move(entries));
}

Lottery mix(const Lottery& first, const Lottery& second) {
  std::vector<Lottery::Entry> entries;
  entries.reserve(first.support_size() + second.support_size());
  for (const auto& [point, prob] : first.entries()) entries.emplace_back(point, prob / 2);
  for (const auto& [point, prob] : second.entries()) entries.emplace_back(point, prob / 2);
  return Lottery(std::move(entries));
}

Lottery apply(const MechanismId& m, const Profile& b) {
  switch (m.kind()) {
    case MechanismId::Kind::RD:
      return random_dictator(b);
    case MechanismId::Kind::PCD:
      return pcd(b);
    case MechanismId::Kind::Mix:
      return mix(apply(m.first(), b), apply(m.second(), b));
  }
  throw Error("unreachable mechanism kind");
}

MechanismFn make_mechanism(const MechanismId& m) {
  return [m](const Profile& b) { return apply(m, b); };
}

ApxResult approximation_ratio(const MechanismId& m, const Profile& b) {
  const Lottery outcome = apply(m, b);
  OptimalCost opt = optimal_cost(b);
  ApxResult result{Rational(1), social_cost(b, outcome, MetricKind::Cycle),
                   std::move(opt.cost), opt.point};
  if (result.opt > 0) result.ratio = result.mechanism_sc / result.opt;
  return result;
}

}  // namespace facloc
