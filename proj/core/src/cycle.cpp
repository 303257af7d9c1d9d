#include "facloc/cycle.hpp"

#include <algorithm>
#include <map>

#include "facloc/error.hpp"

namespace facloc {
namespace {

const Rational kHalf(1, 2);

}  // namespace

CyclePoint::CyclePoint(Rational coord) : coord_(std::move(coord)) {
  if (coord_ < -kHalf || coord_ > kHalf) {
    throw DomainError("coordinate " + to_string(coord_) +
                      " outside the cycle [-1/2, 1/2]");
  }
  if (coord_ == kHalf) coord_ = -kHalf;
}

CyclePoint CyclePoint::wrap(const Rational& coord) {
  // floor(coord + 1/2) turns of the cycle are removed.
  const Rational shifted = coord + kHalf;
  Integer turns = numerator_of(shifted) / denominator_of(shifted);
  if (shifted < 0 && Rational(turns) != shifted) turns -= 1;
  return CyclePoint(coord - Rational(turns));
}

Rational cut_distance(const CyclePoint& a, const CyclePoint& b) {
  return abs(b.coord() - a.coord());
}

Rational cycle_distance(const CyclePoint& a, const CyclePoint& b) {
  const Rational direct = cut_distance(a, b);
  const Rational around = 1 - direct;
  return direct < around ? direct : around;
}

Rational distance(const CyclePoint& a, const CyclePoint& b, MetricKind metric) {
  return metric == MetricKind::Cycle ? cycle_distance(a, b) : cut_distance(a, b);
}

CyclePoint antipode(const CyclePoint& v) { return CyclePoint::wrap(v.coord() + kHalf); }

CyclePoint rotate(const CyclePoint& v, const Rational& shift) {
  return CyclePoint::wrap(v.coord() + shift);
}

CyclePoint reflect(const CyclePoint& v) { return CyclePoint::wrap(-v.coord()); }

Profile::Profile(std::vector<CyclePoint> reports) : reports_(std::move(reports)) {
  if (reports_.empty()) throw DomainError("a profile needs at least one agent");
}

Profile Profile::from_coords(std::span<const Rational> coords) {
  std::vector<CyclePoint> reports;
  reports.reserve(coords.size());
  for (const Rational& c : coords) reports.emplace_back(c);
  return Profile(std::move(reports));
}

const CyclePoint& Profile::agent(int i) const {
  const int pos = i + k();
  if (pos < 0 || static_cast<std::size_t>(pos) >= reports_.size()) {
    throw DomainError("agent index out of range");
  }
  return reports_[static_cast<std::size_t>(pos)];
}

Profile Profile::with_report(std::size_t pos, const CyclePoint& v) const {
  Profile copy = *this;
  copy.reports_.at(pos) = v;
  return copy;
}

Profile Profile::sorted() const {
  Profile copy = *this;
  std::stable_sort(copy.reports_.begin(), copy.reports_.end());
  return copy;
}

bool Profile::is_unanimous() const {
  return std::all_of(reports_.begin(), reports_.end(),
                     [&](const CyclePoint& v) { return v == reports_.front(); });
}

Lottery::Lottery(std::vector<Entry> entries) {
  std::map<CyclePoint, Rational> merged;
  for (auto& [point, prob] : entries) {
    if (prob < 0 || prob > 1) {
      throw DomainError("lottery probability " + to_string(prob) +
                        " outside [0, 1]");
    }
    merged[point] += prob;
  }
  Rational total = 0;
  for (auto& [point, prob] : merged) {
    total += prob;
    if (prob != 0) entries_.emplace_back(point, std::move(prob));
  }
  if (total != 1) {
    throw DomainError("lottery probabilities sum to " + to_string(total) +
                      ", not 1");
  }
}

Lottery Lottery::point(const CyclePoint& v) { return Lottery({{v, Rational(1)}}); }

Rational Lottery::probability(const CyclePoint& v) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), v,
      [](const Entry& e, const CyclePoint& p) { return e.first < p; });
  if (it != entries_.end() && it->first == v) return it->second;
  return 0;
}

Rational expected_cost(const CyclePoint& v, const Lottery& l, MetricKind metric) {
  Rational cost = 0;
  for (const auto& [point, prob] : l.entries()) {
    cost += prob * distance(v, point, metric);
  }
  return cost;
}

Rational social_cost(const Profile& b, const Lottery& l, MetricKind metric) {
  Rational cost = 0;
  for (const CyclePoint& report : b.reports()) {
    cost += expected_cost(report, l, metric);
  }
  return cost;
}

Rational social_cost(const Profile& b, const CyclePoint& v, MetricKind metric) {
  Rational cost = 0;
  for (const CyclePoint& report : b.reports()) cost += distance(report, v, metric);
  return cost;
}

std::vector<CyclePoint> optimal_points(const Profile& b) {
  std::vector<CyclePoint> breakpoints;
  breakpoints.reserve(2 * b.n());
  for (const CyclePoint& report : b.reports()) {
    breakpoints.push_back(report);
    breakpoints.push_back(antipode(report));
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());

  std::vector<CyclePoint> best;
  Rational best_cost;
  for (const CyclePoint& v : breakpoints) {
    Rational cost = social_cost(b, v, MetricKind::Cycle);
    if (best.empty() || cost < best_cost) {
      best_cost = std::move(cost);
      best.assign(1, v);
    } else if (cost == best_cost) {
      best.push_back(v);
    }
  }
  return best;
}

OptimalCost optimal_cost(const Profile& b) {
  const CyclePoint point = optimal_points(b).front();
  return {social_cost(b, point, MetricKind::Cycle), point};
}

Profile rescale_profile(std::span<const Rational> raw, const Rational& z) {
  if (z <= 0) throw DomainError("cycle length must be positive");
  std::vector<CyclePoint> reports;
  reports.reserve(raw.size());
  for (const Rational& x : raw) {
    if (x < 0 || x >= z) {
      throw DomainError("coordinate " + to_string(x) + " outside [0, " +
                        to_string(z) + ")");
    }
    reports.push_back(CyclePoint::wrap(x / z));
  }
  return Profile(std::move(reports));
}

}  // namespace facloc
