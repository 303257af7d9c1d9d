#include "facloc/brute_force.hpp"

#include <set>

#include <optional>

namespace facloc {

OptimalCost optimal_cost_scan(const Profile& b, int refine) {
  Integer lcm = 1;
  for (const CyclePoint& p : b.reports()) {
    lcm = boost::multiprecision::lcm(lcm, denominator_of(p.coord()));
  }
  const long long steps = (2 * refine * lcm).convert_to<long long>();
  std::optional<OptimalCost> best;
  for (long long j = 0; j < steps; ++j) {
    const CyclePoint v = CyclePoint::wrap(Rational(j, steps));
    Rational cost = social_cost(b, v, MetricKind::Cycle);
    if (!best || cost < best->cost || (cost == best->cost && v < best->point)) {
      best = OptimalCost{std::move(cost), v};
    }
  }
  return *best;
}

RawSearchResult worst_case_raw(const SearchConfig& c) {
  validate(c);
  const std::vector<CyclePoint> grid = grid_points(c.grid);
  const std::size_t n = static_cast<std::size_t>(c.n);
  const std::size_t l = grid.size();

  std::vector<std::size_t> digits(n, 0);
  std::optional<RawSearchResult> best;
  Integer examined = 0;
  while (true) {
    std::set<std::size_t> distinct(digits.begin(), digits.end());
    if (!c.max_distinct || static_cast<int>(distinct.size()) <= *c.max_distinct) {
      std::vector<CyclePoint> reports;
      reports.reserve(n);
      for (const std::size_t d : digits) reports.push_back(grid[d]);
      Profile b(std::move(reports));
      Rational ratio = approximation_ratio(c.mechanism, b).ratio;
      ++examined;
      if (!best || ratio > best->max_ratio) best = RawSearchResult{std::move(ratio), b, 0};
    }
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < l) break;
      digits[pos] = 0;
      if (pos == 0) {
        best->profiles_examined = examined;
        return *best;
      }
    }
  }
}

}  // namespace facloc
