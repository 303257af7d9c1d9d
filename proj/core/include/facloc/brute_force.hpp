#pragma once

// Slow reference paths used to cross-check the fast ones: a dense scan for
// the optimal cost and a search over all l^n raw profiles without any
// symmetry reduction.

#include "facloc/search.hpp"

namespace facloc {

// Minimum of sc_b over the grid of spacing 1 / (2 * refine * D), where D is
// the lcm of the report denominators. That grid contains every report and
// antipode, so the result is exact; refine > 1 only adds points.
OptimalCost optimal_cost_scan(const Profile& b, int refine = 2);

struct RawSearchResult {
  Rational max_ratio;
  // First raw tuple (odometer order) attaining max_ratio.
  Profile witness;
  Integer profiles_examined;
};

// Max of approximation_ratio over every tuple in G_l^n; honours
// max_distinct. Ignores the budget and workers.
RawSearchResult worst_case_raw(const SearchConfig& c);

}  // namespace facloc
