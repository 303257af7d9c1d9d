#pragma once

// Exhaustive search over profiles whose reports lie on the grid G_l of l
// equally spaced cycle points containing 0. Profiles are grouped into
// classes under agent permutation, the l grid rotations and reflection;
// RD, PCD and their mixtures are anonymous and neutral, so one
// representative per class suffices.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "facloc/cut_analysis.hpp"
#include "facloc/mechanisms.hpp"

namespace facloc {

struct GridSpec {
  int l = 2;
};

// Ascending coordinates: slot s holds (s - floor(l/2)) / l. Throws
// ConfigError when l < 2.
std::vector<CyclePoint> grid_points(const GridSpec& g);

struct SearchConfig {
  int n = 3;
  GridSpec grid;
  // Only profiles with at most this many distinct reports.
  std::optional<int> max_distinct;
  MechanismId mechanism = MechanismId::rd_pcd();
  int workers = 1;
  // Overrides enumeration_budget() when set.
  std::optional<std::uint64_t> budget;
};

// Default 10^7, overridable through the FACLOC_ENUM_BUDGET environment
// variable.
std::uint64_t enumeration_budget();

// Throws ConfigError for even or too small n, l < 2, max_distinct < 1 or
// workers < 1.
void validate(const SearchConfig& c);

// Rough class count: multisets C(l+n-1, n) divided by the 2l symmetries
// (restricted to at most max_distinct distinct slots when set).
double estimate_class_count(const SearchConfig& c);

// validate() plus the feasibility guard: unrestricted configs whose estimate
// exceeds the budget are refused with a ConfigError suggesting max_distinct.
void check_feasible(const SearchConfig& c);

// Lexicographically smallest sorted profile in the orbit of `b` under agent
// permutations, grid rotations and reflection. Throws DomainError for
// off-grid reports.
Profile canonicalize(const Profile& b, const GridSpec& g);

// Number of raw profiles (ordered tuples in G_l^n) in the class of `b`.
Integer orbit_size(const Profile& b, const GridSpec& g);

// One canonical representative per class (respecting max_distinct), in
// increasing lexicographic order. Streams to `visit`.
void for_each_class(const SearchConfig& c, const std::function<void(const Profile&)>& visit);
std::vector<Profile> enumerate_profiles(const SearchConfig& c);

// All sorted grid profiles (multisets), not reduced by symmetry.
void for_each_sorted_profile(int n, const GridSpec& g, std::optional<int> max_distinct,
                             const std::function<void(const Profile&)>& visit);

struct ApxRecord {
  int n = 0;
  int l = 0;
  Rational max_ratio;
  Profile witness;
  // Raw profiles covered (sum of orbit sizes).
  Integer profiles_examined;
  std::uint64_t canonical_classes = 0;
};

// Worst approximation ratio over all classes. Ties go to the
// lexicographically smallest witness, so the result does not depend on
// worker count or scheduling.
ApxRecord worst_case(const SearchConfig& c);

struct SpViolation {
  Profile profile;
  // Storage position of the deviating agent.
  std::size_t agent = 0;
  CyclePoint deviation;
  Rational truthful_cost;
  Rational deviated_cost;
};

// For every class representative, agent and grid deviation, compares the
// agent's expected cycle cost when truthful and when deviating. Returns the
// strict gains, ordered by (profile, agent, deviation).
std::vector<SpViolation> verify_sp(const SearchConfig& c);
std::vector<SpViolation> verify_sp(const SearchConfig& c, const MechanismFn& mechanism);

// Outputs the antipode of the first agent's report. Not strategyproof;
// exists to check that verify_sp finds violations.
Lottery antipode_dictator(const Profile& b);

struct BoundViolation {
  Profile profile;
  std::string what;
  Rational ratio;
  Rational phi;
};

struct BoundReport {
  std::uint64_t classes_checked = 0;
  Rational max_ratio;
  Rational max_phi;
  std::vector<BoundViolation> violations;
};

// For every class: normalises, then checks that normalisation keeps the
// Mix(RD, PCD) ratio, that ratio <= phi(normalised) and phi <= 7/4.
// Unanimous classes have ratio 1 and no phi.
BoundReport verify_bounds(const SearchConfig& c);

struct CheckReport {
  std::uint64_t profiles_checked = 0;
  std::vector<std::string> failures;
};

// Over every normalised sorted grid profile: the RD/PCD cut closed forms
// against direct cut social costs, the cut inequality for RD, PCD and
// Mix(RD, PCD) lotteries, sc'(0) = sc(0), and the incremental-difference
// identity for consecutive agents.
CheckReport verify_closed_forms(const SearchConfig& c);

// For every non-unanimous class: reduce_to_boundary on the normalised
// profile strictly lowers the non-boundary count, never lowers phi, and
// ends on a boundary profile with phi <= 7/4.
CheckReport verify_reduction(const SearchConfig& c);

}  // namespace facloc
