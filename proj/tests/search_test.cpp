#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "facloc/brute_force.hpp"
#include "facloc/error.hpp"
#include "facloc/io.hpp"
#include "facloc/search.hpp"
#include "test_support.hpp"

namespace facloc {
namespace {

using testing::P;
using testing::q;

SearchConfig config(int n, int l, MechanismId m = MechanismId::rd_pcd()) {
  SearchConfig c;
  c.n = n;
  c.grid.l = l;
  c.mechanism = m;
  return c;
}

TEST(GridTest, Points) {
  const std::vector<CyclePoint> g4 = grid_points({4});
  ASSERT_EQ(g4.size(), 4u);
  EXPECT_EQ(g4[0], CyclePoint(-1, 2));
  EXPECT_EQ(g4[1], CyclePoint(-1, 4));
  EXPECT_EQ(g4[2], CyclePoint(0));
  EXPECT_EQ(g4[3], CyclePoint(1, 4));
  const std::vector<CyclePoint> g3 = grid_points({3});
  EXPECT_EQ(g3, (std::vector<CyclePoint>{CyclePoint(-1, 3), CyclePoint(0), CyclePoint(1, 3)}));
  EXPECT_THROW(grid_points({1}), ConfigError);
}

TEST(ValidateTest, RejectsBadConfigs) {
  EXPECT_NO_THROW(validate(config(3, 2)));
  EXPECT_THROW(validate(config(4, 4)), ConfigError);
  EXPECT_THROW(validate(config(1, 4)), ConfigError);
  EXPECT_THROW(validate(config(3, 1)), ConfigError);
  SearchConfig c = config(3, 4);
  c.workers = 0;
  EXPECT_THROW(validate(c), ConfigError);
  c.workers = 1;
  c.max_distinct = 0;
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(BudgetTest, RefusesOversizedUnrestrictedSearch) {
  SearchConfig c = config(5, 12);
  c.budget = 10;
  EXPECT_THROW(check_feasible(c), ConfigError);
  EXPECT_THROW(worst_case(c), ConfigError);
  c.max_distinct = 3;
  EXPECT_NO_THROW(check_feasible(c));
  c.max_distinct.reset();
  c.budget = 1000000;
  EXPECT_NO_THROW(check_feasible(c));
}

TEST(BudgetTest, EnvironmentOverride) {
  ::setenv("FACLOC_ENUM_BUDGET", "1234", 1);
  EXPECT_EQ(enumeration_budget(), 1234u);
  ::setenv("FACLOC_ENUM_BUDGET", "junk", 1);
  EXPECT_THROW(enumeration_budget(), ConfigError);
  ::unsetenv("FACLOC_ENUM_BUDGET");
  EXPECT_EQ(enumeration_budget(), 10000000u);
}

TEST(CanonicalizeTest, Examples) {
  const GridSpec g4{4};
  EXPECT_EQ(canonicalize(P({"-1/4", "0", "1/4"}), g4), P({"-1/2", "-1/4", "0"}));
  EXPECT_EQ(canonicalize(P({"0", "0", "0"}), g4), P({"-1/2", "-1/2", "-1/2"}));
  EXPECT_EQ(canonicalize(P({"1/4", "0", "-1/2"}), g4), canonicalize(P({"-1/2", "-1/4", "0"}), g4));
  EXPECT_THROW(canonicalize(P({"1/3", "0", "0"}), g4), DomainError);
}

TEST(CanonicalizeTest, MatchesBruteForceOrbitMinimum) {
  for (int n : {3, 5}) {
    for (int l = 2; l <= 6; ++l) {
      if (n == 5 && l > 4) continue;
      for (const Profile& b : testing::all_raw_profiles(n, l)) {
        ASSERT_EQ(canonicalize(b, {l}), testing::orbit_minimum(b, l)) << format_profile(b);
      }
    }
  }
}

TEST(EnumerationTest, OneRepresentativePerOrbit) {
  for (int n : {3, 5}) {
    for (int l = 2; l <= 7; ++l) {
      if (n == 5 && l > 5) continue;
      std::set<Profile> orbits;
      for (const Profile& b : testing::all_raw_profiles(n, l)) orbits.insert(testing::orbit_minimum(b, l));
      const std::vector<Profile> classes = enumerate_profiles(config(n, l));
      EXPECT_EQ(std::set<Profile>(classes.begin(), classes.end()), orbits) << n << ' ' << l;
      EXPECT_EQ(classes.size(), orbits.size());
      EXPECT_TRUE(std::is_sorted(classes.begin(), classes.end()));

      Integer total = 0;
      for (const Profile& b : classes) total += orbit_size(b, {l});
      Integer expected = 1;
      for (int i = 0; i < n; ++i) expected *= l;
      EXPECT_EQ(total, expected) << n << ' ' << l;
    }
  }
}

TEST(EnumerationTest, SmallestGrid) {
  const std::vector<Profile> classes = enumerate_profiles(config(3, 2));
  EXPECT_EQ(classes, (std::vector<Profile>{P({"-1/2", "-1/2", "-1/2"}), P({"-1/2", "-1/2", "0"})}));
  SearchConfig c = config(3, 2);
  c.max_distinct = 1;
  EXPECT_EQ(enumerate_profiles(c), (std::vector<Profile>{P({"-1/2", "-1/2", "-1/2"})}));
}

TEST(EnumerationTest, MaxDistinctFilter) {
  SearchConfig c = config(5, 6);
  c.max_distinct = 2;
  for (const Profile& b : enumerate_profiles(c)) {
    std::set<CyclePoint> distinct(b.reports().begin(), b.reports().end());
    EXPECT_LE(distinct.size(), 2u);
  }
}

TEST(WorstCaseTest, SmallestGridByHand) {
  const ApxRecord r = worst_case(config(3, 2));
  EXPECT_EQ(r.max_ratio, q(7, 6));
  EXPECT_EQ(r.witness, P({"-1/2", "-1/2", "0"}));
  EXPECT_EQ(r.canonical_classes, 2u);
  EXPECT_EQ(r.profiles_examined, Integer(8));
}

TEST(WorstCaseTest, AtLeastKnownWitness) {
  const ApxRecord r = worst_case(config(3, 4));
  EXPECT_GE(r.max_ratio, q(31, 24));
  EXPECT_LT(r.max_ratio, q(3, 2));
}

TEST(WorstCaseTest, MatchesRawEnumeration) {
  for (const MechanismId& m : {MechanismId::rd(), MechanismId::pcd(), MechanismId::rd_pcd()}) {
    for (int l = 2; l <= 6; ++l) {
      const SearchConfig c = config(3, l, m);
      const ApxRecord fast = worst_case(c);
      const RawSearchResult raw = worst_case_raw(c);
      EXPECT_EQ(fast.max_ratio, raw.max_ratio) << to_string(m) << " l=" << l;
      EXPECT_EQ(fast.profiles_examined, raw.profiles_examined);
      EXPECT_EQ(canonicalize(raw.witness, c.grid), fast.witness);
    }
  }
  const SearchConfig c5 = config(5, 4);
  EXPECT_EQ(worst_case(c5).max_ratio, worst_case_raw(c5).max_ratio);
}

TEST(WorstCaseTest, IndependentOfWorkerCount) {
  SearchConfig c = config(5, 6);
  const ApxRecord base = worst_case(c);
  for (int w : {2, 3, 8}) {
    c.workers = w;
    const ApxRecord r = worst_case(c);
    EXPECT_EQ(r.max_ratio, base.max_ratio);
    EXPECT_EQ(r.witness, base.witness);
    EXPECT_EQ(r.canonical_classes, base.canonical_classes);
    EXPECT_EQ(r.profiles_examined, base.profiles_examined);
  }
}

TEST(WorstCaseTest, PcdRejectsEvenN) {
  SearchConfig c = config(3, 4, MechanismId::pcd());
  c.n = 4;
  EXPECT_THROW(worst_case(c), ConfigError);
}

TEST(VerifySpTest, MechanismsAreStrategyproof) {
  for (const MechanismId& m : {MechanismId::rd(), MechanismId::pcd(), MechanismId::rd_pcd()}) {
    EXPECT_TRUE(verify_sp(config(3, 4, m)).empty()) << to_string(m);
  }
}

TEST(VerifySpTest, DetectsBrokenMechanism) {
  const std::vector<SpViolation> v = verify_sp(config(3, 4), antipode_dictator);
  ASSERT_FALSE(v.empty());
  for (const SpViolation& s : v) EXPECT_LT(s.deviated_cost, s.truthful_cost);
  SearchConfig c = config(3, 4);
  c.workers = 3;
  const std::vector<SpViolation> again = verify_sp(c, antipode_dictator);
  ASSERT_EQ(again.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_EQ(again[i].profile, v[i].profile);
    EXPECT_EQ(again[i].agent, v[i].agent);
    EXPECT_EQ(again[i].deviation, v[i].deviation);
  }
}

TEST(VerifyBoundsTest, NoViolations) {
  const BoundReport r = verify_bounds(config(3, 6));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_GT(r.classes_checked, 0u);
  EXPECT_LE(r.max_ratio, r.max_phi);
  EXPECT_LE(r.max_phi, q(7, 4));
}

TEST(VerifyChecksTest, ClosedFormsAndReduction) {
  const CheckReport cf = verify_closed_forms(config(5, 4));
  EXPECT_TRUE(cf.failures.empty());
  EXPECT_GT(cf.profiles_checked, 0u);
  const CheckReport red = verify_reduction(config(5, 4));
  EXPECT_TRUE(red.failures.empty());
  EXPECT_GT(red.profiles_checked, 0u);
}

}  // namespace
}  // namespace facloc
