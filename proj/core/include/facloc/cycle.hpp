#pragma once

// Geometry of the unit cycle G: the segment [-1/2, 1/2] with its endpoints
// joined. Points are stored as exact coordinates in [-1/2, 1/2); the joined
// endpoint is -1/2.

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "facloc/rational.hpp"

namespace facloc {

class CyclePoint {
 public:
  // The point 0.
  CyclePoint() = default;

  // Accepts coordinates in [-1/2, 1/2]; 1/2 is the joined endpoint and is
  // stored as -1/2. Throws DomainError outside that range.
  explicit CyclePoint(Rational coord);
  explicit CyclePoint(long long num, long long den = 1)
      : CyclePoint(Rational(num, den)) {}

  // Reduces any real coordinate modulo 1 into [-1/2, 1/2).
  static CyclePoint wrap(const Rational& coord);

  const Rational& coord() const { return coord_; }

  // Clockwise order: increasing coordinate starting at the joined endpoint.
  friend bool operator==(const CyclePoint& a, const CyclePoint& b) {
    return a.coord_ == b.coord_;
  }
  friend std::strong_ordering operator<=>(const CyclePoint& a,
                                          const CyclePoint& b) {
    if (a.coord_ < b.coord_) return std::strong_ordering::less;
    if (a.coord_ > b.coord_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational coord_;
};

enum class MetricKind { Cycle, Cut };

// Shortest-arc distance min(|b-a|, 1-|b-a|), in [0, 1/2].
Rational cycle_distance(const CyclePoint& a, const CyclePoint& b);
// Distance after cutting the cycle just before -1/2: |b-a|, in [0, 1).
Rational cut_distance(const CyclePoint& a, const CyclePoint& b);
Rational distance(const CyclePoint& a, const CyclePoint& b, MetricKind metric);

CyclePoint antipode(const CyclePoint& v);

// Moves `v` clockwise by `shift` (any rational), wrapping around the cycle.
CyclePoint rotate(const CyclePoint& v, const Rational& shift);
// The automorphism x -> -x.
CyclePoint reflect(const CyclePoint& v);

// Reports of agents -k..k, stored in agent order. n may be any positive
// integer; mechanisms that need odd n check it themselves.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<CyclePoint> reports);

  // Convenience for tests and examples: each value goes through CyclePoint's
  // range check.
  static Profile from_coords(std::span<const Rational> coords);

  std::size_t n() const { return reports_.size(); }
  // (n - 1) / 2.
  int k() const { return static_cast<int>((reports_.size() - 1) / 2); }

  const std::vector<CyclePoint>& reports() const { return reports_; }
  // Zero-based position in storage order.
  const CyclePoint& operator[](std::size_t pos) const { return reports_[pos]; }
  // Agent index in -k..k (storage position i + k).
  const CyclePoint& agent(int i) const;

  // Copy with the report at storage position `pos` replaced.
  Profile with_report(std::size_t pos, const CyclePoint& v) const;
  // Copy with reports sorted clockwise (stable, so ties keep agent order).
  Profile sorted() const;

  bool is_unanimous() const;

  friend bool operator==(const Profile&, const Profile&) = default;
  friend std::strong_ordering operator<=>(const Profile& a, const Profile& b) {
    return std::lexicographical_compare_three_way(
        a.reports_.begin(), a.reports_.end(), b.reports_.begin(),
        b.reports_.end());
  }

 private:
  std::vector<CyclePoint> reports_;
};

// Finite distribution over cycle points. Equal points are merged and zero
// entries dropped on construction; probabilities must lie in [0, 1] and sum
// to exactly 1 (DomainError otherwise). Entries are kept in clockwise order.
class Lottery {
 public:
  using Entry = std::pair<CyclePoint, Rational>;

  explicit Lottery(std::vector<Entry> entries);
  static Lottery point(const CyclePoint& v);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  // Probability of `v` (0 when outside the support).
  Rational probability(const CyclePoint& v) const;

  friend bool operator==(const Lottery&, const Lottery&) = default;

 private:
  std::vector<Entry> entries_;
};

// E_{X~l}[distance(v, X)].
Rational expected_cost(const CyclePoint& v, const Lottery& l, MetricKind metric);
// Sum of expected costs over all agents.
Rational social_cost(const Profile& b, const Lottery& l, MetricKind metric);
// Social cost of the degenerate lottery at v.
Rational social_cost(const Profile& b, const CyclePoint& v, MetricKind metric);

struct OptimalCost {
  Rational cost;
  CyclePoint point;
};

// Minimum of sc_b(v) over the whole cycle under d. sc_b is piecewise linear
// in v and only changes slope at reports and their antipodes, so evaluating
// those breakpoints is exact. Ties go to the smallest coordinate.
OptimalCost optimal_cost(const Profile& b);

// Every breakpoint attaining the optimum, in clockwise order.
std::vector<CyclePoint> optimal_points(const Profile& b);

// Maps a profile on a cycle of length z (coordinates in [0, z)) onto the unit
// cycle: divide by z, then re-center into [-1/2, 1/2).
Profile rescale_profile(std::span<const Rational> raw, const Rational& z);

}  // namespace facloc
