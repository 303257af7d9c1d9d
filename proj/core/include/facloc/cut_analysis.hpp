#pragma once

// Bounding machinery for Mix(RD, PCD): normalised profiles, social costs
// after cutting the cycle just before -1/2, the bound phi, and its reduction
// to profiles taking only the values -1/2, 0 and 1/2.

#include <optional>
#include <vector>

#include "facloc/cycle.hpp"
#include "facloc/rational.hpp"

namespace facloc {

// Profile with odd n such that
//   * point 0 minimises the social cost over the cycle,
//   * reports are non-decreasing in agent index -k..k,
//   * agent 0 reports 0.
class NormalizedProfile {
 public:
  // nullopt when `b` violates any of the conditions.
  static std::optional<NormalizedProfile> from_profile(const Profile& b);

  const Profile& profile() const { return profile_; }
  int k() const { return profile_.k(); }
  // |b_i| for agent i in -k..k.
  Rational magnitude(int agent) const { return abs(profile_.agent(agent).coord()); }

  friend bool operator==(const NormalizedProfile&, const NormalizedProfile&) = default;

 private:
  explicit NormalizedProfile(Profile b) : profile_(std::move(b)) {}
  Profile profile_;
};

bool is_normalized(const Profile& b);

// Rotates an optimal point to 0 and relabels agents clockwise from -1/2.
// Among several optimal points the one giving the lexicographically smallest
// sorted profile wins. Anonymity and neutrality of RD and PCD make the
// approximation ratio invariant under this map. Requires odd n.
NormalizedProfile normalize(const Profile& b);

// sum_i 4|i|/(2k+1) |b_i|, the cut social cost of RD(b).
Rational sc_cut_rd(const NormalizedProfile& b);

// Cut social cost of PCD(b):
//   sum_{j>0} |b_j| (2k+1-2j) (|b_{j-k-1}| - |b_{j-k}|)
// + sum_j |b_j|
// + sum_{j<0} |b_j| (2k+1+2j) (|b_{j+k+1}| - |b_{j+k}|).
Rational sc_cut_pcd(const NormalizedProfile& b);

// A non-decreasing tuple of values in [-1/2, 1/2] indexed by agents -k..k
// with b_0 = 0 and at least one nonzero entry. Unlike cycle points, 1/2 and
// -1/2 are distinct here (the two ends of the cut segment).
class SegmentProfile {
 public:
  // Throws DomainError when the invariants do not hold.
  explicit SegmentProfile(std::vector<Rational> values);
  // The coordinates of a normalised profile; throws DomainError when the
  // profile is unanimous (phi is undefined there).
  static SegmentProfile from_normalized(const NormalizedProfile& b);

  const std::vector<Rational>& values() const { return values_; }
  std::size_t n() const { return values_.size(); }
  int k() const { return static_cast<int>((values_.size() - 1) / 2); }
  const Rational& at(int agent) const {
    return values_[static_cast<std::size_t>(agent + k())];
  }

  friend bool operator==(const SegmentProfile&, const SegmentProfile&) = default;

 private:
  std::vector<Rational> values_;
};

// (sc'(RD(b)) + sc'(PCD(b))) / (2 sc'(0)), expanded with the closed forms so
// that it is defined on every SegmentProfile.
Rational phi(const SegmentProfile& b);

// Number of distinct values outside {-1/2, 0, 1/2}.
int nonboundary_count(const SegmentProfile& b);

// At least k+1 agents report 0.
bool is_dominated(const SegmentProfile& b);

// (0, ..., 0, 1/2) with n agents; phi equals 3/2 - 1/n there.
SegmentProfile dominated_extremal(std::size_t n);

// The sequence b = s_0, s_1, ..., s_m visited by reduce_to_boundary; s_m has
// no non-boundary values.
std::vector<SegmentProfile> reduce_to_boundary_trace(const SegmentProfile& b);

// Removes non-boundary values one at a time without decreasing phi. A value
// v is merged into its lower or upper neighbour in the image (falling back to
// -1/2 or 1/2 at the ends), whichever gives the larger phi (ties go upward).
// A dominated profile jumps straight to dominated_extremal(n).
SegmentProfile reduce_to_boundary(const SegmentProfile& b);

// The boundary profile with k - m_minus entries -1/2, 1 + m_minus + m_plus
// zeros and k - m_plus entries 1/2.
struct BoundaryParams {
  int k = 1;
  int m_minus = 0;
  int m_plus = 0;

  // Non-dominated when m_minus + m_plus + 1 <= k.
  bool is_dominated() const { return m_minus + m_plus + 1 > k; }
  // Throws DomainError unless 0 <= m_minus, m_plus <= k and k >= 1.
  SegmentProfile expand() const;
};

// (8k^2 + 8k - 2m+^2 - 2m+ - 2m-^2 - 2m- + 1) / (2(2k+1)(2k - m+ - m-)).
// Equals phi(p.expand()) for non-dominated parameters only. Throws DomainError
// when the denominator vanishes or the parameters are out of range.
Rational phi_boundary(const BoundaryParams& p);

// Largest phi_boundary over non-dominated parameters (m_minus + m_plus < k).
Rational boundary_phi_max(int k);
// Same, by enumerating every feasible pair; kept for cross-checks.
Rational boundary_phi_max_exhaustive(int k);
// (7k^2 + 8k + 2) / (4k^2 + 6k + 2), attained by boundary_phi_max at odd k.
Rational boundary_phi_bound(int k);

}  // namespace facloc
