#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "facloc/cycle.hpp"

namespace facloc {

// RD, PCD, or the half/half mixture of two mechanisms.
class MechanismId {
 public:
  enum class Kind { RD, PCD, Mix };

  static MechanismId rd() { return MechanismId(Kind::RD); }
  static MechanismId pcd() { return MechanismId(Kind::PCD); }
  static MechanismId mix(MechanismId first, MechanismId second);
  // Mix(RD, PCD).
  static MechanismId rd_pcd() { return mix(rd(), pcd()); }

  Kind kind() const { return kind_; }
  // Only valid for Kind::Mix.
  const MechanismId& first() const { return *first_; }
  const MechanismId& second() const { return *second_; }

  // Whether the mechanism needs odd n >= 3.
  bool requires_odd_n() const;

  friend bool operator==(const MechanismId& a, const MechanismId& b);

 private:
  explicit MechanismId(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::shared_ptr<const MechanismId> first_;
  std::shared_ptr<const MechanismId> second_;
};

// "rd", "pcd", "rd+pcd"; nested mixtures are parenthesised, e.g.
// "(rd+pcd)+rd".
std::string to_string(const MechanismId& m);
// Inverse of to_string; case-insensitive. Throws ParseError.
MechanismId parse_mechanism(std::string_view text);

// Probability of each reported point proportional to how many agents report it.
Lottery random_dictator(const Profile& b);

// Proportional Circle Distance. Agents are ordered clockwise (ties by agent
// index); the i-th agent in that order receives the length of the gap between
// the reports in positions i+k and i+k+1 (cyclically). The gaps tile the
// cycle, so the probabilities sum to 1 without normalisation. Throws
// UnsupportedMechanism unless n is odd and at least 3.
Lottery pcd(const Profile& b);

// Pointwise average of two lotteries.
Lottery mix(const Lottery& first, const Lottery& second);

Lottery apply(const MechanismId& m, const Profile& b);

// Any profile -> lottery map; used for test doubles in the search harness.
using MechanismFn = std::function<Lottery(const Profile&)>;
MechanismFn make_mechanism(const MechanismId& m);

struct ApxResult {
  Rational ratio;
  Rational mechanism_sc;
  Rational opt;
  CyclePoint opt_point;
};

// sc_b(m(b)) / opt_b under the cycle metric; 1 when opt_b = 0 (all reports
// coincide and the peaks-only mechanism returns that point).
ApxResult approximation_ratio(const MechanismId& m, const Profile& b);

}  // namespace facloc
