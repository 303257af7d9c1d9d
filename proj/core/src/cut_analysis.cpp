#include "facloc/cut_analysis.hpp"

#include <algorithm>
#include <set>

#include "facloc/error.hpp"

namespace facloc {
namespace {

const Rational kHalf(1, 2);

// Magnitudes |b_i| stored at position i + k.
using Magnitudes = std::vector<Rational>;

Magnitudes magnitudes_of(const std::vector<Rational>& values) {
  Magnitudes out;
  out.reserve(values.size());
  for (const Rational& v : values) out.push_back(abs(v));
  return out;
}

Rational rd_term(const Magnitudes& m) {
  const int k = static_cast<int>((m.size() - 1) / 2);
  Rational weighted = 0;
  for (int i = -k; i <= k; ++i) {
    weighted += Rational(std::abs(i)) * m[static_cast<std::size_t>(i + k)];
  }
  return 4 * weighted / (2 * k + 1);
}

Rational pcd_term(const Magnitudes& m) {
  const int k = static_cast<int>((m.size() - 1) / 2);
  auto at = [&](int i) -> const Rational& { return m[static_cast<std::size_t>(i + k)]; };
  Rational total = 0;
  for (const Rational& x : m) total += x;
  for (int j = 1; j <= k; ++j) {
    total += at(j) * (2 * k + 1 - 2 * j) * (at(j - k - 1) - at(j - k));
  }
  for (int j = -k; j <= -1; ++j) {
    total += at(j) * (2 * k + 1 + 2 * j) * (at(j + k + 1) - at(j + k));
  }
  return total;
}

std::vector<Rational> coords_of(const Profile& b) {
  std::vector<Rational> out;
  out.reserve(b.n());
  for (const CyclePoint& p : b.reports()) out.push_back(p.coord());
  return out;
}

bool is_boundary_value(const Rational& v) { return v == -kHalf || v == 0 || v == kHalf; }

std::vector<Rational> replace_value(const std::vector<Rational>& values,
                                    const Rational& from, const Rational& to) {
  std::vector<Rational> out = values;
  for (Rational& x : out) {
    if (x == from) x = to;
  }
  return out;
}

// One merge step on a non-dominated profile with w(b) > 0.
SegmentProfile reduction_step(const SegmentProfile& b) {
  const std::set<Rational> image(b.values().begin(), b.values().end());
  const auto v_it = std::find_if(image.begin(), image.end(),
                                 [](const Rational& x) { return !is_boundary_value(x); });
  const Rational& v = *v_it;

  Rational lower = -kHalf;
  Rational upper = kHalf;
  if (v_it != image.begin()) lower = *std::prev(v_it);
  if (std::next(v_it) != image.end()) upper = *std::next(v_it);

  SegmentProfile up(replace_value(b.values(), v, upper));
  SegmentProfile down(replace_value(b.values(), v, lower));
  return phi(up) >= phi(down) ? up : down;
}

}  // namespace

std::optional<NormalizedProfile> NormalizedProfile::from_profile(const Profile& b) {
  if (b.n() % 2 == 0) return std::nullopt;
  if (!std::is_sorted(b.reports().begin(), b.reports().end())) return std::nullopt;
  if (b.agent(0) != CyclePoint()) return std::nullopt;
  const OptimalCost opt = optimal_cost(b);
  if (social_cost(b, CyclePoint(), MetricKind::Cycle) != opt.cost) return std::nullopt;
  return NormalizedProfile(b);
}

bool is_normalized(const Profile& b) { return NormalizedProfile::from_profile(b).has_value(); }

NormalizedProfile normalize(const Profile& b) {
  if (b.n() % 2 == 0) throw DomainError("normalization needs an odd number of agents");
  std::optional<Profile> best;
  for (const CyclePoint& p : optimal_points(b)) {
    std::vector<CyclePoint> shifted;
    shifted.reserve(b.n());
    for (const CyclePoint& r : b.reports()) shifted.push_back(rotate(r, -p.coord()));
    Profile candidate = Profile(std::move(shifted)).sorted();
    if (!best || candidate < *best) best = std::move(candidate);
  }
  auto normalized = NormalizedProfile::from_profile(*best);
  if (!normalized) {
    throw Error("normalization produced a non-normalized profile: agent 0 at " +
                to_string(best->agent(0).coord()));
  }
  return *normalized;
}

Rational sc_cut_rd(const NormalizedProfile& b) {
  return rd_term(magnitudes_of(coords_of(b.profile())));
}

Rational sc_cut_pcd(const NormalizedProfile& b) {
  return pcd_term(magnitudes_of(coords_of(b.profile())));
}

SegmentProfile::SegmentProfile(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.size() % 2 == 0) {
    throw DomainError("segment profile needs an odd number of agents");
  }
  for (const Rational& v : values_) {
    if (v < -kHalf || v > kHalf) {
      throw DomainError("segment value " + to_string(v) + " outside [-1/2, 1/2]");
    }
  }
  if (!std::is_sorted(values_.begin(), values_.end())) {
    throw DomainError("segment profile must be non-decreasing");
  }
  if (at(0) != 0) throw DomainError("segment profile needs b_0 = 0");
  if (std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; })) {
    throw DomainError("phi is undefined on the all-zero profile");
  }
}

SegmentProfile SegmentProfile::from_normalized(const NormalizedProfile& b) {
  return SegmentProfile(coords_of(b.profile()));
}

Rational phi(const SegmentProfile& b) {
  const Magnitudes m = magnitudes_of(b.values());
  Rational denominator = 0;
  for (const Rational& x : m) denominator += x;
  return (rd_term(m) + pcd_term(m)) / (2 * denominator);
}

int nonboundary_count(const SegmentProfile& b) {
  std::set<Rational> distinct;
  for (const Rational& v : b.values()) {
    if (!is_boundary_value(v)) distinct.insert(v);
  }
  return static_cast<int>(distinct.size());
}

bool is_dominated(const SegmentProfile& b) {
  const auto zeros = std::count(b.values().begin(), b.values().end(), Rational(0));
  return zeros >= b.k() + 1;
}

SegmentProfile dominated_extremal(std::size_t n) {
  std::vector<Rational> values(n, Rational(0));
  values.back() = kHalf;
  return SegmentProfile(std::move(values));
}

std::vector<SegmentProfile> reduce_to_boundary_trace(const SegmentProfile& b) {
  std::vector<SegmentProfile> trace{b};
  while (nonboundary_count(trace.back()) > 0) {
    if (is_dominated(trace.back())) {
      trace.push_back(dominated_extremal(b.n()));
    } else {
      trace.push_back(reduction_step(trace.back()));
    }
  }
  return trace;
}

SegmentProfile reduce_to_boundary(const SegmentProfile& b) {
  return reduce_to_boundary_trace(b).back();
}

SegmentProfile BoundaryParams::expand() const {
  if (k < 1 || m_minus < 0 || m_plus < 0 || m_minus > k || m_plus > k) {
    throw DomainError("boundary parameters out of range");
  }
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(2 * k + 1));
  values.insert(values.end(), static_cast<std::size_t>(k - m_minus), -kHalf);
  values.insert(values.end(), static_cast<std::size_t>(1 + m_minus + m_plus), Rational(0));
  values.insert(values.end(), static_cast<std::size_t>(k - m_plus), kHalf);
  return SegmentProfile(std::move(values));
}

Rational phi_boundary(const BoundaryParams& p) {
  if (p.k < 1 || p.m_minus < 0 || p.m_plus < 0 || p.m_minus > p.k || p.m_plus > p.k) {
    throw DomainError("boundary parameters out of range");
  }
  const long long k = p.k;
  const long long a = p.m_plus;
  const long long c = p.m_minus;
  if (a + c >= 2 * k) {
    throw DomainError("phi_boundary denominator vanishes (m_minus + m_plus = 2k)");
  }
  const long long numerator = 8 * k * k + 8 * k - 2 * a * a - 2 * a - 2 * c * c - 2 * c + 1;
  const long long denominator = 2 * (2 * k + 1) * (2 * k - a - c);
  return Rational(numerator, denominator);
}

Rational boundary_phi_max(int k) {
  if (k < 1) throw DomainError("k must be positive");
  // For a fixed total t = m_minus + m_plus the denominator is fixed and the
  // numerator is largest for the balanced split.
  Rational best = -1;
  for (int t = 0; t < k; ++t) {
    const Rational value = phi_boundary({k, t - t / 2, t / 2});
    if (value > best) best = value;
  }
  return best;
}

Rational boundary_phi_max_exhaustive(int k) {
  if (k < 1) throw DomainError("k must be positive");
  Rational best = -1;
  for (int m_minus = 0; m_minus < k; ++m_minus) {
    for (int m_plus = 0; m_minus + m_plus + 1 <= k; ++m_plus) {
      const Rational value = phi_boundary({k, m_minus, m_plus});
      if (value > best) best = value;
    }
  }
  return best;
}

Rational boundary_phi_bound(int k) {
  const long long kk = k;
  return Rational(7 * kk * kk + 8 * kk + 2, 4 * kk * kk + 6 * kk + 2);
}

}  // namespace facloc
