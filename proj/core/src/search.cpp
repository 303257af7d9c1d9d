#include "facloc/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <set>
#include <thread>

#include "facloc/error.hpp"
#include "facloc/io.hpp"

namespace facloc {
namespace {

// Multiplicity of each grid slot; sum equals n.
using Counts = std::vector<int>;

constexpr std::size_t kBatchSize = 4096;

int half_of(int l) { return l / 2; }

Rational slot_coord(int slot, int l) { return Rational(slot - half_of(l), l); }

int slot_of(const CyclePoint& p, int l) {
  const Rational scaled = p.coord() * l + half_of(l);
  if (denominator_of(scaled) != 1) {
    throw DomainError("report " + to_string(p.coord()) + " is not on the grid G_" +
                      std::to_string(l));
  }
  return static_cast<int>(numerator_of(scaled).convert_to<long long>());
}

Counts counts_of(const Profile& b, int l) {
  Counts c(static_cast<std::size_t>(l), 0);
  for (const CyclePoint& p : b.reports()) ++c[static_cast<std::size_t>(slot_of(p, l))];
  return c;
}

Profile profile_of(const Counts& c) {
  const int l = static_cast<int>(c.size());
  std::vector<CyclePoint> reports;
  for (int s = 0; s < l; ++s) {
    for (int m = 0; m < c[static_cast<std::size_t>(s)]; ++m) {
      reports.emplace_back(slot_coord(s, l));
    }
  }
  return Profile(std::move(reports));
}

// Image of `c` under slot s -> (sign*s + shift) mod l.
Counts image_of(const Counts& c, int shift, bool reflected) {
  const int l = static_cast<int>(c.size());
  Counts out(c.size());
  for (int s = 0; s < l; ++s) {
    const int base = reflected ? 2 * half_of(l) - s : s;
    const int t = ((base + shift) % l + l) % l;
    out[static_cast<std::size_t>(t)] = c[static_cast<std::size_t>(s)];
  }
  return out;
}

// The lexicographically largest count vector in the dihedral orbit. A larger
// count vector means a smaller sorted coordinate tuple.
Counts canonical_counts(const Counts& c) {
  Counts best = c;
  const int l = static_cast<int>(c.size());
  for (int reflected = 0; reflected < 2; ++reflected) {
    for (int shift = 0; shift < l; ++shift) {
      Counts img = image_of(c, shift, reflected != 0);
      if (img > best) best = std::move(img);
    }
  }
  return best;
}

bool is_canonical(const Counts& c) {
  const int l = static_cast<int>(c.size());
  for (int reflected = 0; reflected < 2; ++reflected) {
    for (int shift = 0; shift < l; ++shift) {
      if (image_of(c, shift, reflected != 0) > c) return false;
    }
  }
  return true;
}

// Count vectors in lexicographically decreasing order with at most
// `max_distinct` nonzero slots. With `canonical_only`, slots never exceed
// slot 0 (necessary for orbit maximality) and non-maximal vectors are
// skipped.
class CountsEnumerator {
 public:
  CountsEnumerator(int n, int l, int max_distinct, bool canonical_only,
                   const std::function<void(const Counts&)>& visit)
      : n_(n), max_distinct_(max_distinct), canonical_only_(canonical_only),
        visit_(visit), counts_(static_cast<std::size_t>(l), 0) {}

  void run() { fill(0, n_, 0); }

 private:
  void fill(std::size_t slot, int remaining, int distinct) {
    if (slot + 1 == counts_.size() || remaining == 0) {
      if (remaining > 0) {
        if (distinct + 1 > max_distinct_) return;
        if (canonical_only_ && remaining > counts_[0]) return;
      }
      const std::size_t last = counts_.size() - 1;
      const int saved = counts_[last];
      if (slot <= last) counts_[last] = remaining;
      if (!canonical_only_ || is_canonical(counts_)) visit_(counts_);
      counts_[last] = saved;
      return;
    }
    int top = remaining;
    if (canonical_only_ && slot > 0) top = std::min(top, counts_[0]);
    const int bottom = (canonical_only_ && slot == 0) ? 1 : 0;
    for (int m = top; m >= bottom; --m) {
      const int next_distinct = distinct + (m > 0 ? 1 : 0);
      if (next_distinct > max_distinct_) continue;
      counts_[slot] = m;
      fill(slot + 1, remaining - m, next_distinct);
    }
    counts_[slot] = 0;
  }

  int n_;
  int max_distinct_;
  bool canonical_only_;
  const std::function<void(const Counts&)>& visit_;
  Counts counts_;
};

Integer factorial(int m) {
  Integer f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

Integer orbit_size_of(const Counts& c) {
  std::set<Counts> images;
  const int l = static_cast<int>(c.size());
  for (int reflected = 0; reflected < 2; ++reflected) {
    for (int shift = 0; shift < l; ++shift) images.insert(image_of(c, shift, reflected != 0));
  }
  int n = 0;
  for (const int m : c) n += m;
  Integer arrangements = factorial(n);
  for (const int m : c) arrangements /= factorial(m);
  return arrangements * static_cast<long long>(images.size());
}

double binomial(int top, int bottom) {
  if (bottom < 0 || bottom > top) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= bottom; ++i) r = r * (top - bottom + i) / i;
  return r;
}

using ProfileSource = std::function<void(const std::function<void(const Profile&)>&)>;

// Feeds profiles from `source` in batches to `workers` threads. Each thread
// folds its contiguous slice into a fresh Local with `eval`; slices are then
// merged into `total` in slice order, so the outcome only depends on the
// order of `source`.
template <class Local, class Eval, class Merge>
void map_reduce(const ProfileSource& source, int workers, Local& total, Eval eval,
                Merge merge) {
  std::vector<Profile> batch;
  batch.reserve(kBatchSize);

  auto flush = [&] {
    if (batch.empty()) return;
    const std::size_t parts =
        std::min<std::size_t>(static_cast<std::size_t>(workers), batch.size());
    std::vector<Local> locals(parts);
    std::vector<std::exception_ptr> errors(parts);
    auto work = [&](std::size_t part) {
      const std::size_t begin = batch.size() * part / parts;
      const std::size_t end = batch.size() * (part + 1) / parts;
      try {
        for (std::size_t i = begin; i < end; ++i) eval(batch[i], locals[part]);
      } catch (...) {
        errors[part] = std::current_exception();
      }
    };
    if (parts == 1) {
      work(0);
    } else {
      std::vector<std::jthread> threads;
      threads.reserve(parts - 1);
      for (std::size_t part = 1; part < parts; ++part) threads.emplace_back(work, part);
      work(0);
    }
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
    for (Local& local : locals) merge(total, std::move(local));
    batch.clear();
  };

  source([&](const Profile& b) {
    batch.push_back(b);
    if (batch.size() == kBatchSize) flush();
  });
  flush();
}

ProfileSource class_source(const SearchConfig& c) {
  return [c](const std::function<void(const Profile&)>& visit) { for_each_class(c, visit); };
}

const Rational kSevenQuarters(7, 4);

}  // namespace

std::vector<CyclePoint> grid_points(const GridSpec& g) {
  if (g.l < 2) throw ConfigError("grid needs l >= 2 points (got " + std::to_string(g.l) + ")");
  std::vector<CyclePoint> points;
  points.reserve(static_cast<std::size_t>(g.l));
  for (int s = 0; s < g.l; ++s) points.emplace_back(slot_coord(s, g.l));
  return points;
}

std::uint64_t enumeration_budget() {
  if (const char* env = std::getenv("FACLOC_ENUM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || value == 0) {
      throw ConfigError(std::string("FACLOC_ENUM_BUDGET must be a positive integer (got '") +
                        env + "')");
    }
    return value;
  }
  return 10'000'000ULL;
}

void validate(const SearchConfig& c) {
  if (c.n < 3 || c.n % 2 == 0) {
    throw ConfigError("n must be odd and at least 3 (got " + std::to_string(c.n) + ")");
  }
  if (c.grid.l < 2) throw ConfigError("l must be at least 2 (got " + std::to_string(c.grid.l) + ")");
  if (c.max_distinct && *c.max_distinct < 1) throw ConfigError("max_distinct must be >= 1");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
}

double estimate_class_count(const SearchConfig& c) {
  const int l = c.grid.l;
  double multisets = 0.0;
  if (c.max_distinct) {
    const int top = std::min({*c.max_distinct, l, c.n});
    for (int d = 1; d <= top; ++d) multisets += binomial(l, d) * binomial(c.n - 1, d - 1);
  } else {
    multisets = binomial(l + c.n - 1, c.n);
  }
  return multisets / (2.0 * l);
}

void check_feasible(const SearchConfig& c) {
  validate(c);
  if (c.max_distinct) return;
  const std::uint64_t budget = c.budget.value_or(enumeration_budget());
  const double estimate = estimate_class_count(c);
  if (estimate > static_cast<double>(budget)) {
    throw ConfigError("about " + std::to_string(static_cast<long long>(estimate)) +
                      " classes for n=" + std::to_string(c.n) + ", l=" +
                      std::to_string(c.grid.l) + " exceed the budget of " +
                      std::to_string(budget) +
                      "; restrict the search with max_distinct (e.g. 3) or raise "
                      "FACLOC_ENUM_BUDGET");
  }
}

Profile canonicalize(const Profile& b, const GridSpec& g) {
  grid_points(g);
  return profile_of(canonical_counts(counts_of(b, g.l)));
}

Integer orbit_size(const Profile& b, const GridSpec& g) {
  grid_points(g);
  return orbit_size_of(counts_of(b, g.l));
}

void for_each_class(const SearchConfig& c, const std::function<void(const Profile&)>& visit) {
  validate(c);
  const std::function<void(const Counts&)> on_counts = [&](const Counts& counts) {
    visit(profile_of(counts));
  };
  CountsEnumerator(c.n, c.grid.l, c.max_distinct.value_or(c.n), true, on_counts).run();
}

std::vector<Profile> enumerate_profiles(const SearchConfig& c) {
  std::vector<Profile> out;
  for_each_class(c, [&](const Profile& b) { out.push_back(b); });
  return out;
}

void for_each_sorted_profile(int n, const GridSpec& g, std::optional<int> max_distinct,
                             const std::function<void(const Profile&)>& visit) {
  grid_points(g);
  if (n < 1) throw ConfigError("n must be positive");
  const std::function<void(const Counts&)> on_counts = [&](const Counts& counts) {
    visit(profile_of(counts));
  };
  CountsEnumerator(n, g.l, max_distinct.value_or(n), false, on_counts).run();
}

ApxRecord worst_case(const SearchConfig& c) {
  check_feasible(c);

  struct Best {
    std::optional<Rational> ratio;
    std::optional<Profile> witness;
    Integer examined = 0;
    std::uint64_t classes = 0;
  };
  auto better = [](const Best& a, const Best& b) {
    if (!b.ratio) return false;
    if (!a.ratio) return true;
    if (*b.ratio != *a.ratio) return *b.ratio > *a.ratio;
    return *b.witness < *a.witness;
  };

  Best total;
  map_reduce(
      class_source(c), c.workers, total,
      [&](const Profile& b, Best& local) {
        Rational ratio = approximation_ratio(c.mechanism, b).ratio;
        local.examined += orbit_size(b, c.grid);
        ++local.classes;
        Best candidate{std::move(ratio), b, 0, 0};
        if (better(local, candidate)) {
          local.ratio = std::move(candidate.ratio);
          local.witness = std::move(candidate.witness);
        }
      },
      [&](Best& acc, Best&& part) {
        acc.examined += part.examined;
        acc.classes += part.classes;
        if (better(acc, part)) {
          acc.ratio = std::move(part.ratio);
          acc.witness = std::move(part.witness);
        }
      });

  return ApxRecord{c.n, c.grid.l, *total.ratio, *total.witness, total.examined, total.classes};
}

Lottery antipode_dictator(const Profile& b) { return Lottery::point(antipode(b[0])); }

std::vector<SpViolation> verify_sp(const SearchConfig& c) {
  return verify_sp(c, make_mechanism(c.mechanism));
}

std::vector<SpViolation> verify_sp(const SearchConfig& c, const MechanismFn& mechanism) {
  check_feasible(c);
  const std::vector<CyclePoint> grid = grid_points(c.grid);

  std::vector<SpViolation> total;
  map_reduce(
      class_source(c), c.workers, total,
      [&](const Profile& b, std::vector<SpViolation>& local) {
        const Lottery truthful = mechanism(b);
        for (std::size_t agent = 0; agent < b.n(); ++agent) {
          const CyclePoint& ideal = b[agent];
          const Rational honest = expected_cost(ideal, truthful, MetricKind::Cycle);
          for (const CyclePoint& v : grid) {
            if (v == ideal) continue;
            Rational deviated =
                expected_cost(ideal, mechanism(b.with_report(agent, v)), MetricKind::Cycle);
            if (deviated < honest) {
              local.push_back({b, agent, v, honest, std::move(deviated)});
            }
          }
        }
      },
      [](std::vector<SpViolation>& acc, std::vector<SpViolation>&& part) {
        acc.insert(acc.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
      });
  return total;
}

BoundReport verify_bounds(const SearchConfig& c) {
  check_feasible(c);
  const MechanismId mechanism = MechanismId::rd_pcd();

  BoundReport total;
  total.max_ratio = 0;
  total.max_phi = 0;
  map_reduce(
      class_source(c), c.workers, total,
      [&](const Profile& b, BoundReport& local) {
        ++local.classes_checked;
        const Rational ratio = approximation_ratio(mechanism, b).ratio;
        if (ratio > local.max_ratio) local.max_ratio = ratio;
        if (b.is_unanimous()) {
          if (ratio != 1) local.violations.push_back({b, "unanimous ratio != 1", ratio, 0});
          return;
        }
        const NormalizedProfile normalized = normalize(b);
        const Rational normalized_ratio =
            approximation_ratio(mechanism, normalized.profile()).ratio;
        const Rational bound = phi(SegmentProfile::from_normalized(normalized));
        if (bound > local.max_phi) local.max_phi = bound;
        if (normalized_ratio != ratio) {
          local.violations.push_back({b, "normalization changed the ratio", normalized_ratio, bound});
        }
        if (ratio > bound) local.violations.push_back({b, "ratio > phi", ratio, bound});
        if (bound > kSevenQuarters) local.violations.push_back({b, "phi > 7/4", ratio, bound});
      },
      [](BoundReport& acc, BoundReport&& part) {
        acc.classes_checked += part.classes_checked;
        if (part.max_ratio > acc.max_ratio) acc.max_ratio = part.max_ratio;
        if (part.max_phi > acc.max_phi) acc.max_phi = part.max_phi;
        acc.violations.insert(acc.violations.end(),
                              std::make_move_iterator(part.violations.begin()),
                              std::make_move_iterator(part.violations.end()));
      });
  return total;
}

CheckReport verify_closed_forms(const SearchConfig& c) {
  validate(c);
  const ProfileSource source = [&c](const std::function<void(const Profile&)>& visit) {
    for_each_sorted_profile(c.n, c.grid, c.max_distinct, visit);
  };

  CheckReport total;
  map_reduce(
      source, c.workers, total,
      [](const Profile& b, CheckReport& local) {
        const auto normalized = NormalizedProfile::from_profile(b);
        if (!normalized) return;
        ++local.profiles_checked;
        auto fail = [&](const std::string& what) {
          local.failures.push_back(what + " at " + format_profile(b));
        };

        const Lottery rd_lottery = random_dictator(b);
        const Lottery pcd_lottery = pcd(b);
        const Lottery mixed = mix(rd_lottery, pcd_lottery);
        if (sc_cut_rd(*normalized) != social_cost(b, rd_lottery, MetricKind::Cut)) {
          fail("RD cut closed form");
        }
        if (sc_cut_pcd(*normalized) != social_cost(b, pcd_lottery, MetricKind::Cut)) {
          fail("PCD cut closed form");
        }
        for (const Lottery* l : {&rd_lottery, &pcd_lottery, &mixed}) {
          if (social_cost(b, *l, MetricKind::Cut) < social_cost(b, *l, MetricKind::Cycle)) {
            fail("cut decreased a social cost");
          }
        }
        if (social_cost(b, CyclePoint(), MetricKind::Cut) !=
            social_cost(b, CyclePoint(), MetricKind::Cycle)) {
          fail("cut changed sc(0)");
        }
        const int k = b.k();
        auto cut_sc = [&](int agent) {
          return social_cost(b, b.agent(agent), MetricKind::Cut);
        };
        for (int i = 1; i <= k; ++i) {
          const Rational expected = (2 * i - 1) * (normalized->magnitude(i) -
                                                   normalized->magnitude(i - 1));
          if (cut_sc(i) - cut_sc(i - 1) != expected) fail("incremental difference (i > 0)");
        }
        for (int i = -k; i <= -1; ++i) {
          const Rational expected = (-2 * i - 1) * (normalized->magnitude(i) -
                                                    normalized->magnitude(i + 1));
          if (cut_sc(i) - cut_sc(i + 1) != expected) fail("incremental difference (i < 0)");
        }
      },
      [](CheckReport& acc, CheckReport&& part) {
        acc.profiles_checked += part.profiles_checked;
        acc.failures.insert(acc.failures.end(), part.failures.begin(), part.failures.end());
      });
  return total;
}

CheckReport verify_reduction(const SearchConfig& c) {
  check_feasible(c);
  CheckReport total;
  map_reduce(
      class_source(c), c.workers, total,
      [](const Profile& b, CheckReport& local) {
        if (b.is_unanimous()) return;
        ++local.profiles_checked;
        const SegmentProfile start = SegmentProfile::from_normalized(normalize(b));
        const std::vector<SegmentProfile> trace = reduce_to_boundary_trace(start);
        for (std::size_t i = 1; i < trace.size(); ++i) {
          if (nonboundary_count(trace[i]) >= nonboundary_count(trace[i - 1])) {
            local.failures.push_back("reduction step kept w at " + format_profile(b));
          }
          if (phi(trace[i]) < phi(trace[i - 1])) {
            local.failures.push_back("reduction step lowered phi at " + format_profile(b));
          }
        }
        if (nonboundary_count(trace.back()) != 0) {
          local.failures.push_back("reduction did not reach a boundary profile at " +
                                   format_profile(b));
        }
        if (phi(trace.back()) > kSevenQuarters) {
          local.failures.push_back("boundary phi > 7/4 at " + format_profile(b));
        }
      },
      [](CheckReport& acc, CheckReport&& part) {
        acc.profiles_checked += part.profiles_checked;
        acc.failures.insert(acc.failures.end(), part.failures.begin(), part.failures.end());
      });
  return total;
}

}  // namespace facloc
