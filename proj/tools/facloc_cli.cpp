// facloc: evaluate mechanisms on explicit profiles, run grid searches,
// verify invariants and print phi values.
//
// Exit codes: 0 success or no violations, 1 violations found, 2 bad
// configuration or input.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "facloc/brute_force.hpp"
#include "facloc/cut_analysis.hpp"
#include "facloc/error.hpp"
#include "facloc/io.hpp"
#include "facloc/mechanisms.hpp"
#include "facloc/search.hpp"

namespace {

using namespace facloc;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitConfig = 2;

struct LRange {
  int lo = 0;
  int hi = 0;
};

// "2..8" or "6".
LRange parse_l_range(const std::string& text) {
  LRange r;
  try {
    const std::size_t dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string lo = text.substr(0, dots);
      const std::string hi = text.substr(dots + 2);
      r.lo = std::stoi(lo, &used);
      if (used != lo.size()) throw std::invalid_argument(text);
      r.hi = std::stoi(hi, &used);
      if (used != hi.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw ParseError("--l expects an integer or a range like 2..8, got '" + text + "'");
  }
  if (r.lo > r.hi) throw ConfigError("empty l range '" + text + "'");
  return r;
}

// Comma-separated fractions, or a JSON array of fraction strings.
std::vector<Rational> parse_values(const std::string& text) {
  if (!text.empty() && text.front() == '[') {
    const Profile b = profile_from_json(text);
    std::vector<Rational> values;
    for (const CyclePoint& p : b.reports()) values.push_back(p.coord());
    return values;
  }
  return parse_rational_list(text);
}

std::string with_decimal(const Rational& r) {
  return to_string(r) + " (" + to_decimal(r, 6) + ")";
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// eval ---------------------------------------------------------------------

struct EvalArgs {
  std::string profile;
  std::string mechanism = "rd+pcd";
  std::optional<std::string> cycle_length;
  bool oracle = false;
};

int run_eval(const EvalArgs& a) {
  const MechanismId m = parse_mechanism(a.mechanism);
  const std::vector<Rational> values = parse_values(a.profile);
  Profile b = a.cycle_length ? rescale_profile(values, parse_rational(*a.cycle_length))
                             : Profile::from_coords(values);

  const Lottery lottery = apply(m, b);
  const Rational sc = social_cost(b, lottery, MetricKind::Cycle);
  const OptimalCost opt = a.oracle ? optimal_cost_scan(b) : optimal_cost(b);
  const Rational ratio = opt.cost == 0 ? Rational(1) : sc / opt.cost;

  std::cout << "profile: " << format_profile(b) << '\n'
            << "mechanism: " << to_string(m) << '\n'
            << "lottery: " << format_lottery(lottery) << '\n'
            << "sc: " << to_string(sc) << '\n'
            << "opt: " << to_string(opt.cost) << " at " << to_string(opt.point.coord()) << '\n'
            << "ratio: " << to_string(ratio) << '\n';
  return kExitOk;
}

// search -------------------------------------------------------------------

struct SearchArgs {
  int n = 3;
  std::string l = "2..8";
  std::string mechanism = "rd+pcd";
  std::optional<int> max_distinct;
  int workers = 1;
  std::optional<std::string> out;
  std::optional<std::string> manifest;
  bool oracle = false;
};

ApxRecord oracle_record(const SearchConfig& c) {
  const RawSearchResult raw = worst_case_raw(c);
  ApxRecord r;
  r.n = c.n;
  r.l = c.grid.l;
  r.max_ratio = raw.max_ratio;
  r.witness = canonicalize(raw.witness, c.grid);
  r.profiles_examined = raw.profiles_examined;
  return r;
}

int run_search(const SearchArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const LRange range = parse_l_range(a.l);
  SearchConfig base;
  base.n = a.n;
  base.mechanism = parse_mechanism(a.mechanism);
  base.max_distinct = a.max_distinct;
  base.workers = a.workers;

  // Refuse the whole run up front rather than after partial output.
  std::vector<SearchConfig> configs;
  for (int l = range.lo; l <= range.hi; ++l) {
    SearchConfig c = base;
    c.grid.l = l;
    check_feasible(c);
    configs.push_back(c);
  }

  std::vector<SearchRow> rows;
  for (const SearchConfig& c : configs) {
    rows.push_back({a.oracle ? oracle_record(c) : worst_case(c), c.max_distinct.has_value()});
  }

  if (a.out) {
    std::ofstream file(*a.out, std::ios::binary);
    write_search_csv(file, rows);
    if (!file) throw ConfigError("could not write " + *a.out);
  } else {
    write_search_csv(std::cout, rows);
  }

  const SearchRow* top = &rows.front();
  for (const SearchRow& row : rows) {
    if (row.record.max_ratio > top->record.max_ratio) top = &row;
  }
  const bool below = top->record.max_ratio < Rational(3, 2);
  std::ostream& summary = a.out ? std::cout : std::cerr;
  summary << "max ratio " << with_decimal(top->record.max_ratio) << " at n=" << top->record.n
          << " l=" << top->record.l << " witness " << format_profile(top->record.witness) << '\n'
          << "below 3/2: " << (below ? "yes" : "no") << '\n';

  const std::optional<std::string> manifest_path =
      a.manifest ? a.manifest : (a.out ? std::optional<std::string>(*a.out + ".json") : std::nullopt);
  if (manifest_path) {
    json result = json::array();
    for (const SearchRow& row : rows) {
      json witness = json::array();
      for (const CyclePoint& p : row.record.witness.reports()) witness.push_back(to_string(p.coord()));
      result.push_back({{"n", row.record.n},
                        {"l", row.record.l},
                        {"max_ratio", to_string(row.record.max_ratio)},
                        {"witness", witness},
                        {"classes", row.record.canonical_classes},
                        {"profiles_examined", row.record.profiles_examined.str()},
                        {"restricted", row.restricted}});
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json config = {{"n", a.n},
                   {"l", a.l},
                   {"mechanism", to_string(base.mechanism)},
                   {"workers", a.workers},
                   {"oracle", a.oracle},
                   {"budget", enumeration_budget()}};
    config["max_distinct"] = a.max_distinct ? json(*a.max_distinct) : json(nullptr);
    const json manifest = {{"command", "search"},
                           {"config", config},
                           {"version", FACLOC_VERSION},
                           {"timestamp", utc_timestamp()},
                           {"elapsed_seconds", elapsed},
                           {"result",
                            {{"rows", result},
                             {"max_ratio", to_string(top->record.max_ratio)},
                             {"below_three_halves", below}}}};
    std::ofstream file(*manifest_path, std::ios::binary);
    file << manifest.dump(2) << '\n';
    if (!file) throw ConfigError("could not write " + *manifest_path);
  }
  return kExitOk;
}

// verify -------------------------------------------------------------------

struct VerifyArgs {
  int n = 3;
  std::string l = "6";
  std::string checks = "sp,bounds";
  std::string mechanism = "rd+pcd";
  int workers = 1;
  std::size_t max_report = 20;
};

std::vector<std::string> parse_checks(const std::string& text) {
  std::vector<std::string> checks;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item != "sp" && item != "bounds" && item != "closed-forms" && item != "reduction") {
      throw ParseError("unknown check '" + item + "' (expected sp, bounds, closed-forms, reduction)");
    }
    if (std::find(checks.begin(), checks.end(), item) == checks.end()) checks.push_back(item);
  }
  if (checks.empty()) throw ParseError("--checks is empty");
  return checks;
}

std::size_t print_failures(const std::string& check, const std::vector<std::string>& failures,
                           std::size_t limit) {
  for (std::size_t i = 0; i < std::min(limit, failures.size()); ++i) {
    std::cout << "  violation " << check << ": " << failures[i] << '\n';
  }
  return failures.size();
}

int run_verify(const VerifyArgs& a) {
  const std::vector<std::string> checks = parse_checks(a.checks);
  const LRange range = parse_l_range(a.l);
  const bool broken = a.mechanism == "broken-antipode";
  SearchConfig base;
  base.n = a.n;
  base.workers = a.workers;
  if (!broken) base.mechanism = parse_mechanism(a.mechanism);

  std::size_t total = 0;
  for (int l = range.lo; l <= range.hi; ++l) {
    SearchConfig c = base;
    c.grid.l = l;
    check_feasible(c);
    for (const std::string& check : checks) {
      std::size_t found = 0;
      std::string scope;
      if (check == "sp") {
        const std::vector<SpViolation> v =
            broken ? verify_sp(c, antipode_dictator) : verify_sp(c);
        for (std::size_t i = 0; i < std::min(a.max_report, v.size()); ++i) {
          std::cout << "  violation sp: profile " << format_profile(v[i].profile) << " agent "
                    << v[i].agent << " deviates to " << to_string(v[i].deviation.coord())
                    << ": cost " << to_string(v[i].truthful_cost) << " -> "
                    << to_string(v[i].deviated_cost) << '\n';
        }
        found = v.size();
        scope = broken ? "broken-antipode" : to_string(c.mechanism);
      } else if (check == "bounds") {
        const BoundReport r = verify_bounds(c);
        for (std::size_t i = 0; i < std::min(a.max_report, r.violations.size()); ++i) {
          const BoundViolation& v = r.violations[i];
          std::cout << "  violation bounds: " << v.what << " at " << format_profile(v.profile)
                    << " ratio " << to_string(v.ratio) << " phi " << to_string(v.phi) << '\n';
        }
        found = r.violations.size();
        scope = std::to_string(r.classes_checked) + " classes, max ratio " +
                to_string(r.max_ratio) + ", max phi " + to_string(r.max_phi);
      } else if (check == "closed-forms") {
        const CheckReport r = verify_closed_forms(c);
        found = print_failures(check, r.failures, a.max_report);
        scope = std::to_string(r.profiles_checked) + " normalized profiles";
      } else {
        const CheckReport r = verify_reduction(c);
        found = print_failures(check, r.failures, a.max_report);
        scope = std::to_string(r.profiles_checked) + " classes";
      }
      std::cout << check << " n=" << c.n << " l=" << l << ": " << found << " violations ("
                << scope << ")\n";
      total += found;
    }
  }
  std::cout << (total == 0 ? "OK" : "VIOLATIONS FOUND") << '\n';
  return total == 0 ? kExitOk : kExitViolations;
}

// phi ----------------------------------------------------------------------

struct PhiArgs {
  std::optional<std::string> profile;
  std::optional<std::string> boundary;
  std::optional<int> kmax;
  bool normalize = false;
};

int run_phi(const PhiArgs& a) {
  const int modes = int(a.profile.has_value()) + int(a.boundary.has_value()) + int(a.kmax.has_value());
  if (modes != 1) throw ConfigError("choose exactly one of --profile, --boundary, --kmax");

  if (a.profile) {
    std::vector<Rational> values = parse_values(*a.profile);
    if (a.normalize) {
      const Profile b = Profile::from_coords(values);
      if (b.is_unanimous()) throw DomainError("phi is undefined for a unanimous profile");
      const NormalizedProfile nb = normalize(b);
      values.clear();
      for (const CyclePoint& p : nb.profile().reports()) values.push_back(p.coord());
    }
    if (std::all_of(values.begin(), values.end(), [](const Rational& v) { return v == 0; })) {
      throw DomainError("phi is undefined for the zero profile");
    }
    std::cout << to_string(phi(SegmentProfile(std::move(values)))) << '\n';
    return kExitOk;
  }

  if (a.boundary) {
    const std::vector<Rational> parts = parse_rational_list(*a.boundary);
    if (parts.size() != 3 ||
        std::any_of(parts.begin(), parts.end(), [](const Rational& v) { return denominator_of(v) != 1; })) {
      throw ParseError("--boundary expects three integers k,m1,m-1");
    }
    BoundaryParams p;
    p.k = static_cast<int>(numerator_of(parts[0]));
    p.m_plus = static_cast<int>(numerator_of(parts[1]));
    p.m_minus = static_cast<int>(numerator_of(parts[2]));
    std::cout << to_string(phi_boundary(p)) << '\n';
    return kExitOk;
  }

  if (*a.kmax < 1) throw ConfigError("--kmax must be at least 1");
  std::cout << "k,boundary_phi_max,bound,boundary_phi_max_decimal\n";
  bool within = true;
  for (int k = 1; k <= *a.kmax; ++k) {
    const Rational best = boundary_phi_max(k);
    const Rational bound = boundary_phi_bound(k);
    within = within && best <= bound && bound <= Rational(7, 4);
    std::cout << k << ',' << to_string(best) << ',' << to_string(bound) << ','
              << to_decimal(best, 6) << '\n';
  }
  std::cout << "all rows <= 7/4: " << (within ? "yes" : "no") << '\n';
  return within ? kExitOk : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strategyproof facility location on the unit cycle"};
  app.set_version_flag("--version", FACLOC_VERSION);
  app.require_subcommand(1);

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a mechanism on one profile");
  eval_cmd->add_option("--profile", eval.profile, "Reports, e.g. \"-1/4,0,1/4\" or a JSON array")
      ->required();
  eval_cmd->add_option("--mechanism", eval.mechanism, "rd, pcd, rd+pcd or nested mixes")
      ->capture_default_str();
  eval_cmd->add_option("--cycle-length", eval.cycle_length,
                       "Treat reports as points in [0, z) on a cycle of length z");
  eval_cmd->add_flag("--oracle", eval.oracle)->group("");

  SearchArgs search;
  CLI::App* search_cmd = app.add_subcommand("search", "Worst-case ratio over grid profiles");
  search_cmd->add_option("--n", search.n, "Number of agents (odd)")->capture_default_str();
  search_cmd->add_option("--l", search.l, "Grid size or range, e.g. 2..8")->capture_default_str();
  search_cmd->add_option("--mechanism", search.mechanism)->capture_default_str();
  search_cmd->add_option("--max-distinct", search.max_distinct,
                         "Only profiles with at most this many distinct reports");
  search_cmd->add_option("--workers", search.workers)->capture_default_str();
  search_cmd->add_option("--out", search.out, "CSV output path (stdout when omitted)");
  search_cmd->add_option("--manifest", search.manifest,
                         "JSON manifest path (default: <out>.json)");
  search_cmd->add_flag("--oracle", search.oracle)->group("");

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Exhaustively check invariants on a grid");
  verify_cmd->add_option("--n", verify.n)->capture_default_str();
  verify_cmd->add_option("--l", verify.l, "Grid size or range")->capture_default_str();
  verify_cmd->add_option("--checks", verify.checks, "sp,bounds,closed-forms,reduction")
      ->capture_default_str();
  verify_cmd->add_option("--mechanism", verify.mechanism, "Mechanism for the sp check")
      ->capture_default_str();
  verify_cmd->add_option("--workers", verify.workers)->capture_default_str();
  verify_cmd->add_option("--max-report", verify.max_report, "Violations printed per check")
      ->capture_default_str();

  PhiArgs phi_args;
  CLI::App* phi_cmd = app.add_subcommand("phi", "Evaluate phi and its boundary closed form");
  phi_cmd->add_option("--profile", phi_args.profile,
                      "Sorted values in [-1/2, 1/2] with 0 in the middle");
  phi_cmd->add_flag("--normalize", phi_args.normalize,
                    "Normalise a cycle profile before evaluating phi");
  phi_cmd->add_option("--boundary", phi_args.boundary, "k,m1,m-1");
  phi_cmd->add_option("--kmax", phi_args.kmax, "Table of boundary maxima for k = 1..kmax");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*eval_cmd) return run_eval(eval);
    if (*search_cmd) return run_search(search);
    if (*verify_cmd) return run_verify(verify);
    return run_phi(phi_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
