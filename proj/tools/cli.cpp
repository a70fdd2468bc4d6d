// Copyright 2026 The gapkac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gapkac/additive.hpp"
#include "gapkac/gaps.hpp"
#include "gapkac/kubilius.hpp"
#include "gapkac/primes.hpp"
#include "gapkac/rankin.hpp"
#include "gapkac/serialize.hpp"
#include "gapkac/sieveeval.hpp"
#include "gapkac/version.hpp"

namespace gapkac::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
};

struct PlotSpec {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::size_t x_col = 1;  // 1-based, as gnuplot counts
  std::vector<std::size_t> y_cols;
  bool log_x = false;
};

struct Output {
  Json results;
  Table table;
  std::optional<PlotSpec> plot;
};

struct Common {
  std::string format = "csv";
  std::string out;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string plot;
};

struct Ceilings {
  std::uint64_t sieve = kDefaultSieveCeiling;
  std::uint64_t search = CoverOptions{}.search_ceiling;
  std::uint64_t bv = kBvCeiling;
};

struct Command {
  CLI::App* app;
  std::function<Output()> handler;
};

// Options every subcommand accepts but which are not echoed as params:
// they change where or how output is written, never its content.
const std::vector<std::string> kPlumbing = {"help", "format", "out", "threads", "seed", "plot"};

std::string u64s(std::uint64_t v) { return std::to_string(v); }

Natural parse_natural(const std::string& text, const std::string& what) {
  Natural n;
  if (text.empty() || n.set_str(text, 10) != 0) {
    throw UsageError(what + ": '" + text + "' is not an integer");
  }
  if (sgn(n) < 0) throw DomainError(what + " must be non-negative");
  return n;
}

Ratio parse_ratio(const std::string& text, const std::string& what) {
  Ratio q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw UsageError(what + ": '" + text + "' is not a rational number a/b");
  }
  q.canonicalize();
  return q;
}

std::vector<ResidueClass> parse_classes(const std::vector<std::string>& items,
                                        const std::string& what) {
  std::vector<ResidueClass> out;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError(what + ": expected p:h, got '" + item + "'");
    std::uint64_t p = 0, h = 0;
    try {
      std::size_t used = 0;
      p = std::stoull(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument(item);
      const auto tail = item.substr(colon + 1);
      h = std::stoull(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError(what + ": expected p:h, got '" + item + "'");
    }
    out.push_back(residue_class(p, h));  // DomainError unless p is prime and h < p
  }
  return out;
}

Json collect_params(const CLI::App& app) {
  Json params = Json::object();
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (std::find(kPlumbing.begin(), kPlumbing.end(), name) != kPlumbing.end()) continue;
    if (opt->get_type_size() == 0) {
      params[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() > 1) {
        params[name] = res;
      } else {
        params[name] = res.back();
      }
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    } else {
      params[name] = nullptr;
    }
  }
  return params;
}

void write_csv(std::ostream& os, const Table& t) {
  CsvWriter w(os);
  w.row(t.header);
  for (const auto& r : t.rows) w.row(r);
}

std::string gnuplot_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

void write_plot(const std::string& prefix, const Table& table, const PlotSpec& spec) {
  const std::string data = prefix + ".csv";
  const std::string script = prefix + ".gp";
  std::ofstream d(data, std::ios::binary);
  if (!d) throw UsageError("cannot write " + data);
  write_csv(d, table);
  std::ofstream g(script, std::ios::binary);
  if (!g) throw UsageError("cannot write " + script);
  g << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set title " << gnuplot_quote(spec.title) << "\n"
    << "set xlabel " << gnuplot_quote(spec.xlabel) << "\n"
    << "set ylabel " << gnuplot_quote(spec.ylabel) << "\n";
  if (spec.log_x) g << "set logscale x\n";
  g << "set terminal pngcairo size 960,600\n"
    << "set output " << gnuplot_quote(prefix + ".png") << "\n"
    << "plot ";
  for (std::size_t i = 0; i < spec.y_cols.size(); ++i) {
    if (i) g << ", \\\n     ";
    g << gnuplot_quote(data) << " using " << spec.x_col << ":" << spec.y_cols[i]
      << " with linespoints";
  }
  g << "\n";
}

SieveOptions sieve_options(const Common& c, const Ceilings& ceil) {
  SieveOptions o;
  o.threads = std::max(1u, c.threads);
  o.ceiling = ceil.sieve;
  return o;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", c.out, "Write results to this file instead of stdout");
  app->add_option("--threads", c.threads, "Worker threads; output does not depend on it")
      ->check(CLI::Range(1u, 256u));
  app->add_option("--seed", c.seed, "Random seed, echoed in the output");
  app->add_option("--plot", c.plot,
                  "Also write PREFIX.csv and a gnuplot script PREFIX.gp");
}

// ---------------------------------------------------------------------------
// Subcommands

Command cmd_primes(CLI::App& root, const Common& c, const Ceilings& ceil) {
  auto* app = root.add_subcommand("primes", "List the primes in [lo, limit] by a segmented sieve.");
  auto limit = std::make_shared<std::uint64_t>(0);
  auto lo = std::make_shared<std::uint64_t>(2);
  auto count_only = std::make_shared<bool>(false);
  app->add_option("--limit", *limit, "Upper end (inclusive)")->required();
  app->add_option("--lo", *lo, "Lower end (inclusive)");
  app->add_flag("--count-only", *count_only, "Report only pi(limit) - pi(lo - 1)");
  return {app, [=, &c, &ceil] {
    Output o;
    const auto opts = sieve_options(c, ceil);
    if (*count_only) {
      std::uint64_t count = 0;
      for_each_prime(*lo, *limit, [&](std::uint64_t) { ++count; }, opts);
      o.results = Json{{"lo", *lo}, {"limit", *limit}, {"count", count}};
      o.table = {{"count"}, {{u64s(count)}}};
      return o;
    }
    const auto primes = primes_in_range(*lo, *limit, opts);
    o.results = Json{{"lo", *lo}, {"limit", *limit}, {"count", primes.size()}, {"primes", primes}};
    o.table.header = {"p"};
    for (auto p : primes) o.table.rows.push_back({u64s(p)});
    return o;
  }};
}

Command cmd_gaps(CLI::App& root, const Common& c, const Ceilings& ceil) {
  auto* app = root.add_subcommand(
      "gaps",
      "Prime gaps d_n = p_{n+1} - p_n and their merits d_n / log p_n.\n"
      "  all      every gap with p_{n+1} <= limit\n"
      "  maximal  gaps larger than every earlier gap\n"
      "  merit    mean A and maximum G of the merits of the first n gaps");
  auto mode = std::make_shared<std::string>("maximal");
  auto limit = std::make_shared<std::uint64_t>(1000000);
  auto n = std::make_shared<std::uint64_t>(1000);
  auto step = std::make_shared<std::uint64_t>(0);
  app->add_option("--mode", *mode, "all, maximal or merit")
      ->check(CLI::IsMember({"all", "maximal", "merit"}));
  app->add_option("--limit", *limit, "Sieve limit for all/maximal");
  app->add_option("--n", *n, "Number of gaps for merit");
  app->add_option("--step", *step, "Report A and G every step gaps (0: only at n)");
  return {app, [=, &c, &ceil] {
    Output o;
    const auto opts = sieve_options(c, ceil);
    if (*mode == "merit") {
      const auto series = merit_series(*n, *step, opts);
      o.results = Json{{"n", *n}, {"series", series}};
      o.table.header = {"x", "count", "A", "G", "argmax_n"};
      for (const auto& s : series) {
        o.table.rows.push_back({format_double(s.x), u64s(s.count), format_double(s.A),
                                format_double(s.G), u64s(s.argmax_n)});
      }
      o.plot = PlotSpec{"Mean and maximal merit", "n", "merit", 1, {3, 4}, true};
      return o;
    }
    const auto gaps = *mode == "all" ? scan_gaps(*limit, opts) : maximal_gaps(*limit, opts);
    o.results = Json{{"limit", *limit}, {"mode", *mode}, {"count", gaps.size()}, {"gaps", gaps}};
    o.table.header = {"n", "p", "next", "gap", "merit"};
    for (const auto& g : gaps) {
      o.table.rows.push_back(
          {u64s(g.n), u64s(g.p), u64s(g.next), u64s(g.gap), format_double(g.merit)});
    }
    o.plot = PlotSpec{"Prime gaps", "p", "gap", 2, {4}, true};
    return o;
  }};
}

Command cmd_growth(CLI::App& root, const Common&, const Ceilings&) {
  auto* app = root.add_subcommand(
      "growth",
      "Historical lower-bound shapes for the largest gap below x (no constants):\n"
      "  westzynthius  log x log3 x / log4 x\n"
      "  erdos         log x log2 x / (log3 x)^2\n"
      "  rankin        log x log2 x log4 x / (log3 x)^2\n"
      "  fgkmt         log x log2 x log4 x / log3 x\n"
      "Every iterated logarithm used must be positive, otherwise exit 2.");
  auto x = std::make_shared<double>(0.0);
  auto log_x = std::make_shared<double>(0.0);
  auto variant = std::make_shared<std::string>("all");
  auto* ox = app->add_option("--x", *x, "x")->default_str("");
  auto* olog = app->add_option("--log-x", *log_x, "log x, for x beyond double range")->default_str("");
  ox->excludes(olog);
  app->add_option("--variant", *variant, "westzynthius, erdos, rankin, fgkmt or all")
      ->check(CLI::IsMember({"westzynthius", "erdos", "rankin", "fgkmt", "all"}));
  return {app, [=] {
    if (ox->count() == 0 && olog->count() == 0) throw UsageError("growth needs --x or --log-x");
    auto eval = [&](GrowthVariant v) {
      return ox->count() ? growth_bound(*x, v) : growth_bound_from_log(*log_x, v);
    };
    Output o;
    o.table.header = {"variant", "value"};
    o.results = Json::array();
    if (*variant != "all") {
      const auto v = *parse_growth_variant(*variant);
      const double value = eval(v);
      o.results.push_back(Json{{"variant", *variant}, {"value", json_number(value)}});
      o.table.rows.push_back({*variant, format_double(value)});
      return o;
    }
    for (auto v : {GrowthVariant::westzynthius, GrowthVariant::erdos, GrowthVariant::rankin,
                   GrowthVariant::fgkmt}) {
      const std::string name(to_string(v));
      try {
        const double value = eval(v);
        o.results.push_back(Json{{"variant", name}, {"value", json_number(value)}});
        o.table.rows.push_back({name, format_double(value)});
      } catch (const DomainError&) {
        o.results.push_back(Json{{"variant", name}, {"value", nullptr}});
        o.table.rows.push_back({name, "undefined"});
      }
    }
    return o;
  }};
}

Table cover_table(const CoveringAssignment& a) {
  Table t{{"p", "h", "hits"}, {}};
  const auto hits = a.hitting_numbers();
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    t.rows.push_back({u64s(a.classes[i].p), u64s(a.classes[i].h), u64s(hits[i])});
  }
  return t;
}

Command cmd_cover(CLI::App& root, const Common& c, const Ceilings& ceil) {
  auto* app = root.add_subcommand(
      "cover",
      "Cover 1..y by one residue class h_p mod p for each prime p < x.\n"
      "  greedy      repeatedly take the class hitting the most uncovered targets\n"
      "  exhaustive  full search; the cover whose CRT solution is least");
  auto x = std::make_shared<std::uint64_t>(0);
  auto y = std::make_shared<std::uint64_t>(0);
  auto method = std::make_shared<std::string>("exhaustive");
  auto allow_zero = std::make_shared<bool>(false);
  app->add_option("--x", *x, "Moduli are the primes below x")->required();
  app->add_option("--y", *y, "Targets 1..y")->required();
  app->add_option("--method", *method, "greedy or exhaustive")
      ->check(CLI::IsMember({"greedy", "exhaustive"}));
  app->add_flag("--allow-zero", *allow_zero, "Permit the class 0 mod p");
  return {app, [=, &c, &ceil] {
    CoverOptions opts;
    opts.allow_zero_residue = *allow_zero;
    opts.search_ceiling = ceil.search;
    opts.threads = std::max(1u, c.threads);
    std::optional<CoveringAssignment> a;
    if (*method == "greedy") {
      a = greedy_cover(*x, *y, opts);
    } else {
      a = exhaustive_cover(*x, *y, opts);
    }
    Output o;
    o.results = Json{{"method", *method},
                     {"counting_bound", passes_counting_bound(*x, *y)},
                     {"found", a.has_value()}};
    if (a) {
      o.results["complete"] = a->complete();
      o.results["assignment"] = *a;
      o.results["hitting_numbers"] = a->hitting_numbers();
      o.table = cover_table(*a);
    } else {
      o.table = {{"p", "h", "hits"}, {}};
    }
    return o;
  }};
}

Command cmd_crt(CLI::App& root, const Common& c, const Ceilings& ceil) {
  auto* app = root.add_subcommand(
      "crt",
      "Solve m0 = -h_p (mod p) for a covering (m0 = 1 mod unassigned primes p < x),\n"
      "then check that m + v is composite for 1 <= v <= y. Without --class the\n"
      "exhaustive cover is used.");
  auto x = std::make_shared<std::uint64_t>(0);
  auto y = std::make_shared<std::uint64_t>(0);
  auto classes = std::make_shared<std::vector<std::string>>();
  app->add_option("--x", *x, "Moduli are the primes below x")->required();
  app->add_option("--y", *y, "Targets 1..y")->required();
  app->add_option("--class", *classes, "Explicit class p:h (repeatable)")->default_str("");
  return {app, [=, &c, &ceil] {
    CoveringAssignment a;
    if (!classes->empty()) {
      a = CoveringAssignment::from_classes(*x, *y, parse_classes(*classes, "--class"));
    } else {
      CoverOptions opts;
      opts.search_ceiling = ceil.search;
      opts.threads = std::max(1u, c.threads);
      auto found = exhaustive_cover(*x, *y, opts);
      if (!found) throw DomainError("no covering of 1.." + u64s(*y) + " by primes below " + u64s(*x));
      a = *found;
    }
    const auto sol = crt_solve(a);
    const auto verdict = verify_composite_run(sol.m0, sol.modulus, *y);
    Output o;
    o.results = Json{{"assignment", a}, {"solution", sol}, {"verdict", verdict}};
    o.table = {{"M", "m0", "representative", "passed"},
               {{to_string(sol.modulus), to_string(sol.m0), to_string(verdict.representative),
                 verdict.passed ? "true" : "false"}}};
    return o;
  }};
}

Command cmd_verify_run(CLI::App& root, const Common&, const Ceilings&) {
  auto* app = root.add_subcommand(
      "verify-run",
      "Check that m + v is composite for 1 <= v <= y, for the least m = m0 (mod M)\n"
      "above y and above every prime factor of M.");
  auto m0 = std::make_shared<std::string>();
  auto M = std::make_shared<std::string>();
  auto y = std::make_shared<std::uint64_t>(0);
  app->add_option("--m0", *m0, "Residue (decimal, any size)")->required();
  app->add_option("--M", *M, "Modulus (decimal, any size)")->required();
  app->add_option("--y", *y, "Run length")->required();
  return {app, [=] {
    const auto v = verify_composite_run(parse_natural(*m0, "--m0"), parse_natural(*M, "--M"), *y);
    Output o;
    o.results = v;
    auto opt = [](const std::optional<std::uint64_t>& x) { return x ? u64s(*x) : std::string(); };
    o.table = {{"representative", "passed", "first_failing_v", "canonical_first_failing_v"},
               {{to_string(v.representative), v.passed ? "true" : "false",
                 opt(v.first_failing_v), opt(v.canonical_first_failing_v)}}};
    return o;
  }};
}

Command cmd_survivors(CLI::App& root, const Common&, const Ceilings&) {
  auto* app = root.add_subcommand(
      "survivors", "Primes q in (x, y] lying outside every class given by --a and --b.");
  auto x = std::make_shared<std::uint64_t>(0);
  auto y = std::make_shared<std::uint64_t>(0);
  auto a = std::make_shared<std::vector<std::string>>();
  auto b = std::make_shared<std::vector<std::string>>();
  app->add_option("--x", *x, "Lower end (exclusive)")->required();
  app->add_option("--y", *y, "Upper end (inclusive)")->required();
  app->add_option("--a", *a, "Class s:a_s (repeatable)")->default_str("");
  app->add_option("--b", *b, "Class p:b_p (repeatable)")->default_str("");
  return {app, [=] {
    const auto ca = parse_classes(*a, "--a");
    const auto cb = parse_classes(*b, "--b");
    const auto s = survivor_count(*x, *y, ca, cb);
    Output o;
    o.results = s;
    o.table.header = {"q"};
    for (auto q : s.survivors) o.table.rows.push_back({u64s(q)});
    return o;
  }};
}

Command cmd_params(CLI::App& root, const Common&, const Ceilings&) {
  auto* app = root.add_subcommand(
      "params",
      "Derived construction parameters for x: y = C0 x log x log3 x / log2 x,\n"
      "z = x^(log3 x / (4 log2 x)), G0 = (log x)^2, sigma1 = G0 (log2 x)^(-1/3),\n"
      "sigma2 = G0 (log2 x)^(-1/6), H = P(x)^sigma1, xi^2 = P(x)^sigma2.\n"
      "Needs log3 x clearly positive unless --toy is given.");
  auto x = std::make_shared<double>(0.0);
  auto C0 = std::make_shared<double>(1.0);
  auto toy = std::make_shared<bool>(false);
  app->add_option("--x", *x, "x")->required();
  app->add_option("--C0", *C0, "Constant C0");
  app->add_flag("--toy", *toy, "Allow small x (only x > e is required)");
  return {app, [=] {
    const auto p = params(*x, *C0, *toy);
    Output o;
    o.results = p;
    o.table.header = {"name", "value"};
    for (const auto& [key, value] : o.results.items()) {
      if (value.is_object()) {
        for (const auto& [k2, v2] : value.items()) {
          o.table.rows.push_back({key + "." + k2, v2.is_string() ? v2.get<std::string>() : v2.dump()});
        }
      } else {
        o.table.rows.push_back({key, value.is_string() ? value.get<std::string>() : value.dump()});
      }
    }
    return o;
  }};
}

Command cmd_omega(CLI::App& root, const Common&, const Ceilings&) {
  auto* app = root.add_subcommand(
      "omega",
      "omega(m), the number of distinct prime factors, and omega*(m), the count of\n"
      "those p >= log m / (log log m)^2. Defined for m >= 20.");
  auto m = std::make_shared<std::string>();
  auto from = std::make_shared<std::uint64_t>(0);
  auto to = std::make_shared<std::uint64_t>(0);
  auto* om = app->add_option("--m", *m, "Single m (decimal, any size)");
  auto* of = app->add_option("--from", *from, "Range start")->default_str("");
  auto* ot = app->add_option("--to", *to, "Range end (inclusive)")->default_str("");
  om->excludes(of)->excludes(ot);
  of->needs(ot);
  ot->needs(of);
  return {app, [=] {
    std::vector<AdditiveProfile> profiles;
    if (om->count()) {
      profiles.push_back(omega_star(parse_natural(*m, "--m")));
    } else if (of->count()) {
      if (*from > *to) throw DomainError("--from must not exceed --to");
      for (std::uint64_t v = *from; v <= *to; ++v) profiles.push_back(omega_star(v));
    } else {
      throw UsageError("omega needs --m or --from/--to");
    }
    Output o;
    o.results = profiles;
    o.table.header = {"m", "omega", "omega_star", "threshold"};
    for (const auto& p : profiles) {
      o.table.rows.push_back({to_string(p.m), std::to_string(p.omega),
                              std::to_string(p.omega_star), format_double(p.threshold)});
    }
    return o;
  }};
}

Command cmd_ek(CLI::App& root, const Common&, const Ceilings&) {
  auto* app = root.add_subcommand(
      "ek",
      "Empirical distribution of (omega(m) - log log m) / sqrt(log log m) over\n"
      "3 <= m <= n against the standard normal: CDF on a z grid, exact\n"
      "Kolmogorov-Smirnov distance, and the mass of (alpha - eps, alpha + eps).\n"
      "Also A(n) = sum 1/p and B(n) = sqrt(sum 1/p) over p <= n.");
  auto n = std::make_shared<std::uint32_t>(100000);
  auto alpha = std::make_shared<double>(0.0);
  auto eps = std::make_shared<double>(1.0);
  auto z_min = std::make_shared<double>(-3.0);
  auto z_max = std::make_shared<double>(3.0);
  auto z_step = std::make_shared<double>(0.25);
  app->add_option("--n", *n, "Sample 3..n")->check(CLI::Range(100u, 100000000u));
  app->add_option("--alpha", *alpha, "Interval centre");
  app->add_option("--eps", *eps, "Interval half-width");
  app->add_option("--z-min", *z_min, "Grid start");
  app->add_option("--z-max", *z_max, "Grid end");
  app->add_option("--z-step", *z_step, "Grid step")->check(CLI::PositiveNumber);
  return {app, [=] {
    const auto dist = erdos_kac_sample(*n);
    const auto norm = ek_normalization(StronglyAdditive::omega_function(), *n);
    Output o;
    o.table.header = {"z", "empirical", "gaussian"};
    Json cdf = Json::array();
    const auto steps = static_cast<long>(std::floor((*z_max - *z_min) / *z_step + 1e-9));
    for (long i = 0; i <= steps; ++i) {
      const double z = *z_min + static_cast<double>(i) * *z_step;
      const double e = dist.cdf(z);
      const double g = normal_cdf(z);
      cdf.push_back(Json{{"z", json_number(z)}, {"empirical", json_number(e)},
                         {"gaussian", json_number(g)}});
      o.table.rows.push_back({format_double(z), format_double(e), format_double(g)});
    }
    o.results = Json{{"n", *n},
                     {"samples", dist.size()},
                     {"ks_distance", json_number(dist.ks_distance())},
                     {"normalization", norm},
                     {"alpha", json_number(*alpha)},
                     {"eps", json_number(*eps)},
                     {"fraction_in", json_number(dist.fraction_in(*alpha - *eps, *alpha + *eps))},
                     {"gaussian_mass", json_number(gaussian_mass(*alpha, *eps))},
                     {"cdf", std::move(cdf)}};
    o.plot = PlotSpec{"Empirical vs normal CDF", "z", "F(z)", 1, {2, 3}, false};
    return o;
  }};
}

Command cmd_kubilius(CLI::App& root, const Common&, const Ceilings&) {
  auto* app = root.add_subcommand(
      "kubilius",
      "Classic finite model on 1..x with D = product of primes <= r: cells E_k for\n"
      "squarefree k | D, frequencies nu(E_k) = |E_k|/x and product measure\n"
      "mu(E_k) = (1/k) prod_{p | D/k} (1 - 1/p). Reports the total variation\n"
      "distance, the worst relative error of |E_k| against (x/k) prod (1 - 1/p)\n"
      "over k <= sqrt(x), and L = exp(-(u log u)/8) + x^(-1/10), u = log x / log r.");
  auto x = std::make_shared<std::uint64_t>(0);
  auto r = std::make_shared<std::uint64_t>(0);
  auto max_primes = std::make_shared<unsigned>(kDefaultMaxCellPrimes);
  app->add_option("--x", *x, "Sample space 1..x")->required();
  app->add_option("--r", *r, "Sieving primes p <= r")->required();
  app->add_option("--max-cell-primes", *max_primes, "Refuse models with more primes");
  return {app, [=] {
    const auto model = build_classic(*x, *r, *max_primes);
    const auto cmp = compare_classic(model);
    Output o;
    o.results = Json{{"model", model}, {"comparison", cmp}};
    o.table.header = {"k", "count", "nu", "mu"};
    for (const auto& cell : model.cells) {
      o.table.rows.push_back(
          {to_string(cell.k), u64s(cell.count), to_string(cell.nu), to_string(cell.mu)});
    }
    return o;
  }};
}

Command cmd_shifted(CLI::App& root, const Common&, const Ceilings&) {
  auto* app = root.add_subcommand(
      "shifted",
      "Shifted-prime model: roster m0 + rM + u over r in (r-lo, r-hi] with m0 + rM\n"
      "prime; cells by divisibility by the window primes in (window-lo, window-hi].\n"
      "mu is the normalized product measure prod_{p|k} 1/(p-1) prod_{p|D/k} (1 - 1/(p-1));\n"
      "mu_literal replaces the first product by 1/k. With --xi, also the remainder\n"
      "sum over k | D and d <= xi^2 of | |Q_d^(k)| - |S|/(phi(k) phi(d)) |.");
  auto M = std::make_shared<std::string>();
  auto m0 = std::make_shared<std::string>();
  auto u = std::make_shared<std::uint64_t>(0);
  auto r_lo = std::make_shared<std::uint64_t>(0);
  auto r_hi = std::make_shared<std::uint64_t>(0);
  auto w_lo = std::make_shared<std::uint64_t>(0);
  auto w_hi = std::make_shared<std::uint64_t>(0);
  auto max_primes = std::make_shared<unsigned>(kDefaultMaxCellPrimes);
  auto xi = std::make_shared<double>(0.0);
  auto defect_hi = std::make_shared<std::uint64_t>(0);
  app->add_option("--M", *M, "Modulus (decimal, any size)")->required();
  app->add_option("--m0", *m0, "Residue coprime to M")->required();
  app->add_option("--u", *u, "Shift");
  app->add_option("--r-lo", *r_lo, "r range start (exclusive)");
  app->add_option("--r-hi", *r_hi, "r range end (inclusive)")->required();
  app->add_option("--window-lo", *w_lo, "Window start (exclusive)")->required();
  app->add_option("--window-hi", *w_hi, "Window end (inclusive)")->required();
  app->add_option("--max-cell-primes", *max_primes, "Refuse windows with more primes");
  auto* oxi = app->add_option("--xi", *xi, "Also compute the remainder sum for d <= xi^2")
                  ->default_str("");
  auto* odef = app->add_option("--defect-hi", *defect_hi,
                               "Also count prime factors in (window-hi, defect-hi]")
                   ->default_str("");
  return {app, [=] {
    const auto model = build_shifted(parse_natural(*M, "--M"), parse_natural(*m0, "--m0"), *u,
                                     *r_lo, *r_hi, *w_lo, *w_hi, *max_primes);
    Output o;
    o.results = Json{{"model", model}};
    Json eta = Json::array();
    for (const auto& m : model.roster) {
      Json e{{"m", to_string(m)}, {"eta", eta_star(model, m)}};
      if (odef->count()) e["defect"] = window_defect(m, *w_hi, *defect_hi);
      eta.push_back(std::move(e));
    }
    o.results["eta"] = std::move(eta);
    if (oxi->count()) o.results["remainder_sum"] = shifted_remainder_sum(model, *xi);
    o.table.header = {"k", "count", "nu", "mu", "mu_literal"};
    for (const auto& cell : model.cells) {
      o.table.rows.push_back({to_string(cell.k), u64s(cell.count), to_string(cell.nu),
                              to_string(cell.mu_normalized), to_string(cell.mu_literal)});
    }
    return o;
  }};
}

Command cmd_simulate(CLI::App& root, const Common& c, const Ceilings& ceil) {
  auto* app = root.add_subcommand(
      "simulate",
      "Monte Carlo for eta = sum over window primes p of independent Bernoulli(1/(p-1)):\n"
      "fraction of (eta - centering)/scale inside (alpha - eps, alpha + eps) against\n"
      "the normal mass, with its binomial standard error. Centering and scale default\n"
      "to the exact mean and standard deviation of eta. Deterministic given --seed.");
  auto w_lo = std::make_shared<std::uint64_t>(2);
  auto w_hi = std::make_shared<std::uint64_t>(0);
  auto count = std::make_shared<std::uint64_t>(0);
  auto alpha = std::make_shared<double>(0.0);
  auto eps = std::make_shared<double>(1.0);
  auto samples = std::make_shared<std::uint64_t>(100000);
  auto centering = std::make_shared<double>(0.0);
  auto scale = std::make_shared<double>(1.0);
  app->add_option("--window-lo", *w_lo, "Window start (exclusive)");
  auto* ohi = app->add_option("--window-hi", *w_hi, "Window end (inclusive)")->default_str("");
  auto* ocount =
      app->add_option("--primes", *count, "Use the first N primes above window-lo")->default_str("");
  ohi->excludes(ocount);
  app->add_option("--alpha", *alpha, "Interval centre");
  app->add_option("--eps", *eps, "Interval half-width")->check(CLI::PositiveNumber);
  app->add_option("--samples", *samples, "Number of draws (>= 1000)");
  auto* ocen = app->add_option("--centering", *centering, "Override the centering")->default_str("");
  auto* osc = app->add_option("--scale", *scale, "Override the scale")->default_str("");
  return {app, [=, &c, &ceil] {
    std::vector<std::uint64_t> window;
    if (ocount->count()) {
      std::uint64_t p = *w_lo;
      while (window.size() < *count) {
        if (++p > ceil.sieve) throw ResourceError("window search passed the sieve ceiling");
        if (is_prime(p)) window.push_back(p);
      }
    } else if (ohi->count()) {
      if (*w_hi > *w_lo) window = primes_in_range(*w_lo + 1, *w_hi, sieve_options(c, ceil));
    } else {
      throw UsageError("simulate needs --window-hi or --primes");
    }
    const auto [mean, sd] = eta_moments(window);
    SimulationConfig cfg;
    cfg.centering = ocen->count() ? *centering : mean;
    cfg.scale = osc->count() ? *scale : sd;
    cfg.alpha = *alpha;
    cfg.eps = *eps;
    cfg.samples = *samples;
    cfg.seed = c.seed;
    cfg.threads = std::max(1u, c.threads);
    const auto rep = simulate_clt(window, cfg);
    Output o;
    o.results = Json{{"window_primes", window.size()},
                     {"first_prime", window.empty() ? Json(nullptr) : Json(window.front())},
                     {"last_prime", window.empty() ? Json(nullptr) : Json(window.back())},
                     {"centering", json_number(cfg.centering)},
                     {"scale", json_number(cfg.scale)},
                     {"report", rep}};
    o.table = {{"seed", "samples", "in_count", "fraction", "gaussian_mass", "standard_error",
                "z_score", "mean_eta"},
               {{u64s(rep.seed), u64s(rep.samples), u64s(rep.in_count), format_double(rep.fraction),
                 format_double(rep.gaussian_mass), format_double(rep.standard_error),
                 format_double(rep.z_score), format_double(rep.mean_eta)}}};
    return o;
  }};
}

Command cmd_sieve(CLI::App& root, const Common&, const Ceilings&) {
  auto* app = root.add_subcommand(
      "sieve",
      "Exact sieve evaluation on Q = {lo..hi}: S(Q, P, z) = #{a : p does not divide a\n"
      "for p in P, p < z}, W(z) = prod (1 - zeta(p)/p), tau = log xi / log z, and\n"
      "remainders R_d = |Q_d| - zeta(d) X / d for squarefree d < xi^2 together with\n"
      "sum 3^omega(d) |R_d|. P is the set of primes p >= p-min.");
  auto lo = std::make_shared<std::uint64_t>(1);
  auto hi = std::make_shared<std::uint64_t>(0);
  auto z = std::make_shared<std::uint64_t>(0);
  auto p_min = std::make_shared<std::uint64_t>(2);
  auto zeta = std::make_shared<std::string>("one");
  auto X = std::make_shared<std::string>();
  auto xi = std::make_shared<double>(2.0);
  auto kappa = std::make_shared<double>(1.0);
  auto A1 = std::make_shared<double>(2.0);
  auto A2 = std::make_shared<double>(1.0);
  app->add_option("--lo", *lo, "Q start");
  app->add_option("--hi", *hi, "Q end (inclusive)")->required();
  app->add_option("--z", *z, "Sift by primes below z")->required();
  app->add_option("--p-min", *p_min, "Smallest prime in P");
  app->add_option("--zeta", *zeta, "Density: one (zeta = 1) or p/(p-1)")
      ->check(CLI::IsMember({"one", "p/(p-1)"}));
  app->add_option("--X", *X, "Main-term size as a/b (default |Q|)");
  app->add_option("--xi", *xi, "Level xi")->check(CLI::PositiveNumber);
  app->add_option("--kappa", *kappa, "Sieve dimension");
  app->add_option("--A1", *A1, "Constant A1");
  app->add_option("--A2", *A2, "Constant A2");
  return {app, [=] {
    auto problem = interval_problem(*lo, *hi, *z);
    std::erase_if(problem.P, [&](std::uint64_t p) { return p < *p_min; });
    if (*zeta == "p/(p-1)") {
      problem.zeta = [](std::uint64_t p) { return ratio(natural(p), natural(p - 1)); };
    }
    if (!X->empty()) problem.X = parse_ratio(*X, "--X");
    problem.xi = *xi;
    problem.kappa = *kappa;
    problem.A1 = *A1;
    problem.A2 = *A2;
    const auto report = analyze(problem);
    Output o;
    o.results = report;
    o.table.header = {"d", "Q_d", "R_d"};
    for (const auto& r : report.remainders.entries) {
      o.table.rows.push_back({to_string(r.d), u64s(r.count), to_string(r.R)});
    }
    return o;
  }};
}

Command cmd_bv(CLI::App& root, const Common& c, const Ceilings& ceil) {
  auto* app = root.add_subcommand(
      "bv",
      "Sum over q <= Q with (q, R) = 1 of max_{X < Y} max_{(a, qR) = 1}\n"
      "|psi(X; qR, a) - X/phi(qR)|, evaluated exactly at every jump of psi, next to\n"
      "(Y/phi(R)) (log Y)^(-B) for B = 1, 2, 3 and Y^(1/2) R^2/phi(R) Q log(YQ)^5.");
  auto Y = std::make_shared<std::uint64_t>(0);
  auto Q = std::make_shared<std::uint64_t>(0);
  auto R = std::make_shared<std::uint64_t>(1);
  app->add_option("--Y", *Y, "Range X < Y")->required();
  app->add_option("--Q", *Q, "Largest q")->required();
  app->add_option("--R", *R, "Fixed factor R >= 1");
  return {app, [=, &c, &ceil] {
    const auto rep = bv_error_sum(*Y, *Q, *R, std::max(1u, c.threads), ceil.bv);
    Output o;
    o.results = rep;
    o.table.header = {"q", "max_error", "a", "X"};
    for (const auto& t : rep.terms) {
      o.table.rows.push_back({u64s(t.q), format_double(t.max_error), u64s(t.a), format_double(t.X)});
    }
    o.plot = PlotSpec{"Per-modulus maximal deviation", "q", "max error", 1, {2}, false};
    return o;
  }};
}

Command cmd_theorem_survey(CLI::App& root, const Common& c, const Ceilings& ceil) {
  auto* app = root.add_subcommand(
      "theorem-survey",
      "For every gap p_n -> p_{n+1} below limit with merit >= threshold, the statistic\n"
      "T = (omega*(p_n + u) - log log p_n) / sqrt(log log p_n) and the fraction of\n"
      "T in (alpha - eps, alpha + eps) next to the normal mass.");
  auto limit = std::make_shared<std::uint64_t>(0);
  auto merit = std::make_shared<double>(0.0);
  auto u = std::make_shared<std::uint64_t>(1);
  auto alpha = std::make_shared<double>(0.0);
  auto eps = std::make_shared<double>(1.0);
  app->add_option("--limit", *limit, "Sieve limit (>= 100)")->required();
  app->add_option("--merit", *merit, "Merit threshold");
  app->add_option("--u", *u, "Shift u >= 1");
  app->add_option("--alpha", *alpha, "Interval centre");
  app->add_option("--eps", *eps, "Interval half-width")->check(CLI::PositiveNumber);
  return {app, [=, &c, &ceil] {
    const auto s = theorem_survey(*limit, *merit, *u, *alpha, *eps, sieve_options(c, ceil));
    Output o;
    o.results = s;
    o.table.header = {"n", "p", "gap", "merit", "u", "omega_star", "T"};
    for (const auto& t : s.samples) {
      o.table.rows.push_back({u64s(t.gap.n), u64s(t.gap.p), u64s(t.gap.gap),
                              format_double(t.gap.merit), u64s(t.u),
                              std::to_string(t.omega_star), format_double(t.T)});
    }
    o.plot = PlotSpec{"omega* statistic at large gaps", "p", "T", 2, {7}, true};
    return o;
  }};
}

Ceilings read_ceilings() {
  Ceilings c;
  if (const char* env = std::getenv("GAPKAC_CEILING"); env && *env) {
    try {
      std::size_t used = 0;
      const std::string text(env);
      const auto v = std::stoull(text, &used);
      if (used != text.size() || v == 0) throw std::invalid_argument(text);
      c.sieve = c.search = c.bv = v;
    } catch (const std::logic_error&) {
      throw UsageError("GAPKAC_CEILING must be a positive integer");
    }
  }
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime gaps, Erdos-Rankin coverings, Erdos-Kac statistics and finite "
               "Kubilius models.",
               "gapkac"};
  app.footer(
      "Exit codes: 0 success, 1 usage error, 2 domain error (arguments outside a\n"
      "function's domain), 3 resource ceiling exceeded. GAPKAC_CEILING overrides\n"
      "the sieve, search and psi-range ceilings.");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.option_defaults()->always_capture_default();

  Ceilings ceil;
  try {
    ceil = read_ceilings();
  } catch (const UsageError& e) {
    err << "gapkac: " << e.what() << "\n";
    return kUsage;
  }

  std::vector<Common> commons(16);
  std::vector<Command> commands;
  std::size_t slot = 0;
  for (auto make : {cmd_primes, cmd_gaps, cmd_growth, cmd_cover, cmd_crt, cmd_verify_run,
                    cmd_survivors, cmd_params, cmd_omega, cmd_ek, cmd_kubilius, cmd_shifted,
                    cmd_simulate, cmd_sieve, cmd_bv, cmd_theorem_survey}) {
    Common& c = commons[slot++];
    commands.push_back(make(app, c, ceil));
    add_common(commands.back().app, c);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto& cmd = commands[i];
    if (!cmd.app->parsed()) continue;
    const Common& c = commons[i];
    try {
      const Output o = cmd.handler();
      std::ostringstream buffer;
      if (c.format == "json") {
        Json doc{{"command", cmd.app->get_name()},
                 {"params", collect_params(*cmd.app)},
                 {"seed", c.seed},
                 {"results", o.results},
                 {"version", kVersion}};
        buffer << doc.dump(2) << "\n";
      } else {
        write_csv(buffer, o.table);
      }
      if (!c.plot.empty()) {
        if (!o.plot) throw UsageError(cmd.app->get_name() + " has no plot");
        write_plot(c.plot, o.table, *o.plot);
      }
      if (c.out.empty()) {
        out << buffer.str();
      } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) throw UsageError("cannot write " + c.out);
        f << buffer.str();
      }
      return kOk;
    } catch (const UsageError& e) {
      err << "gapkac " << cmd.app->get_name() << ": " << e.what() << "\n";
      return kUsage;
    } catch (const DomainError& e) {
      err << "gapkac " << cmd.app->get_name() << ": domain error: " << e.what() << "\n";
      return kDomain;
    } catch (const ResourceError& e) {
      err << "gapkac " << cmd.app->get_name() << ": resource ceiling: " << e.what() << "\n";
      return kResource;
    } catch (const std::bad_alloc&) {
      err << "gapkac " << cmd.app->get_name() << ": out of memory\n";
      return kResource;
    }
  }
  return kUsage;
}

}  // namespace gapkac::cli
