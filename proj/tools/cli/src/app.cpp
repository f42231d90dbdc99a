#include "robustest_cli/app.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "robustest/correlation.hpp"
#include "robustest/ksdistfree.hpp"
#include "robustest/paired.hpp"
#include "robustest/simlab.hpp"
#include "robustest/tiebreak.hpp"
#include "robustest/twosample.hpp"
#include "robustest/variance.hpp"
#include "robustest_cli/csv.hpp"

namespace robustest::cli {
namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ROBUSTEST_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      throw DomainError(std::string("ROBUSTEST_SEED is not an integer: '") + env + "'");
    }
  }
  return kTableSeed;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string format_p(double p) {
  if (p < 2.2e-16) return "< 2.2e-16";
  return fmt("%.4g", p);
}

void write_text(std::ostream& out, const TestOutcome& r, const std::string& data) {
  out << "\n\t" << r.method << "\n\n";
  out << "data:  " << data << "\n";
  out << r.statistic_name << " = " << fmt("%.5g", r.statistic) << ", p-value ";
  const std::string p = format_p(r.p_value);
  out << (p.front() == '<' ? p : "= " + p) << "\n";
  if (!r.alternative.empty()) out << "alternative hypothesis: " << r.alternative << "\n";
  if (r.ci) {
    out << fmt("%.0f", 100.0 * r.ci->level) << " percent confidence interval:\n"
        << " " << fmt("%.7g", r.ci->lower) << " " << fmt("%.7g", r.ci->upper) << "\n";
  }
  if (r.estimate) {
    out << "sample estimates:\n"
        << "  " << (r.estimate_name.empty() ? "estimate" : r.estimate_name) << " = "
        << fmt("%.7g", *r.estimate) << "\n";
  }
  for (const auto& note : r.notes) out << "note: " << note << "\n";
  out << "\n";
}

void write_csv(std::ostream& out, const TestOutcome& r) {
  out << "method,statistic_name,statistic,p_value,estimate_name,estimate,ci_lower,ci_upper,"
         "ci_level,n,notes\n";
  std::string n;
  for (std::size_t i = 0; i < r.n_info.size(); ++i) n += (i ? ";" : "") + std::to_string(r.n_info[i]);
  std::string notes;
  for (std::size_t i = 0; i < r.notes.size(); ++i) notes += (i ? "; " : "") + r.notes[i];
  out << csv_field(r.method) << ',' << csv_field(r.statistic_name) << ','
      << fmt("%.17g", r.statistic) << ',' << fmt("%.17g", r.p_value) << ','
      << csv_field(r.estimate_name) << ',' << (r.estimate ? fmt("%.17g", *r.estimate) : "") << ','
      << (r.ci ? fmt("%.17g", r.ci->lower) : "") << ',' << (r.ci ? fmt("%.17g", r.ci->upper) : "")
      << ',' << (r.ci ? fmt("%.17g", r.ci->level) : "") << ',' << n << ',' << csv_field(notes)
      << '\n';
}

struct Common {
  std::string input;
  std::string filter;
  std::string format = "text";
  std::string ties = "none";
  std::string alternative = "two-sided";
  double alpha = 0.05;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

void add_input(CLI::App* sub, Common& c) {
  sub->add_option("--input", c.input, "CSV file with a header line")->required()->check(
      CLI::ExistingFile);
  sub->add_option("--filter", c.filter, "Keep rows where column==value");
}

void add_format(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();
}

void add_alpha(CLI::App* sub, Common& c) {
  sub->add_option("--alpha", c.alpha, "Level for confidence intervals")
      ->check(CLI::Range(0.0, 1.0).description("in (0, 1)"))
      ->capture_default_str();
  sub->add_option("--alternative", c.alternative, "Alternative hypothesis")
      ->check(CLI::IsMember({"two-sided"}))
      ->capture_default_str();
}

void add_ties(CLI::App* sub, Common& c) {
  sub->add_option("--ties-break", c.ties, "What to do with tied observations")
      ->check(CLI::IsMember({"none", "random"}))
      ->capture_default_str();
}

void add_seed(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Random seed (default: ROBUSTEST_SEED or built-in)");
}

TiesBreak ties_of(const Common& c) { return c.ties == "random" ? TiesBreak::random : TiesBreak::none; }

std::uint64_t seed_of(const CLI::App* sub, const Common& c) {
  return sub->count("--seed") > 0 ? c.seed : default_seed();
}

std::optional<RowFilter> filter_of(const Common& c) {
  if (c.filter.empty()) return std::nullopt;
  return parse_filter(c.filter);
}

void report(std::ostream& out, std::ostream& err, const Common& c, const TestOutcome& r,
            const std::string& data, std::size_t dropped) {
  if (dropped > 0) err << "warning: " << dropped << " row(s) with missing values dropped\n";
  if (c.format == "csv") {
    write_csv(out, r);
  } else {
    write_text(out, r, data);
  }
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size() || v < 2) {
      throw CLI::ValidationError("--sizes", "expected comma-separated integers >= 2, got '" + text + "'");
    }
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (sizes.empty()) throw CLI::ValidationError("--sizes", "no sizes given");
  return sizes;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust nonparametric tests and their simulation harness", "robustest"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Common c;
  std::string x, y, value, group, method = "pearson", baseline, scenario;
  std::string sizes_text;
  std::vector<std::string> tests;
  bool classic = false, paired = false;
  std::size_t replicates = 0;
  unsigned workers = 0;

  auto* cortest = app.add_subcommand("cortest", "Correlation test (Pearson, Kendall, Spearman)");
  add_input(cortest, c);
  cortest->add_option("--x", x, "First column")->required();
  cortest->add_option("--y", y, "Second column")->required();
  cortest->add_option("--method", method, "Correlation measure")
      ->check(CLI::IsMember({"pearson", "kendall", "spearman"}))
      ->capture_default_str();
  cortest->add_flag("--classic", classic, "Usual test instead of the robust one");
  add_alpha(cortest, c);
  add_ties(cortest, c);
  add_seed(cortest, c);
  add_format(cortest, c);

  auto* indeptest = app.add_subcommand("indeptest", "Kolmogorov-Smirnov test of independence");
  add_input(indeptest, c);
  indeptest->add_option("--x", x, "First column")->required();
  indeptest->add_option("--y", y, "Second column")->required();
  indeptest->add_option("--replicates", replicates, "Monte Carlo null draws")
      ->check(CLI::PositiveNumber);
  add_ties(indeptest, c);
  add_seed(indeptest, c);
  add_format(indeptest, c);

  auto* vartest = app.add_subcommand("vartest", "Equality of variances across groups");
  add_input(vartest, c);
  vartest->add_option("--value", value, "Numeric column")->required();
  vartest->add_option("--group", group, "Grouping column")->required();
  vartest->add_option("--baseline", baseline, "Run a classical test instead")
      ->check(CLI::IsMember({"fisher", "bartlett", "levene"}));
  add_alpha(vartest, c);
  add_format(vartest, c);

  auto* wilcox = app.add_subcommand("wilcoxtest", "Mann-Whitney or signed-rank test");
  add_input(wilcox, c);
  wilcox->add_option("--x", x, "First sample column");
  wilcox->add_option("--y", y, "Second sample column");
  wilcox->add_option("--value", value, "Numeric column (with --group)");
  wilcox->add_option("--group", group, "Two-level grouping column (with --value)");
  wilcox->add_flag("--paired", paired, "Signed-rank test on y - x");
  wilcox->add_flag("--classic", classic, "Usual test instead of the robust one");
  add_alpha(wilcox, c);
  add_ties(wilcox, c);
  add_seed(wilcox, c);
  add_format(wilcox, c);

  auto* median = app.add_subcommand("mediantest", "Order-statistic test and interval for the median");
  add_input(median, c);
  median->add_option("--x", x, "Differences, or first column with --y")->required();
  median->add_option("--y", y, "Second column; differences are y - x");
  add_alpha(median, c);
  add_format(median, c);

  auto* symtest = app.add_subcommand("symtest", "Kolmogorov-Smirnov test of symmetry about 0");
  add_input(symtest, c);
  symtest->add_option("--x", x, "Differences, or first column with --y")->required();
  symtest->add_option("--y", y, "Second column; differences are y - x");
  symtest->add_option("--replicates", replicates, "Monte Carlo null draws")
      ->check(CLI::PositiveNumber);
  add_seed(symtest, c);
  add_format(symtest, c);

  auto* simulate = app.add_subcommand("simulate", "Rejection frequencies under a simulation scenario");
  simulate->add_option("--scenario", scenario, "Scenario")
      ->required()
      ->check(CLI::IsMember({"mod1", "mod2", "mod3", "mw"}));
  simulate->add_option("--sizes", sizes_text, "Comma-separated sample sizes (n1 for mw)")->required();
  simulate->add_option("--replicates", replicates, "Replicates per cell (default 2000)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--tests", tests, "Test labels (default: all for the scenario)")
      ->delimiter(',');
  simulate->add_option("--workers", workers, "Worker threads (0: all cores)")->capture_default_str();
  simulate->add_option("--alpha", c.alpha, "Nominal level")
      ->check(CLI::Range(0.0, 1.0).description("in (0, 1)"))
      ->capture_default_str();
  add_seed(simulate, c);
  add_format(simulate, c);

  auto* tiebreak_cmd = app.add_subcommand("tiebreak", "Print a column with ties broken at random");
  add_input(tiebreak_cmd, c);
  tiebreak_cmd->add_option("--x", x, "Column")->required();
  add_seed(tiebreak_cmd, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cortest->parsed()) {
      const auto t = load_csv(c.input, {x, y}, filter_of(c));
      const PairedSample d(t.column(x), t.column(y));
      const RngStream rng(seed_of(cortest, c));
      CorrelationResult r;
      if (method == "pearson") {
        r = classic ? pearson_classic(d, c.alpha) : pearson_robust(d, c.alpha);
      } else if (method == "kendall") {
        r = classic ? kendall_classic(d, c.alpha, ties_of(c), rng)
                    : kendall_robust(d, c.alpha, ties_of(c), rng);
      } else {
        r = classic ? spearman_classic(d, c.alpha, ties_of(c), rng)
                    : spearman_robust(d, c.alpha, ties_of(c), rng);
      }
      report(out, err, c, r, x + " and " + y, t.dropped);
    } else if (indeptest->parsed()) {
      const auto t = load_csv(c.input, {x, y}, filter_of(c));
      const PairedSample d(t.column(x), t.column(y));
      const auto r = ks_independence_test(d, replicates ? replicates : kDefaultMcReplicates,
                                          RngStream(seed_of(indeptest, c)), ties_of(c));
      report(out, err, c, r, x + " and " + y, t.dropped);
    } else if (vartest->parsed()) {
      const auto t = load_csv(c.input, {value}, filter_of(c), {group});
      const GroupedSample g(t.column(value), t.label_column(group));
      TestOutcome r;
      if (baseline == "fisher") {
        const auto [a, b] = split_two_groups(g);
        r = fisher_vartest(a, b, c.alpha);
      } else if (baseline == "bartlett") {
        r = bartlett_test(g, c.alpha);
      } else if (baseline == "levene") {
        r = levene_bf_test(g, c.alpha);
      } else {
        r = vartest_robust(g, c.alpha);
      }
      report(out, err, c, r, value + " by " + group, t.dropped);
    } else if (wilcox->parsed()) {
      const RngStream rng(seed_of(wilcox, c));
      const bool by_group = !value.empty() || !group.empty();
      if (by_group == (!x.empty() || !y.empty())) {
        throw CLI::ValidationError("wilcoxtest", "give either --x and --y or --value and --group");
      }
      if (by_group && (value.empty() || group.empty())) {
        throw CLI::ValidationError("wilcoxtest", "--value and --group go together");
      }
      if (!by_group && (x.empty() || y.empty())) {
        throw CLI::ValidationError("wilcoxtest", "--x and --y go together");
      }
      if (paired && by_group) {
        throw CLI::ValidationError("wilcoxtest", "--paired needs --x and --y");
      }
      if (paired) {
        const auto t = load_csv(c.input, {x, y}, filter_of(c));
        const Sample diffs = PairedSample(t.column(x), t.column(y)).differences();
        const TestOutcome r = classic ? signedrank_classic(diffs, c.alpha, ties_of(c), rng)
                                      : TestOutcome(signedrank_robust(diffs, c.alpha, ties_of(c), rng));
        report(out, err, c, r, y + " - " + x, t.dropped);
      } else {
        std::optional<Sample> sx, sy;
        std::size_t dropped = 0;
        std::string data;
        if (by_group) {
          const auto t = load_csv(c.input, {value}, filter_of(c), {group});
          auto [a, b] = split_two_groups(GroupedSample(t.column(value), t.label_column(group)));
          sx.emplace(std::move(a));
          sy.emplace(std::move(b));
          dropped = t.dropped;
          data = value + " by " + group;
        } else {
          const auto tx = load_csv(c.input, {x}, filter_of(c));
          const auto ty = load_csv(c.input, {y}, filter_of(c));
          sx.emplace(tx.column(x));
          sy.emplace(ty.column(y));
          dropped = tx.dropped + ty.dropped;
          data = x + " and " + y;
        }
        const TestOutcome r = classic ? mannwhitney_classic(*sx, *sy, c.alpha, ties_of(c), rng)
                                      : TestOutcome(mannwhitney_robust(*sx, *sy, c.alpha, ties_of(c), rng));
        report(out, err, c, r, data, dropped);
      }
    } else if (median->parsed() || symtest->parsed()) {
      const bool two = !y.empty();
      const auto t = two ? load_csv(c.input, {x, y}, filter_of(c)) : load_csv(c.input, {x}, filter_of(c));
      const Sample diffs = two ? PairedSample(t.column(x), t.column(y)).differences() : Sample(t.column(x));
      const std::string data = two ? y + " - " + x : x;
      if (median->parsed()) {
        report(out, err, c, mediantest(diffs, c.alpha), data, t.dropped);
      } else {
        report(out, err, c,
               ks_symmetry_test(diffs, replicates ? replicates : kDefaultMcReplicates,
                                RngStream(seed_of(symtest, c))),
               data, t.dropped);
      }
    } else if (simulate->parsed()) {
      simlab::SimulationConfig config;
      config.scenario = simlab::parse_scenario(scenario);
      config.sizes = parse_sizes(sizes_text);
      config.tests = tests;
      if (replicates) config.replicates = replicates;
      config.alpha = c.alpha;
      config.seed = seed_of(simulate, c);
      config.workers = workers;
      const auto known = simlab::default_tests(config.scenario);
      for (const auto& label : tests) {
        if (std::find(known.begin(), known.end(), label) == known.end()) {
          throw CLI::ValidationError("--tests", "'" + label + "' does not apply to " + scenario);
        }
      }
      const auto table = simlab::rejection_table(config);
      out << (c.format == "csv" ? table.to_csv() : table.to_text());
    } else if (tiebreak_cmd->parsed()) {
      const auto t = load_csv(c.input, {x}, filter_of(c));
      RngStream rng(seed_of(tiebreak_cmd, c));
      const auto r = tiebreak(Sample(t.column(x)), rng);
      if (r.default_scale) err << "note: all values identical; unit perturbation scale used\n";
      out << x << "\n";
      for (double v : r.sample) out << fmt("%.17g", v) << "\n";
    }
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TieError& e) {
    err << "tie error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace robustest::cli
