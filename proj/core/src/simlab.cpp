#include "robustest/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "robustest/correlation.hpp"
#include "robustest/errors.hpp"
#include "robustest/ksdistfree.hpp"
#include "robustest/parallel.hpp"
#include "robustest/twosample.hpp"
#include "robustest/variance.hpp"
#include "robustest/variates.hpp"

namespace robustest::simlab {
namespace {

enum class Shape { paired, grouped, two_samples };

Shape shape_of(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::mod1:
    case ScenarioKind::mod2:
      return Shape::paired;
    case ScenarioKind::mod3:
      return Shape::grouped;
    case ScenarioKind::mw:
      return Shape::two_samples;
  }
  return Shape::paired;
}

Shape shape_of(const Dataset& data) { return static_cast<Shape>(data.index()); }

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::paired:
      return "paired";
    case Shape::grouped:
      return "grouped";
    case Shape::two_samples:
      return "two-sample";
  }
  return "?";
}

const std::vector<std::string>& labels_for(Shape s) {
  static const std::vector<std::string> paired{"usual-P", "robust-P", "usual-K", "robust-K",
                                               "usual-S", "robust-S", "KS-indep"};
  static const std::vector<std::string> grouped{"Fisher", "Bartlett", "Levene", "VWelch"};
  static const std::vector<std::string> two{"robust-MW", "MW", "Welch", "KS"};
  switch (s) {
    case Shape::paired:
      return paired;
    case Shape::grouped:
      return grouped;
    case Shape::two_samples:
      return two;
  }
  return paired;
}

std::string size_label(ScenarioKind kind, std::size_t n) {
  if (kind == ScenarioKind::mw) return std::to_string(n) + ";" + std::to_string(3 * n);
  return std::to_string(n);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::mod1:
      return "mod1";
    case ScenarioKind::mod2:
      return "mod2";
    case ScenarioKind::mod3:
      return "mod3";
    case ScenarioKind::mw:
      return "mw";
  }
  return "?";
}

ScenarioKind parse_scenario(std::string_view name) {
  for (auto k : {ScenarioKind::mod1, ScenarioKind::mod2, ScenarioKind::mod3, ScenarioKind::mw}) {
    if (name == to_string(k)) return k;
  }
  throw DomainError("unknown scenario '" + std::string(name) + "' (expected mod1, mod2, mod3 or mw)");
}

RngStream replicate_stream(ScenarioKind kind, std::size_t size, std::uint64_t seed,
                           std::uint64_t replicate_index) {
  const std::uint64_t cell = mix64(mix64(static_cast<std::uint64_t>(kind) + 1) ^ size);
  return RngStream(seed, mix64(cell + replicate_index));
}

Dataset generate(ScenarioKind kind, std::size_t size, std::uint64_t seed,
                 std::uint64_t replicate_index) {
  if (size < 2) throw DomainError("scenario size must be at least 2");
  RngStream rng = replicate_stream(kind, size, seed, replicate_index).split(0);
  switch (kind) {
    case ScenarioKind::mod1: {
      std::vector<double> x(size), y(size);
      for (std::size_t i = 0; i < size; ++i) {
        x[i] = dist::standard_normal(rng);
        y[i] = x[i] * x[i] + 0.3 * dist::standard_normal(rng);
      }
      return PairedSample(std::move(x), std::move(y));
    }
    case ScenarioKind::mod2: {
      std::vector<double> x(size), y(size);
      for (std::size_t i = 0; i < size; ++i) {
        x[i] = rng.uniform();
        const double sign = dist::bernoulli(rng, 0.5) ? 1.0 : -1.0;
        y[i] = std::pow(x[i] * sign, 3.0);
      }
      return PairedSample(std::move(x), std::move(y));
    }
    case ScenarioKind::mod3: {
      std::vector<double> x(size);
      std::vector<std::string> level(size);
      for (std::size_t i = 0; i < size; ++i) {
        if (dist::bernoulli(rng, 2.0 / 3.0)) {
          level[i] = "1";
          x[i] = dist::chisq2(rng) / 2.0;
        } else {
          level[i] = "0";
          x[i] = dist::standard_normal(rng);
        }
      }
      return GroupedSample(std::move(x), std::move(level));
    }
    case ScenarioKind::mw: {
      std::vector<double> x(size), y(3 * size);
      for (double& v : x) v = dist::uniform(rng, -0.5, 0.5);
      for (double& v : y) v = 0.04 * dist::standard_normal(rng);
      return TwoSamples(Sample(std::move(x)), Sample(std::move(y)));
    }
  }
  throw DomainError("unknown scenario");
}

std::vector<std::string> default_tests(ScenarioKind kind) { return labels_for(shape_of(kind)); }

double run_test(const std::string& label, const Dataset& data, double alpha, RngStream rng) {
  const Shape shape = shape_of(data);
  const auto& known = labels_for(shape);
  if (std::find(known.begin(), known.end(), label) == known.end()) {
    throw DomainError("test '" + label + "' does not apply to " + shape_name(shape) + " data");
  }
  if (shape == Shape::paired) {
    const auto& d = std::get<PairedSample>(data);
    if (label == "usual-P") return pearson_classic(d, alpha).p_value;
    if (label == "robust-P") return pearson_robust(d, alpha).p_value;
    if (label == "usual-K") return kendall_classic(d, alpha, TiesBreak::none, rng).p_value;
    if (label == "robust-K") return kendall_robust(d, alpha, TiesBreak::none, rng).p_value;
    if (label == "usual-S") return spearman_classic(d, alpha, TiesBreak::none, rng).p_value;
    if (label == "robust-S") return spearman_robust(d, alpha, TiesBreak::none, rng).p_value;
    return ks_independence_test(d, kDefaultMcReplicates, rng).p_value;
  }
  if (shape == Shape::grouped) {
    const auto& g = std::get<GroupedSample>(data);
    if (label == "Fisher") {
      const auto [a, b] = split_two_groups(g);
      return fisher_vartest(a, b, alpha).p_value;
    }
    if (label == "Bartlett") return bartlett_test(g, alpha).p_value;
    if (label == "Levene") return levene_bf_test(g, alpha).p_value;
    return vartest_robust(g, alpha).p_value;
  }
  const auto& [x, y] = std::get<TwoSamples>(data);
  if (label == "robust-MW") return mannwhitney_robust(x, y, alpha, TiesBreak::none, rng).p_value;
  if (label == "MW") return mannwhitney_classic(x, y, alpha, TiesBreak::none, rng).p_value;
  if (label == "Welch") return welch_ttest(x, y, alpha).p_value;
  return ks_twosample(x, y, alpha, TiesBreak::none, rng).p_value;
}

const RejectionRow* RejectionReport::find(std::string_view test, std::size_t n) const {
  for (const auto& row : rows) {
    if (row.test == test && row.n == n) return &row;
  }
  return nullptr;
}

std::string RejectionReport::to_csv() const {
  std::ostringstream out;
  out << "scenario,test,n,frequency,stderr,N,seed\n";
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.test << ',' << r.n << ',' << format_number(r.frequency) << ','
        << format_number(r.std_error) << ',' << r.replicates << ',' << r.seed << '\n';
  }
  return out.str();
}

std::string RejectionReport::to_text() const {
  std::ostringstream out;
  if (rows.empty()) return "no rows\n";
  const ScenarioKind kind = parse_scenario(rows.front().scenario);
  char line[160];
  std::snprintf(line, sizeof line, "Rejection frequencies, scenario %s, N = %zu, seed = %llu\n",
                rows.front().scenario.c_str(), rows.front().replicates,
                static_cast<unsigned long long>(rows.front().seed));
  out << line;
  std::snprintf(line, sizeof line, "%-10s %-9s %9s %9s %8s\n", "test", "n", "frequency", "stderr",
                "failures");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-10s %-9s %9.4f %9.4f %8zu\n", r.test.c_str(),
                  size_label(kind, r.n).c_str(), r.frequency, r.std_error, r.failures);
    out << line;
  }
  return out.str();
}

RejectionReport rejection_table(const SimulationConfig& config) {
  if (config.replicates < 1) throw DomainError("replicate count must be at least 1");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (config.sizes.empty()) throw DomainError("at least one sample size is required");
  const std::vector<std::string> tests =
      config.tests.empty() ? default_tests(config.scenario) : config.tests;
  const auto& known = labels_for(shape_of(config.scenario));
  for (const auto& t : tests) {
    if (std::find(known.begin(), known.end(), t) == known.end()) {
      throw DomainError("test '" + t + "' does not apply to scenario " +
                        std::string(to_string(config.scenario)));
    }
  }

  enum : unsigned char { kAccept = 0, kReject = 1, kFailed = 2 };
  const std::size_t nt = tests.size();
  RejectionReport report;
  std::vector<std::vector<RejectionRow>> by_test(nt);
  for (std::size_t size : config.sizes) {
    std::vector<unsigned char> outcome(config.replicates * nt, kAccept);
    parallel_for(config.replicates, config.workers, [&](std::size_t r) {
      const RngStream base = replicate_stream(config.scenario, size, config.seed, r);
      std::optional<Dataset> data;
      try {
        data.emplace(generate(config.scenario, size, config.seed, r));
      } catch (const Error&) {
        for (std::size_t t = 0; t < nt; ++t) outcome[r * nt + t] = kFailed;
        return;
      }
      for (std::size_t t = 0; t < nt; ++t) {
        try {
          const double p = run_test(tests[t], *data, config.alpha, base.split(t + 1));
          outcome[r * nt + t] = p < config.alpha ? kReject : kAccept;
        } catch (const Error&) {
          outcome[r * nt + t] = kFailed;
        }
      }
    });
    for (std::size_t t = 0; t < nt; ++t) {
      std::size_t rejected = 0, failed = 0;
      for (std::size_t r = 0; r < config.replicates; ++r) {
        rejected += outcome[r * nt + t] == kReject;
        failed += outcome[r * nt + t] == kFailed;
      }
      RejectionRow row;
      row.scenario = std::string(to_string(config.scenario));
      row.test = tests[t];
      row.n = size;
      row.replicates = config.replicates;
      row.frequency = static_cast<double>(rejected) / static_cast<double>(config.replicates);
      row.std_error = mc_standard_error(row.frequency, config.replicates);
      row.seed = config.seed;
      row.failures = failed;
      by_test[t].push_back(std::move(row));
    }
  }
  for (auto& rows : by_test) {
    for (auto& row : rows) report.rows.push_back(std::move(row));
  }
  return report;
}

std::size_t parallel_count(std::size_t count, unsigned workers,
                           const std::function<bool(std::size_t)>& fn) {
  std::vector<unsigned char> hit(count, 0);
  parallel_for(count, workers, [&](std::size_t i) { hit[i] = fn(i) ? 1 : 0; });
  std::size_t total = 0;
  for (unsigned char h : hit) total += h;
  return total;
}

std::vector<double> parallel_map(std::size_t count, unsigned workers,
                                 const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(count);
  parallel_for(count, workers, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

double mc_standard_error(double frequency, std::size_t replicates) noexcept {
  if (replicates == 0) return 0.0;
  return std::sqrt(frequency * (1.0 - frequency) / static_cast<double>(replicates));
}

}  // namespace robustest::simlab
