#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "robustest/rng.hpp"
#include "robustest/sample.hpp"

namespace robustest::simlab {

/// mod1: Y = X^2 + 0.3 e, X, e iid N(0, 1).
/// mod2: Y = (X * 2(e - 1/2))^3, X ~ U[0, 1], e ~ B(1/2).
/// mod3: level ~ B(2/3); X | 0 ~ N(0, 1), X | 1 ~ chi2(2) / 2.
/// mw:   X ~ U[-1/2, 1/2] (n1), Y ~ N(0, 0.04^2) (n2 = 3 n1).
enum class ScenarioKind { mod1, mod2, mod3, mw };

std::string_view to_string(ScenarioKind kind);
/// Throws DomainError for an unknown name.
ScenarioKind parse_scenario(std::string_view name);

using TwoSamples = std::pair<Sample, Sample>;
using Dataset = std::variant<PairedSample, GroupedSample, TwoSamples>;

/// Deterministic in (seed, size, replicate_index). For mw, `size` is n1.
Dataset generate(ScenarioKind kind, std::size_t size, std::uint64_t seed,
                 std::uint64_t replicate_index);

/// Stream owned by one replicate of one (scenario, size) cell.
RngStream replicate_stream(ScenarioKind kind, std::size_t size, std::uint64_t seed,
                           std::uint64_t replicate_index);

/// Test labels applicable to each scenario, in report order.
std::vector<std::string> default_tests(ScenarioKind kind);

/// p-value of test `label` on one generated dataset. Throws DomainError when
/// the label does not apply to the dataset's shape.
double run_test(const std::string& label, const Dataset& data, double alpha,
                RngStream rng);

struct RejectionRow {
  std::string scenario;
  std::string test;
  std::size_t n = 0;
  double frequency = 0.0;
  double std_error = 0.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  /// Replicates where the test raised (degenerate draw); counted as
  /// non-rejections.
  std::size_t failures = 0;
};

struct RejectionReport {
  std::vector<RejectionRow> rows;

  const RejectionRow* find(std::string_view test, std::size_t n) const;
  /// scenario,test,n,frequency,stderr,N,seed (header line first).
  std::string to_csv() const;
  std::string to_text() const;
};

struct SimulationConfig {
  ScenarioKind scenario = ScenarioKind::mod1;
  std::vector<std::string> tests;  ///< empty: default_tests(scenario)
  std::vector<std::size_t> sizes;
  std::size_t replicates = 2000;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  unsigned workers = 0;  ///< 0: hardware concurrency
};

RejectionReport rejection_table(const SimulationConfig& config);

/// Runs fn(0..count-1) on `workers` threads and returns how many returned
/// true. fn must depend on its index only.
std::size_t parallel_count(std::size_t count, unsigned workers,
                           const std::function<bool(std::size_t)>& fn);

/// Per-index results, same contract as parallel_count.
std::vector<double> parallel_map(std::size_t count, unsigned workers,
                                 const std::function<double(std::size_t)>& fn);

/// sqrt(f (1 - f) / N).
double mc_standard_error(double frequency, std::size_t replicates) noexcept;

}  // namespace robustest::simlab
