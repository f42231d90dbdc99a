#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace robustest {

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
};

/// Result shared by every test in the library.
struct TestOutcome {
  std::string method;
  /// Short symbol used when printing the statistic ("t", "z", "F", "D", ...).
  std::string statistic_name = "statistic";
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> estimate;
  std::string estimate_name;
  std::optional<ConfidenceInterval> ci;
  /// Human-readable alternative ("true correlation is not equal to 0").
  std::string alternative;
  std::vector<std::size_t> n_info;
  std::vector<std::string> notes;
};

/// Clamps a computed tail probability into [0, 1].
double clamp_probability(double p) noexcept;

}  // namespace robustest
