#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robustest/sample.hpp"

namespace robustest {

/// Ranks 1..n in input order; tied values share the average of their ranks.
std::vector<double> ranks(const Sample& s);

/// (1/n) #{values <= t}, or #{values < t} when strict is set.
double ecdf_at(const Sample& s, double t, bool strict = false);

struct TieReport {
  bool has_ties = false;
  /// First duplicated value and its multiplicity, when has_ties.
  std::optional<double> value;
  std::size_t multiplicity = 0;
  std::string description;
};

/// Exact-equality duplicate check within `a`, or within the pooled a and b.
TieReport has_ties(const Sample& a, const Sample* b = nullptr);

}  // namespace robustest
