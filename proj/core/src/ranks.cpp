#include "robustest/ranks.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace robustest {

std::vector<double> ranks(const Sample& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });
  std::vector<double> r(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && s[order[j]] == s[order[i]]) ++j;
    // positions i..j-1 (0-based) share ranks i+1..j
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) r[order[k]] = mid;
    i = j;
  }
  return r;
}

double ecdf_at(const Sample& s, double t, bool strict) {
  std::size_t count = 0;
  for (double v : s) count += strict ? (v < t) : (v <= t);
  return static_cast<double>(count) / static_cast<double>(s.size());
}

TieReport has_ties(const Sample& a, const Sample* b) {
  std::vector<double> pooled(a.begin(), a.end());
  if (b != nullptr) pooled.insert(pooled.end(), b->begin(), b->end());
  std::sort(pooled.begin(), pooled.end());
  TieReport report;
  for (std::size_t i = 1; i < pooled.size(); ++i) {
    if (pooled[i] != pooled[i - 1]) continue;
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    report.has_ties = true;
    report.value = pooled[i];
    report.multiplicity = j - i + 1;
    std::ostringstream msg;
    msg.precision(17);
    msg << "value " << pooled[i] << " occurs " << report.multiplicity << " times";
    report.description = msg.str();
    break;
  }
  return report;
}

}  // namespace robustest
