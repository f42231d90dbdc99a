#include "robustest/tiebreak.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "robustest/errors.hpp"
#include "robustest/ranks.hpp"

namespace robustest {
namespace {

bool all_distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace

TiebreakResult tiebreak(const Sample& s, RngStream& rng) {
  std::vector<double> sorted = s.sorted();
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  TiebreakResult result{s, false, false};
  if (distinct.size() == sorted.size()) return result;
  result.ties_found = true;

  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < distinct.size(); ++i) gap = std::min(gap, distinct[i] - distinct[i - 1]);
  if (distinct.size() == 1) {
    gap = 1.0;
    result.default_scale = true;
  }
  const double half = 0.5 * gap;

  std::map<double, std::size_t> multiplicity;
  for (double v : sorted) ++multiplicity[v];

  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<double> out(s.begin(), s.end());
    for (double& v : out) {
      if (multiplicity[v] > 1) v += (2.0 * rng.uniform() - 1.0) * half;
    }
    if (all_distinct(out)) {
      result.sample = Sample(std::move(out));
      return result;
    }
  }
  throw DegenerateInput("tie-breaking could not separate values; the smallest gap is below "
                        "floating-point resolution");
}

void require_no_ties(const Sample& s, const std::string& what) {
  const TieReport report = has_ties(s);
  if (report.has_ties) {
    throw TieError("ties in " + what + " (" + report.description +
                   "); rerun with ties_break=random");
  }
}

Sample resolve_ties(const Sample& s, TiesBreak policy, RngStream& rng, const std::string& what,
                    std::vector<std::string>& notes) {
  if (!has_ties(s).has_ties) return s;
  if (policy == TiesBreak::none) require_no_ties(s, what);
  TiebreakResult broken = tiebreak(s, rng);
  notes.push_back("ties in " + what + " broken at random");
  if (broken.default_scale) notes.push_back("all values of " + what + " identical; unit perturbation scale used");
  return std::move(broken.sample);
}

}  // namespace robustest
