#pragma once

#include <string>

#include "robustest/rng.hpp"
#include "robustest/sample.hpp"

namespace robustest {

/// What a rank-based test does when it meets tied observations.
enum class TiesBreak {
  none,    ///< refuse: throw TieError
  random,  ///< separate ties with a seeded random perturbation
};

struct TiebreakResult {
  Sample sample;
  bool ties_found = false;
  /// Set when every value was identical and the unit scale was used.
  bool default_scale = false;
};

/// Separates tied values with independent uniform perturbations strictly
/// smaller than half the smallest positive gap between distinct values.
/// Non-tied values are returned untouched and the strict order between
/// distinct inputs is preserved.
TiebreakResult tiebreak(const Sample& s, RngStream& rng);

/// Throws TieError naming `what` when `s` has duplicates.
void require_no_ties(const Sample& s, const std::string& what);

/// Applies the tie policy to one margin: returns `s` when it has no ties,
/// a perturbed copy under TiesBreak::random, else throws TieError.
Sample resolve_ties(const Sample& s, TiesBreak policy, RngStream& rng,
                    const std::string& what, std::vector<std::string>& notes);

}  // namespace robustest
