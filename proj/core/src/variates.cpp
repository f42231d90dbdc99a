#include "robustest/variates.hpp"

#include <cmath>

#include "robustest/distributions.hpp"

namespace robustest::dist {

double standard_normal(RngStream& rng) { return norm_quantile(rng.uniform()); }

double standard_exponential(RngStream& rng) { return -std::log(rng.uniform()); }

double chisq2(RngStream& rng) { return 2.0 * standard_exponential(rng); }

bool bernoulli(RngStream& rng, double p) { return rng.uniform() < p; }

double uniform(RngStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

}  // namespace robustest::dist
