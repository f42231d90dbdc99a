#pragma once

#include "robustest/rng.hpp"

namespace robustest::dist {

/// Standard normal by inversion of the normal CDF.
double standard_normal(RngStream& rng);
/// Exp(1) as -ln(U).
double standard_exponential(RngStream& rng);
/// Chi-square with 2 degrees of freedom, exactly -2 ln(U).
double chisq2(RngStream& rng);
bool bernoulli(RngStream& rng, double p);
double uniform(RngStream& rng, double lo, double hi);

}  // namespace robustest::dist
