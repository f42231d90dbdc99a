#pragma once

// Internal helpers shared by distributions.cpp; not installed.

namespace robustest::dist::detail {

/// I_x(a, b) with y = 1 - x supplied separately so callers can pass an
/// exactly computed complement.
double ibeta(double x, double y, double a, double b);

/// Upper incomplete gamma ratio Q(a, x) and lower P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

}  // namespace robustest::dist::detail
