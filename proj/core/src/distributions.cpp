#include "robustest/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "robustest/errors.hpp"
#include "special.hpp"

namespace robustest::dist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("probability must lie in (0, 1), got " + std::to_string(p));
  }
}

void check_df(double df, const char* name = "degrees of freedom") {
  if (!(df > 0.0) || !std::isfinite(df)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(df));
  }
}

// Solves tail(x) = target on [lo, +inf) for a monotone tail function, where
// tail is the lower CDF (increasing) or the survival function (decreasing).
// Newton on log(tail) with a maintained bracket; falls back to bisection
// whenever a step leaves the bracket.
template <class Tail, class Pdf>
double solve_tail(double target, bool upper, Tail tail, Pdf pdf, double guess, double lo) {
  // Bracket: [a, b] with the root inside.
  double a = lo;
  double b = std::max(guess, lo + 1.0);
  auto past = [&](double x) {
    const double t = tail(x);
    return upper ? (t <= target) : (t >= target);
  };
  for (int i = 0; i < 2000 && !past(b); ++i) {
    a = b;
    b *= 2.0;
  }
  double x = std::clamp(guess, a, b);
  if (x <= a || x >= b) x = 0.5 * (a + b);
  const double log_target = std::log(target);
  for (int iter = 0; iter < 500; ++iter) {
    const double t = tail(x);
    if (t == target) return x;
    if (upper ? (t < target) : (t > target)) {
      b = x;
    } else {
      a = x;
    }
    const double density = pdf(x);
    double next;
    if (t > 0.0 && density > 0.0) {
      // d/dx log(tail) = +-pdf / tail
      const double slope = (upper ? -density : density) / t;
      next = x - (std::log(t) - log_target) / slope;
    } else {
      next = 0.5 * (a + b);
    }
    if (!(next > a && next < b)) {
      next = (a > 0.0 && b / a > 4.0) ? std::sqrt(a * b) : 0.5 * (a + b);
    }
    if (std::fabs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(x) ||
        b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(b)) {
      return next;
    }
    x = next;
  }
  return x;
}

}  // namespace

double regularized_beta(double x, double a, double b) {
  check_df(a, "shape a");
  check_df(b, "shape b");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("regularized_beta needs x in [0, 1]");
  return detail::ibeta(x, 1.0 - x, a, b);
}

double regularized_gamma_p(double a, double x) {
  check_df(a, "shape a");
  if (x < 0.0) throw DomainError("regularized_gamma_p needs x >= 0");
  return detail::gamma_p(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_df(a, "shape a");
  if (x < 0.0) throw DomainError("regularized_gamma_q needs x >= 0");
  return detail::gamma_q(a, x);
}

// ---------------------------------------------------------------- normal

double norm_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double norm_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_sf(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// Wichura, Algorithm AS 241 (PPND16), relative accuracy about 1e-16.
double norm_quantile(double p) {
  check_probability(p);
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                 67265.770927008700853) * r + 45921.953931549871457) * r +
               13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((5226.495278852545925 * r + 28729.085735721942674) * r +
                 39307.89580009271061) * r + 21213.794301586595867) * r +
               5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                  0.24178072517745061177) * r + 1.27045825245236838258) * r +
                3.64784832476320460504) * r + 5.7694972214606914055) * r +
              4.6303378461565452959) * r + 1.42343711074968357734) /
            (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                  0.0151986665636164571966) * r + 0.14810397642748007459) * r +
                0.68976733498510000455) * r + 1.6763848301838038494) * r +
              2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  0.0012426609473880784386) * r + 0.026532189526576123093) * r +
                0.29656057182850489123) * r + 1.7848265399172913358) * r +
              5.4637849111641143699) * r + 6.6579046435011037772) /
            (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                  1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
                0.0148753612908506148525) * r + 0.13692988092273580531) * r +
              0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

double two_sided_normal_p(double z) noexcept {
  if (std::isnan(z)) return 1.0;
  return std::min(1.0, 2.0 * norm_sf(std::fabs(z)));
}

// ------------------------------------------------------------- Student t

double t_pdf(double x, double df) {
  check_df(df);
  return std::exp(std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                  0.5 * std::log(df * std::numbers::pi) -
                  0.5 * (df + 1.0) * std::log1p(x * x / df));
}

double t_sf(double x, double df) {
  check_df(df);
  if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
  const double x2 = x * x;
  // Tail beyond |x|: 0.5 * I_{df / (df + x^2)}(df / 2, 1 / 2).
  const double tail = 0.5 * detail::ibeta(df / (df + x2), x2 / (df + x2), 0.5 * df, 0.5);
  return x >= 0.0 ? tail : 1.0 - tail;
}

double t_cdf(double x, double df) {
  check_df(df);
  return t_sf(-x, df);
}

double t_quantile(double p, double df) {
  check_probability(p);
  check_df(df);
  if (p == 0.5) return 0.0;
  const double tail = p < 0.5 ? p : 1.0 - p;
  double q;
  if (df == 1.0) {
    q = std::tan(std::numbers::pi * (0.5 - tail));
  } else if (df == 2.0) {
    q = (1.0 - 2.0 * tail) / std::sqrt(2.0 * tail * (1.0 - tail));
  } else {
    const double guess = std::fabs(norm_quantile(tail));
    q = solve_tail(
        tail, true, [df](double x) { return t_sf(x, df); },
        [df](double x) { return t_pdf(x, df); }, guess, 0.0);
  }
  return p < 0.5 ? -q : q;
}

double two_sided_t_p(double t, double df) {
  if (std::isnan(t)) return 1.0;
  return std::min(1.0, 2.0 * t_sf(std::fabs(t), df));
}

// ------------------------------------------------------------ chi-square

double chisq_pdf(double x, double df) {
  check_df(df);
  if (x < 0.0) return 0.0;
  if (x == 0.0) return df == 2.0 ? 0.5 : (df < 2.0 ? kInf : 0.0);
  const double k = 0.5 * df;
  return std::exp((k - 1.0) * std::log(x) - 0.5 * x - k * std::numbers::ln2 - std::lgamma(k));
}

double chisq_cdf(double x, double df) {
  check_df(df);
  if (x <= 0.0) return 0.0;
  return detail::gamma_p(0.5 * df, 0.5 * x);
}

double chisq_sf(double x, double df) {
  check_df(df);
  if (x <= 0.0) return 1.0;
  return detail::gamma_q(0.5 * df, 0.5 * x);
}

double chisq_quantile(double p, double df) {
  check_probability(p);
  check_df(df);
  // Wilson-Hilferty start.
  const double z = norm_quantile(p);
  const double h = 2.0 / (9.0 * df);
  double guess = df * std::pow(std::max(1.0 - h + z * std::sqrt(h), 0.05), 3.0);
  if (!(guess > 0.0)) guess = df;
  if (p <= 0.5) {
    return solve_tail(
        p, false, [df](double x) { return chisq_cdf(x, df); },
        [df](double x) { return chisq_pdf(x, df); }, guess, 0.0);
  }
  return solve_tail(
      1.0 - p, true, [df](double x) { return chisq_sf(x, df); },
      [df](double x) { return chisq_pdf(x, df); }, guess, 0.0);
}

// ---------------------------------------------------------------- Fisher F

double f_pdf(double x, double df1, double df2) {
  check_df(df1, "numerator degrees of freedom");
  check_df(df2, "denominator degrees of freedom");
  if (x < 0.0) return 0.0;
  if (x == 0.0) return df1 == 2.0 ? 1.0 : (df1 < 2.0 ? kInf : 0.0);
  const double a = 0.5 * df1;
  const double b = 0.5 * df2;
  const double log_pdf = a * std::log(df1) + b * std::log(df2) + (a - 1.0) * std::log(x) -
                         (a + b) * std::log(df2 + df1 * x) -
                         (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  return std::exp(log_pdf);
}

double f_cdf(double x, double df1, double df2) {
  check_df(df1, "numerator degrees of freedom");
  check_df(df2, "denominator degrees of freedom");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double denom = df1 * x + df2;
  return detail::ibeta(df1 * x / denom, df2 / denom, 0.5 * df1, 0.5 * df2);
}

double f_sf(double x, double df1, double df2) {
  check_df(df1, "numerator degrees of freedom");
  check_df(df2, "denominator degrees of freedom");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double denom = df1 * x + df2;
  return detail::ibeta(df2 / denom, df1 * x / denom, 0.5 * df2, 0.5 * df1);
}

double f_quantile(double p, double df1, double df2) {
  check_probability(p);
  check_df(df1, "numerator degrees of freedom");
  check_df(df2, "denominator degrees of freedom");
  const auto pdf = [df1, df2](double x) { return f_pdf(x, df1, df2); };
  if (p <= 0.5) {
    return solve_tail(
        p, false, [df1, df2](double x) { return f_cdf(x, df1, df2); }, pdf, 1.0, 0.0);
  }
  return solve_tail(
      1.0 - p, true, [df1, df2](double x) { return f_sf(x, df1, df2); }, pdf, 1.0, 0.0);
}

// ------------------------------------------------------------ Kolmogorov

double kolmogorov_sf(double lambda) noexcept {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // Theta-function form of the CDF, fast for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double w = -pi2 / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double term = std::exp(w * (2.0 * k - 1.0) * (2.0 * k - 1.0));
      cdf += term;
      if (term < 1e-18) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sf = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sf += sign * term;
    sign = -sign;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sf, 0.0, 1.0);
}

}  // namespace robustest::dist
