#pragma once

// CDFs, survival functions and quantiles of the reference distributions used
// by the tests. Quantile functions throw DomainError for p outside (0, 1) and
// every function throws DomainError for non-positive degrees of freedom.

namespace robustest::dist {

double norm_pdf(double x) noexcept;
double norm_cdf(double x) noexcept;
/// Upper tail 1 - norm_cdf(x), computed without cancellation.
double norm_sf(double x) noexcept;
double norm_quantile(double p);

double t_pdf(double x, double df);
double t_cdf(double x, double df);
double t_sf(double x, double df);
double t_quantile(double p, double df);

double chisq_pdf(double x, double df);
double chisq_cdf(double x, double df);
double chisq_sf(double x, double df);
double chisq_quantile(double p, double df);

double f_pdf(double x, double df1, double df2);
double f_cdf(double x, double df1, double df2);
double f_sf(double x, double df1, double df2);
double f_quantile(double p, double df1, double df2);

/// Limiting Kolmogorov distribution: P(K > lambda).
double kolmogorov_sf(double lambda) noexcept;

/// Two-sided p-value 2 * (1 - Phi(|z|)).
double two_sided_normal_p(double z) noexcept;
/// Two-sided p-value 2 * (1 - F_t(|t|; df)).
double two_sided_t_p(double t, double df);

// Special functions.
double regularized_beta(double x, double a, double b);
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

}  // namespace robustest::dist
