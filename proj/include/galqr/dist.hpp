#pragma once

#include "galqr/rng.hpp"

namespace galqr {

// ---------------------------------------------------------------------------
// Normal kernels
// ---------------------------------------------------------------------------

double normal_pdf(double x, double mean, double variance);
double normal_logpdf(double x, double mean, double variance);
double normal_cdf(double x, double mean, double variance);

// log Phi((x - mean)/sd); finite and monotone over the whole double range.
// The deep lower tail (standardized argument below -37, where erfc
// underflows) is evaluated through the asymptotic Mills-ratio expansion.
double normal_logcdf(double x, double mean, double variance);

double std_normal_cdf(double z);
double std_normal_logcdf(double z);
double std_normal_quantile(double prob);

// log(Phi(hi) - Phi(lo)) for hi >= lo, stable when both arguments are in
// the same far tail.
double log_normal_cdf_diff(double hi, double lo);

// ---------------------------------------------------------------------------
// Truncated normal sampling
// ---------------------------------------------------------------------------

// N(mean, variance) restricted to (0, inf). Plain rejection when the
// truncation point sits less than 0.5 SD above the mean, otherwise the
// translated-exponential proposal of Robert (1995), which stays correct
// arbitrarily deep in the tail.
double sample_truncnorm_positive(double mean, double variance, Rng& rng);

// Mirror image: N(mean, variance) restricted to (-inf, 0).
double sample_truncnorm_negative(double mean, double variance, Rng& rng);

// General one-sided truncations, reduced to the positive-tail core.
double sample_truncnorm_lower(double mean, double variance, double lower, Rng& rng);
double sample_truncnorm_upper(double mean, double variance, double upper, Rng& rng);

// ---------------------------------------------------------------------------
// Gamma / generalized inverse-Gaussian
// ---------------------------------------------------------------------------

// Gamma with given shape and *rate*; Marsaglia-Tsang (2000) squeeze for
// shape >= 1 with the usual power boost below 1.
double sample_gamma(double shape, double rate, Rng& rng);

// GIG(nu, a, b): density proportional to x^{nu-1} exp{-(a/x + b x)/2}.
struct GigParams {
  double nu = 0.0;
  double a = 0.0;  // coefficient of 1/x, nonnegative
  double b = 0.0;  // coefficient of x, nonnegative
  bool valid() const;
};

// Rejection sampler following Hoermann & Leydold (2014): ratio-of-uniforms
// with mode shift for lambda > 1 or omega > 1, plain ratio-of-uniforms for
// moderate omega, and a three-piece hat for the near-singular small-omega
// regime. a = 0 (nu > 0) and b = 0 (nu < 0) edge cases dispatch to the
// gamma and inverse-gamma limits.
double sample_gig(const GigParams& params, Rng& rng);

// Normalized log density; the normalizing constant uses log K_nu.
double gig_logdensity(double x, const GigParams& params);

// log K_nu(x) for real order, via scaled upward recurrence so large orders
// do not overflow.
double log_bessel_k(double nu, double x);

// ---------------------------------------------------------------------------
// Other variates used by the simulation harness
// ---------------------------------------------------------------------------

double sample_exponential(double mean, Rng& rng);

// Azzalini skew normal: 2 omega^{-1} phi(omega^{-1}(y-xi)) Phi(lambda omega^{-1}(y-xi)).
double skew_normal_pdf(double y, double xi, double omega, double lambda);

// Log-transformed generalized Pareto errors.
struct GpdParams {
  double sigma = 1.0;  // scale, positive
  double xi = 1.0;     // shape, positive
  bool valid() const { return sigma > 0.0 && xi > 0.0; }
};

double sample_gpd_log(const GpdParams& params, Rng& rng);
double gpd_log_pdf(double eps, const GpdParams& params);
double gpd_log_cdf(double eps, const GpdParams& params);

}  // namespace galqr
