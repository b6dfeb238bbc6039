#include "galqr/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace galqr {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640561764;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210484904;
constexpr double kSqrt2 = 1.41421356237309504880168872420969808;

void require_positive_variance(double variance) {
  if (!(variance > 0.0)) {
    throw std::domain_error("normal kernel requires positive variance");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Normal kernels
// ---------------------------------------------------------------------------

double normal_logpdf(double x, double mean, double variance) {
  require_positive_variance(variance);
  const double z2 = (x - mean) * (x - mean) / variance;
  return -0.5 * (z2 + std::log(variance)) - kLogSqrt2Pi;
}

double normal_pdf(double x, double mean, double variance) {
  return std::exp(normal_logpdf(x, mean, variance));
}

double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z * kInvSqrt2);
}

double std_normal_logcdf(double z) {
  if (z >= 5.0) {
    // upper tail: log(1 - Phi(-z)) keeps precision where erfc is near 2
    return std::log1p(-0.5 * std::erfc(z * kInvSqrt2));
  }
  if (z > -37.0) {
    return std::log(0.5 * std::erfc(-z * kInvSqrt2));
  }
  // Mills-ratio asymptotic series; seven terms give full double precision
  // for z <= -37.
  const double zz = z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 7; ++k) {
    term *= -(2.0 * k - 1.0) / zz;
    sum += term;
  }
  return -0.5 * zz - kLogSqrt2Pi - std::log(-z) + std::log(sum);
}

double normal_cdf(double x, double mean, double variance) {
  require_positive_variance(variance);
  return std_normal_cdf((x - mean) / std::sqrt(variance));
}

double normal_logcdf(double x, double mean, double variance) {
  require_positive_variance(variance);
  return std_normal_logcdf((x - mean) / std::sqrt(variance));
}

// Acklam-style rational approximation refined with one Halley step against
// erfc; accurate to ~1e-15 over (0,1).
double std_normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw std::domain_error("std_normal_quantile requires prob in (0,1)");
  }
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (prob < plow) {
    const double q = std::sqrt(-2.0 * std::log(prob));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (prob <= 1.0 - plow) {
    const double q = prob - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-prob));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // one Halley refinement
  const double e = 0.5 * std::erfc(-x * kInvSqrt2) - prob;
  const double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

double log_normal_cdf_diff(double hi, double lo) {
  if (hi < lo) throw std::domain_error("log_normal_cdf_diff requires hi >= lo");
  if (lo >= 0.0) return log_normal_cdf_diff(-lo, -hi);  // reflect into lower tail
  if (hi <= 0.0) {
    const double la = std_normal_logcdf(hi);
    const double lb = std_normal_logcdf(lo);
    const double d = lb - la;  // <= 0
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    if (d > -1e-13) return la + std::log(-d);  // exp(d) would round to 1
    return la + std::log1p(-std::exp(d));
  }
  // interval straddles zero; direct difference is well conditioned
  return std::log(std_normal_cdf(hi) - std_normal_cdf(lo));
}

// ---------------------------------------------------------------------------
// Truncated normal
// ---------------------------------------------------------------------------

namespace {

// Standard normal conditioned on Z > a.
double sample_std_truncnorm_tail(double a, Rng& rng) {
  if (a <= 0.5) {
    // acceptance probability Phi(-a) >= 0.31
    for (;;) {
      const double z = rng.normal();
      if (z > a) return z;
    }
  }
  // translated-exponential proposal, optimal rate (a + sqrt(a^2+4))/2
  const double lam = 0.5 * (a + std::sqrt(a * a + 4.0));
  for (;;) {
    const double x = a + rng.exponential(1.0 / lam);
    const double d = x - lam;
    if (std::log(rng.uniform()) <= -0.5 * d * d) return x;
  }
}

}  // namespace

double sample_truncnorm_lower(double mean, double variance, double lower, Rng& rng) {
  require_positive_variance(variance);
  const double sd = std::sqrt(variance);
  return mean + sd * sample_std_truncnorm_tail((lower - mean) / sd, rng);
}

double sample_truncnorm_positive(double mean, double variance, Rng& rng) {
  return sample_truncnorm_lower(mean, variance, 0.0, rng);
}

double sample_truncnorm_upper(double mean, double variance, double upper, Rng& rng) {
  return -sample_truncnorm_lower(-mean, variance, -upper, rng);
}

double sample_truncnorm_negative(double mean, double variance, Rng& rng) {
  return sample_truncnorm_upper(mean, variance, 0.0, rng);
}

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

double sample_gamma(double shape, double rate, Rng& rng) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::domain_error("sample_gamma requires positive shape and rate");
  }
  if (shape < 1.0) {
    // boost: Gamma(shape) = Gamma(shape+1) * U^{1/shape}
    const double u = rng.uniform();
    return sample_gamma(shape + 1.0, rate, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

// ---------------------------------------------------------------------------
// Generalized inverse-Gaussian
// ---------------------------------------------------------------------------

bool GigParams::valid() const {
  if (a < 0.0 || b < 0.0 || !std::isfinite(nu)) return false;
  if (a == 0.0 && b == 0.0) return false;
  if (nu <= 0.0 && a == 0.0) return false;
  if (nu >= 0.0 && b == 0.0) return false;
  return true;
}

namespace {

// Two-parameter form: x^{lambda-1} exp{-omega (x + 1/x)/2}.
double gig_logkernel(double x, double lambda, double omega) {
  return (lambda - 1.0) * std::log(x) - 0.5 * omega * (x + 1.0 / x);
}

double gig_mode(double lambda, double omega) {
  if (lambda >= 1.0) {
    return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) + (lambda - 1.0)) / omega;
  }
  return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) + (1.0 - lambda));
}

// Ratio-of-uniforms with mode shift; lambda >= 0, used when lambda > 1 or
// omega > 1. The u-extrema solve a cubic whose three real roots come from
// the trigonometric formula.
double gig_rou_shift(double lambda, double omega, Rng& rng) {
  const double m = gig_mode(lambda, omega);
  const double a2 = -2.0 * (lambda + 1.0) / omega - m;
  const double a1 = 2.0 * (lambda - 1.0) * m / omega - 1.0;
  const double p = a1 - a2 * a2 / 3.0;
  const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + m;
  const double phi = std::acos(std::clamp(-(q / 2.0) * std::sqrt(-27.0 / (p * p * p)), -1.0, 1.0));
  const double r = std::sqrt(-4.0 * p / 3.0);
  const double x_lo = r * std::cos(phi / 3.0 + 4.0 * kPi / 3.0) - a2 / 3.0;
  const double x_hi = r * std::cos(phi / 3.0) - a2 / 3.0;
  const double lgm = gig_logkernel(m, lambda, omega);
  const double u_lo = (x_lo - m) * std::exp(0.5 * (gig_logkernel(x_lo, lambda, omega) - lgm));
  const double u_hi = (x_hi - m) * std::exp(0.5 * (gig_logkernel(x_hi, lambda, omega) - lgm));
  for (;;) {
    const double u = u_lo + rng.uniform() * (u_hi - u_lo);
    const double v = rng.uniform();
    const double x = u / v + m;
    if (x > 0.0 && 2.0 * std::log(v) <= gig_logkernel(x, lambda, omega) - lgm) return x;
  }
}

// Ratio-of-uniforms without shift; 0 <= lambda <= 1, moderate omega.
double gig_rou_noshift(double lambda, double omega, Rng& rng) {
  const double m = gig_mode(lambda, omega);
  const double x_hi = ((lambda + 1.0) + std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega)) / omega;
  const double lgm = gig_logkernel(m, lambda, omega);
  const double u_hi = x_hi * std::exp(0.5 * (gig_logkernel(x_hi, lambda, omega) - lgm));
  for (;;) {
    const double u = rng.uniform() * u_hi;
    const double v = rng.uniform();
    const double x = u / v;
    if (2.0 * std::log(v) <= gig_logkernel(x, lambda, omega) - lgm) return x;
  }
}

// Three-piece hat for 0 <= lambda < 1 and omega below min(1/2, 2/3 sqrt(1-lambda)):
// constant at the density maximum on (0, x0], x^{lambda-1} e^{-omega} on
// (x0, 2/omega], and x0s^{lambda-1} e^{-omega x / 2} beyond.
double gig_small_omega(double lambda, double omega, Rng& rng) {
  const double m = gig_mode(lambda, omega);
  const double x0 = omega / (1.0 - lambda);
  const double log_k0 = gig_logkernel(m, lambda, omega);
  const double area0 = std::exp(log_k0) * x0;
  const double x1 = 2.0 / omega;
  double area1 = 0.0;
  const double k1 = std::exp(-omega);
  if (x0 < x1) {
    area1 = (lambda == 0.0)
                ? k1 * std::log(x1 / x0)
                : k1 / lambda * (std::pow(x1, lambda) - std::pow(x0, lambda));
  }
  const double xs = std::max(x0, x1);
  const double k2 = std::pow(xs, lambda - 1.0);
  const double area2 = k2 * (2.0 / omega) * std::exp(-0.5 * omega * xs);
  const double total = area0 + area1 + area2;
  for (;;) {
    double w = rng.uniform() * total;
    double x, log_hat;
    if (w <= area0) {
      x = x0 * w / area0;
      log_hat = log_k0;
    } else if ((w -= area0) <= area1) {
      x = (lambda == 0.0)
              ? x0 * std::exp(w / k1)
              : std::pow(std::pow(x0, lambda) + w * lambda / k1, 1.0 / lambda);
      log_hat = std::log(k1) + (lambda - 1.0) * std::log(x);
    } else {
      w -= area1;
      x = xs - (2.0 / omega) * std::log1p(-w * 0.5 * omega / (k2 * std::exp(-0.5 * omega * xs)));
      log_hat = std::log(k2) - 0.5 * omega * x;
    }
    if (x > 0.0 && std::log(rng.uniform()) + log_hat <= gig_logkernel(x, lambda, omega)) {
      return x;
    }
  }
}

double sample_std_gig(double lambda, double omega, Rng& rng) {
  if (lambda > 1.0 || omega > 1.0) return gig_rou_shift(lambda, omega, rng);
  if (omega >= std::min(0.5, (2.0 / 3.0) * std::sqrt(1.0 - lambda))) {
    return gig_rou_noshift(lambda, omega, rng);
  }
  return gig_small_omega(lambda, omega, rng);
}

}  // namespace

double sample_gig(const GigParams& params, Rng& rng) {
  if (!params.valid()) throw std::domain_error("sample_gig: invalid GigParams");
  // Degenerate limits (also triggered when a*b underflows): gamma when the
  // 1/x coefficient vanishes, inverse-gamma when the x coefficient vanishes.
  if (params.a < 1e-290 * std::max(params.b, 1.0) && params.nu > 0.0) {
    return sample_gamma(params.nu, 0.5 * params.b, rng);
  }
  if (params.b < 1e-290 * std::max(params.a, 1.0) && params.nu < 0.0) {
    return 1.0 / sample_gamma(-params.nu, 0.5 * params.a, rng);
  }
  const double omega = std::sqrt(params.a * params.b);
  const double scale = std::sqrt(params.a / params.b);
  if (params.nu >= 0.0) return scale * sample_std_gig(params.nu, omega, rng);
  return scale / sample_std_gig(-params.nu, omega, rng);
}

double gig_logdensity(double x, const GigParams& params) {
  if (!params.valid()) throw std::domain_error("gig_logdensity: invalid GigParams");
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  if (params.a == 0.0) {  // Gamma(nu, rate b/2)
    return params.nu * std::log(0.5 * params.b) - std::lgamma(params.nu) +
           (params.nu - 1.0) * std::log(x) - 0.5 * params.b * x;
  }
  if (params.b == 0.0) {  // inverse-gamma with shape -nu, rate a/2
    return -params.nu * std::log(0.5 * params.a) - std::lgamma(-params.nu) +
           (params.nu - 1.0) * std::log(x) - 0.5 * params.a / x;
  }
  const double omega = std::sqrt(params.a * params.b);
  const double log_norm = 0.5 * params.nu * std::log(params.b / params.a) -
                          std::log(2.0) - log_bessel_k(params.nu, omega);
  return log_norm + (params.nu - 1.0) * std::log(x) - 0.5 * (params.a / x + params.b * x);
}

double log_bessel_k(double nu, double x) {
  if (!(x > 0.0)) throw std::domain_error("log_bessel_k requires x > 0");
  nu = std::fabs(nu);  // K_{-nu} = K_{nu}
  const double frac = nu - std::floor(nu);
  const int steps = static_cast<int>(std::floor(nu));
  double k_lo, k_hi;      // K_{frac}, K_{frac+1}, scaled by exp(log_scale)
  double log_scale = 0.0;
  if (x > 600.0) {
    // uniform asymptotic for large argument; low orders only
    auto log_k_asym = [x](double v) {
      const double mu = 4.0 * v * v;
      const double c = 1.0 + (mu - 1.0) / (8.0 * x) +
                       (mu - 1.0) * (mu - 9.0) / (128.0 * x * x);
      return 0.5 * std::log(kPi / (2.0 * x)) - x + std::log(c);
    };
    log_scale = log_k_asym(frac);
    k_lo = 1.0;
    k_hi = std::exp(log_k_asym(frac + 1.0) - log_scale);
  } else {
    k_lo = std::cyl_bessel_k(frac, x);
    k_hi = std::cyl_bessel_k(frac + 1.0, x);
  }
  if (steps == 0) return std::log(k_lo) + log_scale;
  // upward recurrence K_{v+1} = K_{v-1} + (2v/x) K_v with renormalization
  double order = frac + 1.0;
  for (int i = 1; i < steps; ++i) {
    const double next = k_lo + (2.0 * order / x) * k_hi;
    k_lo = k_hi;
    k_hi = next;
    order += 1.0;
    if (k_hi > 1e250) {
      k_lo /= 1e250;
      k_hi /= 1e250;
      log_scale += std::log(1e250);
    }
  }
  return std::log(k_hi) + log_scale;
}

// ---------------------------------------------------------------------------
// Misc variates
// ---------------------------------------------------------------------------

double sample_exponential(double mean, Rng& rng) {
  if (!(mean > 0.0)) throw std::domain_error("sample_exponential requires positive mean");
  return rng.exponential(mean);
}

double skew_normal_pdf(double y, double xi, double omega, double lambda) {
  if (!(omega > 0.0)) throw std::domain_error("skew_normal_pdf requires omega > 0");
  const double z = (y - xi) / omega;
  return 2.0 / omega * std::exp(-0.5 * z * z - kLogSqrt2Pi) * std_normal_cdf(lambda * z);
}

namespace {

double softplus(double x) {
  if (x > 35.0) return x;
  if (x < -35.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

}  // namespace

double sample_gpd_log(const GpdParams& params, Rng& rng) {
  if (!params.valid()) throw std::domain_error("sample_gpd_log: invalid GpdParams");
  const double u = rng.uniform();
  // inverse CDF of the generalized Pareto, then log
  return std::log(params.sigma / params.xi) + std::log(std::expm1(-params.xi * std::log1p(-u)));
}

double gpd_log_pdf(double eps, const GpdParams& params) {
  if (!params.valid()) throw std::domain_error("gpd_log_pdf: invalid GpdParams");
  const double t = eps + std::log(params.xi / params.sigma);
  return std::exp(-std::log(params.sigma) + eps - (1.0 + 1.0 / params.xi) * softplus(t));
}

double gpd_log_cdf(double eps, const GpdParams& params) {
  if (!params.valid()) throw std::domain_error("gpd_log_cdf: invalid GpdParams");
  const double t = eps + std::log(params.xi / params.sigma);
  return -std::expm1(-softplus(t) / params.xi);
}

}  // namespace galqr
