#include "galqr/gal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace galqr {

namespace {

constexpr double kLog2 = 0.69314718055994530941723212145817657;

void require_p0(double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) {
    throw std::domain_error("quantile level p0 must lie in (0,1)");
  }
}

double logsumexp2(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

double g_func(double gamma) {
  const double ag = std::fabs(gamma);
  return std::exp(kLog2 + std_normal_logcdf(-ag) + 0.5 * gamma * gamma);
}

GammaSupport gamma_support(double p0) {
  require_p0(p0);
  // positive root of g(t) = target, g strictly decreasing from 1 to 0 on R+
  auto positive_root = [](double target) {
    double lo = 0.0;
    double hi = 1.0;
    while (g_func(hi) > target) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (g_func(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  GammaSupport s;
  s.upper = positive_root(p0);
  s.lower = -positive_root(1.0 - p0);
  return s;
}

double p_of_gamma(double gamma, double p0) {
  require_p0(p0);
  const double g = g_func(gamma);
  const double p = (gamma < 0.0) ? 1.0 + (p0 - 1.0) / g : p0 / g;
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("gamma lies outside the admissible support for p0");
  }
  return p;
}

double h_func(double gamma, double p0) {
  require_p0(p0);
  const double g = g_func(gamma);
  const double denom = g - std::fabs(p0 - (gamma < 0.0 ? 1.0 : 0.0));
  if (!(denom > 0.0)) {
    throw std::domain_error("h_func: gamma outside the open support interval");
  }
  return gamma * g / denom;
}

GalMixtureCoeffs gal_mixture_coeffs(double gamma, double p0) {
  GalMixtureCoeffs c;
  c.p = p_of_gamma(gamma, p0);
  const double pq = c.p * (1.0 - c.p);
  c.A = (1.0 - 2.0 * c.p) / pq;
  c.B = 2.0 / pq;
  c.C = 1.0 / ((gamma > 0.0 ? 1.0 : 0.0) - c.p);
  c.c_abs_gamma = c.C * std::fabs(gamma);
  return c;
}

GalParams::GalParams(double p0, double gamma, double mu, double sigma)
    : p0_(p0), gamma_(gamma), mu_(mu), sigma_(sigma) {
  require_p0(p0);
  if (!(sigma > 0.0)) throw std::domain_error("GalParams requires sigma > 0");
  if (!std::isfinite(mu)) throw std::domain_error("GalParams requires finite mu");
  support_ = gamma_support(p0);
  if (gamma != 0.0 && !(gamma > support_.lower && gamma < support_.upper)) {
    throw std::domain_error("GalParams: gamma outside the (L,U) support");
  }
  coeffs_ = gal_mixture_coeffs(gamma, p0);
}

// ---------------------------------------------------------------------------
// Asymmetric Laplace (gamma = 0 limit)
// ---------------------------------------------------------------------------

double al_logpdf(double y, double p, double mu, double sigma) {
  const double u = (y - mu) / sigma;
  const double rho = u * (p - (u < 0.0 ? 1.0 : 0.0));
  return std::log(p) + std::log1p(-p) - std::log(sigma) - rho;
}

double al_cdf(double y, double p, double mu, double sigma) {
  const double u = (y - mu) / sigma;
  if (u <= 0.0) return p * std::exp((1.0 - p) * u);
  return 1.0 - (1.0 - p) * std::exp(-p * u);
}

// ---------------------------------------------------------------------------
// Raw-shape density
// ---------------------------------------------------------------------------

double gal_logpdf_raw(double y, const GalRawParams& params) {
  if (!params.valid()) throw std::domain_error("gal_logpdf_raw: invalid params");
  const double p = params.p;
  const double alpha = params.alpha;
  if (std::fabs(alpha) < 1e-12) return al_logpdf(y, p, params.mu, params.sigma);

  const double ys = (y - params.mu) / params.sigma;
  const double pam = params.p_alpha_minus();
  const double pap = params.p_alpha_plus();
  const double w = ys / alpha;             // positive on the shape side of mu
  const double kap = -pam * alpha;         // <= 0 on both branches
  const bool shape_side = w > 0.0;

  double log_t1 = -std::numeric_limits<double>::infinity();
  if (shape_side) {
    log_t1 = log_normal_cdf_diff(w + kap, kap) - pam * ys + 0.5 * kap * kap;
  }
  const double arg2 = pap * alpha - (shape_side ? w : 0.0);
  const double log_t2 = std_normal_logcdf(arg2) - pap * ys + 0.5 * (pap * alpha) * (pap * alpha);

  return kLog2 + std::log(p) + std::log1p(-p) - std::log(params.sigma) +
         logsumexp2(log_t1, log_t2);
}

// ---------------------------------------------------------------------------
// Quantile-fixed density, CDF, sampling
// ---------------------------------------------------------------------------

double gal_logpdf(double y, const GalParams& params) {
  if (params.al_branch()) return al_logpdf(y, params.p0(), params.mu(), params.sigma());
  GalRawParams raw;
  raw.p = params.p();
  raw.alpha = params.alpha();
  raw.mu = params.mu();
  raw.sigma = params.sigma();
  return gal_logpdf_raw(y, raw);
}

double gal_pdf(double y, const GalParams& params) { return std::exp(gal_logpdf(y, params)); }

namespace {

// CDF of the standardized quantile-fixed GAL for gamma > 0; obtained by
// integrating the density piecewise, every piece being Phi times an
// exponential. Exponent sums that can overflow are assembled in log space.
double gal_cdf_pos_std(double ys, double p0, double gamma) {
  const double p = p_of_gamma(gamma, p0);
  const double alpha = gamma / (1.0 - p);
  if (ys <= 0.0) return p0 * std::exp((1.0 - p) * ys);
  const double w = ys / alpha;
  // E1 = exp(k^2/2 - p ys) [Phi(w - pa) - Phi(-pa)],  k = p alpha
  const double pa = p * alpha;
  const double e1 = std::exp(log_normal_cdf_diff(w - pa, -pa) + 0.5 * pa * pa - p * ys);
  const double t1 = (std_normal_cdf(w) - 0.5) - e1;
  // E2 = exp(gamma^2/2 + (1-p) ys) Phi(-gamma - w)
  const double e2 = std::exp(std_normal_logcdf(-gamma - w) + 0.5 * gamma * gamma + (1.0 - p) * ys);
  const double t2 = e2 - std_normal_cdf(-w) + 0.5 * (1.0 - g_func(gamma));
  return p0 + 2.0 * (1.0 - p) * t1 + 2.0 * p * t2;
}

}  // namespace

double gal_cdf(double y, const GalParams& params) {
  const double ys = (y - params.mu()) / params.sigma();
  double f;
  if (params.al_branch()) {
    f = al_cdf(ys, params.p0(), 0.0, 1.0);
  } else if (params.gamma() > 0.0) {
    f = gal_cdf_pos_std(ys, params.p0(), params.gamma());
  } else {
    // reflection: -Y is quantile-fixed GAL with (1-p0, -gamma)
    f = 1.0 - gal_cdf_pos_std(-ys, 1.0 - params.p0(), -params.gamma());
  }
  return std::clamp(f, 0.0, 1.0);
}

double gal_sample(const GalParams& params, Rng& rng) {
  const double z = rng.exponential(1.0);
  const double s = sample_truncnorm_positive(0.0, 1.0, rng);
  const double eps = rng.normal();
  const double alpha = params.al_branch() ? 0.0 : params.alpha();
  return params.mu() +
         params.sigma() * (alpha * s + params.A() * z + std::sqrt(params.B() * z) * eps);
}

}  // namespace galqr
