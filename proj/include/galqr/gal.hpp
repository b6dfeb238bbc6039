#pragma once

#include "galqr/dist.hpp"
#include "galqr/rng.hpp"

namespace galqr {

// ---------------------------------------------------------------------------
// The generalized asymmetric Laplace (GAL) distribution.
//
// Two parameterizations are exposed. The raw form carries the internal
// mixing probability p and shape alpha directly. The quantile-fixed form
// (p0, gamma, mu, sigma) is the one used for regression: mu is exactly the
// p0-quantile for every admissible gamma, and gamma = 0 recovers the
// asymmetric Laplace.
// ---------------------------------------------------------------------------

// g(gamma) = 2 Phi(-|gamma|) exp(gamma^2/2). Even, equal to 1 at zero,
// strictly decreasing on the positive axis; evaluated on the log scale so
// it stays accurate out to very large |gamma|.
double g_func(double gamma);

struct GammaSupport {
  double lower = 0.0;  // negative root of g = 1 - p0
  double upper = 0.0;  // positive root of g = p0
};

// Admissible range (L, U) of the shape parameter for quantile level p0.
GammaSupport gamma_support(double p0);

// Internal mixing probability p(gamma, p0) = I(gamma<0) + [p0 - I(gamma<0)]/g(gamma).
// Throws if gamma lies outside the open support interval.
double p_of_gamma(double gamma, double p0);

// H(gamma) = gamma g(gamma) / (g(gamma) - |p0 - I(gamma<0)|); the weight
// coefficient appearing in the adjusted check loss. Identically equal to
// C(gamma)|gamma|.
double h_func(double gamma, double p0);

// Raw-shape parameterization.
struct GalRawParams {
  double p = 0.5;      // mixing probability in (0,1)
  double alpha = 0.0;  // shape
  double mu = 0.0;     // location
  double sigma = 1.0;  // scale, positive
  bool valid() const { return p > 0.0 && p < 1.0 && sigma > 0.0 && std::isfinite(alpha); }
  double p_alpha_plus() const { return p - (alpha > 0.0 ? 1.0 : 0.0); }
  double p_alpha_minus() const { return p - (alpha < 0.0 ? 1.0 : 0.0); }
};

// Mixture coefficients shared by the density and the Gibbs samplers:
// A = (1-2p)/(p(1-p)), B = 2/(p(1-p)), C = [I(gamma>0)-p]^{-1}.
struct GalMixtureCoeffs {
  double p = 0.5;
  double A = 0.0;
  double B = 8.0;
  double C = -2.0;
  double c_abs_gamma = 0.0;  // C |gamma|, the skew-normal location weight
};

GalMixtureCoeffs gal_mixture_coeffs(double gamma, double p0);

// Quantile-fixed parameter record with cached derived quantities.
class GalParams {
 public:
  GalParams(double p0, double gamma, double mu, double sigma);

  double p0() const { return p0_; }
  double gamma() const { return gamma_; }
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  double p() const { return coeffs_.p; }
  double A() const { return coeffs_.A; }
  double B() const { return coeffs_.B; }
  double C() const { return coeffs_.C; }
  double H() const { return coeffs_.c_abs_gamma; }
  double alpha() const { return coeffs_.c_abs_gamma; }  // alpha = C|gamma|
  double support_lower() const { return support_.lower; }
  double support_upper() const { return support_.upper; }
  const GalMixtureCoeffs& coeffs() const { return coeffs_; }

  // gamma magnitudes below this evaluate through the AL limit branch;
  // the gamma != 0 closed forms cancel catastrophically at the origin.
  static constexpr double kGammaZeroTol = 1e-8;
  bool al_branch() const { return std::fabs(gamma_) < kGammaZeroTol; }

 private:
  double p0_, gamma_, mu_, sigma_;
  GammaSupport support_;
  GalMixtureCoeffs coeffs_;
};

// Asymmetric Laplace building blocks (gamma = 0 path).
double al_logpdf(double y, double p, double mu, double sigma);
double al_cdf(double y, double p, double mu, double sigma);

// Density of the raw parameterization; continuous in alpha across zero.
double gal_logpdf_raw(double y, const GalRawParams& params);

// Quantile-fixed density, CDF, and sampler.
double gal_logpdf(double y, const GalParams& params);
double gal_pdf(double y, const GalParams& params);
double gal_cdf(double y, const GalParams& params);

// Draw through the hierarchical mixture: z ~ Exp(1), s ~ N+(0,1),
// y = mu + sigma (alpha s + A z + sqrt(B z) eps).
double gal_sample(const GalParams& params, Rng& rng);

}  // namespace galqr
