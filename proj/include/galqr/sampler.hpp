#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "galqr/data.hpp"
#include "galqr/gal.hpp"
#include "galqr/rng.hpp"

namespace galqr {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct BetaPrior {
  Eigen::VectorXd mean;        // empty: zeros
  Eigen::MatrixXd covariance;  // empty: 100 I
};

// Inverse-gamma prior on the scale.
struct SigmaPrior {
  double shape = 2.0;
  double rate = 2.0;
};

// Rescaled Beta prior on (gamma - L)/(U - L); (1,1) is the uniform default.
struct GammaPrior {
  double shape1 = 1.0;
  double shape2 = 1.0;
};

// Hierarchical Laplace prior on the slopes (design column 0 is the
// unpenalized intercept). The gamma prior is on eta^2 with eta = lambda/sigma;
// the (0.1, 0.1) default has prior mean 1 and variance 10.
struct LassoPriorConfig {
  double intercept_mean = 0.0;
  double intercept_variance = 100.0;
  double eta2_shape = 0.1;
  double eta2_rate = 0.1;
};

struct ChainSettings {
  long burn_in = 10000;
  long thin = 5;
  long keep = 2000;
  std::uint64_t seed = 20240101;
};

struct QuantRegConfig {
  double p0 = 0.5;
  BetaPrior prior_beta;
  SigmaPrior prior_sigma;
  GammaPrior prior_gamma;
  ChainSettings chain;
  bool gamma_fixed_at_zero = false;  // AL submodel: pins gamma = 0, skips its update
  bool lasso = false;
  LassoPriorConfig lasso_prior;

  void validate(int dim) const;
  Eigen::VectorXd beta_prior_mean(int dim) const;
  Eigen::MatrixXd beta_prior_covariance(int dim) const;
};

// ---------------------------------------------------------------------------
// Chain state and outputs
// ---------------------------------------------------------------------------

struct ChainState {
  Eigen::VectorXd beta;
  double sigma = 1.0;
  double gamma = 0.0;
  Eigen::VectorXd v;      // per-observation sigma-scaled exponential latents
  Eigen::VectorXd s;      // per-observation half-normal latents
  Eigen::VectorXd y_aug;  // responses, censored entries carrying the latent w
  Eigen::VectorXd omega;  // per-slope scale latents (lasso)
  double eta2 = 1.0;      // squared penalty rate (lasso)
};

struct ChainDiagnostics {
  double gamma_accept_rate = 0.0;
  double gamma_step = 1.0;  // adapted logit-scale proposal SD
  long jitter_events = 0;   // precision factorizations that needed a ridge
};

struct PosteriorSamples {
  Eigen::MatrixXd beta;   // keep x dim
  Eigen::VectorXd sigma;  // keep
  Eigen::VectorXd gamma;  // keep (all zero under the AL submodel)
  Eigen::MatrixXd omega;  // keep x (dim-1), lasso chains only
  Eigen::VectorXd eta2;   // keep, lasso chains only
  std::vector<long> iteration;
  ChainDiagnostics diagnostics;
  Eigen::VectorXd ess;  // per beta column, then sigma, then gamma
  double p0 = 0.5;
  bool lasso = false;
  bool gamma_fixed_at_zero = false;
  std::uint64_t seed = 0;
  std::vector<std::string> beta_names;

  int keep() const { return static_cast<int>(sigma.size()); }
  int dim() const { return static_cast<int>(beta.cols()); }
  Eigen::VectorXd beta_mean() const { return beta.colwise().mean(); }
};

// ---------------------------------------------------------------------------
// Full-conditional updates (exposed for the grid audits in the tests)
// ---------------------------------------------------------------------------

// Joint normal draw for the coefficients given a prior in precision form.
Eigen::VectorXd update_beta(const ChainState& state, const Eigen::MatrixXd& x,
                            const Eigen::MatrixXd& prior_precision,
                            const Eigen::VectorXd& prior_precision_mean,
                            const GalMixtureCoeffs& coef, Rng& rng,
                            long* jitter_events = nullptr);

// GIG(1/2, a_i, b_i) exponential-mixing latents.
Eigen::VectorXd update_v(const ChainState& state, const Eigen::MatrixXd& x,
                         const GalMixtureCoeffs& coef, Rng& rng);

// Half-normal mixing latents, truncated on the positive axis.
Eigen::VectorXd update_s(const ChainState& state, const Eigen::MatrixXd& x,
                         const GalMixtureCoeffs& coef, Rng& rng);

// GIG scale update; degenerates to inverse-gamma when gamma = 0.
double update_sigma(const ChainState& state, const Eigen::MatrixXd& x,
                    const SigmaPrior& prior, const GalMixtureCoeffs& coef, Rng& rng);

struct GammaStepResult {
  double gamma = 0.0;
  bool accepted = false;
  double log_alpha = 0.0;
};

// Log full conditional of gamma (likelihood through A, B, C plus the
// rescaled Beta prior); -inf outside the admissible interval.
double gamma_log_conditional(double gamma, const ChainState& state, const Eigen::MatrixXd& x,
                             double p0, const GammaPrior& prior, const GammaSupport& support);

// One random-walk Metropolis step on the logit scale over (lo, hi); the
// acceptance ratio carries the change-of-variable Jacobian.
template <typename F>
GammaStepResult metropolis_logit_step(double current, double lo, double hi, double step,
                                      F&& log_target, Rng& rng) {
  const double u = (current - lo) / (hi - lo);
  const double theta = std::log(u) - std::log1p(-u);
  const double theta_prop = theta + step * rng.normal();
  const double prop = lo + (hi - lo) / (1.0 + std::exp(-theta_prop));
  GammaStepResult result;
  result.gamma = current;
  result.log_alpha = -std::numeric_limits<double>::infinity();
  if (prop > lo && prop < hi) {
    result.log_alpha = log_target(prop) - log_target(current) +
                       std::log((prop - lo) * (hi - prop)) -
                       std::log((current - lo) * (hi - current));
  }
  if (std::log(rng.uniform()) < result.log_alpha) {
    result.gamma = prop;
    result.accepted = true;
  }
  return result;
}

GammaStepResult update_gamma(const ChainState& state, const Eigen::MatrixXd& x, double p0,
                             const GammaPrior& prior, const GammaSupport& support, double step,
                             Rng& rng);

// ---------------------------------------------------------------------------
// Chain runners
// ---------------------------------------------------------------------------

// Linear quantile regression with GAL errors (or AL when gamma is pinned).
// Rejects censored datasets; those go through run_tobit_chain.
PosteriorSamples run_chain(const Dataset& data, const QuantRegConfig& config, Rng& rng);
PosteriorSamples run_chain(const Dataset& data, const QuantRegConfig& config);

// Shared engine used by both the plain and the Tobit entry points.
PosteriorSamples run_chain_engine(const Dataset& data, const QuantRegConfig& config, Rng& rng);

// ---------------------------------------------------------------------------
// Posterior predictive machinery
// ---------------------------------------------------------------------------

// Monte Carlo estimate of the posterior predictive error density on a grid:
// GAL densities f_{p0}(. | gamma, 0, sigma) averaged over posterior draws.
Eigen::VectorXd predictive_error_density(const PosteriorSamples& samples,
                                         const Eigen::VectorXd& grid, int mc_draws, Rng& rng);

// One replicate per retained draw per observation, generated through the
// hierarchical mixture; rows index draws, columns observations.
Eigen::MatrixXd posterior_predictive_replicates(const PosteriorSamples& samples,
                                                const Dataset& data, Rng& rng);

// ---------------------------------------------------------------------------
// Serialization and diagnostics
// ---------------------------------------------------------------------------

// CSV with columns beta_0..beta_d, sigma, gamma [, omega_0.., eta2].
void write_samples_csv(const std::string& path, const PosteriorSamples& samples);
PosteriorSamples read_samples_csv(const std::string& path);

// Initial-monotone-window autocorrelation estimate.
double effective_sample_size(const Eigen::VectorXd& draws);

}  // namespace galqr
