#pragma once

#include "galqr/sampler.hpp"

namespace galqr {

// Lasso-regularized quantile regression: hierarchical Laplace prior on the
// slopes through its normal scale mixture, normal prior on the intercept
// (design column 0), gamma prior on eta^2 with eta = lambda/sigma.

// Joint normal draw of (intercept, slopes) with per-slope prior precision
// 1/omega_k in place of the corresponding prior covariance entries.
Eigen::VectorXd update_slopes(const ChainState& state, const Eigen::MatrixXd& x,
                              const LassoPriorConfig& prior, const GalMixtureCoeffs& coef,
                              Rng& rng, long* jitter_events = nullptr);

// omega_k | beta_k, eta2 ~ GIG(1/2, beta_k^2, eta2); equivalently 1/omega_k
// is inverse-Gaussian with mean sqrt(eta2/beta_k^2) and shape eta2. Slopes
// below 1e-12 in magnitude use the beta -> 0 limiting gamma form.
Eigen::VectorXd update_omega(const Eigen::VectorXd& slopes, double eta2, Rng& rng);

// eta^2 | omega ~ Gamma(a_eta + d, rate b_eta + sum_k omega_k / 2).
double update_eta2(const Eigen::VectorXd& omega, const LassoPriorConfig& prior, Rng& rng);

// Centers and scales applied to the design columns; identity entries for
// columns left alone (the intercept and any constant column).
struct Standardization {
  Eigen::VectorXd center;
  Eigen::VectorXd scale;
};

// Z-scores every design column except column 0 in place.
Standardization standardize_design(Eigen::MatrixXd& x);

// Maps standardized-scale coefficient draws back to the raw scale; the
// intercept column absorbs the centering correction. Latent omega draws
// stay on the fitting (standardized) scale.
void destandardize_draws(PosteriorSamples& samples, const Standardization& std_info);

// Standardized effects (s_{x_j}/s_y) beta_j, one row per draw.
// Throws when a covariate column or the response has zero sample SD.
Eigen::MatrixXd standardized_effects(const Eigen::MatrixXd& slope_draws,
                                     const Eigen::MatrixXd& x_slopes, const Eigen::VectorXd& y);

// Convenience entry point: forces config.lasso and dispatches on censoring.
PosteriorSamples run_lasso_chain(const Dataset& data, QuantRegConfig config, Rng& rng);

}  // namespace galqr
