#include "galqr/lasso.hpp"

#include <cmath>
#include <stdexcept>

#include "galqr/tobit.hpp"

namespace galqr {

Eigen::VectorXd update_slopes(const ChainState& state, const Eigen::MatrixXd& x,
                              const LassoPriorConfig& prior, const GalMixtureCoeffs& coef,
                              Rng& rng, long* jitter_events) {
  const Eigen::Index d = x.cols();
  if (state.omega.size() != d - 1) {
    throw std::invalid_argument("update_slopes: omega latents do not match slope count");
  }
  Eigen::MatrixXd prior_precision = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd prior_precision_mean = Eigen::VectorXd::Zero(d);
  prior_precision(0, 0) = 1.0 / prior.intercept_variance;
  prior_precision_mean[0] = prior.intercept_mean / prior.intercept_variance;
  for (Eigen::Index k = 1; k < d; ++k) prior_precision(k, k) = 1.0 / state.omega[k - 1];
  return update_beta(state, x, prior_precision, prior_precision_mean, coef, rng, jitter_events);
}

Eigen::VectorXd update_omega(const Eigen::VectorXd& slopes, double eta2, Rng& rng) {
  if (!(eta2 > 0.0)) throw std::domain_error("update_omega requires eta2 > 0");
  Eigen::VectorXd omega(slopes.size());
  for (Eigen::Index k = 0; k < slopes.size(); ++k) {
    const double b2 = slopes[k] * slopes[k];
    // beta -> 0 limit is Gamma(1/2, eta2/2)
    omega[k] = sample_gig({0.5, b2 < 1e-24 ? 0.0 : b2, eta2}, rng);
  }
  return omega;
}

double update_eta2(const Eigen::VectorXd& omega, const LassoPriorConfig& prior, Rng& rng) {
  const double shape = prior.eta2_shape + static_cast<double>(omega.size());
  const double rate = prior.eta2_rate + 0.5 * omega.sum();
  return sample_gamma(shape, rate, rng);
}

Standardization standardize_design(Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  Standardization info;
  info.center = Eigen::VectorXd::Zero(d);
  info.scale = Eigen::VectorXd::Ones(d);
  for (Eigen::Index j = 1; j < d; ++j) {
    const double mean = x.col(j).mean();
    const double sd = std::sqrt((x.col(j).array() - mean).square().sum() /
                                static_cast<double>(n - 1));
    if (sd <= 0.0) continue;  // constant column, leave alone
    info.center[j] = mean;
    info.scale[j] = sd;
    x.col(j) = (x.col(j).array() - mean) / sd;
  }
  return info;
}

void destandardize_draws(PosteriorSamples& samples, const Standardization& std_info) {
  const int d = samples.dim();
  if (std_info.scale.size() != d) {
    throw std::invalid_argument("destandardize_draws: dimension mismatch");
  }
  for (int m = 0; m < samples.keep(); ++m) {
    double shift = 0.0;
    for (int j = 1; j < d; ++j) {
      shift += samples.beta(m, j) * std_info.center[j] / std_info.scale[j];
      samples.beta(m, j) /= std_info.scale[j];
    }
    samples.beta(m, 0) -= shift;
  }
}

Eigen::MatrixXd standardized_effects(const Eigen::MatrixXd& slope_draws,
                                     const Eigen::MatrixXd& x_slopes, const Eigen::VectorXd& y) {
  const Eigen::Index d = slope_draws.cols();
  if (x_slopes.cols() != d) {
    throw std::invalid_argument("standardized_effects: draw and design dimensions differ");
  }
  const Eigen::Index n = x_slopes.rows();
  const double sy = std::sqrt((y.array() - y.mean()).square().sum() / static_cast<double>(n - 1));
  if (!(sy > 0.0)) throw std::domain_error("standardized_effects: response has zero SD");
  Eigen::VectorXd ratio(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mean = x_slopes.col(j).mean();
    const double sx = std::sqrt((x_slopes.col(j).array() - mean).square().sum() /
                                static_cast<double>(n - 1));
    if (!(sx > 0.0)) {
      throw std::domain_error("standardized_effects: covariate column " + std::to_string(j) +
                              " has zero SD");
    }
    ratio[j] = sx / sy;
  }
  return slope_draws.array().rowwise() * ratio.transpose().array();
}

PosteriorSamples run_lasso_chain(const Dataset& data, QuantRegConfig config, Rng& rng) {
  config.lasso = true;
  if (data.has_censoring()) return run_tobit_chain(data, config, rng);
  return run_chain(data, config, rng);
}

}  // namespace galqr
