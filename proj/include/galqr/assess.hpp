#pragma once

#include <Eigen/Dense>
#include <vector>

#include "galqr/data.hpp"
#include "galqr/sampler.hpp"

namespace galqr {

// Check loss rho_p(u) = u [p - I(u < 0)]; convex, piecewise linear, zero at zero.
double check_loss(double u, double p0);

// Mean check loss of the fitted linear predictor against the true one over
// the test design: N^{-1} sum rho_{p0}(x_i' beta_hat - x_i' beta_true).
double mean_check_loss(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta_true,
                       const Eigen::MatrixXd& test_x, double p0);

// Correct-inclusion/exclusion score at the |standardized effect| > 0.1
// threshold, averaged over posterior draws. True support is taken from the
// nonzero pattern of true_slopes.
struct CieReport {
  std::vector<double> per_draw;  // fraction of correct decisions, each in [0,1]
  double mean = 0.0;
};

CieReport cie_score(const Eigen::MatrixXd& slope_draws, const Eigen::MatrixXd& x_slopes,
                    const Eigen::VectorXd& y, const Eigen::VectorXd& true_slopes,
                    double threshold = 0.1);

// Posterior predictive loss (Gelfand-Ghosh): P penalty, G goodness of fit,
// D the combined criterion.
enum class PplLoss { quadratic, check };

struct PplReport {
  double penalty = 0.0;
  double goodness = 0.0;
  double criterion = 0.0;
  PplLoss loss_kind = PplLoss::quadratic;
  double m_weight = 0.0;  // infinity gives D = P + G
};

// Quadratic version: G = sum_i (y_i - E[y*_i])^2, P = sum_i var(y*_i),
// D_m = P + m/(m+1) G. Predictive moments are computed across the rows
// (draws) of the replicate matrix.
PplReport ppl_quadratic(const Eigen::MatrixXd& replicates, const Eigen::VectorXd& y,
                        double m_weight);

// Check-loss version: D = sum_i E[rho_{p0}(y_i - y*_i)],
// G = sum_i rho_{p0}(y_i - E[y*_i]), P = D - G (nonnegative by convexity).
PplReport ppl_check(const Eigen::MatrixXd& replicates, const Eigen::VectorXd& y, double p0);

// Bayesian information criterion: -2 loglik + k log(n).
double bic(double loglik_at_estimate, int k_params, int n_obs);

// Revised BIC for censored data: the penalty counts uncensored observations.
double bic_censored(double loglik_at_estimate, int k_params, int n_uncensored);

// Log likelihood of the (possibly censored) dataset at a parameter point;
// censored rows contribute log F(threshold | x'beta, sigma, gamma).
double gal_loglik(const Dataset& data, const Eigen::VectorXd& beta, double sigma, double gamma,
                  double p0);

// Plug-in BIC at the posterior means of (beta, sigma, gamma). Parameter
// count: coefficients + sigma, plus gamma unless it was pinned at zero.
double bic_from_samples(const PosteriorSamples& samples, const Dataset& data);

}  // namespace galqr
