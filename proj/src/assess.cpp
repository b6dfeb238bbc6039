#include "galqr/assess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "galqr/gal.hpp"
#include "galqr/lasso.hpp"

namespace galqr {

double check_loss(double u, double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw std::domain_error("check_loss requires p0 in (0,1)");
  return u * (p0 - (u < 0.0 ? 1.0 : 0.0));
}

double mean_check_loss(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta_true,
                       const Eigen::MatrixXd& test_x, double p0) {
  if (beta_hat.size() != test_x.cols() || beta_true.size() != test_x.cols()) {
    throw std::invalid_argument("mean_check_loss: coefficient/design dimension mismatch");
  }
  const Eigen::VectorXd diff = test_x * (beta_hat - beta_true);
  double total = 0.0;
  for (Eigen::Index i = 0; i < diff.size(); ++i) total += check_loss(diff[i], p0);
  return total / static_cast<double>(diff.size());
}

CieReport cie_score(const Eigen::MatrixXd& slope_draws, const Eigen::MatrixXd& x_slopes,
                    const Eigen::VectorXd& y, const Eigen::VectorXd& true_slopes,
                    double threshold) {
  const Eigen::Index d = slope_draws.cols();
  if (true_slopes.size() != d) throw std::invalid_argument("cie_score: slope count mismatch");
  const Eigen::MatrixXd effects = standardized_effects(slope_draws, x_slopes, y);
  CieReport report;
  report.per_draw.resize(static_cast<size_t>(slope_draws.rows()));
  for (Eigen::Index m = 0; m < slope_draws.rows(); ++m) {
    int correct = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
      const bool included = std::fabs(effects(m, j)) > threshold;
      const bool truly_in = true_slopes[j] != 0.0;
      correct += (included == truly_in) ? 1 : 0;
    }
    report.per_draw[static_cast<size_t>(m)] = static_cast<double>(correct) / static_cast<double>(d);
  }
  double sum = 0.0;
  for (double v : report.per_draw) sum += v;
  report.mean = sum / static_cast<double>(report.per_draw.size());
  return report;
}

PplReport ppl_quadratic(const Eigen::MatrixXd& replicates, const Eigen::VectorXd& y,
                        double m_weight) {
  if (replicates.rows() == 0 || replicates.cols() != y.size()) {
    throw std::invalid_argument("ppl_quadratic: replicate matrix does not match responses");
  }
  if (m_weight < 0.0) throw std::domain_error("ppl_quadratic: m_weight must be nonnegative");
  const double m = static_cast<double>(replicates.rows());
  PplReport report;
  report.loss_kind = PplLoss::quadratic;
  report.m_weight = m_weight;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double mean = replicates.col(i).mean();
    const double var = (replicates.col(i).array() - mean).square().sum() / m;
    report.penalty += var;
    report.goodness += (y[i] - mean) * (y[i] - mean);
  }
  const double weight =
      std::isinf(m_weight) ? 1.0 : m_weight / (m_weight + 1.0);
  report.criterion = report.penalty + weight * report.goodness;
  return report;
}

PplReport ppl_check(const Eigen::MatrixXd& replicates, const Eigen::VectorXd& y, double p0) {
  if (replicates.rows() == 0 || replicates.cols() != y.size()) {
    throw std::invalid_argument("ppl_check: replicate matrix does not match responses");
  }
  PplReport report;
  report.loss_kind = PplLoss::check;
  report.m_weight = std::numeric_limits<double>::infinity();
  double d_total = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    double mean_loss = 0.0;
    for (Eigen::Index m = 0; m < replicates.rows(); ++m) {
      mean_loss += check_loss(y[i] - replicates(m, i), p0);
    }
    d_total += mean_loss / static_cast<double>(replicates.rows());
    report.goodness += check_loss(y[i] - replicates.col(i).mean(), p0);
  }
  report.criterion = d_total;
  // convexity of the check loss guarantees D >= G; guard roundoff
  report.penalty = std::max(0.0, d_total - report.goodness);
  return report;
}

double bic(double loglik_at_estimate, int k_params, int n_obs) {
  if (n_obs < 1) throw std::domain_error("bic requires n_obs >= 1");
  if (k_params < 0) throw std::domain_error("bic requires k_params >= 0");
  return -2.0 * loglik_at_estimate + static_cast<double>(k_params) * std::log(n_obs);
}

double bic_censored(double loglik_at_estimate, int k_params, int n_uncensored) {
  return bic(loglik_at_estimate, k_params, n_uncensored);
}

double gal_loglik(const Dataset& data, const Eigen::VectorXd& beta, double sigma, double gamma,
                  double p0) {
  double ll = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    const GalParams params(p0, gamma, data.x.row(i).dot(beta), sigma);
    if (!data.censored.empty() && data.censored[static_cast<size_t>(i)]) {
      const double f = gal_cdf(data.threshold, params);
      ll += std::log(std::max(f, 1e-300));
    } else {
      ll += gal_logpdf(data.y[i], params);
    }
  }
  return ll;
}

double bic_from_samples(const PosteriorSamples& samples, const Dataset& data) {
  const Eigen::VectorXd beta = samples.beta_mean();
  const double sigma = samples.sigma.mean();
  const double gamma = samples.gamma_fixed_at_zero ? 0.0 : samples.gamma.mean();
  const double ll = gal_loglik(data, beta, sigma, gamma, samples.p0);
  const int k = samples.dim() + 1 + (samples.gamma_fixed_at_zero ? 0 : 1);
  const int n_eff = data.n() - data.censored_count();
  return data.has_censoring() ? bic_censored(ll, k, n_eff) : bic(ll, k, data.n());
}

}  // namespace galqr
