#include <doctest.h>

#include <cmath>
#include <vector>

#include "galqr/tobit.hpp"
#include "support/stats.hpp"

using namespace galqr;
namespace ts = testsupport;

namespace {

Dataset tobit_synthetic(int n, double p0, double gamma, const Eigen::VectorXd& beta, double sigma,
                        double threshold, Rng& rng) {
  const int d = static_cast<int>(beta.size());
  Dataset data;
  data.x.resize(n, d);
  data.x.col(0).setOnes();
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j < d; ++j) data.x(i, j) = rng.normal();
  }
  const GalParams err(p0, gamma, 0.0, sigma);
  data.y.resize(n);
  data.censored.assign(static_cast<size_t>(n), false);
  data.threshold = threshold;
  for (int i = 0; i < n; ++i) {
    const double latent = data.x.row(i).dot(beta) + gal_sample(err, rng);
    if (latent <= threshold) {
      data.y[i] = threshold;
      data.censored[static_cast<size_t>(i)] = true;
    } else {
      data.y[i] = latent;
    }
  }
  for (int j = 0; j < d; ++j) data.column_names.push_back("c" + std::to_string(j));
  return data;
}

}  // namespace

TEST_CASE("update_w: draws stay at or below the threshold, KS against rejection") {
  Dataset data;
  data.x.resize(2, 1);
  data.x << 1.0, 1.0;
  data.y.resize(2);
  data.y << 0.0, 2.0;
  data.censored = {true, false};
  data.threshold = 0.0;
  ChainState state;
  state.beta = Eigen::VectorXd::Constant(1, 0.4);
  state.sigma = 1.2;
  state.gamma = 0.6;
  state.v.resize(2);
  state.v << 0.9, 1.1;
  state.s.resize(2);
  state.s << 0.5, 0.8;
  state.y_aug = data.y;
  const GalMixtureCoeffs coef = gal_mixture_coeffs(0.6, 0.25);

  Rng rng(71);
  std::vector<double> mine(40000);
  for (auto& w : mine) {
    update_w(state, data, coef, rng);
    w = state.y_aug[0];
    REQUIRE(w <= data.threshold);
    // the uncensored row is never touched
    REQUIRE(state.y_aug[1] == 2.0);
  }
  const double mean = data.x.row(0).dot(state.beta) +
                      state.sigma * coef.c_abs_gamma * state.s[0] + coef.A * state.v[0];
  const double sd = std::sqrt(state.sigma * coef.B * state.v[0]);
  std::vector<double> oracle(40000);
  for (auto& w : oracle) {
    double z;
    do {
      z = mean + sd * rng.normal();
    } while (z > data.threshold);
    w = z;
  }
  CHECK(ts::ks_two_sample(mine, oracle).pass_at_001);
}

TEST_CASE("run_tobit_chain: zero censoring reproduces run_chain exactly") {
  Rng data_rng(72);
  Eigen::VectorXd beta(2);
  beta << 1.5, 0.8;
  Dataset data = tobit_synthetic(50, 0.5, 0.4, beta, 1.0, -1e9, data_rng);  // nothing censored
  CHECK(!data.has_censoring());
  QuantRegConfig config;
  config.p0 = 0.5;
  config.chain = {200, 2, 150, 1234};
  const PosteriorSamples a = run_tobit_chain(data, config);
  Dataset plain = data;
  plain.censored.clear();
  const PosteriorSamples b = run_chain(plain, config);
  CHECK(a.beta == b.beta);
  CHECK(a.sigma == b.sigma);
  CHECK(a.gamma == b.gamma);
}

TEST_CASE("tobit augmentation: restricted Gibbs matches the censored likelihood") {
  // sigma and gamma held fixed; the beta marginal of the (beta, v, s, w)
  // Gibbs chain must match prior x prod f x prod F(c) computed from the
  // closed-form GAL density and CDF
  const double p0 = 0.25, gamma = 0.8, sigma = 1.0;
  Dataset data;
  data.x.resize(3, 1);
  data.x << 1.0, 1.4, 0.7;
  data.y.resize(3);
  data.y << 1.3, 2.2, 0.0;
  data.censored = {false, false, true};
  data.threshold = 0.0;
  const GalMixtureCoeffs coef = gal_mixture_coeffs(gamma, p0);

  ChainState state;
  state.beta = Eigen::VectorXd::Zero(1);
  state.sigma = sigma;
  state.gamma = gamma;
  state.v = Eigen::VectorXd::Ones(3);
  state.s = Eigen::VectorXd::Constant(3, 0.8);
  state.y_aug = data.y;
  state.y_aug[2] = -0.5;

  const Eigen::MatrixXd prior_prec = Eigen::MatrixXd::Constant(1, 1, 1.0 / 100.0);
  const Eigen::VectorXd prior_rhs = Eigen::VectorXd::Zero(1);
  Rng rng(73);
  std::vector<double> draws;
  draws.reserve(30000);
  for (int t = 0; t < 150000; ++t) {
    update_w(state, data, coef, rng);
    state.beta = update_beta(state, data.x, prior_prec, prior_rhs, coef, rng);
    state.v = update_v(state, data.x, coef, rng);
    state.s = update_s(state, data.x, coef, rng);
    if (t % 5 == 4) draws.push_back(state.beta[0]);
  }
  auto log_posterior = [&](double beta) {
    double lp = -0.5 * beta * beta / 100.0;
    for (int i = 0; i < 2; ++i) {
      const GalParams params(p0, gamma, data.x(i, 0) * beta, sigma);
      lp += gal_logpdf(data.y[i], params);
    }
    const GalParams cens(p0, gamma, data.x(2, 0) * beta, sigma);
    lp += std::log(std::max(gal_cdf(data.threshold, cens), 1e-300));
    return lp;
  };
  CHECK(ts::grid_audit(draws, log_posterior, -20.0, 20.0, 15).pass_at_001);
}

TEST_CASE("run_tobit_chain: recovery smoke test and predictive censoring rate") {
  Rng data_rng(74);
  Eigen::VectorXd beta(2);
  beta << 0.8, 1.5;
  const double p0 = 0.5, gamma_true = 0.5, sigma_true = 0.8;
  Dataset data = tobit_synthetic(300, p0, gamma_true, beta, sigma_true, 0.0, data_rng);
  const double cens_rate = static_cast<double>(data.censored_count()) / data.n();
  CHECK(cens_rate > 0.1);
  CHECK(cens_rate < 0.6);

  QuantRegConfig config;
  config.p0 = p0;
  config.chain = {3000, 3, 1200, 7777};
  const PosteriorSamples samples = run_tobit_chain(data, config);
  const Eigen::VectorXd mean = samples.beta_mean();
  CHECK(std::fabs(mean[0] - beta[0]) < 0.4);
  CHECK(std::fabs(mean[1] - beta[1]) < 0.4);

  // censoring rate of latent replicates tracks the empirical rate
  Rng rep_rng(75);
  const Eigen::MatrixXd reps = posterior_predictive_replicates(samples, data, rep_rng);
  const double pred_rate =
      (reps.array() <= data.threshold).cast<double>().sum() /
      static_cast<double>(reps.size());
  CHECK(std::fabs(pred_rate - cens_rate) < 0.08);
}
