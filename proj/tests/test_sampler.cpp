#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "galqr/sampler.hpp"
#include "galqr/tobit.hpp"
#include "support/oracles.hpp"
#include "support/quadrature.hpp"
#include "support/stats.hpp"

using namespace galqr;
namespace ts = testsupport;

namespace {

// small fixed problem shared by several audits
struct TinyProblem {
  Eigen::MatrixXd x;
  ChainState state;
  GalMixtureCoeffs coef;
  double p0 = 0.25;

  TinyProblem() {
    x.resize(3, 1);
    x << 0.8, -1.1, 1.9;
    state.beta = Eigen::VectorXd::Constant(1, 0.7);
    state.sigma = 1.3;
    state.gamma = 0.9;
    state.v.resize(3);
    state.v << 0.6, 1.4, 0.9;
    state.s.resize(3);
    state.s << 0.5, 1.1, 0.2;
    state.y_aug.resize(3);
    state.y_aug << 1.2, -0.4, 2.6;
    coef = gal_mixture_coeffs(state.gamma, p0);
  }
};

Dataset synthetic_gal_data(int n, double p0, double gamma, const Eigen::VectorXd& beta,
                           double sigma, Rng& rng) {
  const int d = static_cast<int>(beta.size());
  Dataset data;
  data.x.resize(n, d);
  data.x.col(0).setOnes();
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j < d; ++j) data.x(i, j) = rng.normal();
  }
  const GalParams err(p0, gamma, 0.0, sigma);
  data.y.resize(n);
  for (int i = 0; i < n; ++i) data.y[i] = data.x.row(i).dot(beta) + gal_sample(err, rng);
  for (int j = 0; j < d; ++j) data.column_names.push_back("c" + std::to_string(j));
  return data;
}

}  // namespace

TEST_CASE("update_beta: with no data the draw is the prior") {
  ChainState state;
  state.sigma = 1.0;
  state.y_aug.resize(0);
  state.v.resize(0);
  state.s.resize(0);
  Eigen::MatrixXd x(0, 2);
  const Eigen::MatrixXd cov = (Eigen::MatrixXd(2, 2) << 2.0, 0.6, 0.6, 1.0).finished();
  const Eigen::MatrixXd prec = cov.inverse();
  const Eigen::VectorXd mean = (Eigen::VectorXd(2) << 1.0, -2.0).finished();
  const GalMixtureCoeffs coef = gal_mixture_coeffs(0.0, 0.5);
  Rng rng(31);
  const int n = 40000;
  Eigen::MatrixXd draws(n, 2);
  for (int i = 0; i < n; ++i) {
    draws.row(i) = update_beta(state, x, prec, prec * mean, coef, rng).transpose();
  }
  const Eigen::VectorXd emp_mean = draws.colwise().mean();
  CHECK(emp_mean[0] == doctest::Approx(1.0).epsilon(0.03));
  CHECK(emp_mean[1] == doctest::Approx(-2.0).epsilon(0.02));
  Eigen::MatrixXd centered = draws.rowwise() - emp_mean.transpose();
  const Eigen::MatrixXd emp_cov = centered.transpose() * centered / (n - 1.0);
  CHECK(emp_cov(0, 0) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(emp_cov(0, 1) == doctest::Approx(0.6).epsilon(0.1));
  CHECK(emp_cov(1, 1) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("update_beta: flat-prior single-observation closed form") {
  ChainState state;
  state.sigma = 0.8;
  state.gamma = 0.6;
  state.v = Eigen::VectorXd::Constant(1, 1.7);
  state.s = Eigen::VectorXd::Constant(1, 0.4);
  state.y_aug = Eigen::VectorXd::Constant(1, 2.1);
  Eigen::MatrixXd x(1, 1);
  x << 1.6;
  const GalMixtureCoeffs coef = gal_mixture_coeffs(0.6, 0.5);
  // vanishing prior precision: posterior solves the weighted normal equation
  const Eigen::MatrixXd prec = Eigen::MatrixXd::Constant(1, 1, 1e-12);
  const Eigen::VectorXd rhs = Eigen::VectorXd::Zero(1);
  const double resid = 2.1 - state.sigma * coef.c_abs_gamma * 0.4 - coef.A * 1.7;
  const double expected_mean = resid / 1.6;
  const double expected_var = coef.B * state.sigma * 1.7 / (1.6 * 1.6);
  Rng rng(32);
  std::vector<double> draws(60000);
  for (auto& b : draws) b = update_beta(state, x, prec, rhs, coef, rng)[0];
  CHECK(ts::mean_of(draws) == doctest::Approx(expected_mean).epsilon(0.02));
  CHECK(ts::var_of(draws) == doctest::Approx(expected_var).epsilon(0.05));
}

TEST_CASE("update_v: parameter assembly audit via identical streams") {
  const TinyProblem tp;
  Rng rng_a(33), rng_b(33);
  const Eigen::VectorXd v = update_v(tp.state, tp.x, tp.coef, rng_a);
  for (int i = 0; i < 3; ++i) {
    const double resid = tp.state.y_aug[i] - tp.x.row(i).dot(tp.state.beta) -
                         tp.state.sigma * tp.coef.c_abs_gamma * tp.state.s[i];
    const double a = resid * resid / (tp.coef.B * tp.state.sigma);
    const double b = 2.0 / tp.state.sigma + tp.coef.A * tp.coef.A / (tp.coef.B * tp.state.sigma);
    CHECK(v[i] == sample_gig({0.5, a, b}, rng_b));
    CHECK(v[i] > 0.0);
  }
}

TEST_CASE("update_v: gamma = 0 matches the AL reference v-update in distribution") {
  TinyProblem tp;
  tp.state.gamma = 0.0;
  tp.coef = gal_mixture_coeffs(0.0, tp.p0);
  Rng rng(34);
  const double theta = (1.0 - 2.0 * tp.p0) / (tp.p0 * (1.0 - tp.p0));
  const double tau2 = 2.0 / (tp.p0 * (1.0 - tp.p0));
  std::vector<double> mine(30000), oracle(30000);
  for (size_t k = 0; k < mine.size(); ++k) {
    mine[k] = update_v(tp.state, tp.x, tp.coef, rng)[0];
    const double resid = tp.state.y_aug[0] - tp.x.row(0).dot(tp.state.beta);
    oracle[k] = sample_gig({0.5, resid * resid / (tau2 * tp.state.sigma),
                            2.0 / tp.state.sigma + theta * theta / (tau2 * tp.state.sigma)},
                           rng);
  }
  CHECK(ts::ks_two_sample(mine, oracle).pass_at_001);
}

TEST_CASE("update_s: gamma = 0 gives standard half-normal latents") {
  TinyProblem tp;
  tp.state.gamma = 0.0;
  tp.coef = gal_mixture_coeffs(0.0, tp.p0);
  Rng rng(35);
  std::vector<double> draws(50000);
  for (auto& s : draws) s = update_s(tp.state, tp.x, tp.coef, rng)[1];
  auto half_normal_cdf = [](double s) {
    return s <= 0.0 ? 0.0 : std::erf(s / std::sqrt(2.0));
  };
  CHECK(ts::ks_test(draws, half_normal_cdf).pass_at_001);
}

TEST_CASE("update_s: conditional variance never exceeds one") {
  Rng rng(36);
  for (int k = 0; k < 200; ++k) {
    const double p0s[] = {0.05, 0.5, 0.9};
    const double p0 = p0s[k % 3];
    const GammaSupport sup = gamma_support(p0);
    const double gamma = sup.lower + (sup.upper - sup.lower) * (0.02 + 0.96 * rng.uniform());
    const GalMixtureCoeffs coef = gal_mixture_coeffs(gamma, p0);
    const double sigma = 0.2 + 3.0 * rng.uniform();
    const double v = 0.05 + 4.0 * rng.uniform();
    const double var =
        1.0 / (coef.c_abs_gamma * coef.c_abs_gamma * sigma / (coef.B * v) + 1.0);
    CHECK(var <= 1.0 + 1e-15);
  }
}

TEST_CASE("update_s: KS against a plain rejection sampler at fixed parameters") {
  const TinyProblem tp;
  Rng rng(37);
  std::vector<double> mine(40000), oracle(40000);
  for (auto& s : mine) s = update_s(tp.state, tp.x, tp.coef, rng)[2];
  // direct rejection from the same conditional
  const double cg2 = tp.coef.c_abs_gamma * tp.coef.c_abs_gamma;
  const double var = 1.0 / (cg2 * tp.state.sigma / (tp.coef.B * tp.state.v[2]) + 1.0);
  const double resid = tp.state.y_aug[2] - tp.x.row(2).dot(tp.state.beta) -
                       tp.coef.A * tp.state.v[2];
  const double mean = var * tp.coef.c_abs_gamma * resid / (tp.coef.B * tp.state.v[2]);
  const double sd = std::sqrt(var);
  for (auto& s : oracle) {
    double z;
    do {
      z = mean + sd * rng.normal();
    } while (z <= 0.0);
    s = z;
  }
  CHECK(ts::ks_two_sample(mine, oracle).pass_at_001);
}

TEST_CASE("update_sigma: GIG parameters and the AL degenerate branch") {
  TinyProblem tp;
  const SigmaPrior prior{2.0, 2.5};
  // nu negative, c positive for any state
  Rng rng(38);
  for (int k = 0; k < 2000; ++k) {
    const double s = update_sigma(tp.state, tp.x, prior, tp.coef, rng);
    CHECK(s > 0.0);
  }
  // gamma = 0: matches the AL oracle's inverse-gamma update in distribution
  tp.state.gamma = 0.0;
  tp.coef = gal_mixture_coeffs(0.0, tp.p0);
  const double theta = (1.0 - 2.0 * tp.p0) / (tp.p0 * (1.0 - tp.p0));
  const double tau2 = 2.0 / (tp.p0 * (1.0 - tp.p0));
  std::vector<double> mine(40000), oracle(40000);
  for (auto& s : mine) s = update_sigma(tp.state, tp.x, prior, tp.coef, rng);
  for (auto& s : oracle) {
    double rate = prior.rate + tp.state.v.sum();
    for (int i = 0; i < 3; ++i) {
      const double resid =
          tp.state.y_aug[i] - tp.x.row(i).dot(tp.state.beta) - theta * tp.state.v[i];
      rate += resid * resid / (2.0 * tau2 * tp.state.v[i]);
    }
    s = 1.0 / sample_gamma(prior.shape + 1.5 * 3.0, rate, rng);
  }
  CHECK(ts::ks_two_sample(mine, oracle).pass_at_001);
}

TEST_CASE("metropolis logit step: constant target has uniform stationary law") {
  const double lo = -1.0, hi = 2.5;
  auto flat = [](double) { return 0.0; };
  Rng rng(39);
  double current = 0.3;
  std::vector<double> draws;
  draws.reserve(40000);
  for (int t = 0; t < 400000; ++t) {
    const GammaStepResult r = metropolis_logit_step(current, lo, hi, 1.2, flat, rng);
    current = r.gamma;
    if (t % 10 == 9) draws.push_back(current);
  }
  auto unif_cdf = [&](double g) { return (g - lo) / (hi - lo); };
  CHECK(ts::ks_test(draws, unif_cdf).pass_at_001);
}

TEST_CASE("metropolis logit step: single-step acceptance matches quadrature") {
  // constant target: acceptance probability from gamma0 is
  // E_theta'[ min(1, J(gamma')/J(gamma0)) ] under the normal proposal
  const double lo = -1.0, hi = 2.5, step = 0.9, gamma0 = 0.4;
  auto jac = [&](double g) { return (g - lo) * (hi - g); };
  const double u0 = (gamma0 - lo) / (hi - lo);
  const double theta0 = std::log(u0) - std::log1p(-u0);
  const double expected = ts::integrate_real_line(
      [&](double t) {
        const double g = lo + (hi - lo) / (1.0 + std::exp(-(theta0 + t)));
        const double ratio = std::min(1.0, jac(g) / jac(gamma0));
        return ratio * normal_pdf(t, 0.0, step * step);
      },
      1e-11);
  auto flat = [](double) { return 0.0; };
  Rng rng(40);
  long accepted = 0;
  const int n = 400000;
  for (int t = 0; t < n; ++t) {
    if (metropolis_logit_step(gamma0, lo, hi, step, flat, rng).accepted) ++accepted;
  }
  const double emp = static_cast<double>(accepted) / n;
  const double se = std::sqrt(expected * (1.0 - expected) / n);
  CHECK(std::fabs(emp - expected) < 4.0 * se);
}

TEST_CASE("grid audits: every full conditional matches numeric normalization") {
  const TinyProblem tp;
  const int n_draws = 20000;

  SUBCASE("beta conditional") {
    const Eigen::MatrixXd prec = Eigen::MatrixXd::Constant(1, 1, 1.0 / 100.0);
    const Eigen::VectorXd rhs = Eigen::VectorXd::Zero(1);
    Rng rng(41);
    std::vector<double> draws(n_draws);
    for (auto& b : draws) {
      b = update_beta(tp.state, tp.x, prec, rhs, tp.coef, rng)[0];
    }
    auto logdens = [&](double beta) {
      double lp = -0.5 * beta * beta / 100.0;
      for (int i = 0; i < 3; ++i) {
        const double mean = tp.x(i, 0) * beta + tp.state.sigma * tp.coef.c_abs_gamma * tp.state.s[i] +
                            tp.coef.A * tp.state.v[i];
        lp += normal_logpdf(tp.state.y_aug[i], mean, tp.coef.B * tp.state.sigma * tp.state.v[i]);
      }
      return lp;
    };
    CHECK(ts::grid_audit(draws, logdens, -9.0, 11.0).pass_at_001);
  }

  SUBCASE("v conditional") {
    Rng rng(42);
    std::vector<double> draws(n_draws);
    for (auto& v : draws) v = update_v(tp.state, tp.x, tp.coef, rng)[0];
    auto logdens = [&](double v) {
      const double mean = tp.x.row(0).dot(tp.state.beta) +
                          tp.state.sigma * tp.coef.c_abs_gamma * tp.state.s[0] + tp.coef.A * v;
      return normal_logpdf(tp.state.y_aug[0], mean, tp.coef.B * tp.state.sigma * v) -
             v / tp.state.sigma;
    };
    CHECK(ts::grid_audit(draws, logdens, 1e-9, 30.0).pass_at_001);
  }

  SUBCASE("s conditional") {
    Rng rng(43);
    std::vector<double> draws(n_draws);
    for (auto& s : draws) s = update_s(tp.state, tp.x, tp.coef, rng)[0];
    auto logdens = [&](double s) {
      const double mean = tp.x.row(0).dot(tp.state.beta) +
                          tp.state.sigma * tp.coef.c_abs_gamma * s + tp.coef.A * tp.state.v[0];
      return normal_logpdf(tp.state.y_aug[0], mean, tp.coef.B * tp.state.sigma * tp.state.v[0]) -
             0.5 * s * s;
    };
    CHECK(ts::grid_audit(draws, logdens, 1e-9, 8.0).pass_at_001);
  }

  SUBCASE("sigma conditional") {
    const SigmaPrior prior{2.0, 2.5};
    Rng rng(44);
    std::vector<double> draws(n_draws);
    for (auto& s : draws) s = update_sigma(tp.state, tp.x, prior, tp.coef, rng);
    auto logdens = [&](double sigma) {
      double lp = (-prior.shape - 1.0) * std::log(sigma) - prior.rate / sigma;
      for (int i = 0; i < 3; ++i) {
        const double mean = tp.x.row(i).dot(tp.state.beta) +
                            sigma * tp.coef.c_abs_gamma * tp.state.s[i] + tp.coef.A * tp.state.v[i];
        lp += normal_logpdf(tp.state.y_aug[i], mean, tp.coef.B * sigma * tp.state.v[i]);
        lp += -std::log(sigma) - tp.state.v[i] / sigma;  // Exp(v | mean sigma)
      }
      return lp;
    };
    CHECK(ts::grid_audit(draws, logdens, 1e-4, 40.0).pass_at_001);
  }

  SUBCASE("gamma conditional via a long Metropolis run") {
    const GammaPrior prior;  // uniform
    const GammaSupport support = gamma_support(tp.p0);
    Rng rng(45);
    ChainState st = tp.state;
    std::vector<double> draws;
    draws.reserve(12000);
    for (int t = 0; t < 300000; ++t) {
      const GammaStepResult r = update_gamma(st, tp.x, tp.p0, prior, support, 1.0, rng);
      st.gamma = r.gamma;
      if (t % 25 == 24) draws.push_back(st.gamma);
    }
    auto logdens = [&](double gamma) {
      return gamma_log_conditional(gamma, tp.state, tp.x, tp.p0, prior, support);
    };
    CHECK(ts::grid_audit(draws, logdens, support.lower + 1e-9, support.upper - 1e-9, 15).pass_at_001);
  }
}

TEST_CASE("run_chain: seed reproducibility and basic output shape") {
  Rng data_rng(46);
  Eigen::VectorXd beta_true(2);
  beta_true << 1.0, -0.7;
  const Dataset data = synthetic_gal_data(60, 0.5, 0.5, beta_true, 1.0, data_rng);
  QuantRegConfig config;
  config.p0 = 0.5;
  config.chain = {300, 2, 400, 777};
  const PosteriorSamples a = run_chain(data, config);
  const PosteriorSamples b = run_chain(data, config);
  CHECK(a.beta == b.beta);
  CHECK(a.sigma == b.sigma);
  CHECK(a.gamma == b.gamma);
  CHECK(a.keep() == 400);
  CHECK(a.iteration.front() == 302);
  CHECK(a.iteration.back() == 300 + 2 * 400);
  CHECK(a.diagnostics.gamma_accept_rate > 0.05);
  CHECK(a.diagnostics.gamma_accept_rate < 0.95);
  CHECK(a.ess.size() == 4);
}

TEST_CASE("run_chain: AL submodel pins gamma and matches a standalone AL chain") {
  Rng data_rng(47);
  Eigen::VectorXd beta_true(2);
  beta_true << 0.5, 1.2;
  const Dataset data = synthetic_gal_data(60, 0.3, 0.0, beta_true, 0.8, data_rng);
  QuantRegConfig config;
  config.p0 = 0.3;
  config.gamma_fixed_at_zero = true;
  config.chain = {2000, 20, 800, 555};
  const PosteriorSamples samples = run_chain(data, config);
  CHECK(samples.gamma.cwiseAbs().maxCoeff() == 0.0);

  Rng oracle_rng(556);
  const auto oracle = ts::al_reference_chain(
      data.x, data.y, 0.3, Eigen::VectorXd::Zero(2), 100.0 * Eigen::MatrixXd::Identity(2, 2),
      config.prior_sigma.shape, config.prior_sigma.rate, 2000, 20, 800, oracle_rng);
  for (int j = 0; j < 2; ++j) {
    std::vector<double> mine(samples.beta.col(j).data(), samples.beta.col(j).data() + 800);
    std::vector<double> ref(oracle.beta.col(j).data(), oracle.beta.col(j).data() + 800);
    CHECK(ts::ks_two_sample(mine, ref).pass_at_001);
  }
  std::vector<double> mine(samples.sigma.data(), samples.sigma.data() + 800);
  std::vector<double> ref(oracle.sigma.data(), oracle.sigma.data() + 800);
  CHECK(ts::ks_two_sample(mine, ref).pass_at_001);
}

TEST_CASE("run_chain: invariant to reordering the observations") {
  Rng data_rng(48);
  Eigen::VectorXd beta_true(2);
  beta_true << 1.0, 0.5;
  const Dataset data = synthetic_gal_data(50, 0.5, -0.6, beta_true, 1.0, data_rng);
  Dataset reversed = data;
  for (int i = 0; i < data.n(); ++i) {
    reversed.x.row(i) = data.x.row(data.n() - 1 - i);
    reversed.y[i] = data.y[data.n() - 1 - i];
  }
  QuantRegConfig config;
  config.p0 = 0.5;
  config.chain = {2000, 15, 700, 888};
  const PosteriorSamples a = run_chain(data, config);
  QuantRegConfig config2 = config;
  config2.chain.seed = 999;
  const PosteriorSamples b = run_chain(reversed, config2);
  for (int j = 0; j < 2; ++j) {
    std::vector<double> va(a.beta.col(j).data(), a.beta.col(j).data() + a.keep());
    std::vector<double> vb(b.beta.col(j).data(), b.beta.col(j).data() + b.keep());
    CHECK(ts::ks_two_sample(va, vb).pass_at_001);
  }
}

TEST_CASE("run_chain rejects censored data and bad configs") {
  Rng rng(49);
  Eigen::VectorXd beta_true(1);
  beta_true << 1.0;
  Dataset data = synthetic_gal_data(10, 0.5, 0.0, beta_true, 1.0, rng);
  QuantRegConfig config;
  config.p0 = 1.5;
  CHECK_THROWS_AS(run_chain(data, config), std::invalid_argument);
  config.p0 = 0.5;
  config.chain.keep = 0;
  CHECK_THROWS_AS(run_chain(data, config), std::invalid_argument);
  config.chain.keep = 10;
  data.censored.assign(static_cast<size_t>(data.n()), false);
  data.censored[0] = true;
  data.threshold = data.y.minCoeff() - 1.0;
  CHECK_THROWS_AS(run_chain(data, config), std::invalid_argument);
}

TEST_CASE("predictive_error_density: degenerate cases and normalization") {
  PosteriorSamples samples;
  samples.p0 = 0.25;
  samples.beta = Eigen::MatrixXd::Zero(1, 1);
  samples.sigma = Eigen::VectorXd::Constant(1, 1.4);
  samples.gamma = Eigen::VectorXd::Constant(1, 0.8);
  const int g = 512;
  Eigen::VectorXd grid(g);
  for (int i = 0; i < g; ++i) grid[i] = -14.0 + 32.0 * i / (g - 1.0);
  Rng rng(50);
  const Eigen::VectorXd dens = predictive_error_density(samples, grid, 10, rng);
  const GalParams params(0.25, 0.8, 0.0, 1.4);
  for (int i = 0; i < g; i += 37) {
    CHECK(dens[i] == doctest::Approx(gal_pdf(grid[i], params)).epsilon(1e-12));
  }

  // all draws at (gamma=0, sigma=1): the AL density
  PosteriorSamples al;
  al.p0 = 0.25;
  al.beta = Eigen::MatrixXd::Zero(40, 1);
  al.sigma = Eigen::VectorXd::Constant(40, 1.0);
  al.gamma = Eigen::VectorXd::Zero(40);
  const Eigen::VectorXd dens_al = predictive_error_density(al, grid, 40, rng);
  for (int i = 0; i < g; i += 41) {
    CHECK(dens_al[i] == doctest::Approx(std::exp(al_logpdf(grid[i], 0.25, 0.0, 1.0))).epsilon(1e-12));
  }

  // trapezoid mass close to one on a wide grid
  double mass = 0.0;
  for (int i = 1; i < g; ++i) mass += 0.5 * (dens[i] + dens[i - 1]) * (grid[i] - grid[i - 1]);
  CHECK(mass == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("posterior_predictive_replicates: shape and mixture mean formula") {
  Rng data_rng(51);
  Eigen::VectorXd beta(2);
  beta << 0.4, 1.1;
  Dataset data = synthetic_gal_data(5, 0.25, 1.2, beta, 0.9, data_rng);
  PosteriorSamples samples;
  samples.p0 = 0.25;
  const int keep = 60000;
  samples.beta = beta.transpose().replicate(keep, 1);
  samples.sigma = Eigen::VectorXd::Constant(keep, 0.9);
  samples.gamma = Eigen::VectorXd::Constant(keep, 1.2);
  Rng rng(52);
  const Eigen::MatrixXd rep = posterior_predictive_replicates(samples, data, rng);
  CHECK(rep.rows() == keep);
  CHECK(rep.cols() == 5);
  const GalMixtureCoeffs coef = gal_mixture_coeffs(1.2, 0.25);
  for (int i = 0; i < 5; ++i) {
    const double expected = data.x.row(i).dot(beta) +
                            0.9 * (coef.c_abs_gamma * std::sqrt(2.0 / M_PI) + coef.A);
    std::vector<double> col(rep.col(i).data(), rep.col(i).data() + keep);
    CHECK(std::fabs(ts::mean_of(col) - expected) < 4.0 * ts::mc_se(col));
  }
}

TEST_CASE("effective_sample_size: white noise vs strongly correlated draws") {
  Rng rng(53);
  Eigen::VectorXd iid(4000);
  for (int i = 0; i < iid.size(); ++i) iid[i] = rng.normal();
  CHECK(effective_sample_size(iid) > 2000.0);
  Eigen::VectorXd ar(4000);
  ar[0] = rng.normal();
  for (int i = 1; i < ar.size(); ++i) ar[i] = 0.95 * ar[i - 1] + std::sqrt(1 - 0.95 * 0.95) * rng.normal();
  CHECK(effective_sample_size(ar) < 500.0);
}

TEST_CASE("samples CSV round trip") {
  PosteriorSamples samples;
  samples.p0 = 0.5;
  samples.beta = Eigen::MatrixXd::Random(20, 3);
  samples.sigma = Eigen::VectorXd::Random(20).cwiseAbs();
  samples.gamma = Eigen::VectorXd::Random(20);
  samples.lasso = true;
  samples.omega = Eigen::MatrixXd::Random(20, 2).cwiseAbs();
  samples.eta2 = Eigen::VectorXd::Random(20).cwiseAbs();
  const std::string path = "test_samples_roundtrip.csv";
  write_samples_csv(path, samples);
  const PosteriorSamples loaded = read_samples_csv(path);
  CHECK(loaded.beta == samples.beta);
  CHECK(loaded.sigma == samples.sigma);
  CHECK(loaded.gamma == samples.gamma);
  CHECK(loaded.omega == samples.omega);
  CHECK(loaded.eta2 == samples.eta2);
  CHECK(loaded.lasso);
  std::remove(path.c_str());
}
