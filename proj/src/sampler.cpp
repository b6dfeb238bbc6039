#include "galqr/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "galqr/lasso.hpp"
#include "galqr/tobit.hpp"

namespace galqr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument(std::string(what) + " must be symmetric positive-definite");
  }
  return llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
}

}  // namespace

void QuantRegConfig::validate(int dim) const {
  if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("config: p0 must lie in (0,1)");
  if (!(prior_sigma.shape > 0.0 && prior_sigma.rate > 0.0)) {
    throw std::invalid_argument("config: inverse-gamma prior needs positive shape and rate");
  }
  if (!(prior_gamma.shape1 > 0.0 && prior_gamma.shape2 > 0.0)) {
    throw std::invalid_argument("config: gamma prior Beta shapes must be positive");
  }
  if (chain.burn_in < 1 || chain.thin < 1 || chain.keep < 1) {
    throw std::invalid_argument("config: burn_in, thin and keep must all be >= 1");
  }
  if (prior_beta.mean.size() > 0 && prior_beta.mean.size() != dim) {
    throw std::invalid_argument("config: prior_beta mean dimension mismatch");
  }
  if (prior_beta.covariance.size() > 0 &&
      (prior_beta.covariance.rows() != dim || prior_beta.covariance.cols() != dim)) {
    throw std::invalid_argument("config: prior_beta covariance dimension mismatch");
  }
  if (lasso) {
    if (dim < 2) throw std::invalid_argument("config: lasso model needs an intercept plus slopes");
    if (!(lasso_prior.intercept_variance > 0.0) || !(lasso_prior.eta2_shape > 0.0) ||
        !(lasso_prior.eta2_rate > 0.0)) {
      throw std::invalid_argument("config: lasso prior hyperparameters must be positive");
    }
  }
}

Eigen::VectorXd QuantRegConfig::beta_prior_mean(int dim) const {
  if (prior_beta.mean.size() > 0) return prior_beta.mean;
  return Eigen::VectorXd::Zero(dim);
}

Eigen::MatrixXd QuantRegConfig::beta_prior_covariance(int dim) const {
  if (prior_beta.covariance.size() > 0) return prior_beta.covariance;
  return 100.0 * Eigen::MatrixXd::Identity(dim, dim);
}

// ---------------------------------------------------------------------------
// Full-conditional updates
// ---------------------------------------------------------------------------

Eigen::VectorXd update_beta(const ChainState& state, const Eigen::MatrixXd& x,
                            const Eigen::MatrixXd& prior_precision,
                            const Eigen::VectorXd& prior_precision_mean,
                            const GalMixtureCoeffs& coef, Rng& rng, long* jitter_events) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  Eigen::MatrixXd precision = prior_precision;
  Eigen::VectorXd rhs = prior_precision_mean;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double inv_var = 1.0 / (coef.B * state.sigma * state.v[i]);
    const double resid = state.y_aug[i] - state.sigma * coef.c_abs_gamma * state.s[i] -
                         coef.A * state.v[i];
    precision.noalias() += inv_var * x.row(i).transpose() * x.row(i);
    rhs.noalias() += inv_var * resid * x.row(i).transpose();
  }
  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    // ridge fallback for near-singular precision; reported via diagnostics
    const double ridge = 1e-10 * (1.0 + precision.diagonal().maxCoeff());
    precision.diagonal().array() += ridge;
    llt.compute(precision);
    if (jitter_events != nullptr) ++(*jitter_events);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("beta update: precision matrix is not positive-definite");
    }
  }
  const Eigen::VectorXd mean = llt.solve(rhs);
  Eigen::VectorXd z(d);
  for (Eigen::Index j = 0; j < d; ++j) z[j] = rng.normal();
  return mean + llt.matrixU().solve(z);
}

Eigen::VectorXd update_v(const ChainState& state, const Eigen::MatrixXd& x,
                         const GalMixtureCoeffs& coef, Rng& rng) {
  const Eigen::Index n = x.rows();
  const double b = 2.0 / state.sigma + coef.A * coef.A / (coef.B * state.sigma);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double resid =
        state.y_aug[i] - x.row(i).dot(state.beta) - state.sigma * coef.c_abs_gamma * state.s[i];
    const double a = resid * resid / (coef.B * state.sigma);
    v[i] = sample_gig({0.5, a, b}, rng);
  }
  return v;
}

Eigen::VectorXd update_s(const ChainState& state, const Eigen::MatrixXd& x,
                         const GalMixtureCoeffs& coef, Rng& rng) {
  const Eigen::Index n = x.rows();
  const double cg2 = coef.c_abs_gamma * coef.c_abs_gamma;
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double var = 1.0 / (cg2 * state.sigma / (coef.B * state.v[i]) + 1.0);
    const double resid = state.y_aug[i] - x.row(i).dot(state.beta) - coef.A * state.v[i];
    const double mean = var * coef.c_abs_gamma * resid / (coef.B * state.v[i]);
    s[i] = sample_truncnorm_positive(mean, var, rng);
  }
  return s;
}

double update_sigma(const ChainState& state, const Eigen::MatrixXd& x, const SigmaPrior& prior,
                    const GalMixtureCoeffs& coef, Rng& rng) {
  const Eigen::Index n = x.rows();
  const double nu = -(prior.shape + 1.5 * static_cast<double>(n));
  double c = 2.0 * prior.rate;
  double d = 0.0;
  const double cg2 = coef.c_abs_gamma * coef.c_abs_gamma;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double resid = state.y_aug[i] - x.row(i).dot(state.beta) - coef.A * state.v[i];
    c += 2.0 * state.v[i] + resid * resid / (coef.B * state.v[i]);
    d += cg2 * state.s[i] * state.s[i] / (coef.B * state.v[i]);
  }
  return sample_gig({nu, c, d}, rng);
}

double gamma_log_conditional(double gamma, const ChainState& state, const Eigen::MatrixXd& x,
                             double p0, const GammaPrior& prior, const GammaSupport& support) {
  if (!(gamma > support.lower && gamma < support.upper)) return -kInf;
  GalMixtureCoeffs coef;
  try {
    coef = gal_mixture_coeffs(gamma, p0);
  } catch (const std::domain_error&) {
    return -kInf;
  }
  const double u = (gamma - support.lower) / (support.upper - support.lower);
  double lp = (prior.shape1 - 1.0) * std::log(u) + (prior.shape2 - 1.0) * std::log1p(-u);
  const Eigen::Index n = x.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mean = x.row(i).dot(state.beta) +
                        state.sigma * coef.c_abs_gamma * state.s[i] + coef.A * state.v[i];
    lp += normal_logpdf(state.y_aug[i], mean, coef.B * state.sigma * state.v[i]);
  }
  return std::isfinite(lp) ? lp : -kInf;
}

GammaStepResult update_gamma(const ChainState& state, const Eigen::MatrixXd& x, double p0,
                             const GammaPrior& prior, const GammaSupport& support, double step,
                             Rng& rng) {
  auto target = [&](double gamma) {
    return gamma_log_conditional(gamma, state, x, p0, prior, support);
  };
  return metropolis_logit_step(state.gamma, support.lower, support.upper, step, target, rng);
}

// ---------------------------------------------------------------------------
// Chain engine
// ---------------------------------------------------------------------------

PosteriorSamples run_chain_engine(const Dataset& data_in, const QuantRegConfig& config, Rng& rng) {
  data_in.validate();
  const int n = data_in.n();
  const int d = data_in.dim();
  config.validate(d);

  // the lasso fit runs on z-scored covariates; draws are mapped back below
  Dataset data = data_in;
  Standardization std_info;
  if (config.lasso) std_info = standardize_design(data.x);

  const GammaSupport support = gamma_support(config.p0);
  const bool tobit = data.has_censoring();

  ChainState state;
  state.y_aug = data.y;
  if (tobit) {
    // start the latent responses just below the threshold
    for (int i = 0; i < n; ++i) {
      if (data.censored[static_cast<size_t>(i)]) state.y_aug[i] = data.threshold - 0.5;
    }
  }
  state.beta = data.x.colPivHouseholderQr().solve(state.y_aug);
  state.sigma = 1.0;
  state.gamma = 0.0;
  state.v = Eigen::VectorXd::Ones(n);
  state.s.resize(n);
  for (int i = 0; i < n; ++i) state.s[i] = sample_truncnorm_positive(0.0, 1.0, rng);
  if (config.lasso) {
    state.omega = Eigen::VectorXd::Ones(d - 1);
    state.eta2 = 1.0;
  }

  Eigen::MatrixXd prior_precision;
  Eigen::VectorXd prior_precision_mean;
  if (!config.lasso) {
    prior_precision = spd_inverse(config.beta_prior_covariance(d), "prior_beta covariance");
    prior_precision_mean = prior_precision * config.beta_prior_mean(d);
  }

  GalMixtureCoeffs coef = gal_mixture_coeffs(state.gamma, config.p0);

  const long total = config.chain.burn_in + config.chain.keep * config.chain.thin;
  PosteriorSamples out;
  out.beta.resize(config.chain.keep, d);
  out.sigma.resize(config.chain.keep);
  out.gamma.resize(config.chain.keep);
  if (config.lasso) {
    out.omega.resize(config.chain.keep, d - 1);
    out.eta2.resize(config.chain.keep);
  }
  out.iteration.reserve(config.chain.keep);
  out.p0 = config.p0;
  out.lasso = config.lasso;
  out.gamma_fixed_at_zero = config.gamma_fixed_at_zero;
  out.seed = rng.seed();
  out.beta_names = data.column_names;

  ChainDiagnostics diag;
  double log_step = 0.0;  // logit-scale proposal SD, adapted during burn-in
  long accepted = 0;
  long saved = 0;

  for (long t = 1; t <= total; ++t) {
    if (tobit) update_w(state, data, coef, rng);

    if (config.lasso) {
      state.beta = update_slopes(state, data.x, config.lasso_prior, coef, rng, &diag.jitter_events);
      state.omega = update_omega(state.beta.tail(d - 1), state.eta2, rng);
      state.eta2 = update_eta2(state.omega, config.lasso_prior, rng);
    } else {
      state.beta = update_beta(state, data.x, prior_precision, prior_precision_mean, coef, rng,
                               &diag.jitter_events);
    }

    state.v = update_v(state, data.x, coef, rng);
    state.s = update_s(state, data.x, coef, rng);
    state.sigma = update_sigma(state, data.x, config.prior_sigma, coef, rng);
    if (!(state.sigma > 0.0) || !std::isfinite(state.sigma)) {
      throw std::runtime_error("chain diverged: sigma became non-finite at iteration " +
                               std::to_string(t));
    }

    if (!config.gamma_fixed_at_zero) {
      const GammaStepResult step =
          update_gamma(state, data.x, config.p0, config.prior_gamma, support,
                       std::exp(log_step), rng);
      if (step.accepted) {
        state.gamma = step.gamma;
        coef = gal_mixture_coeffs(state.gamma, config.p0);
      }
      if (t <= config.chain.burn_in) {
        // Robbins-Monro adaptation toward 0.35 acceptance, frozen afterward
        const double alpha = std::exp(std::min(0.0, step.log_alpha));
        log_step += (alpha - 0.35) / std::pow(static_cast<double>(t), 0.6);
        log_step = std::clamp(log_step, -5.0, 3.0);
      } else if (step.accepted) {
        ++accepted;
      }
    }

    if (t > config.chain.burn_in && (t - config.chain.burn_in) % config.chain.thin == 0) {
      out.beta.row(saved) = state.beta.transpose();
      out.sigma[saved] = state.sigma;
      out.gamma[saved] = state.gamma;
      if (config.lasso) {
        out.omega.row(saved) = state.omega.transpose();
        out.eta2[saved] = state.eta2;
      }
      out.iteration.push_back(t);
      ++saved;
    }
  }

  const long post_burn = total - config.chain.burn_in;
  diag.gamma_accept_rate = config.gamma_fixed_at_zero || post_burn == 0
                               ? 0.0
                               : static_cast<double>(accepted) / static_cast<double>(post_burn);
  diag.gamma_step = std::exp(log_step);
  out.diagnostics = diag;

  if (config.lasso) destandardize_draws(out, std_info);

  out.ess.resize(d + 2);
  for (int j = 0; j < d; ++j) out.ess[j] = effective_sample_size(out.beta.col(j));
  out.ess[d] = effective_sample_size(out.sigma);
  out.ess[d + 1] =
      config.gamma_fixed_at_zero ? static_cast<double>(out.keep()) : effective_sample_size(out.gamma);
  return out;
}

PosteriorSamples run_chain(const Dataset& data, const QuantRegConfig& config, Rng& rng) {
  if (data.has_censoring()) {
    throw std::invalid_argument("run_chain: dataset has censored rows; use run_tobit_chain");
  }
  return run_chain_engine(data, config, rng);
}

PosteriorSamples run_chain(const Dataset& data, const QuantRegConfig& config) {
  Rng rng(config.chain.seed);
  return run_chain(data, config, rng);
}

// ---------------------------------------------------------------------------
// Posterior predictive machinery
// ---------------------------------------------------------------------------

Eigen::VectorXd predictive_error_density(const PosteriorSamples& samples,
                                         const Eigen::VectorXd& grid, int mc_draws, Rng& rng) {
  const int keep = samples.keep();
  if (keep == 0) throw std::invalid_argument("predictive_error_density: no posterior draws");
  std::vector<int> use;
  if (mc_draws >= keep) {
    use.resize(static_cast<size_t>(keep));
    std::iota(use.begin(), use.end(), 0);
  } else {
    // uniform subsample without replacement (partial Fisher-Yates)
    std::vector<int> idx(static_cast<size_t>(keep));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < mc_draws; ++i) {
      const int j = i + static_cast<int>(rng.uniform() * (keep - i));
      std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(std::min(j, keep - 1))]);
    }
    use.assign(idx.begin(), idx.begin() + mc_draws);
  }
  Eigen::VectorXd density = Eigen::VectorXd::Zero(grid.size());
  for (int m : use) {
    const GalParams params(samples.p0, samples.gamma[m], 0.0, samples.sigma[m]);
    for (Eigen::Index j = 0; j < grid.size(); ++j) density[j] += gal_pdf(grid[j], params);
  }
  density /= static_cast<double>(use.size());
  return density;
}

Eigen::MatrixXd posterior_predictive_replicates(const PosteriorSamples& samples,
                                                const Dataset& data, Rng& rng) {
  const int keep = samples.keep();
  const int n = data.n();
  if (keep == 0) throw std::invalid_argument("posterior_predictive_replicates: no draws");
  if (data.dim() != samples.dim()) {
    throw std::invalid_argument("posterior_predictive_replicates: design dimension mismatch");
  }
  Eigen::MatrixXd rep(keep, n);
  for (int m = 0; m < keep; ++m) {
    const GalParams params(samples.p0, samples.gamma[m], 0.0, samples.sigma[m]);
    const Eigen::VectorXd mean = data.x * samples.beta.row(m).transpose();
    for (int i = 0; i < n; ++i) rep(m, i) = mean[i] + gal_sample(params, rng);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

void write_samples_csv(const std::string& path, const PosteriorSamples& samples) {
  const int d = samples.dim();
  const int n_omega = static_cast<int>(samples.omega.cols());
  std::vector<std::string> header;
  for (int j = 0; j < d; ++j) header.push_back("beta_" + std::to_string(j));
  header.emplace_back("sigma");
  header.emplace_back("gamma");
  for (int k = 0; k < n_omega; ++k) header.push_back("omega_" + std::to_string(k));
  if (samples.lasso) header.emplace_back("eta2");

  Eigen::MatrixXd table(samples.keep(), static_cast<Eigen::Index>(header.size()));
  table.leftCols(d) = samples.beta;
  table.col(d) = samples.sigma;
  table.col(d + 1) = samples.gamma;
  if (n_omega > 0) table.middleCols(d + 2, n_omega) = samples.omega;
  if (samples.lasso) table.col(d + 2 + n_omega) = samples.eta2;
  write_csv(path, header, table);
}

PosteriorSamples read_samples_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  int d = 0;
  while (table.column_index("beta_" + std::to_string(d)) >= 0) ++d;
  const int sigma_col = table.column_index("sigma");
  const int gamma_col = table.column_index("gamma");
  if (d == 0 || sigma_col < 0 || gamma_col < 0) {
    throw std::runtime_error(path + ": expected columns beta_0.., sigma, gamma");
  }
  PosteriorSamples samples;
  samples.beta.resize(table.values.rows(), d);
  for (int j = 0; j < d; ++j) {
    samples.beta.col(j) = table.values.col(table.column_index("beta_" + std::to_string(j)));
    samples.beta_names.push_back("beta_" + std::to_string(j));
  }
  samples.sigma = table.values.col(sigma_col);
  samples.gamma = table.values.col(gamma_col);
  int n_omega = 0;
  while (table.column_index("omega_" + std::to_string(n_omega)) >= 0) ++n_omega;
  if (n_omega > 0) {
    samples.omega.resize(table.values.rows(), n_omega);
    for (int k = 0; k < n_omega; ++k) {
      samples.omega.col(k) = table.values.col(table.column_index("omega_" + std::to_string(k)));
    }
  }
  const int eta2_col = table.column_index("eta2");
  if (eta2_col >= 0) {
    samples.eta2 = table.values.col(eta2_col);
    samples.lasso = true;
  }
  samples.gamma_fixed_at_zero = samples.gamma.cwiseAbs().maxCoeff() == 0.0;
  return samples;
}

double effective_sample_size(const Eigen::VectorXd& draws) {
  const Eigen::Index m = draws.size();
  if (m < 10) return static_cast<double>(m);
  const double mean = draws.mean();
  const Eigen::VectorXd centered = draws.array() - mean;
  const double var = centered.squaredNorm() / static_cast<double>(m);
  if (var <= 0.0) return static_cast<double>(m);
  double tail = 0.0;
  const Eigen::Index max_lag = std::min<Eigen::Index>(m - 2, 1000);
  for (Eigen::Index k = 1; k <= max_lag; ++k) {
    const double rho =
        centered.head(m - k).dot(centered.tail(m - k)) / (static_cast<double>(m) * var);
    if (rho < 0.05) break;
    tail += rho;
  }
  const double ess = static_cast<double>(m) / (1.0 + 2.0 * tail);
  return std::clamp(ess, 1.0, static_cast<double>(m));
}

}  // namespace galqr
