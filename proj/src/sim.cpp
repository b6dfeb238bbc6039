#include "galqr/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "galqr/assess.hpp"
#include "galqr/lasso.hpp"

namespace galqr {

namespace {

constexpr double kNormalSd = 3.0;     // N(mu, 9)
constexpr double kLaplaceScale = 3.0; // Laplace(mu, 3), classical scale
constexpr double kGpdXi = 3.0;        // log-GPD shape
constexpr double kMixW1 = 0.1;        // 0.1 N(mu,1) + 0.9 N(mu+1,5)
constexpr double kMixSd2 = 2.2360679774997896964091736687747;  // sqrt(5)

double laplace_quantile(double p, double scale) {
  return p < 0.5 ? scale * std::log(2.0 * p) : -scale * std::log(2.0 * (1.0 - p));
}

}  // namespace

std::string error_law_name(ErrorLaw law) {
  switch (law) {
    case ErrorLaw::normal: return "normal";
    case ErrorLaw::laplace: return "laplace";
    case ErrorLaw::normal_mixture: return "normal_mixture";
    case ErrorLaw::gpd_log: return "gpd_log";
  }
  return "unknown";
}

ErrorLaw error_law_from_name(const std::string& name) {
  if (name == "normal") return ErrorLaw::normal;
  if (name == "laplace") return ErrorLaw::laplace;
  if (name == "normal_mixture") return ErrorLaw::normal_mixture;
  if (name == "gpd_log") return ErrorLaw::gpd_log;
  throw std::invalid_argument("unknown error law: " + name);
}

double solve_quantile_offset(ErrorLaw law, double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw std::domain_error("p0 must lie in (0,1)");
  switch (law) {
    case ErrorLaw::normal:
      return -kNormalSd * std_normal_quantile(p0);
    case ErrorLaw::laplace:
      return -laplace_quantile(p0, kLaplaceScale);
    case ErrorLaw::normal_mixture: {
      // mixture CDF at zero is decreasing in mu; bisect on a safe bracket
      auto cdf0 = [&](double mu) {
        return kMixW1 * std_normal_cdf(-mu) + (1.0 - kMixW1) * std_normal_cdf((-mu - 1.0) / kMixSd2);
      };
      double lo = -60.0, hi = 60.0;
      if (!(cdf0(lo) > p0 && cdf0(hi) < p0)) {
        throw std::runtime_error("mixture quantile offset: bracket failure");
      }
      for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cdf0(mid) > p0 ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    case ErrorLaw::gpd_log:
      // F(0) = 1 - (1 + xi/sigma)^{-1/xi} = p0  =>  sigma = xi/((1-p0)^{-xi} - 1)
      return kGpdXi / (std::pow(1.0 - p0, -kGpdXi) - 1.0);
  }
  throw std::invalid_argument("unknown error law");
}

ErrorLawSpec ErrorLawSpec::make(ErrorLaw law, double p0) {
  ErrorLawSpec spec;
  spec.law = law;
  spec.p0 = p0;
  spec.offset = solve_quantile_offset(law, p0);
  return spec;
}

double ErrorLawSpec::sample(Rng& rng) const {
  switch (law) {
    case ErrorLaw::normal:
      return offset + kNormalSd * rng.normal();
    case ErrorLaw::laplace: {
      const double u = rng.uniform();
      return offset + laplace_quantile(u, kLaplaceScale);
    }
    case ErrorLaw::normal_mixture:
      return rng.uniform() < kMixW1 ? offset + rng.normal()
                                    : offset + 1.0 + kMixSd2 * rng.normal();
    case ErrorLaw::gpd_log:
      return sample_gpd_log({offset, kGpdXi}, rng);
  }
  throw std::invalid_argument("unknown error law");
}

double ErrorLawSpec::cdf(double t) const {
  switch (law) {
    case ErrorLaw::normal:
      return std_normal_cdf((t - offset) / kNormalSd);
    case ErrorLaw::laplace: {
      const double z = (t - offset) / kLaplaceScale;
      return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    }
    case ErrorLaw::normal_mixture:
      return kMixW1 * std_normal_cdf(t - offset) +
             (1.0 - kMixW1) * std_normal_cdf((t - offset - 1.0) / kMixSd2);
    case ErrorLaw::gpd_log:
      return gpd_log_cdf(t, {offset, kGpdXi});
  }
  throw std::invalid_argument("unknown error law");
}

Eigen::MatrixXd make_design(int n, Rng& rng) {
  if (n < 1) throw std::domain_error("make_design requires n >= 1");
  constexpr int d = 8;
  constexpr double rho = 0.5;
  const double innov_sd = std::sqrt(1.0 - rho * rho);
  Eigen::MatrixXd x(n, d);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = rng.normal();
    for (int j = 1; j < d; ++j) x(i, j) = rho * x(i, j - 1) + innov_sd * rng.normal();
  }
  return x;
}

std::string beta_setting_name(BetaSetting setting) {
  switch (setting) {
    case BetaSetting::sparse: return "sparse";
    case BetaSetting::dense: return "dense";
    case BetaSetting::very_sparse: return "very_sparse";
  }
  return "unknown";
}

BetaSetting beta_setting_from_name(const std::string& name) {
  if (name == "sparse") return BetaSetting::sparse;
  if (name == "dense") return BetaSetting::dense;
  if (name == "very_sparse") return BetaSetting::very_sparse;
  throw std::invalid_argument("unknown beta setting: " + name);
}

Eigen::VectorXd beta_vector(BetaSetting setting) {
  Eigen::VectorXd beta(8);
  switch (setting) {
    case BetaSetting::sparse:
      beta << 3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0;
      break;
    case BetaSetting::dense:
      beta.setConstant(0.85);
      break;
    case BetaSetting::very_sparse:
      beta << 5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0;
      break;
  }
  return beta;
}

void SimScenario::apply_paper_scale() {
  replicates = 100;
  chain.burn_in = 50000;
  chain.thin = 20;
  chain.keep = 5000;
}

std::string ModelSpec::name() const {
  std::string base = gal ? "gal" : "al";
  return lasso ? base + "_lasso" : base;
}

std::vector<std::string> scenario_criteria() {
  return {"cie",        "mcl",        "ppl_quad_P",  "ppl_quad_G",
          "ppl_quad_D", "ppl_check_P", "ppl_check_G", "ppl_check_D"};
}

std::vector<double> ScenarioResult::values(const std::string& model,
                                           const std::string& criterion) const {
  std::vector<double> out;
  for (const auto& row : rows) {
    if (row.model == model && row.criterion == criterion) out.push_back(row.value);
  }
  return out;
}

double ScenarioResult::median(const std::string& model, const std::string& criterion) const {
  return median_of(values(model, criterion));
}

double ScenarioResult::sd(const std::string& model, const std::string& criterion) const {
  return sd_of(values(model, criterion));
}

double median_of(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

namespace {

int resolve_threads(const SimScenario& scenario) {
  int threads = scenario.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("GALQR_THREADS")) threads = std::atoi(env);
  }
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;
  return std::min(threads, std::max(1, scenario.replicates));
}

struct ReplicateOutput {
  std::vector<ReplicateRow> rows;
  std::vector<std::string> failures;
};

// One replicate: shared train/test data, every model fit on the same data
// with its own chain stream.
ReplicateOutput run_replicate(const SimScenario& scenario, const std::vector<ModelSpec>& models,
                              int rep, const Rng& master) {
  ReplicateOutput out;
  const Eigen::VectorXd true_slopes = beta_vector(scenario.betas);
  const ErrorLawSpec law = ErrorLawSpec::make(scenario.law, scenario.p0);

  // stream 0: data, streams 1.. : one per model (chain + replicates)
  const std::uint64_t base = static_cast<std::uint64_t>(rep) * (models.size() + 1);
  Rng data_rng = master.stream(base);

  const Eigen::MatrixXd x_train = make_design(scenario.n_train, data_rng);
  Eigen::VectorXd y_train(scenario.n_train);
  for (int i = 0; i < scenario.n_train; ++i) {
    y_train[i] = x_train.row(i).dot(true_slopes) + law.sample(data_rng);
  }
  const Eigen::MatrixXd x_test = make_design(scenario.n_test, data_rng);

  // fitted design carries an intercept column; the true intercept is zero
  // because the error law has its p0-quantile pinned at zero
  Dataset train;
  train.x.resize(scenario.n_train, 9);
  train.x.col(0).setOnes();
  train.x.rightCols(8) = x_train;
  train.y = y_train;
  train.column_names = {"intercept", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"};

  Eigen::MatrixXd test_design(scenario.n_test, 9);
  test_design.col(0).setOnes();
  test_design.rightCols(8) = x_test;
  Eigen::VectorXd beta_true_full(9);
  beta_true_full[0] = 0.0;
  beta_true_full.tail(8) = true_slopes;

  for (size_t mi = 0; mi < models.size(); ++mi) {
    const ModelSpec& model = models[mi];
    Rng model_rng = master.stream(base + 1 + mi);
    try {
      QuantRegConfig config;
      config.p0 = scenario.p0;
      config.chain = scenario.chain;
      config.gamma_fixed_at_zero = !model.gal;
      config.lasso = model.lasso;
      PosteriorSamples samples = model.lasso ? run_lasso_chain(train, config, model_rng)
                                             : run_chain(train, config, model_rng);

      const Eigen::MatrixXd slope_draws = samples.beta.rightCols(8);
      const CieReport cie = cie_score(slope_draws, x_train, y_train, true_slopes);
      const double mcl =
          mean_check_loss(samples.beta_mean(), beta_true_full, test_design, scenario.p0);
      const Eigen::MatrixXd reps = posterior_predictive_replicates(samples, train, model_rng);
      const PplReport quad =
          ppl_quadratic(reps, y_train, std::numeric_limits<double>::infinity());
      const PplReport check = ppl_check(reps, y_train, scenario.p0);

      const std::string name = model.name();
      out.rows.push_back({rep, name, "cie", cie.mean});
      out.rows.push_back({rep, name, "mcl", mcl});
      out.rows.push_back({rep, name, "ppl_quad_P", quad.penalty});
      out.rows.push_back({rep, name, "ppl_quad_G", quad.goodness});
      out.rows.push_back({rep, name, "ppl_quad_D", quad.criterion});
      out.rows.push_back({rep, name, "ppl_check_P", check.penalty});
      out.rows.push_back({rep, name, "ppl_check_G", check.goodness});
      out.rows.push_back({rep, name, "ppl_check_D", check.criterion});
    } catch (const std::exception& err) {
      out.failures.push_back("replicate " + std::to_string(rep) + ", model " + model.name() +
                             ": " + err.what());
    }
  }
  return out;
}

}  // namespace

ScenarioResult run_scenario(const SimScenario& scenario, const std::vector<ModelSpec>& models) {
  if (scenario.replicates < 1) throw std::invalid_argument("run_scenario: replicates must be >= 1");
  if (models.empty()) throw std::invalid_argument("run_scenario: no models requested");
  const Rng master(scenario.master_seed);

  std::vector<ReplicateOutput> outputs(static_cast<size_t>(scenario.replicates));
  const int threads = resolve_threads(scenario);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int rep = next.fetch_add(1);
      if (rep >= scenario.replicates) break;
      outputs[static_cast<size_t>(rep)] = run_replicate(scenario, models, rep, master);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ScenarioResult result;
  for (const auto& output : outputs) {
    result.rows.insert(result.rows.end(), output.rows.begin(), output.rows.end());
    result.failures += static_cast<int>(output.failures.size());
    result.failure_messages.insert(result.failure_messages.end(), output.failures.begin(),
                                   output.failures.end());
  }
  return result;
}

std::string format_summary_table(const ScenarioResult& result, const SimScenario& scenario,
                                 const std::vector<ModelSpec>& models) {
  std::ostringstream out;
  out << "scenario: p0=" << scenario.p0 << " error=" << error_law_name(scenario.law)
      << " beta=" << beta_setting_name(scenario.betas) << " replicates=" << scenario.replicates
      << "\n";
  out << "values are median (SD) across replicates\n\n";
  char buf[64];
  for (const auto& criterion : scenario_criteria()) {
    out << criterion << "\n";
    for (const auto& model : models) {
      const auto vals = result.values(model.name(), criterion);
      if (vals.empty()) continue;
      std::snprintf(buf, sizeof(buf), "  %-10s %.3f (%.3f)\n", model.name().c_str(),
                    median_of(vals), sd_of(vals));
      out << buf;
    }
  }
  if (result.failures > 0) {
    out << "\nexcluded chain failures: " << result.failures << "\n";
    for (const auto& msg : result.failure_messages) out << "  " << msg << "\n";
  }
  return out.str();
}

}  // namespace galqr
