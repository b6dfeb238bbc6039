#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "galqr/data.hpp"
#include "galqr/dist.hpp"
#include "galqr/rng.hpp"
#include "galqr/sampler.hpp"

namespace galqr {

// ---------------------------------------------------------------------------
// Error laws with the p0-quantile pinned at zero
// ---------------------------------------------------------------------------

enum class ErrorLaw { normal, laplace, normal_mixture, gpd_log };

std::string error_law_name(ErrorLaw law);
ErrorLaw error_law_from_name(const std::string& name);

// Pinning parameter: the location shift mu for the normal (variance 9),
// Laplace (scale 3) and two-component normal mixture laws, or the GPD scale
// sigma (shape fixed at 3) for the log-transformed generalized Pareto.
double solve_quantile_offset(ErrorLaw law, double p0);

struct ErrorLawSpec {
  ErrorLaw law = ErrorLaw::normal;
  double p0 = 0.5;
  double offset = 0.0;

  static ErrorLawSpec make(ErrorLaw law, double p0);
  double sample(Rng& rng) const;
  double cdf(double t) const;  // analytic; cdf(0) == p0 by construction
};

// ---------------------------------------------------------------------------
// Design and coefficient settings
// ---------------------------------------------------------------------------

// Rows i.i.d. 8-dimensional normal, zero mean, covariance 0.5^{|i-j|}
// (stationary AR(1) construction, exact).
Eigen::MatrixXd make_design(int n, Rng& rng);

enum class BetaSetting { sparse, dense, very_sparse };

std::string beta_setting_name(BetaSetting setting);
BetaSetting beta_setting_from_name(const std::string& name);
Eigen::VectorXd beta_vector(BetaSetting setting);  // the 8 true slopes

// ---------------------------------------------------------------------------
// Scenario runner
// ---------------------------------------------------------------------------

struct SimScenario {
  double p0 = 0.05;
  ErrorLaw law = ErrorLaw::normal;
  BetaSetting betas = BetaSetting::sparse;
  int n_train = 100;
  int n_test = 100;
  int replicates = 20;          // desk scale; the paper protocol uses 100
  ChainSettings chain{10000, 5, 2000, 0};  // per-fit settings (seed comes from streams)
  std::uint64_t master_seed = 20240101;
  int threads = 0;  // 0: GALQR_THREADS env var, then hardware concurrency

  // full paper protocol: 100 replicates, burn-in 50000, thin 20, keep 5000
  void apply_paper_scale();
};

struct ModelSpec {
  bool gal = true;    // false pins gamma at zero (AL submodel)
  bool lasso = true;  // hierarchical Laplace prior on the slopes
  std::string name() const;
};

struct ReplicateRow {
  int replicate = 0;
  std::string model;
  std::string criterion;
  double value = 0.0;
};

struct ScenarioResult {
  std::vector<ReplicateRow> rows;
  int failures = 0;
  std::vector<std::string> failure_messages;

  std::vector<double> values(const std::string& model, const std::string& criterion) const;
  double median(const std::string& model, const std::string& criterion) const;
  double sd(const std::string& model, const std::string& criterion) const;
};

// Criterion labels emitted per replicate per model: cie, mcl, ppl_quad_P,
// ppl_quad_G, ppl_quad_D, ppl_check_P, ppl_check_G, ppl_check_D.
std::vector<std::string> scenario_criteria();

// Runs the replicates concurrently (shared read-only data per replicate,
// paired across models; chain failures are recorded and excluded, never
// silently dropped). Deterministic given master_seed.
ScenarioResult run_scenario(const SimScenario& scenario, const std::vector<ModelSpec>& models);

// "median (SD)" summary lines, one block per criterion.
std::string format_summary_table(const ScenarioResult& result, const SimScenario& scenario,
                                 const std::vector<ModelSpec>& models);

double median_of(std::vector<double> values);
double sd_of(const std::vector<double>& values);

}  // namespace galqr
