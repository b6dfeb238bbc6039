// Command-line front end: fit quantile regression models on CSV data, run
// simulation scenarios, and compute assessment criteria. Configuration is
// JSON with strict key checking; every run writes a manifest describing its
// inputs, outputs and master seed.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "galqr/assess.hpp"
#include "galqr/data.hpp"
#include "galqr/lasso.hpp"
#include "galqr/sampler.hpp"
#include "galqr/sim.hpp"
#include "galqr/tobit.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "galqr 0.1.0";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Strict config handling: unknown keys are errors, not warnings.
// ---------------------------------------------------------------------------

void require_keys(const json& obj, const std::string& where,
                  const std::vector<std::string>& allowed) {
  if (!obj.is_object()) throw std::runtime_error("config: '" + where + "' must be an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw std::runtime_error("config: unknown key '" + item.key() + "' in " + where);
    }
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config parse failure in " + path + ": " + e.what());
  }
  return j;
}

struct FitOptions {
  galqr::QuantRegConfig config;
  galqr::DatasetSpec data_spec;
  bool gal = true;
  bool tobit = false;
  int grid_points = 512;
  double grid_halfwidth_sd = 8.0;
  int predictive_draws = 500;
  std::optional<double> beta_prior_mean_scalar;
  std::optional<double> beta_prior_variance_scalar;
};

galqr::DatasetSpec parse_data_section(const json& j) {
  galqr::DatasetSpec spec;
  require_keys(j, "data",
               {"response", "features", "censored", "transforms", "intercept", "threshold"});
  if (!j.contains("response")) throw std::runtime_error("config: data.response is required");
  spec.response = j.at("response").get<std::string>();
  if (j.contains("features")) spec.features = j.at("features").get<std::vector<std::string>>();
  if (j.contains("censored")) spec.censored = j.at("censored").get<std::string>();
  if (j.contains("intercept")) spec.intercept = j.at("intercept").get<bool>();
  if (j.contains("threshold")) spec.threshold = j.at("threshold").get<double>();
  if (j.contains("transforms")) {
    for (const auto& t : j.at("transforms")) {
      require_keys(t, "data.transforms[]", {"name", "source", "power"});
      galqr::ColumnTransform tr;
      if (t.contains("name")) tr.name = t.at("name").get<std::string>();
      tr.source = t.at("source").get<std::string>();
      tr.power = t.contains("power") ? t.at("power").get<double>() : 2.0;
      spec.transforms.push_back(tr);
    }
  }
  return spec;
}

void parse_chain_section(const json& j, galqr::ChainSettings& chain) {
  require_keys(j, "chain", {"burn_in", "thin", "keep", "seed"});
  if (j.contains("burn_in")) chain.burn_in = j.at("burn_in").get<long>();
  if (j.contains("thin")) chain.thin = j.at("thin").get<long>();
  if (j.contains("keep")) chain.keep = j.at("keep").get<long>();
  if (j.contains("seed")) chain.seed = j.at("seed").get<std::uint64_t>();
}

FitOptions parse_fit_config(const json& j) {
  FitOptions opt;
  require_keys(j, "top level", {"model", "data", "prior", "chain", "output"});
  if (!j.contains("data")) throw std::runtime_error("config: 'data' section is required");
  opt.data_spec = parse_data_section(j.at("data"));

  if (j.contains("model")) {
    const json& m = j.at("model");
    require_keys(m, "model", {"p0", "type", "lasso", "tobit", "threshold"});
    if (m.contains("p0")) opt.config.p0 = m.at("p0").get<double>();
    if (m.contains("type")) {
      const std::string type = m.at("type").get<std::string>();
      if (type == "al") {
        opt.gal = false;
      } else if (type == "gal") {
        opt.gal = true;
      } else {
        throw std::runtime_error("config: model.type must be 'al' or 'gal'");
      }
    }
    if (m.contains("lasso")) opt.config.lasso = m.at("lasso").get<bool>();
    if (m.contains("tobit")) opt.tobit = m.at("tobit").get<bool>();
    if (m.contains("threshold")) opt.data_spec.threshold = m.at("threshold").get<double>();
  }
  if (j.contains("prior")) {
    const json& p = j.at("prior");
    require_keys(p, "prior",
                 {"beta_mean", "beta_variance", "sigma_shape", "sigma_rate", "gamma_shape1",
                  "gamma_shape2", "intercept_mean", "intercept_variance", "eta2_shape",
                  "eta2_rate"});
    if (p.contains("sigma_shape")) opt.config.prior_sigma.shape = p.at("sigma_shape").get<double>();
    if (p.contains("sigma_rate")) opt.config.prior_sigma.rate = p.at("sigma_rate").get<double>();
    if (p.contains("gamma_shape1")) {
      opt.config.prior_gamma.shape1 = p.at("gamma_shape1").get<double>();
    }
    if (p.contains("gamma_shape2")) {
      opt.config.prior_gamma.shape2 = p.at("gamma_shape2").get<double>();
    }
    if (p.contains("intercept_mean")) {
      opt.config.lasso_prior.intercept_mean = p.at("intercept_mean").get<double>();
    }
    if (p.contains("intercept_variance")) {
      opt.config.lasso_prior.intercept_variance = p.at("intercept_variance").get<double>();
    }
    if (p.contains("eta2_shape")) opt.config.lasso_prior.eta2_shape = p.at("eta2_shape").get<double>();
    if (p.contains("eta2_rate")) opt.config.lasso_prior.eta2_rate = p.at("eta2_rate").get<double>();
    if (p.contains("beta_mean")) opt.beta_prior_mean_scalar = p.at("beta_mean").get<double>();
    if (p.contains("beta_variance")) {
      opt.beta_prior_variance_scalar = p.at("beta_variance").get<double>();
    }
  }
  if (j.contains("chain")) parse_chain_section(j.at("chain"), opt.config.chain);
  if (j.contains("output")) {
    const json& o = j.at("output");
    require_keys(o, "output", {"grid_points", "grid_halfwidth_sd", "predictive_draws"});
    if (o.contains("grid_points")) opt.grid_points = o.at("grid_points").get<int>();
    if (o.contains("grid_halfwidth_sd")) {
      opt.grid_halfwidth_sd = o.at("grid_halfwidth_sd").get<double>();
    }
    if (o.contains("predictive_draws")) opt.predictive_draws = o.at("predictive_draws").get<int>();
  }
  return opt;
}

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed while writing: " + path);
}

struct ManifestBuilder {
  json j;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  ManifestBuilder(const std::string& command, const std::vector<std::string>& argv) {
    j["command"] = command;
    j["argv"] = argv;
    j["tool_version"] = kToolVersion;
    j["inputs"] = json::object();
    j["outputs"] = json::array();
  }
  void input(const std::string& key, const std::string& path) {
    j["inputs"][key] = fs::absolute(path).string();
  }
  void output(const std::string& path) { j["outputs"].push_back(fs::absolute(path).string()); }
  void seed(std::uint64_t s) { j["master_seed"] = s; }

  void write(const std::string& out_dir) {
    j["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream out(fs::path(out_dir) / "manifest.json");
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("failed writing manifest");
  }
};

void write_fit_summary(const std::string& path, const galqr::PosteriorSamples& samples,
                       const galqr::Dataset& data) {
  std::ostringstream out;
  out << "parameter,mean,sd,q2.5,q50,q97.5\n";
  auto emit = [&](const std::string& name, const Eigen::VectorXd& draws) {
    std::vector<double> v(draws.data(), draws.data() + draws.size());
    std::sort(v.begin(), v.end());
    auto q = [&](double p) {
      const double h = p * (static_cast<double>(v.size()) - 1.0);
      const size_t lo = static_cast<size_t>(h);
      const size_t hi = std::min(lo + 1, v.size() - 1);
      return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
    };
    const double mean = draws.mean();
    const double sd = std::sqrt((draws.array() - mean).square().sum() /
                                std::max<double>(1.0, static_cast<double>(draws.size()) - 1.0));
    out << name << ',' << format_double(mean) << ',' << format_double(sd) << ','
        << format_double(q(0.025)) << ',' << format_double(q(0.5)) << ','
        << format_double(q(0.975)) << "\n";
  };
  for (int jcol = 0; jcol < samples.dim(); ++jcol) {
    const std::string name = static_cast<size_t>(jcol) < samples.beta_names.size()
                                 ? samples.beta_names[static_cast<size_t>(jcol)]
                                 : "beta_" + std::to_string(jcol);
    emit("beta[" + name + "]", samples.beta.col(jcol));
  }
  emit("sigma", samples.sigma);
  if (!samples.gamma_fixed_at_zero) emit("gamma", samples.gamma);
  if (samples.lasso) emit("eta2", samples.eta2);
  if (samples.dim() > 1) {
    // effects on the standardized scale alongside the raw coefficients
    const Eigen::MatrixXd effects = galqr::standardized_effects(
        samples.beta.rightCols(samples.dim() - 1), data.x.rightCols(data.dim() - 1), data.y);
    for (int k = 0; k < effects.cols(); ++k) {
      const std::string name = samples.beta_names[static_cast<size_t>(k + 1)];
      emit("std_effect[" + name + "]", effects.col(k));
    }
  }
  write_text(path, out.str());
}

void write_metadata_sidecar(const std::string& path, const galqr::PosteriorSamples& samples,
                            const json& config_echo, const std::string& data_path) {
  json meta;
  meta["tool_version"] = kToolVersion;
  meta["p0"] = samples.p0;
  meta["model"] = samples.gamma_fixed_at_zero ? "al" : "gal";
  meta["lasso"] = samples.lasso;
  meta["seed"] = samples.seed;
  meta["keep"] = samples.keep();
  meta["gamma_accept_rate"] = samples.diagnostics.gamma_accept_rate;
  meta["gamma_proposal_sd"] = samples.diagnostics.gamma_step;
  meta["precision_jitter_events"] = samples.diagnostics.jitter_events;
  meta["data_file"] = fs::absolute(data_path).string();
  meta["beta_names"] = samples.beta_names;
  std::vector<double> ess(samples.ess.data(), samples.ess.data() + samples.ess.size());
  meta["effective_sample_size"] = ess;
  meta["config"] = config_echo;
  write_text(path, meta.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

struct FitCli {
  std::string data_path;
  std::string config_path;
  std::string out_dir = "galqr_out";
  std::optional<double> p0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> model;
  bool lasso = false;
  bool tobit = false;
};

int run_fit(const FitCli& cli, const std::vector<std::string>& argv) {
  json config_json = json::object();
  if (!cli.config_path.empty()) config_json = load_json(cli.config_path);
  if (!config_json.contains("data")) config_json["data"] = json::object({{"response", "y"}});
  FitOptions opt = parse_fit_config(config_json);
  if (cli.p0) opt.config.p0 = *cli.p0;
  if (cli.seed) opt.config.chain.seed = *cli.seed;
  if (cli.model) {
    if (*cli.model != "al" && *cli.model != "gal") {
      throw std::runtime_error("--model must be 'al' or 'gal'");
    }
    opt.gal = (*cli.model == "gal");
  }
  if (cli.lasso) opt.config.lasso = true;
  if (cli.tobit) opt.tobit = true;
  opt.config.gamma_fixed_at_zero = !opt.gal;

  const galqr::CsvTable table = galqr::read_csv(cli.data_path);
  if (opt.tobit && !opt.data_spec.censored) {
    throw std::runtime_error("tobit model requested but no censoring column is configured");
  }
  galqr::Dataset data = galqr::build_dataset(table, opt.data_spec);
  if (data.has_censoring()) opt.tobit = true;  // a censored column triggers the Tobit model

  if (opt.beta_prior_mean_scalar || opt.beta_prior_variance_scalar) {
    const int d = data.dim();
    opt.config.prior_beta.mean =
        Eigen::VectorXd::Constant(d, opt.beta_prior_mean_scalar.value_or(0.0));
    opt.config.prior_beta.covariance =
        opt.beta_prior_variance_scalar.value_or(100.0) * Eigen::MatrixXd::Identity(d, d);
  }

  ManifestBuilder manifest("fit", argv);
  manifest.input("data", cli.data_path);
  if (!cli.config_path.empty()) manifest.input("config", cli.config_path);
  manifest.seed(opt.config.chain.seed);
  fs::create_directories(cli.out_dir);

  galqr::Rng rng(opt.config.chain.seed);
  const galqr::PosteriorSamples samples =
      opt.tobit ? galqr::run_tobit_chain(data, opt.config, rng)
                : galqr::run_chain(data, opt.config, rng);

  const fs::path out(cli.out_dir);
  galqr::write_samples_csv((out / "samples.csv").string(), samples);
  manifest.output((out / "samples.csv").string());

  write_metadata_sidecar((out / "samples_meta.json").string(), samples, config_json,
                         cli.data_path);
  manifest.output((out / "samples_meta.json").string());

  write_fit_summary((out / "summary.csv").string(), samples, data);
  manifest.output((out / "summary.csv").string());

  // posterior predictive error density on a plot-ready grid
  const double sigma_hat = samples.sigma.mean();
  const double half = opt.grid_halfwidth_sd * sigma_hat;
  Eigen::VectorXd grid(opt.grid_points);
  for (int i = 0; i < opt.grid_points; ++i) {
    grid[i] = -half + 2.0 * half * i / (opt.grid_points - 1.0);
  }
  galqr::Rng pred_rng = rng.stream(1);
  const Eigen::VectorXd density =
      galqr::predictive_error_density(samples, grid, opt.predictive_draws, pred_rng);
  Eigen::MatrixXd density_table(opt.grid_points, 2);
  density_table.col(0) = grid;
  density_table.col(1) = density;
  galqr::write_csv((out / "predictive_density.csv").string(), {"eps", "density"}, density_table);
  manifest.output((out / "predictive_density.csv").string());

  manifest.write(cli.out_dir);
  std::cout << "fit complete: " << samples.keep() << " draws";
  if (!samples.gamma_fixed_at_zero) {
    std::cout << ", gamma acceptance " << samples.diagnostics.gamma_accept_rate;
  }
  std::cout << "\noutputs in " << fs::absolute(cli.out_dir).string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateCli {
  std::string config_path;
  std::string out_dir = "galqr_sim";
  std::optional<double> p0;
  std::optional<std::uint64_t> seed;
  bool paper_scale = false;
};

int run_simulate(const SimulateCli& cli, const std::vector<std::string>& argv) {
  galqr::SimScenario scenario;
  std::vector<galqr::ModelSpec> models = {{true, true}, {false, true}};
  json config_json = json::object();
  if (!cli.config_path.empty()) {
    config_json = load_json(cli.config_path);
    require_keys(config_json, "top level",
                 {"p0", "error_law", "beta_setting", "n_train", "n_test", "replicates", "chain",
                  "models", "seed", "threads"});
    if (config_json.contains("p0")) scenario.p0 = config_json.at("p0").get<double>();
    if (config_json.contains("error_law")) {
      scenario.law = galqr::error_law_from_name(config_json.at("error_law").get<std::string>());
    }
    if (config_json.contains("beta_setting")) {
      scenario.betas =
          galqr::beta_setting_from_name(config_json.at("beta_setting").get<std::string>());
    }
    if (config_json.contains("n_train")) scenario.n_train = config_json.at("n_train").get<int>();
    if (config_json.contains("n_test")) scenario.n_test = config_json.at("n_test").get<int>();
    if (config_json.contains("replicates")) {
      scenario.replicates = config_json.at("replicates").get<int>();
    }
    if (config_json.contains("chain")) {
      parse_chain_section(config_json.at("chain"), scenario.chain);
    }
    if (config_json.contains("seed")) {
      scenario.master_seed = config_json.at("seed").get<std::uint64_t>();
    }
    if (config_json.contains("threads")) scenario.threads = config_json.at("threads").get<int>();
    if (config_json.contains("models")) {
      models.clear();
      for (const auto& name : config_json.at("models")) {
        const std::string m = name.get<std::string>();
        if (m == "gal_lasso") {
          models.push_back({true, true});
        } else if (m == "al_lasso") {
          models.push_back({false, true});
        } else if (m == "gal") {
          models.push_back({true, false});
        } else if (m == "al") {
          models.push_back({false, false});
        } else {
          throw std::runtime_error("config: unknown model '" + m + "'");
        }
      }
    }
  }
  if (cli.paper_scale) scenario.apply_paper_scale();
  if (cli.p0) scenario.p0 = *cli.p0;
  if (cli.seed) scenario.master_seed = *cli.seed;

  ManifestBuilder manifest("simulate", argv);
  if (!cli.config_path.empty()) manifest.input("config", cli.config_path);
  manifest.seed(scenario.master_seed);
  fs::create_directories(cli.out_dir);

  const galqr::ScenarioResult result = galqr::run_scenario(scenario, models);

  const fs::path out(cli.out_dir);
  {
    std::ostringstream rows;
    rows << "replicate,model,criterion,value\n";
    for (const auto& row : result.rows) {
      rows << row.replicate << ',' << row.model << ',' << row.criterion << ','
           << format_double(row.value) << "\n";
    }
    write_text((out / "replicates.csv").string(), rows.str());
    manifest.output((out / "replicates.csv").string());
  }
  {
    std::ostringstream sum;
    sum << "model,criterion,median,sd\n";
    for (const auto& criterion : galqr::scenario_criteria()) {
      for (const auto& model : models) {
        const auto vals = result.values(model.name(), criterion);
        if (vals.empty()) continue;
        sum << model.name() << ',' << criterion << ',' << format_double(galqr::median_of(vals))
            << ',' << format_double(galqr::sd_of(vals)) << "\n";
      }
    }
    write_text((out / "summary.csv").string(), sum.str());
    manifest.output((out / "summary.csv").string());
  }
  write_text((out / "summary.txt").string(),
             galqr::format_summary_table(result, scenario, models));
  manifest.output((out / "summary.txt").string());
  manifest.j["chain_failures"] = result.failures;
  manifest.write(cli.out_dir);

  std::cout << galqr::format_summary_table(result, scenario, models);
  std::cout << "outputs in " << fs::absolute(cli.out_dir).string() << "\n";
  return result.failures == 0 ? 0 : 2;
}

// ---------------------------------------------------------------------------
// assess
// ---------------------------------------------------------------------------

struct AssessCli {
  std::string samples_path;
  std::string data_path;
  std::string config_path;
  std::string out_dir = "galqr_assess";
  std::optional<double> p0;
  std::optional<std::uint64_t> seed;
};

int run_assess(const AssessCli& cli, const std::vector<std::string>& argv) {
  json config_json = load_json(cli.config_path);
  require_keys(config_json, "top level", {"model", "data", "assess"});
  if (!config_json.contains("data")) throw std::runtime_error("config: 'data' section required");
  const galqr::DatasetSpec spec = parse_data_section(config_json.at("data"));
  double p0 = 0.5;
  if (config_json.contains("model")) {
    require_keys(config_json.at("model"), "model", {"p0", "type", "lasso", "tobit", "threshold"});
    if (config_json.at("model").contains("p0")) {
      p0 = config_json.at("model").at("p0").get<double>();
    }
  }
  double m_weight = std::numeric_limits<double>::infinity();
  int predictive_draws = 0;  // 0: all retained draws
  std::uint64_t seed = 20240101;
  std::optional<Eigen::VectorXd> true_beta;
  if (config_json.contains("assess")) {
    const json& a = config_json.at("assess");
    require_keys(a, "assess", {"m_weight", "predictive_draws", "seed", "true_beta"});
    if (a.contains("m_weight") && !a.at("m_weight").is_string()) {
      m_weight = a.at("m_weight").get<double>();
    }
    if (a.contains("predictive_draws")) predictive_draws = a.at("predictive_draws").get<int>();
    if (a.contains("seed")) seed = a.at("seed").get<std::uint64_t>();
    if (a.contains("true_beta")) {
      const auto v = a.at("true_beta").get<std::vector<double>>();
      true_beta = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    }
  }
  if (cli.p0) p0 = *cli.p0;
  if (cli.seed) seed = *cli.seed;

  galqr::PosteriorSamples samples = galqr::read_samples_csv(cli.samples_path);
  samples.p0 = p0;
  const galqr::CsvTable table = galqr::read_csv(cli.data_path);
  const galqr::Dataset data = galqr::build_dataset(table, spec);
  if (data.dim() != samples.dim()) {
    throw std::runtime_error("assess: samples have " + std::to_string(samples.dim()) +
                             " coefficients but the design has " + std::to_string(data.dim()) +
                             " columns");
  }

  ManifestBuilder manifest("assess", argv);
  manifest.input("samples", cli.samples_path);
  manifest.input("data", cli.data_path);
  manifest.input("config", cli.config_path);
  manifest.seed(seed);
  fs::create_directories(cli.out_dir);

  const std::string model_name = samples.gamma_fixed_at_zero ? "al" : "gal";
  std::ostringstream report;
  report << "model,p0,criterion,value\n";
  auto emit = [&](const std::string& criterion, double value) {
    report << model_name << ',' << format_double(p0) << ',' << criterion << ','
           << format_double(value) << "\n";
  };

  emit("bic", galqr::bic_from_samples(samples, data));
  emit("loglik_at_posterior_mean",
       galqr::gal_loglik(data, samples.beta_mean(), samples.sigma.mean(),
                         samples.gamma_fixed_at_zero ? 0.0 : samples.gamma.mean(), p0));

  galqr::Rng rng(seed);
  galqr::PosteriorSamples used = samples;
  if (predictive_draws > 0 && predictive_draws < samples.keep()) {
    const int stride = samples.keep() / predictive_draws;
    used.beta.resize(predictive_draws, samples.dim());
    used.sigma.resize(predictive_draws);
    used.gamma.resize(predictive_draws);
    for (int i = 0; i < predictive_draws; ++i) {
      used.beta.row(i) = samples.beta.row(i * stride);
      used.sigma[i] = samples.sigma[i * stride];
      used.gamma[i] = samples.gamma[i * stride];
    }
  }
  const Eigen::MatrixXd reps = galqr::posterior_predictive_replicates(used, data, rng);
  const galqr::PplReport quad = galqr::ppl_quadratic(reps, data.y, m_weight);
  emit("ppl_quadratic_P", quad.penalty);
  emit("ppl_quadratic_G", quad.goodness);
  emit("ppl_quadratic_D", quad.criterion);
  const galqr::PplReport check = galqr::ppl_check(reps, data.y, p0);
  emit("ppl_check_P", check.penalty);
  emit("ppl_check_G", check.goodness);
  emit("ppl_check_D", check.criterion);

  if (true_beta) {
    emit("mcl", galqr::mean_check_loss(samples.beta_mean(), *true_beta, data.x, p0));
    if (samples.dim() > 1) {
      const galqr::CieReport cie = galqr::cie_score(
          samples.beta.rightCols(samples.dim() - 1), data.x.rightCols(data.dim() - 1), data.y,
          true_beta->tail(data.dim() - 1));
      emit("cie", cie.mean);
    }
  }

  const fs::path out(cli.out_dir);
  write_text((out / "report.csv").string(), report.str());
  manifest.output((out / "report.csv").string());
  manifest.write(cli.out_dir);
  std::cout << report.str();
  std::cout << "outputs in " << fs::absolute(cli.out_dir).string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian quantile regression with generalized asymmetric Laplace errors"};
  app.require_subcommand(1);
  std::vector<std::string> argv_echo(argv, argv + argc);

  FitCli fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "fit a quantile regression model on CSV data");
  fit_cmd->add_option("--data", fit.data_path, "input CSV with header")->required();
  fit_cmd->add_option("--config", fit.config_path, "JSON configuration");
  fit_cmd->add_option("--out", fit.out_dir, "output directory");
  double fit_p0 = 0.5;
  auto* fit_p0_opt = fit_cmd->add_option("--p0", fit_p0, "quantile level");
  std::uint64_t fit_seed = 0;
  auto* fit_seed_opt = fit_cmd->add_option("--seed", fit_seed, "chain seed");
  std::string fit_model;
  auto* fit_model_opt = fit_cmd->add_option("--model", fit_model, "error model: al or gal");
  fit_cmd->add_flag("--lasso", fit.lasso, "hierarchical Laplace prior on the slopes");
  fit_cmd->add_flag("--tobit", fit.tobit, "left-censored (Tobit) likelihood");

  SimulateCli sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "run a simulation scenario");
  sim_cmd->add_option("--config", sim.config_path, "scenario JSON");
  sim_cmd->add_option("--out", sim.out_dir, "output directory");
  double sim_p0 = 0.05;
  auto* sim_p0_opt = sim_cmd->add_option("--p0", sim_p0, "quantile level");
  std::uint64_t sim_seed = 0;
  auto* sim_seed_opt = sim_cmd->add_option("--seed", sim_seed, "master seed");
  sim_cmd->add_flag("--paper-scale", sim.paper_scale,
                    "full protocol: 100 replicates, burn-in 50000, thin 20, keep 5000");

  AssessCli assess;
  CLI::App* assess_cmd =
      app.add_subcommand("assess", "model-comparison criteria for saved samples");
  assess_cmd->add_option("--samples", assess.samples_path, "samples.csv from fit")->required();
  assess_cmd->add_option("--data", assess.data_path, "input CSV with header")->required();
  assess_cmd->add_option("--config", assess.config_path, "JSON configuration")->required();
  assess_cmd->add_option("--out", assess.out_dir, "output directory");
  double assess_p0 = 0.5;
  auto* assess_p0_opt = assess_cmd->add_option("--p0", assess_p0, "quantile level");
  std::uint64_t assess_seed = 0;
  auto* assess_seed_opt = assess_cmd->add_option("--seed", assess_seed, "replicate seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fit_cmd) {
      if (*fit_p0_opt) fit.p0 = fit_p0;
      if (*fit_seed_opt) fit.seed = fit_seed;
      if (*fit_model_opt) fit.model = fit_model;
      return run_fit(fit, argv_echo);
    }
    if (*sim_cmd) {
      if (*sim_p0_opt) sim.p0 = sim_p0;
      if (*sim_seed_opt) sim.seed = sim_seed;
      return run_simulate(sim, argv_echo);
    }
    if (*assess_cmd) {
      if (*assess_p0_opt) assess.p0 = assess_p0;
      if (*assess_seed_opt) assess.seed = assess_seed;
      return run_assess(assess, argv_echo);
    }
  } catch (const std::exception& e) {
    json err;
    err["error"] = e.what();
    err["tool_version"] = kToolVersion;
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 1;
}
