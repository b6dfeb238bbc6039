#include "galqr/tobit.hpp"

namespace galqr {

void update_w(ChainState& state, const Dataset& data, const GalMixtureCoeffs& coef, Rng& rng) {
  if (data.censored.empty()) return;
  for (int i = 0; i < data.n(); ++i) {
    if (!data.censored[static_cast<size_t>(i)]) continue;
    const double mean = data.x.row(i).dot(state.beta) +
                        state.sigma * coef.c_abs_gamma * state.s[i] + coef.A * state.v[i];
    const double var = state.sigma * coef.B * state.v[i];
    state.y_aug[i] = sample_truncnorm_upper(mean, var, data.threshold, rng);
  }
}

PosteriorSamples run_tobit_chain(const Dataset& data, const QuantRegConfig& config, Rng& rng) {
  return run_chain_engine(data, config, rng);
}

PosteriorSamples run_tobit_chain(const Dataset& data, const QuantRegConfig& config) {
  Rng rng(config.chain.seed);
  return run_tobit_chain(data, config, rng);
}

}  // namespace galqr
