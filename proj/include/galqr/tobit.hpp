#pragma once

#include "galqr/sampler.hpp"

namespace galqr {

// Tobit quantile regression: responses left-censored at data.threshold are
// treated as latent and refreshed each sweep from their truncated-normal
// full conditionals; all other updates run on the augmented response vector.

// Refresh the latent responses of censored rows in state.y_aug; each is
// N(x'beta + sigma C|gamma| s + A v, sigma B v) truncated to (-inf, threshold].
void update_w(ChainState& state, const Dataset& data, const GalMixtureCoeffs& coef, Rng& rng);

// With zero censored rows this produces the same draw stream as run_chain.
PosteriorSamples run_tobit_chain(const Dataset& data, const QuantRegConfig& config, Rng& rng);
PosteriorSamples run_tobit_chain(const Dataset& data, const QuantRegConfig& config);

}  // namespace galqr
