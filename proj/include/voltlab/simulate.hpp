#pragma once

#include <cstdint>

#include "voltlab/model.hpp"
#include "voltlab/rng.hpp"

namespace voltlab {

// One increment over time dt of a symmetric beta-stable process normalized
// so the time-t characteristic function is exp(-t*scale^beta*|u|^beta)
// (Chambers-Mallows-Stuck transform).
double sample_stable_increment(double beta, double scale, double dt, Rng& rng);

// Sample the model at times i/n, i = 0..n. Pure function of (model, n, seed):
// every stochastic component draws from its own stream derived from the seed,
// so results are bit-identical across runs and thread counts. true_c1 is the
// integrated squared volatility of the realization (exact for deterministic
// volatility, Riemann sum on a 64x refinement grid for the ou kind).
SamplePath simulate_path(const ModelSpec& model, std::int64_t n, std::uint64_t seed);

} // namespace voltlab
