#pragma once

#include <cstdint>
#include <vector>

#include "mob/methods.hpp"
#include "mob/pool.hpp"
#include "mob/rng.hpp"
#include "mob/theory.hpp"

namespace mob {

// Generates one binary-answer pool: each sample is independently correct
// with probability p (answer "TRUE", else "FALSE"); reward = oracle score
// (1 if correct, 0 otherwise) plus exponential noise with mean beta.
// Deterministic given the Rng seed. Throws ConfigError on invalid cfg
// (requires 0 < p <= 1, beta > 0, pool_size >= 1).
SamplePool generate_pool(const SyntheticConfig& cfg, Rng rng);

// One cell of a success-rate sweep.
struct SweepRow {
  double p = 0.0;
  double beta = 0.0;
  std::size_t n = 0;
  std::string method;
  double success = 0.0;
  double stderr_ = 0.0;
  std::size_t trials = 0;
};

// For each config, generates `trials` independent pools of size n (trial t
// uses seed cfg.seed + t), applies the method, and records the fraction of
// trials whose chosen answer is "TRUE" with its binomial standard error.
// Trials run in parallel; results are identical to the serial reference
// regardless of thread count.
std::vector<SweepRow> sweep_success(const std::vector<SyntheticConfig>& grid,
                                    std::size_t n, std::size_t trials,
                                    const MethodSpec& method);
std::vector<SweepRow> sweep_success_serial(const std::vector<SyntheticConfig>& grid,
                                           std::size_t n, std::size_t trials,
                                           const MethodSpec& method);

}  // namespace mob
