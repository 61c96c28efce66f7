#include "mob/synth.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "mob/errors.hpp"

namespace mob {

SamplePool generate_pool(const SyntheticConfig& cfg, Rng rng) {
  if (!(cfg.p > 0.0 && cfg.p <= 1.0)) {
    throw ConfigError("base success probability must lie in (0,1]");
  }
  if (!(cfg.beta > 0.0)) throw ConfigError("noise scale must be positive");
  if (cfg.pool_size == 0) throw ConfigError("pool size must be positive");

  std::vector<Sample> samples;
  samples.reserve(cfg.pool_size);
  for (std::size_t i = 0; i < cfg.pool_size; ++i) {
    const bool correct = rng.next_bernoulli(cfg.p);
    const double reward = (correct ? 1.0 : 0.0) + rng.next_exponential(cfg.beta);
    samples.push_back(Sample{correct ? "TRUE" : "FALSE", reward, correct});
  }
  return SamplePool("synth", std::move(samples));
}

namespace {

std::vector<SweepRow> sweep_impl(const std::vector<SyntheticConfig>& grid,
                                 std::size_t n, std::size_t trials,
                                 const MethodSpec& method, bool parallel) {
  if (trials == 0) throw ConfigError("trial count must be positive");
  if (n == 0) throw ConfigError("budget must be positive");

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const auto& cfg : grid) {
    std::uint64_t wins = 0;
    // Trial t draws its pool from seed cfg.seed + t, so the tally is the
    // same whether trials run serially or across threads.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : wins) if (parallel)
#endif
    for (long long t = 0; t < static_cast<long long>(trials); ++t) {
      SyntheticConfig trial_cfg = cfg;
      trial_cfg.pool_size = n;
      trial_cfg.seed = cfg.seed + static_cast<std::uint64_t>(t);
      const SamplePool pool = generate_pool(trial_cfg, Rng(trial_cfg.seed));
      const SelectorResult result = apply_method(method, pool, &pool, n);
      if (result.answer == "TRUE") ++wins;
    }
    const double success = static_cast<double>(wins) / static_cast<double>(trials);
    const double se =
        std::sqrt(success * (1.0 - success) / static_cast<double>(trials));
    rows.push_back(SweepRow{cfg.p, cfg.beta, n, method.tag(), success, se, trials});
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> sweep_success(const std::vector<SyntheticConfig>& grid,
                                    std::size_t n, std::size_t trials,
                                    const MethodSpec& method) {
  return sweep_impl(grid, n, trials, method, true);
}

std::vector<SweepRow> sweep_success_serial(const std::vector<SyntheticConfig>& grid,
                                           std::size_t n, std::size_t trials,
                                           const MethodSpec& method) {
  return sweep_impl(grid, n, trials, method, false);
}

}  // namespace mob
