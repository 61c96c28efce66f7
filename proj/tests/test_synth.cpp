#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mob/errors.hpp"
#include "mob/selectors.hpp"
#include "mob/synth.hpp"
#include "mob/theory.hpp"

using namespace mob;

TEST_CASE("generate_pool is deterministic in (cfg, seed)") {
  const SyntheticConfig cfg{0.4, 0.8, 300, 777};
  const auto a = generate_pool(cfg, Rng(cfg.seed));
  const auto b = generate_pool(cfg, Rng(cfg.seed));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].answer == b[i].answer);
    CHECK(a[i].reward == b[i].reward);
  }
  const auto c = generate_pool(cfg, Rng(cfg.seed + 1));
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) any_diff |= a[i].reward != c[i].reward;
  CHECK(any_diff);
}

TEST_CASE("generate_pool degenerate p = 1") {
  const auto pool = generate_pool(SyntheticConfig{1.0, 0.5, 200, 3}, Rng(3));
  for (const auto& s : pool.samples()) {
    CHECK(s.correct);
    CHECK(s.answer == "TRUE");
    CHECK(s.reward >= 1.0);
  }
}

TEST_CASE("vanishing noise makes rewards the oracle score") {
  // With beta ~ 0 the reward ordering is the oracle's, so best-of-n succeeds
  // whenever at least one correct sample exists.
  const auto pool = generate_pool(SyntheticConfig{0.2, 1e-9, 400, 11}, Rng(11));
  bool any_correct = false;
  for (const auto& s : pool.samples()) any_correct |= s.correct;
  REQUIRE(any_correct);
  CHECK(best_of_n(pool).answer == "TRUE");
}

TEST_CASE("generate_pool validates its config") {
  CHECK_THROWS_AS(generate_pool(SyntheticConfig{0.0, 1.0, 10, 0}, Rng(0)), ConfigError);
  CHECK_THROWS_AS(generate_pool(SyntheticConfig{1.1, 1.0, 10, 0}, Rng(0)), ConfigError);
  CHECK_THROWS_AS(generate_pool(SyntheticConfig{0.5, 0.0, 10, 0}, Rng(0)), ConfigError);
  CHECK_THROWS_AS(generate_pool(SyntheticConfig{0.5, 1.0, 0, 0}, Rng(0)), ConfigError);
}

TEST_CASE("large synthetic pools match their law") {
  const SyntheticConfig cfg{0.3, 1.0, 100000, 90210};
  const auto pool = generate_pool(cfg, Rng(cfg.seed));

  std::size_t n_correct = 0;
  double correct_reward_sum = 0.0;
  for (const auto& s : pool.samples()) {
    if (s.correct) {
      ++n_correct;
      correct_reward_sum += s.reward;
    }
  }
  const double frac = static_cast<double>(n_correct) / static_cast<double>(pool.size());
  CHECK(std::fabs(frac - 0.3) <= 0.01);
  CHECK(std::fabs(correct_reward_sum / static_cast<double>(n_correct) - (1.0 + cfg.beta)) <=
        0.02);

  SUBCASE("noise passes a Kolmogorov-Smirnov check against Exp(mean beta)") {
    std::vector<double> noise;
    noise.reserve(pool.size());
    for (const auto& s : pool.samples()) {
      noise.push_back(s.reward - (s.correct ? 1.0 : 0.0));
    }
    std::sort(noise.begin(), noise.end());
    const auto n = static_cast<double>(noise.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < noise.size(); ++i) {
      const double cdf = 1.0 - std::exp(-noise[i] / cfg.beta);
      const double lo = static_cast<double>(i) / n;
      const double hi = static_cast<double>(i + 1) / n;
      ks = std::max(ks, std::max(cdf - lo, hi - cdf));
    }
    // 1% critical value of the one-sample KS statistic
    CHECK(ks < 1.628 / std::sqrt(n));
  }

  SUBCASE("correctness and noise are uncorrelated") {
    double mean_noise = 0.0;
    for (const auto& s : pool.samples()) {
      mean_noise += s.reward - (s.correct ? 1.0 : 0.0);
    }
    mean_noise /= static_cast<double>(pool.size());
    const double mean_c = frac;
    double cov = 0.0, var_n = 0.0, var_c = 0.0;
    for (const auto& s : pool.samples()) {
      const double dn = (s.reward - (s.correct ? 1.0 : 0.0)) - mean_noise;
      const double dc = (s.correct ? 1.0 : 0.0) - mean_c;
      cov += dn * dc;
      var_n += dn * dn;
      var_c += dc * dc;
    }
    const double corr = cov / std::sqrt(var_n * var_c);
    CHECK(std::fabs(corr) <= 0.01);
  }
}

TEST_CASE("sweep_success concentrates where theory says it should") {
  SUBCASE("majority voting at p = 0.7 is near-certain") {
    const std::vector<SyntheticConfig> grid{{0.7, 1.0, 0, 555}};
    const auto rows = sweep_success(grid, 1025, 400, MethodSpec::parse("sc"));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].success >= 0.99);
    CHECK(rows[0].trials == 400);
  }
  SUBCASE("best-of-n tracks the infinite-budget value") {
    const std::vector<SyntheticConfig> grid{{0.3, 1.0, 0, 556}};
    const auto rows = sweep_success(grid, 2048, 500, MethodSpec::parse("bon"));
    CHECK(std::fabs(rows[0].success - synthetic_bon_limit(0.3, 1.0)) <= 0.06);
  }
  SUBCASE("unknown-free method tags only") {
    CHECK_THROWS_AS(MethodSpec::parse("magic"), ConfigError);
  }
}

TEST_CASE("parallel and serial sweeps agree exactly") {
  const std::vector<SyntheticConfig> grid{{0.3, 1.0, 0, 42}, {0.55, 2.0, 0, 43}};
  for (const char* tag : {"sc", "bon", "mob_poly", "mob_adaptive:0.75"}) {
    const auto spec = MethodSpec::parse(tag);
    const auto par = sweep_success(grid, 256, 200, spec);
    const auto ser = sweep_success_serial(grid, 256, 200, spec);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].success == ser[i].success);
      CHECK(par[i].stderr_ == ser[i].stderr_);
    }
  }
}
