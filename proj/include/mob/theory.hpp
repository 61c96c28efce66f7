#pragma once

#include <cstddef>
#include <cstdint>

namespace mob {

// Tail relationship between the reward distributions of outputs that reach a
// given answer (F0) and outputs that do not (F1), at their right endpoints
// x0 and x1. Governs the infinite-budget best-of-n mass of that answer.
struct TailRegime {
  enum class Kind {
    CorrectDominates,   // x0 > x1: mass -> 1
    IncorrectDominates, // x0 < x1: mass -> 0
    TailEquivalent,     // x0 == x1 with tail ratio c in [0, +inf]
  };
  Kind kind = Kind::TailEquivalent;
  double c = 1.0;  // meaningful only for TailEquivalent; may be +infinity

  static TailRegime correct_dominates() { return {Kind::CorrectDominates, 0.0}; }
  static TailRegime incorrect_dominates() { return {Kind::IncorrectDominates, 0.0}; }
  static TailRegime tail_equivalent(double c) { return {Kind::TailEquivalent, c}; }
};

// Binary-answer testbed: base success probability p, exponential reward
// noise with mean beta, pool size, and the seed that pins generation.
struct SyntheticConfig {
  double p = 0.5;
  double beta = 1.0;
  std::size_t pool_size = 0;
  std::uint64_t seed = 0;
};

// Limiting best-of-n mass of an answer with reference probability pi_ref_z,
// as the budget grows: 0, 1, or c*pi / (1 + (c-1)*pi) by regime. c = +inf
// yields 1, c = 0 yields 0. Throws ConfigError unless 0 < pi_ref_z < 1.
double asymptotic_bon_mass(double pi_ref_z, const TailRegime& regime);

// Infinite-budget best-of-n success probability of the exponential-noise
// testbed: e^{1/beta} p / (1 - p + e^{1/beta} p), evaluated in a form stable
// for extreme beta. Throws ConfigError unless 0 < p < 1 and beta > 0.
double synthetic_bon_limit(double p, double beta);

// Infinite-budget mode-selection success: 1 if synthetic_bon_limit > 0.5,
// else 0 (strict inequality).
int synthetic_mob_limit(double p, double beta);

// Tail regime of the exponential-noise testbed: the correct/incorrect reward
// CDFs share the right endpoint +inf with tail ratio c = e^{1/beta}.
TailRegime tail_ratio_for_exponential(double beta);

}  // namespace mob
