#pragma once

#include <string>
#include <string_view>

#include "mob/pool.hpp"
#include "mob/selectors.hpp"

namespace mob {

// A selection method plus its parameters, parsed from tags like
//   bon | sc | wbon | bon_sc:8 | mob:16 | mob_poly | mob_adaptive:0.75 |
//   oracle_mob
// The numeric suffix is optional for mob_adaptive (default q = 0.75).
struct MethodSpec {
  enum class Kind { BoN, SC, WBoN, BoNSC, MobFixed, MobPoly, MobAdaptive, OracleMoB };
  Kind kind = Kind::BoN;
  std::size_t m = 0;   // BoNSC / MobFixed subsample size
  double q = 0.75;     // MobAdaptive shrink factor, in (0,1)

  // Throws ConfigError on unknown tags or invalid parameters.
  static MethodSpec parse(std::string_view tag);
  std::string tag() const;
};

// Applies a method to one run pool. OracleMoB ignores the run pool and takes
// the mode of the budget-n bootstrap distribution over full_pool, which must
// then be non-null; budget is the per-run sample budget n.
SelectorResult apply_method(const MethodSpec& spec, const SamplePool& run_pool,
                            const SamplePool* full_pool, std::size_t budget);

// Correctness of a chosen answer within a pool: the flag of the first sample
// carrying that answer. Throws DataError if the answer is absent.
bool answer_is_correct(const SamplePool& pool, std::string_view answer);

}  // namespace mob
