#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mob/pool.hpp"

namespace mob {

// All selectors share one tie policy (FirstIndex): among tied candidates the
// one containing the lowest pool index wins. The bootstrap module reproduces
// the same policy in closed form, so Monte-Carlo and closed-form paths agree
// in law even when rewards tie.
enum class TieBreak { FirstIndex };

inline constexpr TieBreak kSharedTiePolicy = TieBreak::FirstIndex;

struct SelectorMeta {
  std::optional<double> winning_reward;                           // best_of_n
  std::vector<std::pair<std::string, int>> vote_counts;           // self_consistency
  std::vector<std::string> block_winners;                         // bon_plus_sc
  std::optional<int> block_count;                                 // bon_plus_sc (k)
  std::optional<int> chosen_m;                                    // mob_*
  std::optional<AnswerDistribution> dist;                         // mob_*
  std::vector<std::pair<int, double>> candidate_distances;        // mob_adaptive
  bool adaptive_fallback = false;                                 // mob_adaptive
};

struct SelectorResult {
  std::string answer;
  std::string method;
  SelectorMeta meta;
};

// Pool index of the winning sample: maximal (reward, -index) lexicographically.
std::size_t best_sample_index(const SamplePool& pool);

// Answer of the highest-reward sample.
SelectorResult best_of_n(const SamplePool& pool);

// Most frequent answer; ties toward the answer whose first occurrence has
// the lowest index.
SelectorResult self_consistency(const SamplePool& pool);

// Answer with the highest total reward over the samples sharing it.
SelectorResult weighted_best_of_n(const SamplePool& pool);

// Partitions the pool into k = floor(N/m) consecutive blocks of m, takes the
// best of each block, and returns the plurality answer of the k winners.
// Throws DataError if m is 0 or exceeds the pool size.
SelectorResult bon_plus_sc(const SamplePool& pool, std::size_t m);

}  // namespace mob
