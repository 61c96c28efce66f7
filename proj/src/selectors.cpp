#include "mob/selectors.hpp"

#include <cstddef>

#include "answer_index.hpp"
#include "mob/errors.hpp"

namespace mob {

std::size_t best_sample_index(const SamplePool& pool) {
  // Strict > keeps the lowest index among tied rewards.
  std::size_t best = 0;
  for (std::size_t i = 1; i < pool.size(); ++i) {
    if (pool[i].reward > pool[best].reward) best = i;
  }
  return best;
}

SelectorResult best_of_n(const SamplePool& pool) {
  const std::size_t best = best_sample_index(pool);
  SelectorResult result{pool[best].answer, "bon", {}};
  result.meta.winning_reward = pool[best].reward;
  return result;
}

namespace {

// Plurality answer of a sequence; ties toward the answer seen first.
std::size_t plurality_slot(const std::vector<std::size_t>& slots,
                           std::size_t n_answers) {
  std::vector<int> counts(n_answers, 0);
  for (std::size_t slot : slots) ++counts[slot];
  std::size_t best = 0;
  for (std::size_t i = 1; i < n_answers; ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  return best;
}

}  // namespace

SelectorResult self_consistency(const SamplePool& pool) {
  const auto idx = detail::make_answer_index(pool);
  std::vector<int> counts(idx.answers.size(), 0);
  for (std::size_t slot : idx.slot_of_sample) ++counts[slot];

  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;
  }

  SelectorResult result{idx.answers[best], "sc", {}};
  result.meta.vote_counts.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    result.meta.vote_counts.emplace_back(idx.answers[i], counts[i]);
  }
  return result;
}

SelectorResult weighted_best_of_n(const SamplePool& pool) {
  const auto idx = detail::make_answer_index(pool);
  std::vector<double> totals(idx.answers.size(), 0.0);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    totals[idx.slot_of_sample[i]] += pool[i].reward;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < totals.size(); ++i) {
    if (totals[i] > totals[best]) best = i;
  }
  return SelectorResult{idx.answers[best], "wbon", {}};
}

SelectorResult bon_plus_sc(const SamplePool& pool, std::size_t m) {
  if (m == 0) throw DataError("block size must be positive");
  if (m > pool.size()) {
    throw DataError("block size " + std::to_string(m) + " exceeds pool size " +
                    std::to_string(pool.size()));
  }
  const std::size_t k = pool.size() / m;

  // Winners of the k consecutive blocks, then plurality over the winner
  // sequence with ties toward the earliest winner.
  std::vector<std::string> winners;
  winners.reserve(k);
  for (std::size_t b = 0; b < k; ++b) {
    std::size_t best = b * m;
    for (std::size_t i = b * m + 1; i < (b + 1) * m; ++i) {
      if (pool[i].reward > pool[best].reward) best = i;
    }
    winners.push_back(pool[best].answer);
  }

  std::vector<std::string> order;
  std::vector<std::size_t> slots;
  slots.reserve(k);
  for (const auto& w : winners) {
    std::size_t slot = order.size();
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] == w) {
        slot = i;
        break;
      }
    }
    if (slot == order.size()) order.push_back(w);
    slots.push_back(slot);
  }
  const std::size_t best = plurality_slot(slots, order.size());

  SelectorResult result{order[best], "bon_sc", {}};
  result.meta.block_count = static_cast<int>(k);
  result.meta.block_winners = std::move(winners);
  return result;
}

}  // namespace mob
