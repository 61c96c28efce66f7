#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mob/pool.hpp"

namespace mob::detail {

// Maps each sample to a dense answer slot, slots ordered by the answer's
// first occurrence in the pool. Slot order is what every tie policy in the
// library resolves toward.
struct AnswerIndex {
  std::vector<std::string> answers;
  std::vector<std::size_t> slot_of_sample;
};

inline AnswerIndex make_answer_index(const SamplePool& pool) {
  AnswerIndex idx;
  idx.slot_of_sample.reserve(pool.size());
  std::unordered_map<std::string_view, std::size_t> slots;
  slots.reserve(pool.size());
  for (const auto& s : pool.samples()) {
    auto [it, inserted] = slots.try_emplace(s.answer, idx.answers.size());
    if (inserted) idx.answers.push_back(s.answer);
    idx.slot_of_sample.push_back(it->second);
  }
  return idx;
}

}  // namespace mob::detail
