#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mob {

// One generated output: the extracted final answer, its reward-model score,
// and whether the answer matches the ground truth. Answers are opaque
// strings compared by exact equality; correctness is stored, not recomputed.
struct Sample {
  std::string answer;
  double reward = 0.0;
  bool correct = false;
};

// All samples generated for one question, in generation order. Order
// matters: disjoint-run slicing and the FirstIndex tie policy depend on it.
class SamplePool {
 public:
  // Validates: at least one sample, finite rewards, non-empty answers.
  // Throws DataError otherwise.
  SamplePool(std::string question_id, std::vector<Sample> samples);

  const std::string& question_id() const noexcept { return question_id_; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const Sample& operator[](std::size_t i) const noexcept { return samples_[i]; }

 private:
  std::string question_id_;
  std::vector<Sample> samples_;
};

// Probability mass over distinct answer ids. Entries are kept in
// first-occurrence order of the answer in the source pool; mode() breaks
// ties toward the earliest entry, which is exactly the FirstIndex policy.
class AnswerDistribution {
 public:
  AnswerDistribution() = default;

  // Validates masses >= 0 and total within 1e-9 of 1. Throws DataError.
  explicit AnswerDistribution(std::vector<std::pair<std::string, double>> entries);

  const std::vector<std::pair<std::string, double>>& entries() const noexcept {
    return entries_;
  }
  bool empty() const noexcept { return entries_.empty(); }

  // Mass of an answer; 0 for answers outside the support.
  double mass(std::string_view answer) const noexcept;
  double total() const noexcept;

  // Highest-mass answer; ties resolve to the earliest entry.
  const std::string& mode() const;

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

// Sum of |a(z) - b(z)| over the union of supports; lies in [0, 2].
double l1_distance(const AnswerDistribution& a, const AnswerDistribution& b);

// Reads a JSONL pool file: one sample object per line,
//   {"question_id": ..., "answer": ..., "reward": ..., "correct": ...}
// Returns one pool per distinct question_id, in first-appearance order,
// samples in file order. Throws IoError if unreadable, DataError (with the
// offending line number) on malformed lines, missing fields, non-finite
// rewards, or an empty file.
std::vector<SamplePool> ingest_jsonl(const std::string& path);

// Inverse of ingest_jsonl; writes UTF-8, LF line endings.
void write_jsonl(const std::string& path, const std::vector<SamplePool>& pools);

// Answer frequencies of the pool: mass(z) = count(z)/N.
AnswerDistribution empirical_answer_dist(const SamplePool& pool);

// Splits the pool into floor(size/n) disjoint consecutive runs of length n,
// in order; leftover samples are discarded. Throws DataError if n is 0 or
// exceeds the pool size.
std::vector<SamplePool> slice_runs(const SamplePool& pool, std::size_t n);

}  // namespace mob
