#include "mob/pool.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "answer_index.hpp"
#include "mob/errors.hpp"

namespace mob {

SamplePool::SamplePool(std::string question_id, std::vector<Sample> samples)
    : question_id_(std::move(question_id)), samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw DataError("pool '" + question_id_ + "' has no samples");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i].reward)) {
      throw DataError("pool '" + question_id_ + "': non-finite reward at sample " +
                      std::to_string(i));
    }
    if (samples_[i].answer.empty()) {
      throw DataError("pool '" + question_id_ + "': empty answer at sample " +
                      std::to_string(i));
    }
  }
}

AnswerDistribution::AnswerDistribution(
    std::vector<std::pair<std::string, double>> entries)
    : entries_(std::move(entries)) {
  double total = 0.0;
  for (const auto& [answer, mass] : entries_) {
    if (!(mass >= 0.0)) {
      throw DataError("negative mass for answer '" + answer + "'");
    }
    total += mass;
  }
  if (total < 1.0 - 1e-9 || total > 1.0 + 1e-9) {
    throw DataError("answer masses sum to " + std::to_string(total));
  }
}

double AnswerDistribution::mass(std::string_view answer) const noexcept {
  for (const auto& [a, m] : entries_) {
    if (a == answer) return m;
  }
  return 0.0;
}

double AnswerDistribution::total() const noexcept {
  double t = 0.0;
  for (const auto& [a, m] : entries_) t += m;
  return t;
}

const std::string& AnswerDistribution::mode() const {
  if (entries_.empty()) throw DataError("mode of an empty distribution");
  std::size_t best = 0;
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].second > entries_[best].second) best = i;
  }
  return entries_[best].first;
}

double l1_distance(const AnswerDistribution& a, const AnswerDistribution& b) {
  std::unordered_map<std::string_view, double> diff;
  for (const auto& [answer, mass] : a.entries()) diff[answer] += mass;
  for (const auto& [answer, mass] : b.entries()) diff[answer] -= mass;
  double sum = 0.0;
  for (const auto& [answer, d] : diff) sum += std::fabs(d);
  return sum;
}

namespace {

double require_finite_number(const nlohmann::json& obj, const char* key,
                             std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw DataError("line " + std::to_string(line_no) + ": missing or non-numeric '" +
                    key + "'");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) {
    throw DataError("line " + std::to_string(line_no) + ": non-finite '" + key + "'");
  }
  return v;
}

}  // namespace

std::vector<SamplePool> ingest_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");

  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<Sample>> by_question;

  std::string line;
  std::size_t line_no = 0;
  std::size_t parsed = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object()) {
      throw DataError("line " + std::to_string(line_no) + ": not a JSON object");
    }

    auto qid = obj.find("question_id");
    auto answer = obj.find("answer");
    auto correct = obj.find("correct");
    if (qid == obj.end() || !qid->is_string()) {
      throw DataError("line " + std::to_string(line_no) + ": missing or non-string 'question_id'");
    }
    if (answer == obj.end() || !answer->is_string() || answer->get<std::string>().empty()) {
      throw DataError("line " + std::to_string(line_no) + ": missing or empty 'answer'");
    }
    if (correct == obj.end() || !correct->is_boolean()) {
      throw DataError("line " + std::to_string(line_no) + ": missing or non-boolean 'correct'");
    }
    const double reward = require_finite_number(obj, "reward", line_no);

    auto& samples = by_question[qid->get<std::string>()];
    if (samples.empty()) order.push_back(qid->get<std::string>());
    samples.push_back(Sample{answer->get<std::string>(), reward, correct->get<bool>()});
    ++parsed;
  }
  if (parsed == 0) throw DataError("'" + path + "' contains no samples");

  std::vector<SamplePool> pools;
  pools.reserve(order.size());
  for (auto& qid : order) {
    pools.emplace_back(qid, std::move(by_question[qid]));
  }
  return pools;
}

void write_jsonl(const std::string& path, const std::vector<SamplePool>& pools) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (const auto& pool : pools) {
    for (const auto& s : pool.samples()) {
      nlohmann::json obj;
      obj["question_id"] = pool.question_id();
      obj["answer"] = s.answer;
      obj["reward"] = s.reward;
      obj["correct"] = s.correct;
      out << obj.dump() << '\n';
    }
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

AnswerDistribution empirical_answer_dist(const SamplePool& pool) {
  const auto idx = detail::make_answer_index(pool);
  std::vector<double> counts(idx.answers.size(), 0.0);
  for (std::size_t slot : idx.slot_of_sample) counts[slot] += 1.0;

  const double n = static_cast<double>(pool.size());
  std::vector<std::pair<std::string, double>> entries;
  entries.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    entries.emplace_back(idx.answers[i], counts[i] / n);
  }
  return AnswerDistribution(std::move(entries));
}

std::vector<SamplePool> slice_runs(const SamplePool& pool, std::size_t n) {
  if (n == 0) throw DataError("run length must be positive");
  if (n > pool.size()) {
    throw DataError("run length " + std::to_string(n) + " exceeds pool size " +
                    std::to_string(pool.size()));
  }
  const std::size_t k = pool.size() / n;
  std::vector<SamplePool> runs;
  runs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Sample> block(pool.samples().begin() + i * n,
                              pool.samples().begin() + (i + 1) * n);
    runs.emplace_back(pool.question_id(), std::move(block));
  }
  return runs;
}

}  // namespace mob
