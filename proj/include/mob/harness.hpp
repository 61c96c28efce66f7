#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mob/methods.hpp"
#include "mob/stats.hpp"

namespace mob {

// Synthetic stand-in for a JSONL dataset: `questions` independent pools of
// `pool_size` samples drawn from one (p, beta) cell.
struct SynthDataset {
  double p = 0.5;
  double beta = 1.0;
  std::size_t questions = 100;
  std::size_t pool_size = 512;
};

struct ExperimentConfig {
  std::string input_path;            // JSONL pools; empty when synth is set
  std::optional<SynthDataset> synth;
  std::vector<MethodSpec> methods;
  std::vector<std::size_t> budgets;
  std::uint64_t seed = 0;
  std::string output_dir;
  // (base-success edges, reward-accuracy edges); enables the group grid.
  std::optional<std::pair<std::vector<double>, std::vector<double>>> group_edges;
};

struct SweepConfig {
  std::vector<double> p_values;
  std::vector<double> beta_values;
  std::vector<std::size_t> budgets;
  std::size_t trials = 1000;
  std::vector<MethodSpec> methods;
  std::uint64_t seed = 0;
  std::string output_dir;
};

struct CurveConfig {
  std::string input_path;            // large pool; empty when synth is set
  std::optional<SynthDataset> synth; // questions ignored; one pool generated
  std::size_t m = 8;
  std::vector<std::size_t> budgets;
  std::size_t trials = 200;
  std::vector<PiEstimator> estimators;
  std::uint64_t seed = 0;
  std::string output_dir;
};

struct CommandOutputs {
  std::vector<std::string> files_written;
};

// Slices each question's pool into disjoint runs per budget, applies every
// method per run, and writes accuracy.csv, significance_<n>.csv per budget,
// and groups_<n>.csv when group edges are configured. Partial outputs are
// removed on failure. Throws ConfigError / IoError / DataError.
CommandOutputs cmd_run(const ExperimentConfig& cfg);

// Writes sweep.csv over the (p, beta) grid x budgets x methods, with the
// infinite-budget theory columns alongside the empirical rates.
CommandOutputs cmd_sweep_synth(const SweepConfig& cfg);

// Writes curve.csv: per-estimator approximation-error curves at fixed m.
CommandOutputs cmd_curve(const CurveConfig& cfg);

// All rows produced by one cmd_run invocation, exposed for tests.
struct RunTable {
  std::vector<SamplePool> pools;
  // records[b] holds the records of budgets[b], ordered by question (in
  // dataset order), then method (in config order), then run index.
  std::vector<std::vector<RunRecord>> records_per_budget;
};
RunTable build_run_table(const ExperimentConfig& cfg);

}  // namespace mob
