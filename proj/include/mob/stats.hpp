#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mob/pool.hpp"
#include "mob/rng.hpp"

namespace mob {

// One (question, run, method) correctness outcome.
struct RunRecord {
  std::string question_id;
  int run_index = 0;
  std::string method;
  bool correct = false;
};

struct AccuracySummary {
  double mean = 0.0;
  double se = 0.0;       // Bessel-corrected sd of the 0/1 outcomes / sqrt(count)
  std::size_t count = 0;
};

// Mean correctness over all cells of the given method, with the standard
// error computed from the sample standard deviation of the 0/1 outcomes.
// Throws DataError with fewer than 2 records for the method.
AccuracySummary accuracy_with_se(const std::vector<RunRecord>& records,
                                 const std::string& method);

struct PairedTTest {
  double t = 0.0;
  std::size_t df = 0;
  double p_value = 0.5;
  bool zero_variance = false;  // all paired differences equal; p pinned to 0.5
};

// One-sided paired t-test of H1: mean(a) > mean(b), outcomes paired by
// position. p-value is the Student-t upper tail at df = n-1. Zero-variance
// differences return p = 0.5, flagged. Throws DataError on length mismatch
// or fewer than 2 pairs.
PairedTTest paired_t_test_one_sided(const std::vector<int>& a_outcomes,
                                    const std::vector<int>& b_outcomes);

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Student-t upper tail P(T_df >= t).
double student_t_sf(double t, double df);

struct QuestionDiagnostics {
  std::string question_id;
  double base_success = 0.0;
  // Fraction of (incorrect, correct) sample pairs where the correct sample's
  // reward is strictly higher; ties score 0. Unset when the pool is
  // all-correct or all-incorrect.
  std::optional<double> reward_accuracy;
};

QuestionDiagnostics question_diagnostics(const SamplePool& pool);

struct GroupCell {
  double row_lo = 0.0, row_hi = 0.0;  // base-success bucket
  double col_lo = 0.0, col_hi = 0.0;  // reward-accuracy bucket
  std::size_t question_count = 0;
  std::vector<std::pair<std::string, double>> method_accuracy;
};

// Buckets questions by (base success, reward accuracy) and reports per-cell
// sizes and per-method accuracy over the supplied records. Questions with
// undefined reward accuracy or reward accuracy below col_edges.front() are
// excluded. Edges must be strictly increasing (throws ConfigError).
// Cells are emitted row-major; the upper edge of the last bucket in each
// direction is inclusive.
std::vector<GroupCell> group_accuracy(const std::vector<SamplePool>& pools,
                                      const std::vector<RunRecord>& records,
                                      const std::vector<double>& row_edges,
                                      const std::vector<double>& col_edges);

enum class PiEstimator { ClosedForm, BonSc };

struct CurvePoint {
  std::size_t n = 0;
  double mean_l1 = 0.0;
  double se = 0.0;
  std::size_t trials = 0;
};

// Approximation-error curve for the best-of-m output distribution at fixed
// m: per budget N, repeatedly subsamples N outputs without replacement from
// large_pool (trial t uses seed rng.seed() + t), forms the estimator's
// distribution, and averages the l1 distance to the reference computed on
// the whole large pool. Trials run in parallel; the serial variant is the
// reference loop. Throws DataError if a budget exceeds the pool size, or if
// m exceeds a budget for the BonSc estimator.
std::vector<CurvePoint> l1_error_curve(const SamplePool& large_pool, std::size_t m,
                                       const std::vector<std::size_t>& budgets,
                                       std::size_t trials, Rng rng, PiEstimator est);
std::vector<CurvePoint> l1_error_curve_serial(const SamplePool& large_pool,
                                              std::size_t m,
                                              const std::vector<std::size_t>& budgets,
                                              std::size_t trials, Rng rng,
                                              PiEstimator est);

}  // namespace mob
