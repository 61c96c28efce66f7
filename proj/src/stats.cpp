#include "mob/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string_view>
#include <unordered_map>

#include "mob/bootstrap.hpp"
#include "mob/errors.hpp"
#include "mob/selectors.hpp"

namespace mob {

AccuracySummary accuracy_with_se(const std::vector<RunRecord>& records,
                                 const std::string& method) {
  std::size_t n = 0;
  double sum = 0.0;
  for (const auto& rec : records) {
    if (rec.method != method) continue;
    ++n;
    sum += rec.correct ? 1.0 : 0.0;
  }
  if (n < 2) {
    throw DataError("need at least 2 records for method '" + method + "', have " +
                    std::to_string(n));
  }
  const double mean = sum / static_cast<double>(n);
  // Bessel-corrected variance of 0/1 outcomes: sum of squared deviations is
  // k(1-mean)^2 + (n-k)mean^2 with k successes.
  const double ss = sum * (1.0 - mean) * (1.0 - mean) +
                    (static_cast<double>(n) - sum) * mean * mean;
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return AccuracySummary{mean, sd / std::sqrt(static_cast<double>(n)), n};
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw ConfigError("beta parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // Converges fastest for x below the switch point; mirror otherwise.
  if (x > (a + 1.0) / (a + b + 2.0)) {
    return 1.0 - regularized_incomplete_beta(b, a, 1.0 - x);
  }

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front) / a;

  // Lentz's algorithm on the standard continued fraction.
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double f = d;
  for (int i = 1; i <= 400; ++i) {
    const double di = static_cast<double>(i);
    double num = di * (b - di) * x / ((a + 2.0 * di - 1.0) * (a + 2.0 * di));
    d = 1.0 + num * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    f *= c * d;

    num = -(a + di) * (a + b + di) * x / ((a + 2.0 * di) * (a + 2.0 * di + 1.0));
    d = 1.0 + num * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return front * f;
}

double student_t_sf(double t, double df) {
  if (!(df > 0.0)) throw ConfigError("degrees of freedom must be positive");
  if (std::isinf(t)) return t > 0.0 ? 0.0 : 1.0;
  const double x = df / (df + t * t);
  const double half_tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
  return t >= 0.0 ? half_tail : 1.0 - half_tail;
}

PairedTTest paired_t_test_one_sided(const std::vector<int>& a_outcomes,
                                    const std::vector<int>& b_outcomes) {
  if (a_outcomes.size() != b_outcomes.size()) {
    throw DataError("paired outcome lengths differ");
  }
  const std::size_t n = a_outcomes.size();
  if (n < 2) throw DataError("need at least 2 pairs");

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean += static_cast<double>(a_outcomes[i] - b_outcomes[i]);
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(a_outcomes[i] - b_outcomes[i]) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  PairedTTest result;
  result.df = n - 1;
  if (sd == 0.0) {
    result.t = std::numeric_limits<double>::quiet_NaN();
    result.p_value = 0.5;
    result.zero_variance = true;
    return result;
  }
  result.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  result.p_value = student_t_sf(result.t, static_cast<double>(result.df));
  return result;
}

QuestionDiagnostics question_diagnostics(const SamplePool& pool) {
  std::vector<double> correct_rewards;
  std::vector<double> wrong_rewards;
  for (const auto& s : pool.samples()) {
    (s.correct ? correct_rewards : wrong_rewards).push_back(s.reward);
  }

  QuestionDiagnostics diag;
  diag.question_id = pool.question_id();
  diag.base_success =
      static_cast<double>(correct_rewards.size()) / static_cast<double>(pool.size());
  if (correct_rewards.empty() || wrong_rewards.empty()) return diag;

  // Fraction of (wrong, correct) pairs won strictly by the correct sample;
  // counting via a sorted scan instead of the quadratic pair loop.
  std::sort(wrong_rewards.begin(), wrong_rewards.end());
  std::size_t wins = 0;
  for (double r : correct_rewards) {
    wins += static_cast<std::size_t>(
        std::lower_bound(wrong_rewards.begin(), wrong_rewards.end(), r) -
        wrong_rewards.begin());
  }
  diag.reward_accuracy = static_cast<double>(wins) /
                         (static_cast<double>(correct_rewards.size()) *
                          static_cast<double>(wrong_rewards.size()));
  return diag;
}

namespace {

void check_edges(const std::vector<double>& edges, const char* what) {
  if (edges.size() < 2) {
    throw ConfigError(std::string(what) + " needs at least two edges");
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw ConfigError(std::string(what) + " edges must be strictly increasing");
    }
  }
}

constexpr std::size_t kExcluded = static_cast<std::size_t>(-1);

// Bucket index, or kExcluded when x falls outside [front, back]. The top
// edge is inclusive.
std::size_t bucket_of(double x, const std::vector<double>& edges) {
  if (x < edges.front() || x > edges.back()) return kExcluded;
  if (x == edges.back()) return edges.size() - 2;
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  return static_cast<std::size_t>(it - edges.begin()) - 1;
}

}  // namespace

std::vector<GroupCell> group_accuracy(const std::vector<SamplePool>& pools,
                                      const std::vector<RunRecord>& records,
                                      const std::vector<double>& row_edges,
                                      const std::vector<double>& col_edges) {
  check_edges(row_edges, "base-success");
  check_edges(col_edges, "reward-accuracy");
  const std::size_t n_rows = row_edges.size() - 1;
  const std::size_t n_cols = col_edges.size() - 1;

  // Cell of each question; excluded questions map to kExcluded.
  std::unordered_map<std::string_view, std::size_t> cell_of;
  for (const auto& pool : pools) {
    const QuestionDiagnostics diag = question_diagnostics(pool);
    std::size_t cell = kExcluded;
    if (diag.reward_accuracy.has_value()) {
      const std::size_t row = bucket_of(diag.base_success, row_edges);
      const std::size_t col = bucket_of(*diag.reward_accuracy, col_edges);
      if (row != kExcluded && col != kExcluded) {
        cell = row * n_cols + col;
      }
    }
    cell_of[pool.question_id()] = cell;
  }

  std::vector<std::string> methods;
  for (const auto& rec : records) {
    if (std::find(methods.begin(), methods.end(), rec.method) == methods.end()) {
      methods.push_back(rec.method);
    }
  }

  std::vector<GroupCell> cells(n_rows * n_cols);
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < n_cols; ++c) {
      auto& cell = cells[r * n_cols + c];
      cell.row_lo = row_edges[r];
      cell.row_hi = row_edges[r + 1];
      cell.col_lo = col_edges[c];
      cell.col_hi = col_edges[c + 1];
    }
  }

  std::unordered_map<std::string_view, bool> counted;
  for (const auto& pool : pools) {
    const std::size_t cell = cell_of.at(pool.question_id());
    if (cell != kExcluded && !counted[pool.question_id()]) {
      counted[pool.question_id()] = true;
      ++cells[cell].question_count;
    }
  }

  // Per-cell, per-method mean correctness over all runs of member questions.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> tallies(
      cells.size(),
      std::vector<std::pair<std::size_t, std::size_t>>(methods.size(), {0, 0}));
  for (const auto& rec : records) {
    const auto it = cell_of.find(rec.question_id);
    if (it == cell_of.end() || it->second == kExcluded) continue;
    const auto mi = static_cast<std::size_t>(
        std::find(methods.begin(), methods.end(), rec.method) - methods.begin());
    auto& [hits, total] = tallies[it->second][mi];
    hits += rec.correct ? 1 : 0;
    ++total;
  }
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      const auto [hits, total] = tallies[cell][mi];
      if (total == 0) continue;
      cells[cell].method_accuracy.emplace_back(
          methods[mi], static_cast<double>(hits) / static_cast<double>(total));
    }
  }
  return cells;
}

namespace {

AnswerDistribution winner_frequencies(const std::vector<std::string>& winners) {
  std::vector<std::pair<std::string, double>> entries;
  for (const auto& w : winners) {
    bool found = false;
    for (auto& [answer, mass] : entries) {
      if (answer == w) {
        mass += 1.0;
        found = true;
        break;
      }
    }
    if (!found) entries.emplace_back(w, 1.0);
  }
  for (auto& [answer, mass] : entries) {
    mass /= static_cast<double>(winners.size());
  }
  return AnswerDistribution(std::move(entries));
}

std::vector<CurvePoint> curve_impl(const SamplePool& large_pool, std::size_t m,
                                   const std::vector<std::size_t>& budgets,
                                   std::size_t trials, const Rng& rng,
                                   PiEstimator est, bool parallel) {
  if (m == 0) throw ConfigError("subsample size must be positive");
  if (trials == 0) throw ConfigError("trial count must be positive");
  for (std::size_t n : budgets) {
    if (n == 0 || n > large_pool.size()) {
      throw DataError("budget " + std::to_string(n) + " incompatible with pool size " +
                      std::to_string(large_pool.size()));
    }
    if (est == PiEstimator::BonSc && m > n) {
      throw DataError("block size " + std::to_string(m) + " exceeds budget " +
                      std::to_string(n));
    }
  }

  const AnswerDistribution reference = closed_form_dist(large_pool, m).dist;
  const std::size_t pool_size = large_pool.size();

  std::vector<CurvePoint> points;
  points.reserve(budgets.size());
  for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
    const std::size_t n = budgets[bi];
    const std::uint64_t budget_seed = rng.fork(bi).seed();
    std::vector<double> errors(trials, 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long long t = 0; t < static_cast<long long>(trials); ++t) {
      Rng trial_rng(budget_seed + static_cast<std::uint64_t>(t));
      // Partial Fisher-Yates: the first n entries are a uniform subsample
      // without replacement, in draw order.
      std::vector<std::size_t> perm(pool_size);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::vector<Sample> chosen;
      chosen.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(trial_rng.next_below(pool_size - i));
        std::swap(perm[i], perm[j]);
        chosen.push_back(large_pool[perm[i]]);
      }
      const SamplePool sub(large_pool.question_id(), std::move(chosen));

      AnswerDistribution estimate;
      if (est == PiEstimator::ClosedForm) {
        estimate = closed_form_dist(sub, m).dist;
      } else {
        estimate = winner_frequencies(bon_plus_sc(sub, m).meta.block_winners);
      }
      errors[static_cast<std::size_t>(t)] = l1_distance(estimate, reference);
    }

    double mean = std::accumulate(errors.begin(), errors.end(), 0.0) /
                  static_cast<double>(trials);
    double ss = 0.0;
    for (double e : errors) ss += (e - mean) * (e - mean);
    const double se =
        trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) /
                         std::sqrt(static_cast<double>(trials))
                   : 0.0;
    points.push_back(CurvePoint{n, mean, se, trials});
  }
  return points;
}

}  // namespace

std::vector<CurvePoint> l1_error_curve(const SamplePool& large_pool, std::size_t m,
                                       const std::vector<std::size_t>& budgets,
                                       std::size_t trials, Rng rng, PiEstimator est) {
  return curve_impl(large_pool, m, budgets, trials, rng, est, true);
}

std::vector<CurvePoint> l1_error_curve_serial(const SamplePool& large_pool,
                                              std::size_t m,
                                              const std::vector<std::size_t>& budgets,
                                              std::size_t trials, Rng rng,
                                              PiEstimator est) {
  return curve_impl(large_pool, m, budgets, trials, rng, est, false);
}

}  // namespace mob
