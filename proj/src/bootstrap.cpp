#include "mob/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "answer_index.hpp"
#include "mob/errors.hpp"

namespace mob {

namespace {

// Pool with its samples ranked by the shared total order: ascending reward,
// ties broken by descending index. The winner of any subset under the
// FirstIndex tie policy is the subset's highest-ranked sample, so rank k
// (1-based) wins a size-m resample with probability (k/n)^m - ((k-1)/n)^m.
struct RankedPool {
  detail::AnswerIndex idx;
  std::vector<std::size_t> by_rank;       // sample indices, ascending rank
  std::vector<std::size_t> rank_of;       // inverse permutation
};

RankedPool rank_pool(const SamplePool& pool) {
  RankedPool r{detail::make_answer_index(pool), {}, {}};
  r.by_rank.resize(pool.size());
  std::iota(r.by_rank.begin(), r.by_rank.end(), std::size_t{0});
  std::sort(r.by_rank.begin(), r.by_rank.end(),
            [&pool](std::size_t a, std::size_t b) {
              if (pool[a].reward != pool[b].reward) {
                return pool[a].reward < pool[b].reward;
              }
              return a > b;
            });
  r.rank_of.resize(pool.size());
  for (std::size_t k = 0; k < r.by_rank.size(); ++k) {
    r.rank_of[r.by_rank[k]] = k;
  }
  return r;
}

// Per-answer-slot masses of the closed-form resample-winner distribution.
std::vector<double> closed_form_masses(const RankedPool& r, std::size_t m) {
  const std::size_t n = r.by_rank.size();
  std::vector<double> masses(r.idx.answers.size(), 0.0);
  if (m == 1) {
    // Reduces to plain answer frequencies; computed as count/n so the
    // result is bit-identical to empirical_answer_dist.
    for (std::size_t slot : r.idx.slot_of_sample) masses[slot] += 1.0;
    for (double& mass : masses) mass /= static_cast<double>(n);
    return masses;
  }
  const double exponent = static_cast<double>(m);
  double prev = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double cur =
        std::pow(static_cast<double>(k) / static_cast<double>(n), exponent);
    masses[r.idx.slot_of_sample[r.by_rank[k - 1]]] += cur - prev;
    prev = cur;
  }
  return masses;
}

AnswerDistribution to_distribution(const detail::AnswerIndex& idx,
                                   const std::vector<double>& masses) {
  std::vector<std::pair<std::string, double>> entries;
  entries.reserve(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    entries.emplace_back(idx.answers[i], masses[i]);
  }
  return AnswerDistribution(std::move(entries));
}

std::vector<std::uint64_t> monte_carlo_tallies(const RankedPool& r, std::size_t m,
                                               std::uint64_t b, const Rng& rng,
                                               bool parallel) {
  const std::uint64_t n = r.by_rank.size();
  const std::uint64_t seed = rng.seed();
  const std::uint64_t base = rng.counter();
  std::vector<std::uint64_t> counts(r.idx.answers.size(), 0);

  // Resample i consumes counters [base + i*m, base + (i+1)*m); tallies are
  // integers, so the merged result is independent of scheduling.
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<std::uint64_t> local(counts.size(), 0);
#pragma omp for nowait schedule(static)
      for (long long i = 0; i < static_cast<long long>(b); ++i) {
        std::uint64_t ctr = base + static_cast<std::uint64_t>(i) * m;
        std::size_t best_rank = 0;
        for (std::size_t j = 0; j < m; ++j) {
          const std::uint64_t raw = Rng::mix(seed, ctr + j);
          const auto idx = static_cast<std::size_t>(
              (static_cast<unsigned __int128>(raw) * n) >> 64);
          best_rank = std::max(best_rank, r.rank_of[idx]);
        }
        ++local[r.idx.slot_of_sample[r.by_rank[best_rank]]];
      }
#pragma omp critical
      for (std::size_t s = 0; s < counts.size(); ++s) counts[s] += local[s];
    }
    return counts;
#endif
  }
  for (std::uint64_t i = 0; i < b; ++i) {
    std::uint64_t ctr = base + i * m;
    std::size_t best_rank = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint64_t raw = Rng::mix(seed, ctr + j);
      const auto idx = static_cast<std::size_t>(
          (static_cast<unsigned __int128>(raw) * n) >> 64);
      best_rank = std::max(best_rank, r.rank_of[idx]);
    }
    ++counts[r.idx.slot_of_sample[r.by_rank[best_rank]]];
  }
  return counts;
}

BootstrapEstimate monte_carlo_impl(const SamplePool& pool, std::size_t m,
                                   std::uint64_t b, const Rng& rng, bool parallel) {
  if (m == 0) throw DataError("subsample size must be positive");
  if (b == 0) throw DataError("resample count must be positive");
  const RankedPool r = rank_pool(pool);
  const auto counts = monte_carlo_tallies(r, m, b, rng, parallel);
  std::vector<double> masses(counts.size());
  for (std::size_t s = 0; s < counts.size(); ++s) {
    masses[s] = static_cast<double>(counts[s]) / static_cast<double>(b);
  }
  return BootstrapEstimate{to_distribution(r.idx, masses), m, pool.size(),
                           BootstrapEstimate::Method::MonteCarlo, b};
}

}  // namespace

BootstrapEstimate closed_form_dist(const SamplePool& pool, std::size_t m) {
  if (m == 0) throw DataError("subsample size must be positive");
  const RankedPool r = rank_pool(pool);
  return BootstrapEstimate{to_distribution(r.idx, closed_form_masses(r, m)), m,
                           pool.size(), BootstrapEstimate::Method::ClosedForm, 0};
}

BootstrapEstimate monte_carlo_dist(const SamplePool& pool, std::size_t m,
                                   std::uint64_t b, Rng rng) {
  return monte_carlo_impl(pool, m, b, rng, true);
}

BootstrapEstimate monte_carlo_dist_serial(const SamplePool& pool, std::size_t m,
                                          std::uint64_t b, Rng rng) {
  return monte_carlo_impl(pool, m, b, rng, false);
}

SelectorResult mob_fixed(const SamplePool& pool, std::size_t m) {
  BootstrapEstimate est = closed_form_dist(pool, m);
  SelectorResult result{est.dist.mode(), "mob", {}};
  result.meta.chosen_m = static_cast<int>(m);
  result.meta.dist = std::move(est.dist);
  return result;
}

SelectorResult mob_poly(const SamplePool& pool) {
  const auto m = static_cast<std::size_t>(
      std::sqrt(static_cast<double>(pool.size())));
  SelectorResult result = mob_fixed(pool, std::max<std::size_t>(m, 1));
  result.method = "mob_poly";
  return result;
}

SelectorResult mob_adaptive(const SamplePool& pool, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw ConfigError("adaptive shrink factor must lie in (0,1)");
  }
  const std::size_t n = pool.size();

  std::vector<std::size_t> candidates;
  for (int j = 1;; ++j) {
    const auto mj = static_cast<std::size_t>(
        std::floor(std::pow(q, static_cast<double>(j)) * static_cast<double>(n)));
    if (mj < 2) break;
    if (!candidates.empty() && mj == candidates.back()) continue;
    candidates.push_back(mj);
  }

  if (candidates.size() < 2) {
    SelectorResult result = mob_poly(pool);
    result.method = "mob_adaptive";
    result.meta.adaptive_fallback = true;
    return result;
  }

  // Score each scale by its l1 distance to the previous (larger) scale,
  // starting from m_0 = n; ranking needs one sort shared by all scales.
  const RankedPool r = rank_pool(pool);
  std::vector<double> prev = closed_form_masses(r, n);
  std::vector<std::pair<int, double>> distances;
  distances.reserve(candidates.size());
  std::size_t best_m = candidates.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t m : candidates) {
    std::vector<double> cur = closed_form_masses(r, m);
    double d = 0.0;
    for (std::size_t s = 0; s < cur.size(); ++s) d += std::fabs(cur[s] - prev[s]);
    distances.emplace_back(static_cast<int>(m), d);
    if (d < best_d) {  // strict: ties keep the earlier (larger) m
      best_d = d;
      best_m = m;
    }
    prev = std::move(cur);
  }

  SelectorResult result = mob_fixed(pool, best_m);
  result.method = "mob_adaptive";
  result.meta.candidate_distances = std::move(distances);
  return result;
}

SelectorResult oracle_mob(const SamplePool& large_pool, std::size_t n) {
  if (n == 0) throw DataError("budget must be positive");
  if (n > large_pool.size()) {
    std::cerr << "warning: oracle budget " << n << " exceeds pool size "
              << large_pool.size() << " for question '"
              << large_pool.question_id() << "'\n";
  }
  SelectorResult result = mob_fixed(large_pool, n);
  result.method = "oracle_mob";
  return result;
}

}  // namespace mob
