#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "mob/pool.hpp"
#include "mob/rng.hpp"
#include "mob/selectors.hpp"

namespace mob {

// Estimate of the best-of-m output distribution obtained by resampling m
// outputs with replacement from a pool of n. m may exceed n.
struct BootstrapEstimate {
  AnswerDistribution dist;
  std::size_t m = 0;
  std::size_t n = 0;
  enum class Method { ClosedForm, MonteCarlo } method = Method::ClosedForm;
  std::uint64_t resamples = 0;  // Monte Carlo only
};

// Exact distribution of the best-of-m answer over resampled subsets.
//
// Samples are sorted ascending by (reward, index descending) so that the
// subset winner under the FirstIndex tie policy is always the sample at the
// highest sorted position present in the subset. The sample at position k
// then wins with probability (k/n)^m - ((k-1)/n)^m, and per-answer masses
// are the sums over that answer's positions. O(n log n).
BootstrapEstimate closed_form_dist(const SamplePool& pool, std::size_t m);

// Monte-Carlo estimate: draws b index multisets of size m uniformly with
// replacement, applies the shared best-of rule to each, and returns winner
// frequencies. Deterministic given the Rng seed, independent of thread
// count. The serial variant is a plain reference loop kept for testing and
// benchmarking; both produce bit-identical tallies.
BootstrapEstimate monte_carlo_dist(const SamplePool& pool, std::size_t m,
                                   std::uint64_t b, Rng rng);
BootstrapEstimate monte_carlo_dist_serial(const SamplePool& pool, std::size_t m,
                                          std::uint64_t b, Rng rng);

// Mode of closed_form_dist(pool, m). Deterministic, no RNG.
SelectorResult mob_fixed(const SamplePool& pool, std::size_t m);

// mob_fixed with m = floor(sqrt(N)), minimum 1.
SelectorResult mob_poly(const SamplePool& pool);

// Adaptive subsample size: candidates m_j = floor(q^j * N) for j = 1, 2, ...
// down to m_j >= 2 (duplicates from flooring skipped), scored by the l1
// distance between the closed-form estimates at consecutive candidate
// scales; the argmin (ties toward the larger m) is used for mob_fixed.
// Falls back to mob_poly, flagged in meta, when fewer than two distinct
// candidates exist.
SelectorResult mob_adaptive(const SamplePool& pool, double q = 0.75);

// Mode of closed_form_dist(large_pool, n): the best-of-n output distribution
// estimated from a pool much larger than n.
SelectorResult oracle_mob(const SamplePool& large_pool, std::size_t n);

}  // namespace mob
