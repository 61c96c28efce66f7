// Timing comparison of the OpenMP kernels against their serial reference
// implementations. Run after building:  ./mob_bench [resamples] [trials]
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mob/bootstrap.hpp"
#include "mob/stats.hpp"
#include "mob/synth.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx\n", name,
              serial_s, parallel_s, serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t resamples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2'000'000;
  const std::size_t trials = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 512;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  const mob::SyntheticConfig cfg{0.3, 1.0, 256, 42};
  const mob::SamplePool pool = mob::generate_pool(cfg, mob::Rng(cfg.seed));

  {
    const auto t0 = Clock::now();
    const auto serial = mob::monte_carlo_dist_serial(pool, 16, resamples, mob::Rng(7));
    const double ts = seconds_since(t0);
    const auto t1 = Clock::now();
    const auto parallel = mob::monte_carlo_dist(pool, 16, resamples, mob::Rng(7));
    const double tp = seconds_since(t1);
    if (mob::l1_distance(serial.dist, parallel.dist) != 0.0) {
      std::printf("MISMATCH in monte_carlo_dist\n");
      return 1;
    }
    report("monte_carlo_dist", ts, tp);
  }

  {
    const std::vector<mob::SyntheticConfig> grid{{0.3, 1.0, 0, 11}, {0.6, 2.0, 0, 12}};
    const auto spec = mob::MethodSpec::parse("mob_adaptive:0.75");
    const auto t0 = Clock::now();
    const auto serial = mob::sweep_success_serial(grid, 1024, trials, spec);
    const double ts = seconds_since(t0);
    const auto t1 = Clock::now();
    const auto parallel = mob::sweep_success(grid, 1024, trials, spec);
    const double tp = seconds_since(t1);
    for (std::size_t i = 0; i < serial.size(); ++i) {
      if (serial[i].success != parallel[i].success) {
        std::printf("MISMATCH in sweep_success\n");
        return 1;
      }
    }
    report("sweep_success", ts, tp);
  }

  {
    const mob::SyntheticConfig big{0.3, 1.0, 4096, 5};
    const mob::SamplePool large = mob::generate_pool(big, mob::Rng(big.seed));
    const std::vector<std::size_t> budgets{32, 128, 512};
    const auto t0 = Clock::now();
    const auto serial = mob::l1_error_curve_serial(large, 8, budgets, trials,
                                                   mob::Rng(3), mob::PiEstimator::ClosedForm);
    const double ts = seconds_since(t0);
    const auto t1 = Clock::now();
    const auto parallel = mob::l1_error_curve(large, 8, budgets, trials, mob::Rng(3),
                                              mob::PiEstimator::ClosedForm);
    const double tp = seconds_since(t1);
    for (std::size_t i = 0; i < serial.size(); ++i) {
      if (serial[i].mean_l1 != parallel[i].mean_l1) {
        std::printf("MISMATCH in l1_error_curve\n");
        return 1;
      }
    }
    report("l1_error_curve", ts, tp);
  }

  return 0;
}
