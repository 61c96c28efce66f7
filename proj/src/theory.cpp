#include "mob/theory.hpp"

#include <cmath>
#include <string>

#include "mob/errors.hpp"

namespace mob {

double asymptotic_bon_mass(double pi_ref_z, const TailRegime& regime) {
  if (!(pi_ref_z > 0.0 && pi_ref_z < 1.0)) {
    throw ConfigError("reference mass must lie in (0,1), got " +
                      std::to_string(pi_ref_z));
  }
  switch (regime.kind) {
    case TailRegime::Kind::IncorrectDominates:
      return 0.0;
    case TailRegime::Kind::CorrectDominates:
      return 1.0;
    case TailRegime::Kind::TailEquivalent:
      break;
  }
  const double c = regime.c;
  if (!(c >= 0.0)) throw ConfigError("tail ratio must be >= 0");
  if (std::isinf(c)) return 1.0;
  return c * pi_ref_z / (1.0 + (c - 1.0) * pi_ref_z);
}

double synthetic_bon_limit(double p, double beta) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ConfigError("base success probability must lie in (0,1)");
  }
  if (!(beta > 0.0)) throw ConfigError("noise scale must be positive");
  // e^{1/beta} p / (1 - p + e^{1/beta} p), scaled by e^{-1/beta} so the
  // perfect-reward limit beta -> 0 evaluates to 1 instead of inf/inf.
  return p / ((1.0 - p) * std::exp(-1.0 / beta) + p);
}

int synthetic_mob_limit(double p, double beta) {
  return synthetic_bon_limit(p, beta) > 0.5 ? 1 : 0;
}

TailRegime tail_ratio_for_exponential(double beta) {
  if (!(beta > 0.0)) throw ConfigError("noise scale must be positive");
  return TailRegime::tail_equivalent(std::exp(1.0 / beta));
}

}  // namespace mob
