#include "mob/methods.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "mob/bootstrap.hpp"
#include "mob/errors.hpp"

namespace mob {

MethodSpec MethodSpec::parse(std::string_view tag) {
  std::string_view name = tag;
  std::string_view arg;
  if (auto colon = tag.find(':'); colon != std::string_view::npos) {
    name = tag.substr(0, colon);
    arg = tag.substr(colon + 1);
  }

  auto parse_m = [&](std::string_view s) -> std::size_t {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || value == 0) {
      throw ConfigError("invalid subsample size in method tag '" + std::string(tag) + "'");
    }
    return value;
  };

  MethodSpec spec;
  if (name == "bon") {
    spec.kind = Kind::BoN;
  } else if (name == "sc") {
    spec.kind = Kind::SC;
  } else if (name == "wbon") {
    spec.kind = Kind::WBoN;
  } else if (name == "bon_sc") {
    spec.kind = Kind::BoNSC;
    if (arg.empty()) throw ConfigError("bon_sc requires a block size, e.g. bon_sc:8");
    spec.m = parse_m(arg);
  } else if (name == "mob") {
    spec.kind = Kind::MobFixed;
    if (arg.empty()) throw ConfigError("mob requires a subsample size, e.g. mob:16");
    spec.m = parse_m(arg);
  } else if (name == "mob_poly") {
    spec.kind = Kind::MobPoly;
  } else if (name == "mob_adaptive") {
    spec.kind = Kind::MobAdaptive;
    if (!arg.empty()) {
      char* end = nullptr;
      const std::string copy(arg);
      spec.q = std::strtod(copy.c_str(), &end);
      if (end != copy.c_str() + copy.size() || !(spec.q > 0.0 && spec.q < 1.0)) {
        throw ConfigError("adaptive shrink factor must lie in (0,1) in tag '" +
                          std::string(tag) + "'");
      }
    }
  } else if (name == "oracle_mob") {
    spec.kind = Kind::OracleMoB;
  } else {
    throw ConfigError("unknown method tag '" + std::string(tag) + "'");
  }
  if (spec.kind != Kind::BoNSC && spec.kind != Kind::MobFixed &&
      spec.kind != Kind::MobAdaptive && !arg.empty()) {
    throw ConfigError("method '" + std::string(name) + "' takes no parameter");
  }
  return spec;
}

std::string MethodSpec::tag() const {
  switch (kind) {
    case Kind::BoN:
      return "bon";
    case Kind::SC:
      return "sc";
    case Kind::WBoN:
      return "wbon";
    case Kind::BoNSC:
      return "bon_sc:" + std::to_string(m);
    case Kind::MobFixed:
      return "mob:" + std::to_string(m);
    case Kind::MobPoly:
      return "mob_poly";
    case Kind::MobAdaptive: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", q);
      return std::string("mob_adaptive:") + buf;
    }
    case Kind::OracleMoB:
      return "oracle_mob";
  }
  return "?";
}

SelectorResult apply_method(const MethodSpec& spec, const SamplePool& run_pool,
                            const SamplePool* full_pool, std::size_t budget) {
  switch (spec.kind) {
    case MethodSpec::Kind::BoN:
      return best_of_n(run_pool);
    case MethodSpec::Kind::SC:
      return self_consistency(run_pool);
    case MethodSpec::Kind::WBoN:
      return weighted_best_of_n(run_pool);
    case MethodSpec::Kind::BoNSC:
      return bon_plus_sc(run_pool, spec.m);
    case MethodSpec::Kind::MobFixed:
      return mob_fixed(run_pool, spec.m);
    case MethodSpec::Kind::MobPoly:
      return mob_poly(run_pool);
    case MethodSpec::Kind::MobAdaptive:
      return mob_adaptive(run_pool, spec.q);
    case MethodSpec::Kind::OracleMoB:
      if (full_pool == nullptr) {
        throw ConfigError("oracle_mob requires the full pool");
      }
      return oracle_mob(*full_pool, budget);
  }
  throw ConfigError("unhandled method kind");
}

bool answer_is_correct(const SamplePool& pool, std::string_view answer) {
  for (const auto& s : pool.samples()) {
    if (s.answer == answer) return s.correct;
  }
  throw DataError("answer '" + std::string(answer) + "' not found in pool '" +
                  pool.question_id() + "'");
}

}  // namespace mob
