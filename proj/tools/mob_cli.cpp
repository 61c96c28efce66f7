#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mob/errors.hpp"
#include "mob/harness.hpp"

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = s.find(sep, start);
    if (end == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw mob::ConfigError("invalid " + what + " '" + s + "'");
  }
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size() || v <= 0) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw mob::ConfigError("invalid " + what + " '" + s + "'");
  }
}

std::vector<std::size_t> parse_size_list(const std::string& s, const std::string& what) {
  std::vector<std::size_t> values;
  for (const auto& part : split(s, ',')) values.push_back(parse_size(part, what));
  return values;
}

std::vector<mob::MethodSpec> parse_methods(const std::string& s, double default_q) {
  std::vector<mob::MethodSpec> methods;
  for (auto tag : split(s, ',')) {
    if (tag == "mob_adaptive") {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "mob_adaptive:%.17g", default_q);
      tag = buf;
    }
    methods.push_back(mob::MethodSpec::parse(tag));
  }
  if (methods.empty()) throw mob::ConfigError("no methods given");
  return methods;
}

// Synth spec: key=value pairs separated by commas; list-valued keys use ':'
// between entries, e.g. "p=0.2:0.4,beta=1:2,questions=50,pool_size=512".
struct SynthSpec {
  std::vector<double> p{};
  std::vector<double> beta{};
  std::size_t questions = 100;
  std::size_t pool_size = 512;
};

SynthSpec parse_synth(const std::string& s) {
  SynthSpec spec;
  for (const auto& item : split(s, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw mob::ConfigError("synth spec items must be key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "p" || key == "beta") {
      auto& dst = key == "p" ? spec.p : spec.beta;
      for (const auto& v : split(value, ':')) dst.push_back(parse_double(v, key));
    } else if (key == "questions") {
      spec.questions = parse_size(value, key);
    } else if (key == "pool_size") {
      spec.pool_size = parse_size(value, key);
    } else {
      throw mob::ConfigError("unknown synth key '" + key + "'");
    }
  }
  if (spec.p.empty() || spec.beta.empty()) {
    throw mob::ConfigError("synth spec requires p=... and beta=...");
  }
  return spec;
}

std::pair<std::vector<double>, std::vector<double>> parse_group_edges(
    const std::string& s) {
  if (s == "default") {
    return {{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}, {0.25, 0.4375, 0.625, 0.8125, 1.0}};
  }
  const auto halves = split(s, ';');
  if (halves.size() != 2) {
    throw mob::ConfigError(
        "group edges must be '<base-success edges>;<reward-accuracy edges>'");
  }
  std::pair<std::vector<double>, std::vector<double>> edges;
  for (const auto& v : split(halves[0], ',')) {
    edges.first.push_back(parse_double(v, "row edge"));
  }
  for (const auto& v : split(halves[1], ',')) {
    edges.second.push_back(parse_double(v, "col edge"));
  }
  return edges;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Answer selection over (answer, reward) sample pools: best-of-n, "
               "self-consistency, weighted best-of-n, and bootstrap mode selection, "
               "with a synthetic testbed and an evaluation harness"};
  app.require_subcommand(1);

  std::string input, synth, methods_arg, budgets_arg, out_dir, group_edges_arg;
  std::string estimators_arg = "closed_form,bon_sc";
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  std::size_t m = 8;
  double q = 0.75;

  auto* run = app.add_subcommand(
      "run", "Slice pools into disjoint runs per budget and score each method");
  run->add_option("--input", input, "JSONL pool file");
  run->add_option("--synth", synth, "synthetic dataset, e.g. p=0.3,beta=1,questions=100,pool_size=512");
  run->add_option("--methods", methods_arg, "comma-separated method tags")->required();
  run->add_option("--budgets", budgets_arg, "comma-separated sample budgets")->required();
  run->add_option("--seed", seed, "RNG seed");
  run->add_option("--q", q, "default shrink factor for mob_adaptive");
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--group-edges", group_edges_arg,
                  "'default' or '<base-success edges>;<reward-accuracy edges>'");

  auto* sweep = app.add_subcommand(
      "sweep-synth", "Empirical vs theoretical success rates over a (p, beta) grid");
  sweep->add_option("--synth", synth, "grid, e.g. p=0.2:0.4,beta=0.5:1:2")->required();
  sweep->add_option("--methods", methods_arg, "comma-separated method tags")->required();
  sweep->add_option("--budgets", budgets_arg, "comma-separated sample budgets")->required();
  sweep->add_option("--trials", trials, "pools generated per grid cell");
  sweep->add_option("--seed", seed, "RNG seed");
  sweep->add_option("--q", q, "default shrink factor for mob_adaptive");
  sweep->add_option("--out", out_dir, "output directory")->required();

  auto* curve = app.add_subcommand(
      "curve", "Approximation error of the best-of-m distribution vs budget");
  curve->add_option("--input", input, "JSONL file holding one large pool");
  curve->add_option("--synth", synth, "synthetic pool, e.g. p=0.3,beta=1,pool_size=4096");
  curve->add_option("--m", m, "subsample size whose distribution is estimated");
  curve->add_option("--budgets", budgets_arg, "comma-separated sample budgets")->required();
  curve->add_option("--trials", trials, "subsample trials per budget");
  curve->add_option("--estimators", estimators_arg, "closed_form and/or bon_sc");
  curve->add_option("--seed", seed, "RNG seed");
  curve->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    std::optional<SynthSpec> synth_spec;
    if (!synth.empty()) synth_spec = parse_synth(synth);

    if (run->parsed()) {
      mob::ExperimentConfig cfg;
      cfg.input_path = input;
      if (synth_spec) {
        if (synth_spec->p.size() != 1 || synth_spec->beta.size() != 1) {
          throw mob::ConfigError("run takes a single (p, beta) cell");
        }
        cfg.synth = mob::SynthDataset{synth_spec->p[0], synth_spec->beta[0],
                                      synth_spec->questions, synth_spec->pool_size};
      }
      cfg.methods = parse_methods(methods_arg, q);
      cfg.budgets = parse_size_list(budgets_arg, "budget");
      cfg.seed = seed;
      cfg.output_dir = out_dir;
      if (!group_edges_arg.empty()) cfg.group_edges = parse_group_edges(group_edges_arg);
      for (const auto& path : mob::cmd_run(cfg).files_written) {
        std::cout << path << "\n";
      }
    } else if (sweep->parsed()) {
      mob::SweepConfig cfg;
      cfg.p_values = synth_spec->p;
      cfg.beta_values = synth_spec->beta;
      cfg.budgets = parse_size_list(budgets_arg, "budget");
      cfg.trials = trials;
      cfg.methods = parse_methods(methods_arg, q);
      cfg.seed = seed;
      cfg.output_dir = out_dir;
      for (const auto& path : mob::cmd_sweep_synth(cfg).files_written) {
        std::cout << path << "\n";
      }
    } else {
      mob::CurveConfig cfg;
      cfg.input_path = input;
      if (synth_spec) {
        if (synth_spec->p.size() != 1 || synth_spec->beta.size() != 1) {
          throw mob::ConfigError("curve takes a single (p, beta) cell");
        }
        cfg.synth = mob::SynthDataset{synth_spec->p[0], synth_spec->beta[0], 1,
                                      synth_spec->pool_size};
      }
      cfg.m = m;
      cfg.budgets = parse_size_list(budgets_arg, "budget");
      cfg.trials = trials;
      cfg.estimators.clear();
      for (const auto& name : split(estimators_arg, ',')) {
        if (name == "closed_form") {
          cfg.estimators.push_back(mob::PiEstimator::ClosedForm);
        } else if (name == "bon_sc") {
          cfg.estimators.push_back(mob::PiEstimator::BonSc);
        } else {
          throw mob::ConfigError("unknown estimator '" + name + "'");
        }
      }
      cfg.seed = seed;
      cfg.output_dir = out_dir;
      for (const auto& path : mob::cmd_curve(cfg).files_written) {
        std::cout << path << "\n";
      }
    }
  } catch (const mob::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const mob::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const mob::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
