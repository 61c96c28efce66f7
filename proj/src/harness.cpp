#include "mob/harness.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <utility>

#include "mob/errors.hpp"
#include "mob/synth.hpp"
#include "mob/theory.hpp"

namespace mob {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string comment_line(const std::string& canonical_config, std::uint64_t seed) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "# config=%016llx seed=%llu\n",
                static_cast<unsigned long long>(fnv1a(canonical_config)),
                static_cast<unsigned long long>(seed));
  return buf;
}

struct CsvFile {
  std::string name;
  std::string content;
};

// Writes every file or none: partially written outputs are removed before
// the error propagates.
CommandOutputs write_outputs(const std::string& dir, const std::vector<CsvFile>& files) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output dir '" + dir + "': " + ec.message());

  CommandOutputs outputs;
  for (const auto& file : files) {
    const std::string path = (fs::path(dir) / file.name).string();
    std::ofstream out(path, std::ios::binary);
    if (out) out << file.content;
    if (!out) {
      for (const auto& written : outputs.files_written) fs::remove(written, ec);
      fs::remove(path, ec);
      throw IoError("failed writing '" + path + "'");
    }
    outputs.files_written.push_back(path);
  }
  return outputs;
}

std::string dataset_name(const ExperimentConfig& cfg) {
  if (cfg.synth.has_value()) return "synth";
  return std::filesystem::path(cfg.input_path).stem().string();
}

std::vector<SamplePool> load_pools(const std::string& input_path,
                                   const std::optional<SynthDataset>& synth,
                                   std::uint64_t seed) {
  if (synth.has_value()) {
    if (!input_path.empty()) {
      throw ConfigError("--input and --synth are mutually exclusive");
    }
    const Rng base(seed);
    std::vector<SamplePool> pools;
    pools.reserve(synth->questions);
    for (std::size_t qi = 0; qi < synth->questions; ++qi) {
      const std::uint64_t qseed = base.fork(qi).seed();
      SamplePool generated = generate_pool(
          SyntheticConfig{synth->p, synth->beta, synth->pool_size, qseed}, Rng(qseed));
      char qid[32];
      std::snprintf(qid, sizeof(qid), "synth-%04zu", qi);
      pools.emplace_back(qid, generated.samples());
    }
    return pools;
  }
  if (input_path.empty()) throw ConfigError("either --input or --synth is required");
  return ingest_jsonl(input_path);
}

std::string canonical_run_config(const ExperimentConfig& cfg) {
  std::string s = "run;input=" + cfg.input_path;
  if (cfg.synth) {
    s += ";synth=p:" + fmt(cfg.synth->p) + ",beta:" + fmt(cfg.synth->beta) +
         ",questions:" + std::to_string(cfg.synth->questions) +
         ",pool_size:" + std::to_string(cfg.synth->pool_size);
  }
  s += ";methods=";
  for (const auto& m : cfg.methods) s += m.tag() + ",";
  s += ";budgets=";
  for (auto b : cfg.budgets) s += std::to_string(b) + ",";
  s += ";seed=" + std::to_string(cfg.seed);
  if (cfg.group_edges) {
    s += ";rows=";
    for (double e : cfg.group_edges->first) s += fmt(e) + ",";
    s += ";cols=";
    for (double e : cfg.group_edges->second) s += fmt(e) + ",";
  }
  return s;
}

}  // namespace

RunTable build_run_table(const ExperimentConfig& cfg) {
  if (cfg.methods.empty()) throw ConfigError("at least one method is required");
  if (cfg.budgets.empty()) throw ConfigError("at least one budget is required");
  for (std::size_t n : cfg.budgets) {
    if (n == 0) throw ConfigError("budgets must be positive");
    for (const auto& m : cfg.methods) {
      if (m.kind == MethodSpec::Kind::BoNSC && m.m > n) {
        throw ConfigError("bon_sc block size " + std::to_string(m.m) +
                          " exceeds budget " + std::to_string(n));
      }
    }
  }

  RunTable table;
  table.pools = load_pools(cfg.input_path, cfg.synth, cfg.seed);
  table.records_per_budget.resize(cfg.budgets.size());

  for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi) {
    const std::size_t budget = cfg.budgets[bi];
    std::vector<std::vector<RunRecord>> per_question(table.pools.size());
    std::vector<std::size_t> skipped;
    std::exception_ptr failure;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long qi = 0; qi < static_cast<long long>(table.pools.size()); ++qi) {
      const SamplePool& pool = table.pools[static_cast<std::size_t>(qi)];
      if (budget > pool.size()) continue;  // collected below, in order
      try {
        const std::vector<SamplePool> runs = slice_runs(pool, budget);
        auto& records = per_question[static_cast<std::size_t>(qi)];
        records.reserve(cfg.methods.size() * runs.size());
        for (const auto& method : cfg.methods) {
          for (std::size_t r = 0; r < runs.size(); ++r) {
            const SelectorResult result =
                apply_method(method, runs[r], &pool, budget);
            records.push_back(RunRecord{pool.question_id(), static_cast<int>(r),
                                        method.tag(),
                                        answer_is_correct(runs[r], result.answer)});
          }
        }
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    auto& records = table.records_per_budget[bi];
    for (std::size_t qi = 0; qi < table.pools.size(); ++qi) {
      if (cfg.budgets[bi] > table.pools[qi].size()) {
        skipped.push_back(qi);
        continue;
      }
      records.insert(records.end(), per_question[qi].begin(), per_question[qi].end());
    }
    for (std::size_t qi : skipped) {
      std::cerr << "warning: skipping question '" << table.pools[qi].question_id()
                << "' at budget " << budget << " (pool has only "
                << table.pools[qi].size() << " samples)\n";
    }
  }
  return table;
}

CommandOutputs cmd_run(const ExperimentConfig& cfg) {
  if (cfg.output_dir.empty()) throw ConfigError("output dir is required");
  const RunTable table = build_run_table(cfg);
  const std::string comment = comment_line(canonical_run_config(cfg), cfg.seed);
  const std::string dataset = dataset_name(cfg);

  std::vector<CsvFile> files;

  // Per-(budget, method) accuracy. An oracle answer is constant across a
  // question's runs, but still contributes one record per run so every
  // method aggregates over the same cells.
  std::string acc = comment + "method,dataset,n,accuracy,stderr,runs\n";
  for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi) {
    for (const auto& method : cfg.methods) {
      const auto& records = table.records_per_budget[bi];
      const std::string tag = method.tag();
      const bool any =
          std::any_of(records.begin(), records.end(),
                      [&tag](const RunRecord& r) { return r.method == tag; });
      if (!any) {
        std::cerr << "warning: no runs for method " << tag << " at budget "
                  << cfg.budgets[bi] << "\n";
        continue;
      }
      const AccuracySummary summary = accuracy_with_se(records, tag);
      acc += tag + "," + dataset + "," + std::to_string(cfg.budgets[bi]) + "," +
             fmt(summary.mean) + "," + fmt(summary.se) + "," +
             std::to_string(summary.count) + "\n";
    }
  }
  files.push_back(CsvFile{"accuracy.csv", std::move(acc)});

  // Pairwise one-sided t-tests per budget, methods paired on identical
  // (question, run) cells.
  for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi) {
    const auto& records = table.records_per_budget[bi];
    std::string sig = comment + "method_a,method_b,t,df,p_value\n";
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
      for (std::size_t j = i + 1; j < cfg.methods.size(); ++j) {
        const std::string tag_a = cfg.methods[i].tag();
        const std::string tag_b = cfg.methods[j].tag();
        std::vector<int> a, b;
        for (const auto& rec : records) {
          if (rec.method == tag_a) a.push_back(rec.correct ? 1 : 0);
          if (rec.method == tag_b) b.push_back(rec.correct ? 1 : 0);
        }
        if (a.size() < 2 || a.size() != b.size()) {
          std::cerr << "warning: skipping t-test " << tag_a << " vs " << tag_b
                    << " at budget " << cfg.budgets[bi] << " (too few runs)\n";
          continue;
        }
        const PairedTTest test = paired_t_test_one_sided(a, b);
        sig += tag_a + "," + tag_b + "," + fmt(test.t) + "," +
               std::to_string(test.df) + "," + fmt(test.p_value) + "\n";
      }
    }
    files.push_back(
        CsvFile{"significance_" + std::to_string(cfg.budgets[bi]) + ".csv",
                std::move(sig)});
  }

  if (cfg.group_edges.has_value()) {
    for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi) {
      const auto cells =
          group_accuracy(table.pools, table.records_per_budget[bi],
                         cfg.group_edges->first, cfg.group_edges->second);
      std::string grid = comment + "row_lo,row_hi,col_lo,col_hi,count,method,accuracy\n";
      for (const auto& cell : cells) {
        for (const auto& [method, accuracy] : cell.method_accuracy) {
          grid += fmt(cell.row_lo) + "," + fmt(cell.row_hi) + "," + fmt(cell.col_lo) +
                  "," + fmt(cell.col_hi) + "," + std::to_string(cell.question_count) +
                  "," + method + "," + fmt(accuracy) + "\n";
        }
      }
      files.push_back(CsvFile{"groups_" + std::to_string(cfg.budgets[bi]) + ".csv",
                              std::move(grid)});
    }
  }

  return write_outputs(cfg.output_dir, files);
}

CommandOutputs cmd_sweep_synth(const SweepConfig& cfg) {
  if (cfg.output_dir.empty()) throw ConfigError("output dir is required");
  if (cfg.p_values.empty() || cfg.beta_values.empty()) {
    throw ConfigError("sweep grid must be non-empty");
  }
  if (cfg.methods.empty() || cfg.budgets.empty()) {
    throw ConfigError("sweep needs at least one method and budget");
  }
  for (double p : cfg.p_values) {
    if (!(p > 0.0 && p < 1.0)) {
      throw ConfigError("sweep p values must lie in (0,1)");
    }
  }
  for (double beta : cfg.beta_values) {
    if (!(beta > 0.0)) throw ConfigError("sweep beta values must be positive");
  }

  std::string canon = "sweep;seed=" + std::to_string(cfg.seed) +
                      ";trials=" + std::to_string(cfg.trials) + ";p=";
  for (double p : cfg.p_values) canon += fmt(p) + ",";
  canon += ";beta=";
  for (double b : cfg.beta_values) canon += fmt(b) + ",";
  canon += ";budgets=";
  for (auto n : cfg.budgets) canon += std::to_string(n) + ",";
  canon += ";methods=";
  for (const auto& m : cfg.methods) canon += m.tag() + ",";

  std::string csv = comment_line(canon, cfg.seed) +
                    "p,beta,n,method,success,stderr,trials,theory_bon,theory_mob\n";
  const Rng base(cfg.seed);
  std::size_t cell_index = 0;
  for (double p : cfg.p_values) {
    for (double beta : cfg.beta_values) {
      // One seed per (p, beta) cell: methods and budgets see the same pools.
      const std::uint64_t cell_seed = base.fork(cell_index++).seed();
      const double theory_bon = synthetic_bon_limit(p, beta);
      const int theory_mob = synthetic_mob_limit(p, beta);
      for (std::size_t n : cfg.budgets) {
        for (const auto& method : cfg.methods) {
          const std::vector<SyntheticConfig> grid{
              SyntheticConfig{p, beta, n, cell_seed}};
          const std::vector<SweepRow> rows =
              sweep_success(grid, n, cfg.trials, method);
          const SweepRow& row = rows.front();
          csv += fmt(row.p) + "," + fmt(row.beta) + "," + std::to_string(row.n) +
                 "," + row.method + "," + fmt(row.success) + "," + fmt(row.stderr_) +
                 "," + std::to_string(row.trials) + "," + fmt(theory_bon) + "," +
                 std::to_string(theory_mob) + "\n";
        }
      }
    }
  }
  return write_outputs(cfg.output_dir, {CsvFile{"sweep.csv", std::move(csv)}});
}

CommandOutputs cmd_curve(const CurveConfig& cfg) {
  if (cfg.output_dir.empty()) throw ConfigError("output dir is required");
  if (cfg.estimators.empty()) throw ConfigError("at least one estimator is required");
  if (cfg.budgets.empty()) throw ConfigError("at least one budget is required");

  SamplePool pool = [&] {
    if (cfg.synth.has_value()) {
      if (!cfg.input_path.empty()) {
        throw ConfigError("--input and --synth are mutually exclusive");
      }
      const std::uint64_t pool_seed = Rng(cfg.seed).fork(0).seed();
      return generate_pool(
          SyntheticConfig{cfg.synth->p, cfg.synth->beta, cfg.synth->pool_size,
                          pool_seed},
          Rng(pool_seed));
    }
    if (cfg.input_path.empty()) throw ConfigError("either --input or --synth is required");
    std::vector<SamplePool> pools = ingest_jsonl(cfg.input_path);
    if (pools.size() != 1) {
      std::cerr << "warning: using first of " << pools.size() << " pools in '"
                << cfg.input_path << "'\n";
    }
    return std::move(pools.front());
  }();

  std::string canon = "curve;input=" + cfg.input_path + ";m=" + std::to_string(cfg.m) +
                      ";trials=" + std::to_string(cfg.trials) +
                      ";seed=" + std::to_string(cfg.seed) + ";budgets=";
  for (auto n : cfg.budgets) canon += std::to_string(n) + ",";

  std::string csv = comment_line(canon, cfg.seed) + "estimator,m,n,l1_error,stderr,trials\n";
  for (PiEstimator est : cfg.estimators) {
    // The same base Rng for every estimator: trial t draws the same
    // subsample under each, so curves differ only by the estimator.
    const std::vector<CurvePoint> points =
        l1_error_curve(pool, cfg.m, cfg.budgets, cfg.trials, Rng(cfg.seed), est);
    const char* name = est == PiEstimator::ClosedForm ? "closed_form" : "bon_sc";
    for (const auto& pt : points) {
      csv += std::string(name) + "," + std::to_string(cfg.m) + "," +
             std::to_string(pt.n) + "," + fmt(pt.mean_l1) + "," + fmt(pt.se) + "," +
             std::to_string(pt.trials) + "\n";
    }
  }
  return write_outputs(cfg.output_dir, {CsvFile{"curve.csv", std::move(csv)}});
}

}  // namespace mob
