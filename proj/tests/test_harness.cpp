#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mob/errors.hpp"
#include "mob/harness.hpp"
#include "mob/pool.hpp"
#include "test_util.hpp"

using namespace mob;
namespace fs = std::filesystem;

namespace {

std::string fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::string write_fixture_jsonl(const std::string& name, std::size_t questions,
                                std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SamplePool> pools;
  for (std::size_t q = 0; q < questions; ++q) {
    pools.push_back(
        testutil::random_pool(rng, samples, 4, false, "q" + std::to_string(q)));
  }
  const auto path = (fs::temp_directory_path() / name).string();
  write_jsonl(path, pools);
  return path;
}

}  // namespace

TEST_CASE("method tags parse and round-trip") {
  CHECK(MethodSpec::parse("bon").kind == MethodSpec::Kind::BoN);
  CHECK(MethodSpec::parse("sc").tag() == "sc");
  CHECK(MethodSpec::parse("wbon").kind == MethodSpec::Kind::WBoN);
  CHECK(MethodSpec::parse("bon_sc:8").m == 8);
  CHECK(MethodSpec::parse("mob:16").tag() == "mob:16");
  CHECK(MethodSpec::parse("mob_poly").kind == MethodSpec::Kind::MobPoly);
  CHECK(MethodSpec::parse("mob_adaptive").q == 0.75);
  CHECK(MethodSpec::parse("mob_adaptive:0.6").q == doctest::Approx(0.6));
  CHECK(MethodSpec::parse("oracle_mob").kind == MethodSpec::Kind::OracleMoB);

  CHECK_THROWS_AS(MethodSpec::parse("nope"), ConfigError);
  CHECK_THROWS_AS(MethodSpec::parse("mob"), ConfigError);        // needs :m
  CHECK_THROWS_AS(MethodSpec::parse("bon_sc"), ConfigError);     // needs :m
  CHECK_THROWS_AS(MethodSpec::parse("bon_sc:0"), ConfigError);
  CHECK_THROWS_AS(MethodSpec::parse("mob_adaptive:1.5"), ConfigError);
  CHECK_THROWS_AS(MethodSpec::parse("bon:3"), ConfigError);
}

TEST_CASE("run table slices each question into disjoint runs") {
  const auto path = write_fixture_jsonl("harness_slice.jsonl", 1, 4, 99);
  ExperimentConfig cfg;
  cfg.input_path = path;
  cfg.methods = {MethodSpec::parse("sc")};
  cfg.budgets = {2};
  cfg.seed = 1;

  const RunTable table = build_run_table(cfg);
  REQUIRE(table.records_per_budget.size() == 1);
  CHECK(table.records_per_budget[0].size() == 2);  // floor(4/2) runs
  CHECK(table.records_per_budget[0][0].run_index == 0);
  CHECK(table.records_per_budget[0][1].run_index == 1);
}

TEST_CASE("run command writes accuracy, significance, and group files") {
  const auto path = write_fixture_jsonl("harness_run.jsonl", 6, 64, 123);
  ExperimentConfig cfg;
  cfg.input_path = path;
  cfg.methods = {MethodSpec::parse("bon"), MethodSpec::parse("mob_adaptive")};
  cfg.budgets = {16, 32};
  cfg.seed = 7;
  cfg.output_dir = fresh_dir("mob_run_out");
  cfg.group_edges = {{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0},
                     {0.25, 0.4375, 0.625, 0.8125, 1.0}};

  const auto outputs = cmd_run(cfg);
  REQUIRE(outputs.files_written.size() == 5);  // accuracy + 2 significance + 2 groups

  const auto acc = lines_of(read_file(outputs.files_written[0]));
  REQUIRE(acc.size() >= 2);
  CHECK(acc[0].rfind("# config=", 0) == 0);
  CHECK(acc[1] == "method,dataset,n,accuracy,stderr,runs");
  CHECK(acc.size() == 2 + 2 * 2);  // one row per (budget, method)
  CHECK(acc[2].rfind("bon,harness_run,16,", 0) == 0);

  // runs column: 6 questions * floor(64/16) runs
  {
    std::istringstream row(acc[2]);
    std::string field;
    for (int i = 0; i < 6; ++i) std::getline(row, field, ',');
    CHECK(field == "24");
  }

  const auto sig = lines_of(read_file(outputs.files_written[1]));
  CHECK(sig[1] == "method_a,method_b,t,df,p_value");
  REQUIRE(sig.size() == 3);  // single method pair
  CHECK(sig[2].rfind("bon,mob_adaptive:0.75,", 0) == 0);

  const auto grid = lines_of(read_file(outputs.files_written[3]));
  CHECK(grid[1] == "row_lo,row_hi,col_lo,col_hi,count,method,accuracy");
}

TEST_CASE("run command is deterministic byte for byte") {
  ExperimentConfig cfg;
  cfg.synth = SynthDataset{0.4, 1.0, 8, 64};
  cfg.methods = {MethodSpec::parse("bon"), MethodSpec::parse("sc"),
                 MethodSpec::parse("mob_poly")};
  cfg.budgets = {8, 16};
  cfg.seed = 31;

  cfg.output_dir = fresh_dir("mob_det_a");
  const auto a = cmd_run(cfg);
  cfg.output_dir = fresh_dir("mob_det_b");
  const auto b = cmd_run(cfg);
  REQUIRE(a.files_written.size() == b.files_written.size());
  for (std::size_t i = 0; i < a.files_written.size(); ++i) {
    CHECK(read_file(a.files_written[i]) == read_file(b.files_written[i]));
  }
}

TEST_CASE("budgets above the pool size skip the question") {
  const auto path = write_fixture_jsonl("harness_skip.jsonl", 2, 8, 5);
  ExperimentConfig cfg;
  cfg.input_path = path;
  cfg.methods = {MethodSpec::parse("sc")};
  cfg.budgets = {16};  // the pools only hold 8 samples
  cfg.seed = 3;
  cfg.output_dir = fresh_dir("mob_skip_out");

  const auto outputs = cmd_run(cfg);
  const auto acc = lines_of(read_file(outputs.files_written[0]));
  CHECK(acc.size() == 2);  // header only: every question skipped, no rows
}

TEST_CASE("run config validation") {
  ExperimentConfig cfg;
  cfg.methods = {MethodSpec::parse("sc")};
  cfg.budgets = {4};
  cfg.output_dir = "unused";
  CHECK_THROWS_AS(cmd_run(cfg), ConfigError);  // no input at all

  cfg.synth = SynthDataset{0.4, 1.0, 2, 16};
  cfg.input_path = "also_set.jsonl";
  CHECK_THROWS_AS(cmd_run(cfg), ConfigError);  // both inputs

  cfg.input_path.clear();
  cfg.budgets = {};
  CHECK_THROWS_AS(cmd_run(cfg), ConfigError);

  cfg.budgets = {4};
  cfg.methods = {MethodSpec::parse("bon_sc:8")};
  CHECK_THROWS_AS(cmd_run(cfg), ConfigError);  // block size above budget
}

TEST_CASE("mode selection improves with budget on synthetic questions") {
  ExperimentConfig cfg;
  cfg.synth = SynthDataset{0.3, 1.0, 80, 1024};
  cfg.methods = {MethodSpec::parse("mob_adaptive")};
  cfg.budgets = {64, 1024};
  cfg.seed = 4096;

  const RunTable table = build_run_table(cfg);
  const auto low = accuracy_with_se(table.records_per_budget[0], "mob_adaptive:0.75");
  const auto high = accuracy_with_se(table.records_per_budget[1], "mob_adaptive:0.75");
  const double slack = 2.0 * std::sqrt(low.se * low.se + high.se * high.se);
  CHECK(high.mean + slack >= low.mean);
}

TEST_CASE("synthetic sweep CSV has the grid shape and theory columns") {
  SweepConfig cfg;
  cfg.p_values = {0.3, 0.6};
  cfg.beta_values = {0.5, 1.0, 2.0};
  cfg.budgets = {32};
  cfg.trials = 50;
  cfg.methods = {MethodSpec::parse("sc"), MethodSpec::parse("bon")};
  cfg.seed = 11;
  cfg.output_dir = fresh_dir("mob_sweep_out");

  const auto outputs = cmd_sweep_synth(cfg);
  REQUIRE(outputs.files_written.size() == 1);
  const auto rows = lines_of(read_file(outputs.files_written[0]));
  CHECK(rows[0].rfind("# config=", 0) == 0);
  CHECK(rows[1] == "p,beta,n,method,success,stderr,trials,theory_bon,theory_mob");
  CHECK(rows.size() == 2 + 2 * 3 * 1 * 2);  // |p| * |beta| * |n| * |methods|

  // theory_bon decreases along the beta axis at fixed p
  auto theory_bon = [&rows](std::size_t row) {
    std::istringstream ss(rows[row]);
    std::string field;
    for (int i = 0; i < 8; ++i) std::getline(ss, field, ',');
    return std::stod(field);
  };
  CHECK(theory_bon(2) > theory_bon(4));
  CHECK(theory_bon(4) > theory_bon(6));

  SUBCASE("sweep p must stay inside (0,1)") {
    cfg.p_values = {1.0};
    CHECK_THROWS_AS(cmd_sweep_synth(cfg), ConfigError);
  }
}

TEST_CASE("curve command emits one curve per estimator") {
  CurveConfig cfg;
  cfg.synth = SynthDataset{0.3, 1.0, 1, 512};
  cfg.m = 8;
  cfg.budgets = {16, 64};
  cfg.trials = 40;
  cfg.estimators = {PiEstimator::ClosedForm, PiEstimator::BonSc};
  cfg.seed = 17;
  cfg.output_dir = fresh_dir("mob_curve_out");

  const auto outputs = cmd_curve(cfg);
  const auto rows = lines_of(read_file(outputs.files_written[0]));
  CHECK(rows[1] == "estimator,m,n,l1_error,stderr,trials");
  REQUIRE(rows.size() == 2 + 2 * 2);
  CHECK(rows[2].rfind("closed_form,8,16,", 0) == 0);
  CHECK(rows[4].rfind("bon_sc,8,16,", 0) == 0);
}
