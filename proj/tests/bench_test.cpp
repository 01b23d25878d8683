#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "olop/bench/config.hpp"
#include "olop/bench/experiment.hpp"
#include "olop/bench/records.hpp"
#include "olop/dot_export.hpp"
#include "olop/oracle.hpp"

namespace {

using namespace olop::bench;

RunRecord record(const std::string& env, const std::string& planner, std::uint64_t budget, double ret) {
  RunRecord r;
  r.env = env;
  r.planner = planner;
  r.budget = budget;
  r.ret = ret;
  return r;
}

std::string csv_of(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  write_records_csv(out, records);
  return out.str();
}

const char* kSmallConfig = R"json({
  "discount": 0.8,
  "runs_per_cell": 6,
  "master_seed": 5,
  "budgets": [20, 100],
  "planners": ["KL-OLOP", "OLOP", "OPD", "Random", "KL-OLOP(1)"],
  "environments": [
    {"name": "two_arm", "type": "two_arm"},
    {"name": "grid", "type": "gridworld", "width": 5, "height": 5, "goals": 3},
    {"name": "tree", "type": "random_tree", "branching": 3, "depth": 8, "bernoulli": true}
  ]
})json";

}  // namespace

TEST_CASE("aggregate examples") {
  const auto zero_var = aggregate({record("e", "p", 10, 1.0), record("e", "p", 10, 1.0)});
  REQUIRE(zero_var.size() == 1);
  CHECK(zero_var[0].mean_return == 1.0);
  CHECK(zero_var[0].ci95_halfwidth == 0.0);
  CHECK(zero_var[0].run_count == 2);

  const auto spread = aggregate({record("e", "p", 10, 0.0), record("e", "p", 10, 2.0)});
  CHECK(spread[0].mean_return == 1.0);
  CHECK(spread[0].ci95_halfwidth == doctest::Approx(1.96).epsilon(1e-15));

  CHECK_THROWS_AS(aggregate({record("e", "p", 10, 0.0)}), InsufficientRuns);
  CHECK_THROWS_AS(aggregate({record("e", "p", 10, 0.0), record("e", "p", 20, 0.0)}), InsufficientRuns);
}

TEST_CASE("aggregate sorts by env, planner, then budget") {
  std::vector<RunRecord> in;
  for (const auto& [env, planner, budget] : std::vector<std::tuple<std::string, std::string, std::uint64_t>>{
           {"b", "OLOP", 100}, {"a", "OPD", 1000}, {"a", "OPD", 32}, {"a", "KL-OLOP", 316}}) {
    in.push_back(record(env, planner, budget, 0.0));
    in.push_back(record(env, planner, budget, 1.0));
  }
  const auto rows = aggregate(in);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].planner == "KL-OLOP");
  CHECK(rows[1].budget == 32);
  CHECK(rows[2].budget == 1000);
  CHECK(rows[3].env == "b");
}

TEST_CASE("aggregate mean tracks a normal generator") {
  std::mt19937_64 gen(17);
  std::normal_distribution<double> normal(3.0, 2.0);
  int covered = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RunRecord> in;
    for (int i = 0; i < 100; ++i) in.push_back(record("e", "p", 1, normal(gen)));
    const auto row = aggregate(in).at(0);
    // Within 3 standard errors of the generator mean.
    CHECK(std::abs(row.mean_return - 3.0) <= 3.0 * 2.0 / 10.0);
    covered += std::abs(row.mean_return - 3.0) <= row.ci95_halfwidth ? 1 : 0;
  }
  CHECK(covered >= 40);
}

TEST_CASE("records round-trip through CSV") {
  RunRecord a = record("grid", "KL-OLOP(1)", 316, 0.1 + 0.2);
  a.seed = 18446744073709551615ull;
  a.regret = 1.0 / 3.0;
  a.samples = 312;
  RunRecord b = record("grid", "Random", 316, 0.0);
  b.wall_time_ms = 2.5;
  const std::string csv = csv_of({a, b});
  CHECK(csv.rfind("env,planner,budget,seed,return,regret,samples,wall_time_ms\n", 0) == 0);
  std::istringstream in(csv);
  const auto back = read_records_csv(in);
  REQUIRE(back.size() == 2);
  CHECK(back[0].seed == a.seed);
  CHECK(back[0].ret == a.ret);
  CHECK(back[0].regret == a.regret);
  CHECK(back[0].samples == 312);
  CHECK_FALSE(back[0].wall_time_ms.has_value());
  CHECK_FALSE(back[1].regret.has_value());
  CHECK(back[1].wall_time_ms == 2.5);
  CHECK(csv_of(back) == csv);

  std::istringstream bad_header("env,planner\n");
  CHECK_THROWS(read_records_csv(bad_header));
  std::istringstream bad_row("env,planner,budget,seed,return,regret,samples,wall_time_ms\ne,p,x,1,0,,1,\n");
  CHECK_THROWS(read_records_csv(bad_row));
  CHECK(aggregate_path("out/results.csv") == std::filesystem::path("out/results.agg.csv"));
}

TEST_CASE("config parsing and field-level errors") {
  const auto config = parse_config(kSmallConfig);
  CHECK(config.environments.size() == 3);
  CHECK(config.planners.size() == 5);
  CHECK(config.runs_per_cell == 6);
  CHECK(config.environments[1].grid.goal_count == 3);

  auto problems = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.problems();
    }
    return std::vector<std::string>{};
  };
  const auto budget = problems(R"({"budgets": [3], "planners": ["KL-OLOP"], "environments": [{"name": "a", "type": "two_arm"}]})");
  REQUIRE(budget.size() == 1);
  CHECK(budget[0].rfind("budgets[0]:", 0) == 0);

  const auto many = problems(R"({"budgets": [100, -1], "planners": ["UCT"], "runs_per_cell": 1, "discount": 1.5,
      "environments": [{"name": "g", "type": "gridworld", "lava_density": 2, "colour": 1}]})");
  auto mentions = [&](const std::string& field) {
    return std::any_of(many.begin(), many.end(), [&](const std::string& p) { return p.rfind(field + ":", 0) == 0; });
  };
  CHECK(mentions("budgets[1]"));
  CHECK(mentions("planners[0]"));
  CHECK(mentions("environments[0].lava_density"));
  CHECK(mentions("environments[0].colour"));

  const auto limits = problems(R"({"budgets": [100], "planners": ["OPD"], "runs_per_cell": 1, "discount": 1.5,
      "environments": [{"name": "a", "type": "two_arm"}, {"name": "a", "type": "two_arm"}]})");
  CHECK(limits.size() == 3);

  const auto naive = problems(R"({"budgets": [3162], "planners": ["KL-OLOP-naive"],
      "environments": [{"name": "g", "type": "gridworld"}]})");
  REQUIRE(naive.size() == 1);
  CHECK(naive[0].rfind("planners[0]:", 0) == 0);

  CHECK_FALSE(problems("{").empty());
  CHECK_FALSE(problems("[]").empty());
}

TEST_CASE("random planner on the two-arm fixture") {
  ExperimentConfig config;
  config.environments.push_back({});
  config.environments[0].name = "two_arm";
  config.planners = {olop::PlannerVariant::kRandom};
  config.budgets = {10};  // L = 3
  config.runs_per_cell = 4000;
  const auto rows = aggregate(run_experiment(config));
  REQUIRE(rows.size() == 1);
  // Uniform over the 8 sequences: half of 0.8 + 0.64 + 0.512.
  CHECK(std::abs(rows[0].mean_return - 0.976) <= 3.0 * rows[0].ci95_halfwidth / 1.96);
}

TEST_CASE("experiments are deterministic and independent of the worker count") {
  const auto config = parse_config(kSmallConfig);
  const auto serial = run_experiment(config, {1, false});
  const auto parallel = run_experiment(config, {3, false});
  CHECK(csv_of(serial) == csv_of(parallel));
  CHECK(serial.size() == 3 * 5 * 2 * 6);
  // Config order: env, planner, budget, run.
  CHECK(serial.front().env == "two_arm");
  CHECK(serial.front().planner == "KL-OLOP");
  CHECK(serial.back().env == "tree");
  CHECK(serial.back().planner == "KL-OLOP(1)");
  CHECK(serial.back().budget == 100);

  auto reseeded = config;
  reseeded.master_seed = 6;
  CHECK(csv_of(run_experiment(reseeded)) != csv_of(serial));
}

TEST_CASE("return and regret are coherent on deterministic cells") {
  const auto config = parse_config(kSmallConfig);
  const auto records = run_experiment(config);
  for (const auto& r : records) {
    CHECK(r.samples <= r.budget);
    if (!r.regret) continue;
    CHECK(*r.regret >= 0.0);
    if (r.env == "tree") continue;  // Bernoulli rewards
    const auto split = olop::budget_split(r.budget, config.discount);
    const auto& spec = *std::find_if(config.environments.begin(), config.environments.end(),
                                     [&](const EnvSpec& e) { return e.name == r.env; });
    // Layouts are drawn per run; recover the run from the planner seed.
    const auto env = [&] {
      for (std::uint64_t k = 0; k < config.runs_per_cell; ++k) {
        if (planner_seed(config, spec, *olop::parse_planner_variant(r.planner), r.budget, k) == r.seed) {
          return make_environment(config, spec, k);
        }
      }
      FAIL("seed not found");
      return make_environment(config, spec, 0);
    }();
    const double optimum = olop::root_values(*env, config.discount, split.horizon).optimum;
    CHECK(r.ret + *r.regret == doctest::Approx(optimum).epsilon(1e-12));
  }
}

TEST_CASE("cells parse and replay with their tree") {
  const auto config = parse_config(kSmallConfig);
  const auto key = parse_cell(config, "grid:KL-OLOP:100:2");
  CHECK(key.planner == olop::PlannerVariant::kKlOlop);
  CHECK(key.budget == 100);
  CHECK(key.run == 2);
  CHECK_THROWS_AS(parse_cell(config, "grid:KL-OLOP:100"), ConfigError);
  CHECK_THROWS_AS(parse_cell(config, "nowhere:KL-OLOP:100:2"), ConfigError);
  CHECK_THROWS_AS(parse_cell(config, "grid:KL-OLOP:3:2"), ConfigError);
  CHECK_THROWS_AS(parse_cell(config, "grid:KL-OLOP:100:-2"), ConfigError);

  const auto result = replay_cell(config, key);
  REQUIRE(result.tree_snapshot.has_value());
  // Same recommendation as the benchmark run of that cell.
  const auto records = run_experiment(config);
  const auto it = std::find_if(records.begin(), records.end(), [&](const RunRecord& r) {
    return r.env == "grid" && r.planner == "KL-OLOP" && r.budget == 100 &&
           r.seed == planner_seed(config, config.environments[1], key.planner, 100, 2);
  });
  REQUIRE(it != records.end());
  CHECK(it->samples == result.samples_used);
}

TEST_CASE("DOT export") {
  olop::LazyTree tree(2, 2);
  tree.record_episode(olop::ActionSequence({0, 1}), std::vector<double>{1.0, 0.0});
  tree.refresh({olop::Divergence::kBernoulli, 2.0}, 0.8);
  const std::string dot = olop::tree_to_dot(tree);
  auto count = [](const std::string& s, const std::string& what) {
    std::size_t n = 0;
    for (std::size_t pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++n;
    return n;
  };
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(count(dot, "[label=\"T=") == 5);
  CHECK(count(dot, " -> ") == 4);
  CHECK(dot.find("label=\"T=1 U=4.000\"") != std::string::npos);
  CHECK(dot.find("penwidth=10.000") != std::string::npos);
  CHECK(dot.find("penwidth=0.000") != std::string::npos);

  const std::string shallow = olop::tree_to_dot(tree, 1);
  CHECK(count(shallow, "[label=\"T=") == 3);
  CHECK(count(shallow, " -> ") == 2);

  olop::LazyTree quad(2, 1);
  quad.refresh({olop::Divergence::kQuad, 2.0}, 0.8);
  quad.expand(olop::LazyTree::root());
  quad.refresh({olop::Divergence::kQuad, 2.0}, 0.8);
  CHECK(olop::tree_to_dot(quad).find("U=inf") != std::string::npos);

  olop::PlanResult empty;
  const auto path = std::filesystem::temp_directory_path() / "olop_bench_test.dot";
  CHECK_THROWS_AS(olop::export_tree(empty, path), std::invalid_argument);
  olop::PlanResult full;
  full.tree_snapshot = tree;
  olop::export_tree(full, path, 1);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == shallow);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(olop::export_tree(full, "/nonexistent-dir/x.dot"), std::runtime_error);
}
