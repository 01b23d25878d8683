#include "olop/bench/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "olop/full_tree.hpp"
#include "olop/random_tree_mdp.hpp"

namespace olop::bench {
namespace {

using nlohmann::json;

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid configuration";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

// Collects field-level problems instead of stopping at the first one.
class Reader {
 public:
  std::vector<std::string> problems;

  void fail(const std::string& field, const std::string& message) { problems.push_back(field + ": " + message); }

  template <typename T>
  std::optional<T> get(const json& obj, const std::string& key, const std::string& field) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    try {
      if constexpr (std::is_same_v<T, std::uint64_t>) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
          fail(field, "expected a nonnegative integer");
          return std::nullopt;
        }
      } else if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) {
          fail(field, "expected a number");
          return std::nullopt;
        }
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) {
          fail(field, "expected true or false");
          return std::nullopt;
        }
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) {
          fail(field, "expected a string");
          return std::nullopt;
        }
      }
      return v.get<T>();
    } catch (const json::exception&) {
      fail(field, "wrong type");
      return std::nullopt;
    }
  }

  void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& prefix) {
    for (const auto& [key, value] : obj.items()) {
      if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
        fail(prefix + key, "unknown field");
      }
    }
  }
};

EnvSpec read_environment(Reader& r, const json& obj, const std::string& field) {
  EnvSpec env;
  if (!obj.is_object()) {
    r.fail(field, "expected an object");
    return env;
  }
  env.name = r.get<std::string>(obj, "name", field + ".name").value_or("");
  if (env.name.empty()) r.fail(field + ".name", "required, non-empty");
  if (env.name.find_first_of(":,\"\n") != std::string::npos) r.fail(field + ".name", "must not contain : , \" or newlines");
  const std::string type = r.get<std::string>(obj, "type", field + ".type").value_or("");
  if (auto s = r.get<std::uint64_t>(obj, "seed", field + ".seed")) env.fixed_seed = *s;

  if (type == "two_arm") {
    env.kind = EnvKind::kTwoArm;
    r.reject_unknown(obj, {"name", "type", "seed"}, field + ".");
  } else if (type == "gridworld") {
    env.kind = EnvKind::kGridWorld;
    r.reject_unknown(obj, {"name", "type", "seed", "width", "height", "lava_density", "goals", "max_goal_distance",
                           "noise", "map"},
                     field + ".");
    auto int_field = [&](const char* key, int& out, int lo) {
      if (auto v = r.get<std::uint64_t>(obj, key, field + "." + key)) {
        if (*v < static_cast<std::uint64_t>(lo) || *v > 4096) {
          r.fail(field + "." + key, "must lie in [" + std::to_string(lo) + ", 4096]");
        } else {
          out = static_cast<int>(*v);
        }
      }
    };
    int_field("width", env.grid.width, 1);
    int_field("height", env.grid.height, 1);
    int_field("goals", env.grid.goal_count, 1);
    int_field("max_goal_distance", env.grid.max_goal_distance, 1);
    if (auto v = r.get<double>(obj, "lava_density", field + ".lava_density")) {
      if (!(*v >= 0.0 && *v <= 1.0)) r.fail(field + ".lava_density", "must lie in [0, 1]");
      env.grid.lava_density = *v;
    }
    if (auto v = r.get<double>(obj, "noise", field + ".noise")) {
      if (!(*v >= 0.0 && *v < 1.0)) r.fail(field + ".noise", "must lie in [0, 1)");
      env.grid.noise_p = *v;
    }
    if (auto m = r.get<std::string>(obj, "map", field + ".map")) {
      try {
        GridWorld::parse(*m);
        env.map = *m;
      } catch (const std::invalid_argument& e) {
        r.fail(field + ".map", e.what());
      }
    }
  } else if (type == "random_tree") {
    env.kind = EnvKind::kRandomTree;
    r.reject_unknown(obj, {"name", "type", "seed", "branching", "depth", "bernoulli"}, field + ".");
    if (auto v = r.get<std::uint64_t>(obj, "branching", field + ".branching")) env.branching = *v;
    if (auto v = r.get<std::uint64_t>(obj, "depth", field + ".depth")) env.depth = *v;
    if (auto v = r.get<bool>(obj, "bernoulli", field + ".bernoulli")) env.bernoulli = *v;
    if (env.branching < 2) r.fail(field + ".branching", "must be at least 2");
    if (env.depth < 1) r.fail(field + ".depth", "must be at least 1");
    if (env.branching >= 2 && !checked_power(env.branching, env.depth, RandomTreeMDP::kMaxNodes)) {
      r.fail(field + ".depth", "branching^depth exceeds the node guard");
    }
  } else {
    r.fail(field + ".type", "expected one of two_arm, gridworld, random_tree");
  }
  return env;
}

std::size_t action_count(const EnvSpec& env) {
  switch (env.kind) {
    case EnvKind::kTwoArm: return 2;
    case EnvKind::kGridWorld: return 4;
    case EnvKind::kRandomTree: return env.branching;
  }
  return 0;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_lines(problems)), problems_(std::move(problems)) {}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("document: ") + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({"document: expected an object"});

  Reader r;
  ExperimentConfig config;
  r.reject_unknown(doc, {"environments", "planners", "budgets", "runs_per_cell", "discount", "regret_mode",
                         "master_seed", "oracle_max_sequences", "output"},
                   "");
  if (auto v = r.get<double>(doc, "discount", "discount")) config.discount = *v;
  if (auto v = r.get<std::uint64_t>(doc, "runs_per_cell", "runs_per_cell")) config.runs_per_cell = *v;
  if (auto v = r.get<std::uint64_t>(doc, "master_seed", "master_seed")) config.master_seed = *v;
  if (auto v = r.get<std::uint64_t>(doc, "oracle_max_sequences", "oracle_max_sequences")) {
    config.oracle_max_sequences = *v;
  }
  if (auto v = r.get<std::string>(doc, "output", "output")) config.output = *v;
  if (auto v = r.get<std::string>(doc, "regret_mode", "regret_mode")) {
    if (*v == "sequence") {
      config.regret_mode = RegretMode::kSequence;
    } else if (*v == "first_action") {
      config.regret_mode = RegretMode::kFirstAction;
    } else {
      r.fail("regret_mode", "expected sequence or first_action");
    }
  }

  if (!doc.contains("budgets") || !doc["budgets"].is_array()) {
    r.fail("budgets", "required list of positive integers");
  } else {
    for (std::size_t i = 0; i < doc["budgets"].size(); ++i) {
      const json& b = doc["budgets"][i];
      const std::string field = "budgets[" + std::to_string(i) + "]";
      if (!b.is_number_unsigned() || b.get<std::uint64_t>() == 0) {
        r.fail(field, "expected a positive integer");
      } else {
        config.budgets.push_back(b.get<std::uint64_t>());
      }
    }
  }
  if (!doc.contains("planners") || !doc["planners"].is_array()) {
    r.fail("planners", "required list of planner names");
  } else {
    for (std::size_t i = 0; i < doc["planners"].size(); ++i) {
      const json& p = doc["planners"][i];
      const std::string field = "planners[" + std::to_string(i) + "]";
      const auto variant = p.is_string() ? parse_planner_variant(p.get<std::string>()) : std::nullopt;
      if (!variant) {
        r.fail(field, "expected one of OLOP, KL-OLOP, KL-OLOP(1), OPD, Random, KL-OLOP-naive");
      } else {
        config.planners.push_back(*variant);
      }
    }
  }
  if (!doc.contains("environments") || !doc["environments"].is_array()) {
    r.fail("environments", "required list of environment tables");
  } else {
    for (std::size_t i = 0; i < doc["environments"].size(); ++i) {
      config.environments.push_back(
          read_environment(r, doc["environments"][i], "environments[" + std::to_string(i) + "]"));
    }
  }
  if (!r.problems.empty()) throw ConfigError(std::move(r.problems));
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"config: cannot read " + path.string()});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void validate(const ExperimentConfig& config) {
  std::vector<std::string> problems;
  auto fail = [&](const std::string& field, const std::string& message) { problems.push_back(field + ": " + message); };
  if (!(config.discount > 0.0 && config.discount < 1.0)) fail("discount", "must lie in (0, 1)");
  if (config.runs_per_cell < 2) fail("runs_per_cell", "must be at least 2 for confidence intervals");
  if (config.environments.empty()) fail("environments", "must not be empty");
  if (config.planners.empty()) fail("planners", "must not be empty");
  if (config.budgets.empty()) fail("budgets", "must not be empty");
  if (config.output.empty() || config.output.find('/') != std::string::npos) {
    fail("output", "expected a plain file name");
  }
  for (std::size_t i = 0; i < config.environments.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (config.environments[i].name == config.environments[j].name) {
        fail("environments[" + std::to_string(i) + "].name", "duplicate name '" + config.environments[i].name + "'");
      }
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));

  for (std::size_t i = 0; i < config.budgets.size(); ++i) {
    const std::string field = "budgets[" + std::to_string(i) + "]";
    try {
      const BudgetSplit split = budget_split(config.budgets[i], config.discount);
      for (std::size_t p = 0; p < config.planners.size(); ++p) {
        if (config.planners[p] != PlannerVariant::kKlOlopNaive) continue;
        for (const auto& env : config.environments) {
          if (!checked_power(action_count(env), split.horizon, kNaiveMaxLeaves)) {
            fail("planners[" + std::to_string(p) + "]", "KL-OLOP-naive cannot materialize K^L for budget " +
                                                           std::to_string(config.budgets[i]) + " on " + env.name);
          }
        }
      }
    } catch (const BudgetError& e) {
      fail(field, e.what());
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

std::size_t shortest_horizon(const ExperimentConfig& config) {
  std::size_t best = 0;
  for (std::uint64_t b : config.budgets) {
    const std::size_t l = budget_split(b, config.discount).horizon;
    best = best == 0 ? l : std::min(best, l);
  }
  return best;
}

std::uint64_t environment_seed(const ExperimentConfig& config, const EnvSpec& env, std::uint64_t run) {
  if (env.fixed_seed) return *env.fixed_seed;
  return StableHasher().add("env").add(env.name).add(run).add(config.master_seed).digest();
}

std::uint64_t planner_seed(const ExperimentConfig& config, const EnvSpec& env, PlannerVariant planner,
                           std::uint64_t budget, std::uint64_t run) {
  return StableHasher()
      .add("planner")
      .add(env.name)
      .add(to_string(planner))
      .add(budget)
      .add(run)
      .add(config.master_seed)
      .digest();
}

std::unique_ptr<GenerativeModel> make_environment(const ExperimentConfig& config, const EnvSpec& env,
                                                  std::uint64_t run) {
  const std::uint64_t seed = environment_seed(config, env, run);
  switch (env.kind) {
    case EnvKind::kTwoArm: return std::make_unique<TwoArmEnv>();
    case EnvKind::kGridWorld: {
      if (env.map) return std::make_unique<GridWorld>(GridWorld::parse(*env.map, env.grid.noise_p));
      GridSpec spec = env.grid;
      if (spec.max_goal_distance == 0) spec.max_goal_distance = static_cast<int>(shortest_horizon(config));
      return std::make_unique<GridWorld>(generate_gridworld(spec, seed));
    }
    case EnvKind::kRandomTree:
      return std::make_unique<RandomTreeMDP>(env.branching, env.depth, env.bernoulli, seed);
  }
  throw std::logic_error("make_environment: unknown kind");
}

}  // namespace olop::bench
