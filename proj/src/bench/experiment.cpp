#include "olop/bench/experiment.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "olop/full_tree.hpp"

namespace olop::bench {
namespace {

struct Task {
  std::size_t env_index;
  std::uint64_t run;
};

// Optimum and first-action values of one layout, per horizon.
class OracleCache {
 public:
  OracleCache(const GenerativeModel& env, double discount, std::uint64_t max_sequences)
      : env_(env), discount_(discount), max_sequences_(max_sequences) {}

  const RootValues* at(std::size_t horizon) {
    auto it = cache_.find(horizon);
    if (it == cache_.end()) {
      std::optional<RootValues> values;
      if (checked_power(env_.action_count(), horizon, std::min(max_sequences_, kOracleMaxSequences))) {
        values = root_values(env_, discount_, horizon);
      }
      it = cache_.emplace(horizon, std::move(values)).first;
    }
    return it->second ? &*it->second : nullptr;
  }

 private:
  const GenerativeModel& env_;
  double discount_;
  std::uint64_t max_sequences_;
  std::map<std::size_t, std::optional<RootValues>> cache_;
};

RunRecord run_cell(const ExperimentConfig& config, const EnvSpec& spec, const GenerativeModel& env,
                   OracleCache& oracle, PlannerVariant variant, std::uint64_t budget, std::uint64_t run,
                   bool record_timing) {
  PlannerSpec ps;
  ps.variant = variant;
  ps.budget = budget;
  ps.discount = config.discount;
  ps.rng_seed = planner_seed(config, spec, variant, budget, run);

  const auto start = std::chrono::steady_clock::now();
  const PlanResult result = run_planner(ps, env);
  const auto stop = std::chrono::steady_clock::now();

  RunRecord rec;
  rec.env = spec.name;
  rec.planner = std::string(to_string(variant));
  rec.budget = budget;
  rec.seed = ps.rng_seed;
  rec.samples = result.samples_used;
  if (record_timing) rec.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();

  Rng scoring(derive_seed(ps.rng_seed, 2));
  rec.ret = discounted_return(rollout(env, result.recommended, scoring), config.discount);

  if (const RootValues* values = oracle.at(result.recommended.size())) {
    const double achieved = config.regret_mode == RegretMode::kSequence
                                ? sequence_value(env, result.recommended, config.discount)
                                : values->first_action.at(result.recommended[0]);
    rec.regret = std::max(0.0, values->optimum - achieved);
  }
  return rec;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  const std::size_t planners = config.planners.size();
  const std::size_t budgets = config.budgets.size();
  const std::uint64_t runs = config.runs_per_cell;
  // Slot of a record in config order: env, planner, budget, run.
  auto slot = [&](std::size_t e, std::size_t p, std::size_t b, std::uint64_t r) {
    return ((e * planners + p) * budgets + b) * runs + r;
  };

  std::vector<Task> tasks;
  for (std::size_t e = 0; e < config.environments.size(); ++e) {
    for (std::uint64_t r = 0; r < runs; ++r) tasks.push_back({e, r});
  }
  std::vector<RunRecord> records(config.environments.size() * planners * budgets * runs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        const Task& task = tasks[i];
        const EnvSpec& spec = config.environments[task.env_index];
        const auto env = make_environment(config, spec, task.run);
        OracleCache oracle(*env, config.discount, config.oracle_max_sequences);
        for (std::size_t p = 0; p < planners; ++p) {
          for (std::size_t b = 0; b < budgets; ++b) {
            records[slot(task.env_index, p, b, task.run)] =
                run_cell(config, spec, *env, oracle, config.planners[p], config.budgets[b], task.run,
                         options.record_timing);
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
        return;
      }
    }
  };

  const unsigned count = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

CellKey parse_cell(const ExperimentConfig& config, const std::string& text) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t colon = text.find(':', begin);
    parts.push_back(text.substr(begin, colon - begin));
    if (colon == std::string::npos) break;
    begin = colon + 1;
  }
  if (parts.size() != 4) throw ConfigError({"cell: expected env:planner:budget:run, got '" + text + "'"});
  std::vector<std::string> problems;
  CellKey key{parts[0], PlannerVariant::kKlOlop, 0, 0};
  if (std::none_of(config.environments.begin(), config.environments.end(),
                   [&](const EnvSpec& e) { return e.name == parts[0]; })) {
    problems.push_back("cell: unknown environment '" + parts[0] + "'");
  }
  if (auto v = parse_planner_variant(parts[1])) {
    key.planner = *v;
  } else {
    problems.push_back("cell: unknown planner '" + parts[1] + "'");
  }
  auto number = [&](const std::string& s, const char* what, std::uint64_t& out) {
    try {
      std::size_t used = 0;
      out = std::stoull(s, &used);
      if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument(s);
    } catch (const std::exception&) {
      problems.push_back(std::string("cell: ") + what + " '" + s + "' is not a nonnegative integer");
    }
  };
  number(parts[2], "budget", key.budget);
  number(parts[3], "run", key.run);
  if (problems.empty()) {
    try {
      budget_split(key.budget, config.discount);
    } catch (const BudgetError& e) {
      problems.push_back(std::string("cell: ") + e.what());
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return key;
}

PlanResult replay_cell(const ExperimentConfig& config, const CellKey& cell) {
  const auto it = std::find_if(config.environments.begin(), config.environments.end(),
                               [&](const EnvSpec& e) { return e.name == cell.env; });
  if (it == config.environments.end()) throw ConfigError({"cell: unknown environment '" + cell.env + "'"});
  const auto env = make_environment(config, *it, cell.run);
  PlannerSpec ps;
  ps.variant = cell.planner;
  ps.budget = cell.budget;
  ps.discount = config.discount;
  ps.rng_seed = planner_seed(config, *it, cell.planner, cell.budget, cell.run);
  ps.keep_tree = true;
  return run_planner(ps, *env);
}

}  // namespace olop::bench
