#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "olop/environment.hpp"
#include "olop/gridworld.hpp"
#include "olop/oracle.hpp"
#include "olop/planner.hpp"

namespace olop::bench {

enum class EnvKind { kTwoArm, kGridWorld, kRandomTree };

/// One benchmark environment. Layouts are drawn per run unless `fixed_seed`
/// pins them (or `map` gives the grid verbatim).
struct EnvSpec {
  std::string name;
  EnvKind kind = EnvKind::kTwoArm;
  GridSpec grid;                    // gridworld; max_goal_distance 0 means the shortest horizon in the grid
  std::optional<std::string> map;   // gridworld from text instead of the generator
  std::size_t branching = 2;        // random tree
  std::size_t depth = 8;            // random tree
  bool bernoulli = true;            // random tree
  std::optional<std::uint64_t> fixed_seed;
};

struct ExperimentConfig {
  std::vector<EnvSpec> environments;
  std::vector<PlannerVariant> planners;
  std::vector<std::uint64_t> budgets;
  std::uint64_t runs_per_cell = 100;
  double discount = 0.8;
  RegretMode regret_mode = RegretMode::kSequence;
  std::uint64_t master_seed = 0;
  std::uint64_t oracle_max_sequences = kOracleMaxSequences;
  std::string output = "results.csv";  // file name inside the output directory
};

/// Invalid configuration; what() lists every problem, one "field: message" per line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Parses and validates a JSON config document.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Field-level checks, including that every budget splits into M >= 2
/// episodes and that naive planners fit their tree guard.
void validate(const ExperimentConfig& config);

/// Horizon L of the smallest budget; the default reach of generated goals.
std::size_t shortest_horizon(const ExperimentConfig& config);

/// Seeds of one cell. The environment seed depends on the environment and
/// run only, so every planner and budget of a run sees the same layout.
std::uint64_t environment_seed(const ExperimentConfig& config, const EnvSpec& env, std::uint64_t run);
std::uint64_t planner_seed(const ExperimentConfig& config, const EnvSpec& env, PlannerVariant planner,
                           std::uint64_t budget, std::uint64_t run);

std::unique_ptr<GenerativeModel> make_environment(const ExperimentConfig& config, const EnvSpec& env,
                                                  std::uint64_t run);

}  // namespace olop::bench
