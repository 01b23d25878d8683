#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "olop/bench/config.hpp"
#include "olop/bench/records.hpp"

namespace olop::bench {

struct RunOptions {
  unsigned workers = 1;
  bool record_timing = false;  // wall times make the CSV run-dependent
};

/// Every (env, planner, budget, run) cell of the grid. Each cell plans with
/// its own seed, then scores the recommendation by one rollout from a seed
/// derived from the planner seed, and by the oracle regret when K^L is within
/// config.oracle_max_sequences. Work is split by (env, run) across a worker
/// pool; records come back in config order (env, planner, budget, run)
/// whatever the completion order.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Cell address "env:planner:budget:run", e.g. "grid:KL-OLOP:1000:3".
struct CellKey {
  std::string env;
  PlannerVariant planner;
  std::uint64_t budget;
  std::uint64_t run;
};
CellKey parse_cell(const ExperimentConfig& config, const std::string& text);

/// Replays one cell with the tree kept, for export.
PlanResult replay_cell(const ExperimentConfig& config, const CellKey& cell);

}  // namespace olop::bench
