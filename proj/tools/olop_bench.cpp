// Benchmark driver: runs planner x environment x budget grids, aggregates
// returns and exports planning trees.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "olop/bench/config.hpp"
#include "olop/bench/experiment.hpp"
#include "olop/bench/records.hpp"
#include "olop/dot_export.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

namespace fs = std::filesystem;
using namespace olop::bench;

int run_command(const fs::path& config_path, const fs::path& out_dir, unsigned workers,
                const std::optional<std::uint64_t>& master_seed, bool json, bool timing) {
  ExperimentConfig config = load_config(config_path);
  if (master_seed) config.master_seed = *master_seed;
  fs::create_directories(out_dir);
  const auto records = run_experiment(config, {workers, timing});
  const auto rows = aggregate(records);

  std::ostringstream csv, agg;
  write_records_csv(csv, records);
  write_aggregate_csv(agg, rows);
  const fs::path csv_path = out_dir / config.output;
  write_file(csv_path, csv.str());
  write_file(aggregate_path(csv_path), agg.str());
  if (json) {
    fs::path json_path = csv_path;
    json_path.replace_extension(".json");
    write_file(json_path, to_json(records, rows));
  }
  std::cerr << records.size() << " runs written to " << csv_path.string() << '\n';
  return 0;
}

int aggregate_command(const fs::path& in_path, const fs::path& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + in_path.string());
  const auto rows = aggregate(read_records_csv(in));
  std::ostringstream agg;
  write_aggregate_csv(agg, rows);
  write_file(out_path.empty() ? aggregate_path(in_path) : out_path, agg.str());
  return 0;
}

int export_command(const fs::path& config_path, const std::string& cell, std::size_t max_depth,
                   const fs::path& out_path, const std::optional<std::uint64_t>& master_seed) {
  ExperimentConfig config = load_config(config_path);
  if (master_seed) config.master_seed = *master_seed;
  const CellKey key = parse_cell(config, cell);
  olop::export_tree(replay_cell(config, key), out_path, max_depth);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-loop optimistic planning benchmarks"};
  app.require_subcommand(1);

  std::string config_path, out, in, cell;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;
  bool json = false, timing = false;
  std::size_t max_depth = 6;

  auto* run = app.add_subcommand("run", "Run every cell of an experiment config");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  auto* run_seed = run->add_option("--master-seed", seed, "Overrides the config's master seed");
  run->add_flag("--json", json, "Also write a JSON mirror of the results");
  run->add_flag("--record-timing", timing, "Fill wall_time_ms (output is then not reproducible)");

  auto* agg = app.add_subcommand("aggregate", "Aggregate a results CSV");
  agg->add_option("--in", in, "Results CSV")->required()->check(CLI::ExistingFile);
  agg->add_option("--out", out, "Aggregate CSV (default: <in>.agg.csv)");

  auto* exp = app.add_subcommand("export-tree", "Export the planning tree of one cell as DOT");
  exp->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  exp->add_option("--cell", cell, "Cell as env:planner:budget:run")->required();
  exp->add_option("--max-depth", max_depth, "Deepest level to draw");
  exp->add_option("--out", out, "DOT file")->required();
  auto* exp_seed = exp->add_option("--master-seed", seed, "Overrides the config's master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      return run_command(config_path, out, workers, run_seed->count() ? std::optional(seed) : std::nullopt, json,
                         timing);
    }
    if (*agg) return aggregate_command(in, out);
    return export_command(config_path, cell, max_depth, out, exp_seed->count() ? std::optional(seed) : std::nullopt);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
