#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace olop::bench {

struct RunRecord {
  std::string env;
  std::string planner;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  double ret = 0.0;
  std::optional<double> regret;  // absent when the oracle guard trips
  std::uint64_t samples = 0;
  std::optional<double> wall_time_ms;
};

struct AggregateRow {
  std::string env;
  std::string planner;
  std::uint64_t budget = 0;
  double mean_return = 0.0;
  double ci95_halfwidth = 0.0;
  std::uint64_t run_count = 0;
};

class InsufficientRuns : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mean return per (env, planner, budget) with a normal-approximation 95%
/// interval 1.96 * s / sqrt(n), s the sample standard deviation. Rows are
/// sorted by env, planner, then budget. Throws InsufficientRuns when a cell
/// has fewer than two records.
std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records);

/// CSV with header env,planner,budget,seed,return,regret,samples,wall_time_ms.
/// Reals are printed with 17 significant digits; absent values are empty.
void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_csv(std::istream& in);

/// CSV with header env,planner,budget,mean_return,ci95_halfwidth,runs.
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

/// JSON mirror: {"records": [...], "aggregates": [...]}.
std::string to_json(const std::vector<RunRecord>& records, const std::vector<AggregateRow>& rows);

/// results.csv -> results.agg.csv
std::filesystem::path aggregate_path(const std::filesystem::path& csv);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace olop::bench
