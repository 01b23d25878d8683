#include "olop/bench/records.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <tuple>

#include "json.hpp"

namespace olop::bench {
namespace {

constexpr const char* kRecordHeader = "env,planner,budget,seed,return,regret,samples,wall_time_ms";
constexpr const char* kAggregateHeader = "env,planner,budget,mean_return,ci95_halfwidth,runs";

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string optional_real(const std::optional<double>& x) { return x ? real(*x) : std::string(); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t comma = line.find(',', begin);
    out.push_back(line.substr(begin, comma - begin));
    if (comma == std::string::npos) return out;
    begin = comma + 1;
  }
}

double parse_real(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::runtime_error("records line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || end != s.c_str() + s.size()) {
    throw std::runtime_error("records line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records) {
  std::map<std::tuple<std::string, std::string, std::uint64_t>, std::vector<double>> cells;
  for (const auto& r : records) cells[{r.env, r.planner, r.budget}].push_back(r.ret);

  std::vector<AggregateRow> rows;
  for (const auto& [key, returns] : cells) {
    const auto& [env, planner, budget] = key;
    if (returns.size() < 2) {
      throw InsufficientRuns("aggregate: cell " + env + ":" + planner + ":" + std::to_string(budget) + " has " +
                             std::to_string(returns.size()) + " run(s), at least 2 are needed");
    }
    const auto n = static_cast<double>(returns.size());
    double sum = 0.0;
    for (double x : returns) sum += x;
    const double mean = sum / n;
    double squares = 0.0;
    for (double x : returns) squares += (x - mean) * (x - mean);
    const double sd = std::sqrt(squares / (n - 1.0));
    rows.push_back({env, planner, budget, mean, 1.96 * sd / std::sqrt(n), returns.size()});
  }
  return rows;
}

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << r.env << ',' << r.planner << ',' << r.budget << ',' << r.seed << ',' << real(r.ret) << ','
        << optional_real(r.regret) << ',' << r.samples << ',' << optional_real(r.wall_time_ms) << '\n';
  }
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("records: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) throw std::runtime_error("records: unexpected header '" + line + "'");
  std::vector<RunRecord> out;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 8) {
      throw std::runtime_error("records line " + std::to_string(number) + ": expected 8 fields, got " +
                               std::to_string(f.size()));
    }
    RunRecord r;
    r.env = f[0];
    r.planner = f[1];
    r.budget = parse_count(f[2], number);
    r.seed = parse_count(f[3], number);
    r.ret = parse_real(f[4], number);
    if (!f[5].empty()) r.regret = parse_real(f[5], number);
    r.samples = parse_count(f[6], number);
    if (!f[7].empty()) r.wall_time_ms = parse_real(f[7], number);
    out.push_back(std::move(r));
  }
  return out;
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << kAggregateHeader << '\n';
  for (const auto& r : rows) {
    out << r.env << ',' << r.planner << ',' << r.budget << ',' << real(r.mean_return) << ','
        << real(r.ci95_halfwidth) << ',' << r.run_count << '\n';
  }
}

std::string to_json(const std::vector<RunRecord>& records, const std::vector<AggregateRow>& rows) {
  nlohmann::ordered_json doc;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["env"] = r.env;
    j["planner"] = r.planner;
    j["budget"] = r.budget;
    j["seed"] = r.seed;
    j["return"] = r.ret;
    j["regret"] = r.regret ? nlohmann::ordered_json(*r.regret) : nlohmann::ordered_json(nullptr);
    j["samples"] = r.samples;
    j["wall_time_ms"] = r.wall_time_ms ? nlohmann::ordered_json(*r.wall_time_ms) : nlohmann::ordered_json(nullptr);
    doc["records"].push_back(std::move(j));
  }
  doc["aggregates"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    doc["aggregates"].push_back({{"env", r.env},
                                 {"planner", r.planner},
                                 {"budget", r.budget},
                                 {"mean_return", r.mean_return},
                                 {"ci95_halfwidth", r.ci95_halfwidth},
                                 {"runs", r.run_count}});
  }
  return doc.dump(2) + "\n";
}

std::filesystem::path aggregate_path(const std::filesystem::path& csv) {
  std::filesystem::path out = csv;
  if (out.extension() == ".csv") out.replace_extension();
  out += ".agg.csv";
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace olop::bench
