#include "olop/oracle.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <stdexcept>

namespace olop {
namespace {

void check_enumerable(const GenerativeModel& env, std::size_t horizon) {
  if (!checked_power(env.action_count(), horizon, kOracleMaxSequences)) {
    throw std::length_error("oracle: K^L exceeds " + std::to_string(kOracleMaxSequences) + " sequences");
  }
}

// Depth-first search returning the best value reachable below a node whose
// path return is `so_far`.
double best_below(const Cursor& cursor, std::size_t depth, std::size_t horizon, double so_far, double weight,
                  double discount, std::size_t branching) {
  if (depth == horizon) return so_far;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < branching; ++a) {
    auto next = cursor.clone();
    const double r = next->mean_step(static_cast<Action>(a));
    best = std::max(best, best_below(*next, depth + 1, horizon, so_far + weight * r, weight * discount, discount,
                                     branching));
  }
  return best;
}

}  // namespace

ValueTable::ValueTable(FullTreeIndex index, std::vector<double> values, double discount)
    : index_(std::move(index)), values_(std::move(values)) {
  double tail = discount;
  for (std::size_t h = 0; h < index_.depth(); ++h) tail *= discount;
  truncation_bound_ = tail / (1.0 - discount);
}

ActionSequence ValueTable::argmax() const {
  ActionSequence a;
  while (a.size() < index_.depth()) {
    for (std::size_t x = 0; x < index_.branching(); ++x) {
      a.push_back(static_cast<Action>(x));
      if (value(a) == optimum()) break;
      a.pop_back();
    }
  }
  return a;
}

ValueTable exact_values(const GenerativeModel& env, double discount, std::size_t horizon) {
  check_enumerable(env, horizon);
  const std::size_t branching = env.action_count();
  FullTreeIndex index(branching, horizon, std::numeric_limits<std::uint64_t>::max());
  std::vector<double> values(index.size(), 0.0);

  // Forward pass: path returns, with one cursor per node of the current level.
  std::vector<std::unique_ptr<Cursor>> level;
  level.push_back(env.reset());
  double weight = discount;
  for (std::size_t h = 1; h <= horizon; ++h) {
    std::vector<std::unique_ptr<Cursor>> next;
    next.reserve(level.size() * branching);
    for (std::uint64_t code = 0; code < level.size(); ++code) {
      const double parent_return = values[index.offset(h - 1) + code];
      for (std::size_t a = 0; a < branching; ++a) {
        auto cursor = level[code]->clone();
        const double r = cursor->mean_step(static_cast<Action>(a));
        values[index.offset(h) + code * branching + a] = parent_return + weight * r;
        if (h < horizon) next.push_back(std::move(cursor));
      }
    }
    level = std::move(next);
    weight *= discount;
  }
  // Backward pass: V(a) = max over children.
  for (std::size_t h = horizon; h-- > 0;) {
    for (std::uint64_t code = 0; code < index.width(h); ++code) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < branching; ++a) {
        best = std::max(best, values[index.offset(h + 1) + code * branching + a]);
      }
      values[index.offset(h) + code] = best;
    }
  }
  return ValueTable(std::move(index), std::move(values), discount);
}

double simple_regret(const ValueTable& table, const ActionSequence& recommended, RegretMode mode) {
  const std::size_t length = mode == RegretMode::kFirstAction ? 1 : table.horizon();
  if (recommended.size() < length) throw std::invalid_argument("simple_regret: recommendation too short");
  return std::max(0.0, table.optimum() - table.value(recommended.prefix(length)));
}

RootValues root_values(const GenerativeModel& env, double discount, std::size_t horizon) {
  check_enumerable(env, horizon);
  if (horizon == 0) throw std::invalid_argument("root_values: horizon must be positive");
  const std::size_t branching = env.action_count();
  RootValues out;
  auto root = env.reset();
  for (std::size_t a = 0; a < branching; ++a) {
    auto cursor = root->clone();
    const double r = cursor->mean_step(static_cast<Action>(a));
    out.first_action.push_back(best_below(*cursor, 1, horizon, discount * r, discount * discount, discount, branching));
  }
  out.optimum = *std::max_element(out.first_action.begin(), out.first_action.end());
  return out;
}

double sequence_value(const GenerativeModel& env, const ActionSequence& actions, double discount) {
  return discounted_return(mean_rewards(env, actions), discount);
}

}  // namespace olop
