#include <algorithm>
#include <limits>

#include "olop/full_tree.hpp"
#include "olop/planner.hpp"

namespace olop {

PlanResult plan_naive(const PlannerSpec& spec, const GenerativeModel& env) {
  const BoundConfig config = bound_config(spec.variant);
  const std::size_t branching = env.action_count();
  if (branching < 2) throw std::invalid_argument("plan_naive: the model needs at least two actions");
  const BudgetSplit split = budget_split(spec.budget, spec.discount);
  const std::size_t horizon = split.horizon;
  if (!checked_power(branching, horizon, kNaiveMaxLeaves)) {
    throw TreeTooLarge("plan_naive: K^L exceeds " + std::to_string(kNaiveMaxLeaves) + " sequences");
  }
  const BoundModel bounds{config.divergence, threshold(config.threshold, split.episodes)};
  const FullTreeIndex index(branching, horizon, std::numeric_limits<std::uint64_t>::max());

  std::vector<double> powers(horizon + 2, 1.0);
  for (std::size_t h = 1; h < powers.size(); ++h) powers[h] = powers[h - 1] * spec.discount;

  std::vector<std::uint64_t> visits(index.size(), 0);
  std::vector<double> reward_sums(index.size(), 0.0);
  std::vector<double> u_values(index.size(), 0.0);
  std::vector<double> chain_min(index.size(), 0.0);

  Rng rng(planner_stream_seed(spec.rng_seed));
  Rng sampling(sampling_stream_seed(spec.rng_seed));
  PlanResult result;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::uint64_t leaf_offset = index.offset(horizon);
  const std::uint64_t leaf_count = index.width(horizon);

  for (std::uint64_t m = 1; m <= split.episodes; ++m) {
    // U and B for every node of the complete tree.
    u_values[0] = spec.discount / (1.0 - spec.discount);
    chain_min[0] = kInf;
    for (std::size_t h = 1; h <= horizon; ++h) {
      const std::uint64_t width = index.width(h);
      for (std::uint64_t code = 0; code < width; ++code) {
        const std::uint64_t i = index.offset(h) + code;
        const std::uint64_t parent = index.offset(h - 1) + code / branching;
        const double mu_ucb = bounds.upper(reward_sums[i], visits[i]);
        u_values[i] = u_values[parent] + powers[h] * (mu_ucb - 1.0);
        chain_min[i] = std::min(chain_min[parent], u_values[i]);
      }
    }

    std::vector<std::uint64_t> tied;
    double best = -kInf;
    for (std::uint64_t code = 0; code < leaf_count; ++code) {
      const double b = chain_min[leaf_offset + code];
      if (b > best) {
        best = b;
        tied.assign(1, code);
      } else if (b == best) {
        tied.push_back(code);
      }
    }
    const std::uint64_t chosen = tied[uniform_index(rng, tied.size())];
    const ActionSequence actions = index.decode(horizon, chosen);

    const std::vector<double> rewards = rollout(env, actions, sampling);
    result.samples_used += rewards.size();
    visits[0] += 1;
    std::uint64_t code = 0;
    for (std::size_t t = 0; t < horizon; ++t) {
      code = code * branching + actions[t];
      const std::uint64_t i = index.offset(t + 1) + code;
      visits[i] += 1;
      reward_sums[i] += rewards[t];
    }
  }
  result.episodes_used = split.episodes;

  std::vector<std::uint64_t> most_played;
  std::uint64_t best = 0;
  for (std::uint64_t code = 0; code < leaf_count; ++code) {
    const std::uint64_t count = visits[leaf_offset + code];
    if (most_played.empty() || count > best) {
      best = count;
      most_played.assign(1, code);
    } else if (count == best) {
      most_played.push_back(code);
    }
  }
  result.recommended = index.decode(horizon, most_played[uniform_index(rng, most_played.size())]);
  return result;
}

}  // namespace olop
