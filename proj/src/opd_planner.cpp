#include <limits>
#include <memory>

#include "olop/planner.hpp"

namespace olop {

PlanResult plan_opd(const PlannerSpec& spec, const GenerativeModel& env) {
  const BudgetSplit split = budget_split(spec.budget, spec.discount);
  const std::size_t branching = env.action_count();
  const double gamma = spec.discount;
  const double tail_scale = 1.0 / (1.0 - gamma);

  // Depth is only bounded by the budget; the tree never refreshes bounds.
  LazyTree tree(branching, static_cast<std::size_t>(spec.budget) + 1);
  std::vector<std::unique_ptr<Cursor>> states;
  std::vector<double> observed;    // sum_t gamma^t r_t along the path
  std::vector<double> discount_h;  // gamma^depth
  states.push_back(env.reset());
  observed.push_back(0.0);
  discount_h.push_back(1.0);
  std::vector<NodeId> frontier{LazyTree::root()};

  Rng rng(planner_stream_seed(spec.rng_seed));
  Rng sampling(sampling_stream_seed(spec.rng_seed));
  PlanResult result;
  auto optimistic = [&](NodeId id) { return observed[id] + discount_h[id] * gamma * tail_scale; };

  while (result.samples_used + branching <= spec.budget) {
    std::vector<std::size_t> tied;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const double b = optimistic(frontier[i]);
      if (b > best) {
        best = b;
        tied.assign(1, i);
      } else if (b == best) {
        tied.push_back(i);
      }
    }
    const std::size_t slot = tied[uniform_index(rng, tied.size())];
    const NodeId leaf = frontier[slot];
    frontier[slot] = frontier.back();
    frontier.pop_back();

    const NodeId first = tree.expand(leaf);
    for (std::size_t a = 0; a < branching; ++a) {
      auto cursor = states[leaf]->clone();
      const double reward = cursor->step(static_cast<Action>(a), sampling);
      ++result.samples_used;
      const NodeId child = first + static_cast<NodeId>(a);
      states.push_back(std::move(cursor));
      discount_h.push_back(discount_h[leaf] * gamma);
      observed.push_back(observed[leaf] + discount_h.back() * reward);
      NodeStats& stats = tree.stats(child);
      stats.reward_sum = reward;
      frontier.push_back(child);
    }
    states[leaf].reset();
    ++result.episodes_used;
    for (NodeId id = leaf;; id = tree.node(id).parent) {
      tree.stats(id).visit_count += 1;
      if (id == LazyTree::root()) break;
    }
  }

  // Best observed return among explored nodes no deeper than L.
  std::vector<NodeId> tied;
  double best = -std::numeric_limits<double>::infinity();
  for (NodeId id = 0; id < tree.size(); ++id) {
    if (tree.node(id).depth > split.horizon) continue;
    if (observed[id] > best) {
      best = observed[id];
      tied.assign(1, id);
    } else if (observed[id] == best) {
      tied.push_back(id);
    }
  }
  result.recommended = tree.sequence(tied[uniform_index(rng, tied.size())]);
  while (result.recommended.size() < split.horizon) {
    result.recommended.push_back(static_cast<Action>(uniform_index(rng, branching)));
  }

  if (spec.keep_tree) {
    for (NodeId id = 0; id < tree.size(); ++id) {
      NodeStats& stats = tree.stats(id);
      stats.u_value = optimistic(id);
      stats.b_value = stats.u_value;
      stats.mu_ucb = stats.reward_sum;
      stats.mu_lcb = stats.reward_sum;
    }
    result.tree_snapshot = std::move(tree);
  }
  return result;
}

}  // namespace olop
