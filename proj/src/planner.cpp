#include "olop/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "olop/full_tree.hpp"

namespace olop {
namespace {

std::size_t horizon_for(std::uint64_t episodes, double log_inv_discount) {
  return static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(episodes)) / (2.0 * log_inv_discount)));
}

// Appends the base-K digits of `offset`, most significant first, as `count` actions.
void append_digits(ActionSequence& seq, std::uint64_t offset, std::size_t count, std::size_t branching) {
  std::vector<Action> digits(count);
  for (std::size_t i = count; i-- > 0;) {
    digits[i] = static_cast<Action>(offset % branching);
    offset /= branching;
  }
  for (Action a : digits) seq.push_back(a);
}

}  // namespace

std::string_view to_string(PlannerVariant variant) {
  switch (variant) {
    case PlannerVariant::kOlop: return "OLOP";
    case PlannerVariant::kKlOlop: return "KL-OLOP";
    case PlannerVariant::kKlOlop1: return "KL-OLOP(1)";
    case PlannerVariant::kOpd: return "OPD";
    case PlannerVariant::kRandom: return "Random";
    case PlannerVariant::kKlOlopNaive: return "KL-OLOP-naive";
  }
  return "?";
}

std::optional<PlannerVariant> parse_planner_variant(std::string_view name) {
  for (auto v : {PlannerVariant::kOlop, PlannerVariant::kKlOlop, PlannerVariant::kKlOlop1, PlannerVariant::kOpd,
                 PlannerVariant::kRandom, PlannerVariant::kKlOlopNaive}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

BoundConfig bound_config(PlannerVariant variant) {
  switch (variant) {
    case PlannerVariant::kOlop: return {Divergence::kQuad, ThresholdFn::kF4};
    case PlannerVariant::kKlOlop:
    case PlannerVariant::kKlOlopNaive: return {Divergence::kBernoulli, ThresholdFn::kF2};
    case PlannerVariant::kKlOlop1: return {Divergence::kBernoulli, ThresholdFn::kF1};
    default: break;
  }
  throw std::invalid_argument("bound_config: " + std::string(to_string(variant)) + " has no confidence bounds");
}

BudgetSplit budget_split(std::uint64_t budget, double discount) {
  if (!(discount > 0.0 && discount < 1.0)) throw std::invalid_argument("budget_split: discount must lie in (0, 1)");
  const double log_inv = std::log(1.0 / discount);
  // M * L(M) is nondecreasing in M, so the largest feasible M is found by bisection.
  auto cost = [&](std::uint64_t m) -> long double {
    return static_cast<long double>(m) * static_cast<long double>(horizon_for(m, log_inv));
  };
  std::uint64_t lo = 1;  // feasible: L(1) = 0
  std::uint64_t hi = std::max<std::uint64_t>(budget, 1) + 1;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (cost(mid) <= static_cast<long double>(budget)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const std::size_t horizon = horizon_for(lo, log_inv);
  if (lo < 2 || horizon < 1) {
    throw BudgetError("budget " + std::to_string(budget) + " is too small to plan with discount " +
                      std::to_string(discount) + " (needs M >= 2 episodes of length L >= 1)");
  }
  return {lo, horizon};
}

double sequence_u_value(std::span<const double> mu_upper_bounds, double discount) {
  double total = 0.0;
  double weight = discount;
  for (double u : mu_upper_bounds) {
    total += weight * u;
    weight *= discount;
  }
  return total + weight / (1.0 - discount);
}

double b_value(const LazyTree& tree, NodeId node) {
  if (node == LazyTree::root()) return tree.node(node).stats.u_value;
  double best = std::numeric_limits<double>::infinity();
  for (NodeId id = node; id != LazyTree::root(); id = tree.node(id).parent) {
    best = std::min(best, tree.node(id).stats.u_value);
  }
  return best;
}

std::vector<NodeId> best_leaves(const LazyTree& tree) {
  std::vector<NodeId> tied;
  double best = -std::numeric_limits<double>::infinity();
  tree.visit_preorder([&](NodeId id) {
    if (!tree.is_leaf(id)) return;
    const double b = tree.node(id).stats.b_value;
    if (b > best) {
      best = b;
      tied.clear();
      tied.push_back(id);
    } else if (b == best) {
      tied.push_back(id);
    }
  });
  return tied;
}

ActionSequence pick_extension(const LazyTree& tree, std::span<const NodeId> tied, Rng& rng) {
  if (tied.empty()) throw std::invalid_argument("pick_extension: no candidate leaves");
  const std::size_t horizon = tree.depth();
  const std::size_t branching = tree.branching();
  constexpr std::uint64_t kCap = std::uint64_t{1} << 62;

  std::vector<std::uint64_t> weights;
  weights.reserve(tied.size());
  std::uint64_t total = 0;
  bool exact = true;
  for (NodeId id : tied) {
    const std::size_t depth = tree.node(id).depth;
    const auto w = checked_power(branching, horizon - std::min(horizon, depth), kCap);
    if (!w || total > kCap - *w) {
      exact = false;
      break;
    }
    weights.push_back(*w);
    total += *w;
  }

  if (exact) {
    std::uint64_t r = uniform_index(rng, total);
    std::size_t i = 0;
    while (r >= weights[i]) r -= weights[i++];
    ActionSequence seq = tree.sequence(tied[i]);
    append_digits(seq, r, horizon - std::min(horizon, seq.size()), branching);
    return seq;
  }

  // Weights overflow: choose the leaf in log space, then continue action by action.
  std::size_t shallowest = horizon;
  for (NodeId id : tied) shallowest = std::min<std::size_t>(shallowest, tree.node(id).depth);
  const double log_k = std::log(static_cast<double>(branching));
  std::vector<double> relative(tied.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < tied.size(); ++i) {
    const double depth = static_cast<double>(tree.node(tied[i]).depth);
    relative[i] = std::exp((static_cast<double>(shallowest) - depth) * log_k);
    sum += relative[i];
  }
  double u = uniform_unit(rng) * sum;
  std::size_t i = 0;
  while (i + 1 < tied.size() && u >= relative[i]) u -= relative[i++];
  ActionSequence seq = tree.sequence(tied[i]);
  while (seq.size() < horizon) seq.push_back(static_cast<Action>(uniform_index(rng, branching)));
  return seq;
}

ActionSequence select_and_extend(const LazyTree& tree, Rng& rng) {
  const auto tied = best_leaves(tree);
  return pick_extension(tree, tied, rng);
}

PlanResult plan(const PlannerSpec& spec, const GenerativeModel& env, const EpisodeObserver& observer) {
  const BoundConfig config = bound_config(spec.variant);
  const std::size_t branching = env.action_count();
  if (branching < 2) throw std::invalid_argument("plan: the model needs at least two actions");
  const BudgetSplit split = budget_split(spec.budget, spec.discount);
  // Thresholds are anchored to M and constant across episodes.
  const BoundModel bounds{config.divergence, threshold(config.threshold, split.episodes)};

  LazyTree tree(branching, split.horizon);
  Rng rng(planner_stream_seed(spec.rng_seed));
  Rng sampling(sampling_stream_seed(spec.rng_seed));
  PlanResult result;

  for (std::uint64_t m = 1; m <= split.episodes; ++m) {
    tree.refresh(bounds, spec.discount);
    if (observer) observer(tree, m);
    const ActionSequence actions = select_and_extend(tree, rng);
    const std::vector<double> rewards = rollout(env, actions, sampling);
    result.samples_used += rewards.size();
    tree.record_episode(actions, rewards);
  }
  result.episodes_used = split.episodes;

  // Most played sequence: deepest leaves carry every visit count > 0.
  std::vector<NodeId> most_played;
  std::uint64_t best = 0;
  tree.visit_preorder([&](NodeId id) {
    if (!tree.is_leaf(id)) return;
    const std::uint64_t count = tree.node(id).stats.visit_count;
    if (most_played.empty() || count > best) {
      best = count;
      most_played.assign(1, id);
    } else if (count == best) {
      most_played.push_back(id);
    }
  });
  result.recommended = pick_extension(tree, most_played, rng);

  if (spec.keep_tree) {
    tree.refresh(bounds, spec.discount);
    result.tree_snapshot = std::move(tree);
  }
  return result;
}

PlanResult plan_random(const PlannerSpec& spec, const GenerativeModel& env) {
  const BudgetSplit split = budget_split(spec.budget, spec.discount);
  Rng rng(planner_stream_seed(spec.rng_seed));
  PlanResult result;
  for (std::size_t t = 0; t < split.horizon; ++t) {
    result.recommended.push_back(static_cast<Action>(uniform_index(rng, env.action_count())));
  }
  return result;
}

PlanResult run_planner(const PlannerSpec& spec, const GenerativeModel& env) {
  switch (spec.variant) {
    case PlannerVariant::kOlop:
    case PlannerVariant::kKlOlop:
    case PlannerVariant::kKlOlop1: return plan(spec, env);
    case PlannerVariant::kKlOlopNaive: return plan_naive(spec, env);
    case PlannerVariant::kOpd: return plan_opd(spec, env);
    case PlannerVariant::kRandom: return plan_random(spec, env);
  }
  throw std::invalid_argument("run_planner: unknown variant");
}

}  // namespace olop
