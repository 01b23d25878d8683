#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

#include "olop/action_sequence.hpp"
#include "olop/confidence_bounds.hpp"
#include "olop/environment.hpp"
#include "olop/lazy_tree.hpp"
#include "olop/rng.hpp"

namespace olop {

enum class PlannerVariant { kOlop, kKlOlop, kKlOlop1, kOpd, kRandom, kKlOlopNaive };

/// Display names: "OLOP", "KL-OLOP", "KL-OLOP(1)", "OPD", "Random", "KL-OLOP-naive".
std::string_view to_string(PlannerVariant variant);
std::optional<PlannerVariant> parse_planner_variant(std::string_view name);

struct PlannerSpec {
  PlannerVariant variant = PlannerVariant::kKlOlop;
  std::uint64_t budget = 100;  // generative model calls
  double discount = 0.8;
  std::uint64_t rng_seed = 0;
  bool keep_tree = false;  // attach the final tree to the result
};

/// Divergence and threshold schedule of an optimistic variant:
/// OLOP -> (QUAD, F4), KL-OLOP -> (BER, F2), KL-OLOP(1) -> (BER, F1).
/// Throws std::invalid_argument for OPD and Random.
struct BoundConfig {
  Divergence divergence;
  ThresholdFn threshold;
};
BoundConfig bound_config(PlannerVariant variant);

class BudgetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BudgetSplit {
  std::uint64_t episodes;  // M
  std::size_t horizon;     // L
};

/// M is the largest integer with M * ceil(ln M / (2 ln(1/gamma))) <= n and
/// L = ceil(ln M / (2 ln(1/gamma))). Throws BudgetError unless M >= 2 and
/// L >= 1, and std::invalid_argument for gamma outside (0, 1).
BudgetSplit budget_split(std::uint64_t budget, double discount);

struct PlanResult {
  ActionSequence recommended;  // length L
  std::uint64_t episodes_used = 0;
  std::uint64_t samples_used = 0;
  std::optional<LazyTree> tree_snapshot;
};

/// Direct evaluation of sum_{t=1..h} gamma^t U^mu_{a_{1:t}} + gamma^{h+1} / (1 - gamma)
/// from the chain of reward upper bounds along a.
double sequence_u_value(std::span<const double> mu_upper_bounds, double discount);

/// inf over t >= 1 of U_{a_{1:t}} from the tree's cached U-values (the root
/// returns its own U). The tree must have been refreshed.
double b_value(const LazyTree& tree, NodeId node);

/// Leaves of `tree` carrying the largest cached B-value, in lexicographic order.
std::vector<NodeId> best_leaves(const LazyTree& tree);

/// Picks one depth-L sequence uniformly among all the sequences that extend
/// one of `tied` leaves, i.e. leaf a weighs K^(L - |a|). The continuation below
/// the chosen leaf is part of the same uniform draw.
ActionSequence pick_extension(const LazyTree& tree, std::span<const NodeId> tied, Rng& rng);

/// Leaf with the highest B-value (ties uniform over the depth-L sequences they
/// stand for), continued uniformly to depth L. Uses the cached B-values.
ActionSequence select_and_extend(const LazyTree& tree, Rng& rng);

/// Called after the bounds refresh of each episode, before selection.
using EpisodeObserver = std::function<void(const LazyTree& tree, std::uint64_t episode)>;

/// Lazy open-loop optimistic planning over the explored-and-extended subtree.
/// Accepts the OLOP, KL-OLOP and KL-OLOP(1) variants.
PlanResult plan(const PlannerSpec& spec, const GenerativeModel& env, const EpisodeObserver& observer = {});

class TreeTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::uint64_t kNaiveMaxLeaves = std::uint64_t{1} << 20;

/// Reference planner over the complete tree of depth L: recomputes every
/// bound each episode and selects the argmax B over A^L. Consumes its random
/// stream exactly like `plan`, so both return the same sequence for the same
/// seed. Throws TreeTooLarge when K^L > kNaiveMaxLeaves.
PlanResult plan_naive(const PlannerSpec& spec, const GenerativeModel& env);

/// Optimistic planning for deterministic systems: repeatedly expands the leaf
/// with the largest sum_t gamma^t r_t + gamma^{h+1} / (1 - gamma), one sample
/// per child. Recommends the explored node of depth <= L with the best
/// observed discounted return, continued uniformly to depth L. Stochastic
/// models are accepted; their samples are then taken at face value.
PlanResult plan_opd(const PlannerSpec& spec, const GenerativeModel& env);

/// Uniform depth-L sequence; uses no samples.
PlanResult plan_random(const PlannerSpec& spec, const GenerativeModel& env);

/// Dispatches on spec.variant.
PlanResult run_planner(const PlannerSpec& spec, const GenerativeModel& env);

/// Seeds of the two random streams owned by a planning call: tie-breaking and
/// continuations, and the generative model's reward noise.
inline std::uint64_t planner_stream_seed(std::uint64_t seed) { return derive_seed(seed, 0); }
inline std::uint64_t sampling_stream_seed(std::uint64_t seed) { return derive_seed(seed, 1); }

}  // namespace olop
