#include "olop/lazy_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace olop {

LazyTree::LazyTree(std::size_t branching, std::size_t depth) : branching_(branching), depth_(depth) {
  if (branching == 0) throw std::invalid_argument("LazyTree: branching must be positive");
  nodes_.emplace_back();
}

std::optional<NodeId> LazyTree::find(const ActionSequence& a) const {
  NodeId id = root();
  for (Action x : a) {
    if (x >= branching_ || is_leaf(id)) return std::nullopt;
    id = child(id, x);
  }
  return id;
}

ActionSequence LazyTree::sequence(NodeId id) const {
  std::vector<Action> reversed;
  for (; id != root(); id = nodes_[id].parent) reversed.push_back(nodes_[id].action);
  std::reverse(reversed.begin(), reversed.end());
  return ActionSequence(std::move(reversed));
}

std::vector<NodeId> LazyTree::leaves() const {
  std::vector<NodeId> out;
  out.reserve(leaf_count_);
  visit_preorder([&](NodeId id) {
    if (is_leaf(id)) out.push_back(id);
  });
  return out;
}

NodeId LazyTree::expand(NodeId leaf) {
  if (!is_leaf(leaf)) throw std::logic_error("LazyTree::expand: node already has children");
  if (nodes_.size() + branching_ > kNoNode) throw std::length_error("LazyTree::expand: node id space exhausted");
  const auto first = static_cast<NodeId>(nodes_.size());
  const std::uint32_t child_depth = nodes_[leaf].depth + 1;
  for (std::size_t a = 0; a < branching_; ++a) {
    TreeNode n;
    n.parent = leaf;
    n.action = static_cast<Action>(a);
    n.depth = child_depth;
    nodes_.push_back(n);
  }
  nodes_[leaf].first_child = first;
  leaf_count_ += branching_ - 1;
  return first;
}

std::size_t LazyTree::record_episode(const ActionSequence& actions, std::span<const double> rewards) {
  if (actions.size() != rewards.size()) throw std::invalid_argument("record_episode: one reward per action expected");
  if (actions.size() > depth_) throw std::invalid_argument("record_episode: sequence deeper than the tree");
  for (Action a : actions) {
    if (a >= branching_) throw std::out_of_range("record_episode: action out of range");
  }
  const std::size_t before = nodes_.size();
  NodeId id = root();
  nodes_[id].stats.visit_count += 1;
  for (std::size_t t = 0; t < actions.size(); ++t) {
    if (is_leaf(id)) expand(id);
    id = child(id, actions[t]);
    TreeNode& n = nodes_[id];
    n.stats.visit_count += 1;
    n.stats.reward_sum += rewards[t];
    n.bounds_stale = true;
  }
  return nodes_.size() - before;
}

void LazyTree::refresh(const BoundModel& bounds, double discount) {
  if (powers_for_ != discount || discount_powers_.size() < depth_ + 2) {
    discount_powers_.assign(depth_ + 2, 1.0);
    for (std::size_t h = 1; h < discount_powers_.size(); ++h) discount_powers_[h] = discount_powers_[h - 1] * discount;
    powers_for_ = discount;
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  last_refresh_solves_ = 0;
  const bool bounds_changed = !cached_bounds_ || cached_bounds_->divergence != bounds.divergence ||
                              cached_bounds_->threshold != bounds.threshold;
  cached_bounds_ = bounds;

  TreeNode& top = nodes_.front();
  top.stats.u_value = discount / (1.0 - discount);
  top.stats.b_value = top.stats.u_value;
  top.bounds_stale = false;

  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    TreeNode& n = nodes_[i];
    if (n.bounds_stale || bounds_changed) {
      n.stats.mu_ucb = bounds.upper(n.stats.reward_sum, n.stats.visit_count);
      n.stats.mu_lcb = bounds.lower(n.stats.reward_sum, n.stats.visit_count);
      n.bounds_stale = false;
      ++last_refresh_solves_;
    }
    const TreeNode& parent = nodes_[n.parent];
    n.stats.u_value = parent.stats.u_value + discount_powers_[n.depth] * (n.stats.mu_ucb - 1.0);
    const double inherited = n.parent == root() ? kInf : parent.stats.b_value;
    n.stats.b_value = std::min(inherited, n.stats.u_value);
  }
}

}  // namespace olop
