#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "olop/action_sequence.hpp"
#include "olop/confidence_bounds.hpp"

namespace olop {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct NodeStats {
  std::uint64_t visit_count = 0;  // T_a
  double reward_sum = 0.0;        // S_a, rewards collected at the last transition of a
  double mu_ucb = 1.0;            // U^mu_a
  double mu_lcb = 0.0;            // L^mu_a
  double u_value = 0.0;           // U_a
  double b_value = 0.0;           // B_a
};

struct TreeNode {
  NodeId parent = kNoNode;
  NodeId first_child = kNoNode;  // the K children are stored contiguously
  Action action = 0;
  std::uint32_t depth = 0;
  bool bounds_stale = true;
  NodeStats stats;
};

/// The explored subtree extended by the children of every explored node, with
/// its leaf set. Nodes are appended in creation order, so a parent always
/// precedes its children in storage.
///
/// Every node has either all K children or none; the leaves are exactly the
/// childless nodes.
class LazyTree {
 public:
  LazyTree(std::size_t branching, std::size_t depth);

  std::size_t branching() const { return branching_; }
  std::size_t depth() const { return depth_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t leaf_count() const { return leaf_count_; }
  std::uint64_t episodes() const { return nodes_.front().stats.visit_count; }

  static constexpr NodeId root() { return 0; }
  const TreeNode& node(NodeId id) const { return nodes_[id]; }
  NodeStats& stats(NodeId id) { return nodes_[id].stats; }
  bool is_leaf(NodeId id) const { return nodes_[id].first_child == kNoNode; }
  NodeId child(NodeId id, Action a) const {
    return is_leaf(id) ? kNoNode : nodes_[id].first_child + static_cast<NodeId>(a);
  }

  std::optional<NodeId> find(const ActionSequence& a) const;
  ActionSequence sequence(NodeId id) const;

  /// Leaves in lexicographic order of their sequences.
  std::vector<NodeId> leaves() const;

  /// Calls fn(id) on every node in depth-first, lexicographic order.
  template <typename Fn>
  void visit_preorder(Fn&& fn) const {
    std::vector<NodeId> stack{root()};
    while (!stack.empty()) {
      const NodeId id = stack.back();
      stack.pop_back();
      fn(id);
      if (!is_leaf(id)) {
        for (std::size_t a = branching_; a-- > 0;) stack.push_back(nodes_[id].first_child + static_cast<NodeId>(a));
      }
    }
  }

  /// Turns a leaf into an internal node by appending its K children.
  /// Returns the id of the first child.
  NodeId expand(NodeId leaf);

  /// Records one episode: every prefix of `actions` gains a visit and the
  /// reward of its last transition; prefixes missing from the tree are
  /// created together with their siblings. Returns the number of new nodes.
  std::size_t record_episode(const ActionSequence& actions, std::span<const double> rewards);

  /// Refreshes the cached bounds: U^mu and L^mu for nodes whose statistics
  /// changed since the last refresh, then U and B for every node.
  ///
  /// U is propagated as U_a = U_parent + gamma^h (U^mu_a - 1), which equals
  /// the direct discounted sum and makes unvisited bounded subtrees inherit
  /// their parent's value exactly. B_a is the minimum of U over a_{1:1}..a;
  /// the root's B is its own U.
  void refresh(const BoundModel& bounds, double discount);

  /// Number of U^mu solves performed by the last refresh.
  std::size_t last_refresh_solves() const { return last_refresh_solves_; }

 private:
  std::size_t branching_;
  std::size_t depth_;
  std::size_t leaf_count_ = 1;
  std::size_t last_refresh_solves_ = 0;
  std::vector<TreeNode> nodes_;
  std::vector<double> discount_powers_;
  double powers_for_ = -1.0;
  std::optional<BoundModel> cached_bounds_;
};

}  // namespace olop
