#pragma once

#include <cstdint>
#include <map>
#include <memory>

#include "olop/environment.hpp"
#include "olop/full_tree.hpp"

namespace olop {

/// Synthetic open-loop bandit tree: every action sequence a of length <= D has
/// a fixed mean reward mu(a). Rewards are Bernoulli(mu(a)) when `bernoulli`,
/// otherwise exactly mu(a). Steps past depth D pay 0.
class RandomTreeMDP final : public GenerativeModel {
 public:
  /// Draws mu uniformly in [0, 1] for every node from `seed`.
  RandomTreeMDP(std::size_t branching, std::size_t depth, bool bernoulli, std::uint64_t seed);

  /// Explicit table; sequences absent from `means` get mu = 0.
  RandomTreeMDP(std::size_t branching, std::size_t depth, bool bernoulli,
                const std::map<ActionSequence, double>& means);

  std::size_t action_count() const override { return index_.branching(); }
  bool deterministic() const override { return !bernoulli_; }
  std::string name() const override { return "random_tree"; }
  std::unique_ptr<Cursor> reset() const override;

  std::size_t depth() const { return index_.depth(); }
  double mean(const ActionSequence& a) const { return means_[index_.index(a)]; }

  /// Node guard for the explicit mean table.
  static constexpr std::uint64_t kMaxNodes = std::uint64_t{1} << 22;

 private:
  friend class TreeCursor;
  FullTreeIndex index_;
  std::vector<double> means_;
  bool bernoulli_;
};

}  // namespace olop
