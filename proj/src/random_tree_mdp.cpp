#include "olop/random_tree_mdp.hpp"

#include <stdexcept>

namespace olop {

class TreeCursor final : public Cursor {
 public:
  explicit TreeCursor(const RandomTreeMDP* mdp) : mdp_(mdp) {}

  double step(Action action, Rng& rng) override {
    const double mu = mean_step(action);
    if (!mdp_->bernoulli_ || depth_ > mdp_->index_.depth()) return mu;
    return bernoulli(rng, mu) ? 1.0 : 0.0;
  }

  double mean_step(Action action) override {
    if (action >= mdp_->index_.branching()) throw std::out_of_range("RandomTreeMDP: action out of range");
    ++depth_;
    if (depth_ > mdp_->index_.depth()) return 0.0;
    code_ = code_ * mdp_->index_.branching() + action;
    return mdp_->means_[mdp_->index_.offset(depth_) + code_];
  }

  std::unique_ptr<Cursor> clone() const override { return std::make_unique<TreeCursor>(*this); }

 private:
  const RandomTreeMDP* mdp_;
  std::size_t depth_ = 0;
  std::uint64_t code_ = 0;
};

RandomTreeMDP::RandomTreeMDP(std::size_t branching, std::size_t depth, bool bernoulli, std::uint64_t seed)
    : index_(branching, depth, kMaxNodes), means_(index_.size(), 0.0), bernoulli_(bernoulli) {
  Rng rng(seed);
  // The root carries no reward.
  for (std::uint64_t i = 1; i < means_.size(); ++i) means_[i] = uniform_unit(rng);
}

RandomTreeMDP::RandomTreeMDP(std::size_t branching, std::size_t depth, bool bernoulli,
                             const std::map<ActionSequence, double>& means)
    : index_(branching, depth, kMaxNodes), means_(index_.size(), 0.0), bernoulli_(bernoulli) {
  for (const auto& [seq, mu] : means) {
    if (seq.empty() || seq.size() > depth) throw std::invalid_argument("RandomTreeMDP: sequence length out of range");
    for (Action a : seq) {
      if (a >= branching) throw std::invalid_argument("RandomTreeMDP: action out of range");
    }
    if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("RandomTreeMDP: mean outside [0, 1]");
    means_[index_.index(seq)] = mu;
  }
}

std::unique_ptr<Cursor> RandomTreeMDP::reset() const { return std::make_unique<TreeCursor>(this); }

}  // namespace olop
