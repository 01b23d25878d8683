#include "olop/environment.hpp"

#include <stdexcept>

namespace olop {
namespace {

class ConstantCursor final : public Cursor {
 public:
  explicit ConstantCursor(const std::vector<double>* rewards) : rewards_(rewards) {}
  double step(Action action, Rng&) override { return mean_step(action); }
  double mean_step(Action action) override { return rewards_->at(action); }
  std::unique_ptr<Cursor> clone() const override { return std::make_unique<ConstantCursor>(*this); }

 private:
  const std::vector<double>* rewards_;
};

const std::vector<double> kTwoArmRewards{1.0, 0.0};

}  // namespace

std::vector<double> rollout(const GenerativeModel& env, const ActionSequence& actions, Rng& rng) {
  auto cursor = env.reset();
  std::vector<double> rewards;
  rewards.reserve(actions.size());
  for (Action a : actions) rewards.push_back(cursor->step(a, rng));
  return rewards;
}

std::vector<double> mean_rewards(const GenerativeModel& env, const ActionSequence& actions) {
  auto cursor = env.reset();
  std::vector<double> rewards;
  rewards.reserve(actions.size());
  for (Action a : actions) rewards.push_back(cursor->mean_step(a));
  return rewards;
}

double discounted_return(const std::vector<double>& rewards, double discount) {
  double total = 0.0;
  double weight = discount;
  for (double r : rewards) {
    total += weight * r;
    weight *= discount;
  }
  return total;
}

std::unique_ptr<Cursor> TwoArmEnv::reset() const {
  return std::make_unique<ConstantCursor>(&kTwoArmRewards);
}

ConstantRewardEnv::ConstantRewardEnv(std::vector<double> action_rewards)
    : rewards_(std::move(action_rewards)) {
  if (rewards_.empty()) throw std::invalid_argument("ConstantRewardEnv: no actions");
  for (double r : rewards_) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("ConstantRewardEnv: reward outside [0, 1]");
  }
}

std::unique_ptr<Cursor> ConstantRewardEnv::reset() const {
  return std::make_unique<ConstantCursor>(&rewards_);
}

}  // namespace olop
