#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "olop/action_sequence.hpp"
#include "olop/rng.hpp"

namespace olop {

/// Position inside one episode of a generative model. Every step is one call
/// to the generative model and counts against the planning budget.
class Cursor {
 public:
  virtual ~Cursor() = default;

  /// Applies `action` and returns a sampled reward in [0, 1].
  virtual double step(Action action, Rng& rng) = 0;

  /// Applies `action` and returns the mean of the reward distribution. All
  /// bundled models have deterministic transitions, so this stays on the same
  /// state trajectory as `step`.
  virtual double mean_step(Action action) = 0;

  virtual std::unique_ptr<Cursor> clone() const = 0;
};

/// Simulator that restarts every episode from the same initial state.
class GenerativeModel {
 public:
  virtual ~GenerativeModel() = default;

  virtual std::size_t action_count() const = 0;
  virtual bool deterministic() const = 0;
  virtual std::string name() const = 0;

  /// Fresh cursor at the initial state s1.
  virtual std::unique_ptr<Cursor> reset() const = 0;
};

/// Plays `actions` from the initial state and returns one reward per action.
std::vector<double> rollout(const GenerativeModel& env, const ActionSequence& actions, Rng& rng);

/// Mean rewards mu(a_{1:t}) along `actions`.
std::vector<double> mean_rewards(const GenerativeModel& env, const ActionSequence& actions);

/// Sum over t of gamma^t r_t, with t starting at 1.
double discounted_return(const std::vector<double>& rewards, double discount);

/// K = 2 fixture: action 0 always pays 1, action 1 always pays 0.
class TwoArmEnv final : public GenerativeModel {
 public:
  std::size_t action_count() const override { return 2; }
  bool deterministic() const override { return true; }
  std::string name() const override { return "two_arm"; }
  std::unique_ptr<Cursor> reset() const override;
};

/// K-armed fixture with a constant reward per action, used for flat
/// (all-zero) landscapes and other degenerate checks.
class ConstantRewardEnv final : public GenerativeModel {
 public:
  explicit ConstantRewardEnv(std::vector<double> action_rewards);
  std::size_t action_count() const override { return rewards_.size(); }
  bool deterministic() const override { return true; }
  std::string name() const override { return "constant"; }
  std::unique_ptr<Cursor> reset() const override;

 private:
  std::vector<double> rewards_;
};

}  // namespace olop
