#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace olop {

using Action = std::uint32_t;

/// A finite word over the action alphabet. Doubles as the address of a node
/// in the look-ahead tree; the empty sequence is the root.
class ActionSequence {
 public:
  ActionSequence() = default;
  ActionSequence(std::initializer_list<Action> actions) : actions_(actions) {}
  explicit ActionSequence(std::vector<Action> actions) : actions_(std::move(actions)) {}

  std::size_t size() const { return actions_.size(); }
  bool empty() const { return actions_.empty(); }
  Action operator[](std::size_t i) const { return actions_[i]; }
  Action back() const { return actions_.back(); }

  void push_back(Action a) { actions_.push_back(a); }
  void pop_back() { actions_.pop_back(); }
  void reserve(std::size_t n) { actions_.reserve(n); }

  /// First `length` actions, a_{1:length}.
  ActionSequence prefix(std::size_t length) const;
  bool has_prefix(const ActionSequence& other) const;

  auto begin() const { return actions_.begin(); }
  auto end() const { return actions_.end(); }
  const std::vector<Action>& actions() const { return actions_; }

  /// Compact rendering, e.g. "0.3.1"; the root renders as "()".
  std::string to_string() const;

  friend auto operator<=>(const ActionSequence&, const ActionSequence&) = default;
  friend bool operator==(const ActionSequence&, const ActionSequence&) = default;

 private:
  std::vector<Action> actions_;
};

}  // namespace olop
