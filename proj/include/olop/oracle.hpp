#pragma once

#include <cstdint>
#include <vector>

#include "olop/action_sequence.hpp"
#include "olop/environment.hpp"
#include "olop/full_tree.hpp"

namespace olop {

/// Exact depth-L truncated values V_L(a) = max over b in aA^{L-|a|} of
/// sum_{t=1..L} gamma^t mu(b_{1:t}) for every |a| <= L, stored in
/// level order.
class ValueTable {
 public:
  ValueTable(FullTreeIndex index, std::vector<double> values, double discount);

  double value(const ActionSequence& a) const { return values_[index_.index(a)]; }
  double optimum() const { return values_.front(); }
  std::size_t horizon() const { return index_.depth(); }
  std::size_t branching() const { return index_.branching(); }
  /// Rewards beyond L can add at most gamma^{L+1} / (1 - gamma).
  double truncation_bound() const { return truncation_bound_; }
  /// Some depth-L sequence attaining the optimum (first in lexicographic order).
  ActionSequence argmax() const;

 private:
  FullTreeIndex index_;
  std::vector<double> values_;
  double truncation_bound_;
};

inline constexpr std::uint64_t kOracleMaxSequences = std::uint64_t{1} << 22;

/// Backward recursion over the complete tree of depth L using the model's
/// mean rewards. Throws TreeTooLarge-style std::length_error when
/// K^L > kOracleMaxSequences.
ValueTable exact_values(const GenerativeModel& env, double discount, std::size_t horizon);

enum class RegretMode { kSequence, kFirstAction };

/// V_L(empty) - V_L(a), where a is the whole recommendation (kSequence) or its
/// first action (kFirstAction). Clamped at 0.
double simple_regret(const ValueTable& table, const ActionSequence& recommended, RegretMode mode);

/// Optimum and first-action values without materializing the table; a
/// depth-first search with the same enumeration guard.
struct RootValues {
  double optimum = 0.0;
  std::vector<double> first_action;  // V_L(a) for each a in A
};
RootValues root_values(const GenerativeModel& env, double discount, std::size_t horizon);

/// sum_{t=1..|a|} gamma^t mu(a_{1:t}), the expected return of playing a.
double sequence_value(const GenerativeModel& env, const ActionSequence& actions, double discount);

}  // namespace olop
