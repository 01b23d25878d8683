#include "olop/action_sequence.hpp"

#include <algorithm>

namespace olop {

ActionSequence ActionSequence::prefix(std::size_t length) const {
  length = std::min(length, actions_.size());
  return ActionSequence(std::vector<Action>(actions_.begin(), actions_.begin() + length));
}

bool ActionSequence::has_prefix(const ActionSequence& other) const {
  return other.size() <= size() && std::equal(other.begin(), other.end(), begin());
}

std::string ActionSequence::to_string() const {
  if (actions_.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(actions_[i]);
  }
  return out;
}

}  // namespace olop
