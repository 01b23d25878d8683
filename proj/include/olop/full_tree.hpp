#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "olop/action_sequence.hpp"

namespace olop {

/// K^h, or nullopt when it exceeds `cap`.
inline std::optional<std::uint64_t> checked_power(std::uint64_t base, std::size_t exponent,
                                                  std::uint64_t cap = UINT64_MAX) {
  std::uint64_t value = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && value > cap / base) return std::nullopt;
    value *= base;
  }
  return value;
}

/// Level-order addressing of the complete K-ary tree of depth L. A sequence of
/// length h with base-K digits a_1..a_h maps to offset(h) + code, so children
/// of code c are c*K + a and codes increase in lexicographic order.
class FullTreeIndex {
 public:
  FullTreeIndex(std::size_t branching, std::size_t depth, std::uint64_t max_nodes)
      : branching_(branching), depth_(depth) {
    if (branching == 0) throw std::invalid_argument("FullTreeIndex: branching must be positive");
    std::uint64_t total = 0;
    std::uint64_t width = 1;
    for (std::size_t h = 0; h <= depth; ++h) {
      offsets_.push_back(total);
      total += width;
      if (total > max_nodes) throw std::length_error("FullTreeIndex: tree exceeds node guard");
      if (h < depth) width *= branching;
    }
    size_ = total;
  }

  std::size_t branching() const { return branching_; }
  std::size_t depth() const { return depth_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t offset(std::size_t h) const { return offsets_[h]; }
  std::uint64_t width(std::size_t h) const { return (h < depth_ ? offsets_[h + 1] : size_) - offsets_[h]; }

  static std::uint64_t code(const ActionSequence& a, std::size_t branching) {
    std::uint64_t c = 0;
    for (Action x : a) c = c * branching + x;
    return c;
  }
  std::uint64_t index(const ActionSequence& a) const { return offsets_[a.size()] + code(a, branching_); }

  ActionSequence decode(std::size_t h, std::uint64_t code) const {
    std::vector<Action> digits(h);
    for (std::size_t i = h; i-- > 0;) {
      digits[i] = static_cast<Action>(code % branching_);
      code /= branching_;
    }
    return ActionSequence(std::move(digits));
  }

 private:
  std::size_t branching_;
  std::size_t depth_;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> offsets_;
};

}  // namespace olop
