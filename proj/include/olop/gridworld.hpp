#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "olop/environment.hpp"

namespace olop {

enum class Cell : std::uint8_t { kEmpty, kLava, kGoal };

struct Coord {
  int row = 0;
  int col = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

/// Grid navigation task with four moves (0 up, 1 down, 2 left, 3 right).
///
/// Moving off the grid leaves the agent in place. Entering lava ends the
/// episode; every later step pays exactly 0. A goal pays 1 the first time it
/// is entered within an episode. With noise_p > 0 every live step's reward is
/// flipped with probability noise_p.
class GridWorld final : public GenerativeModel {
 public:
  GridWorld(int width, int height, std::vector<Cell> cells, Coord start, double noise_p = 0.0);

  /// Parses the text map: one row per line, '.' empty, 'L' lava, 'G' goal,
  /// 'S' start (an empty cell). Throws std::invalid_argument on malformed input.
  static GridWorld parse(std::string_view text, double noise_p = 0.0);
  std::string to_text() const;

  int width() const { return width_; }
  int height() const { return height_; }
  Coord start() const { return start_; }
  double noise() const { return noise_p_; }
  Cell at(Coord c) const { return cells_[index(c)]; }
  std::size_t goal_count() const { return goal_count_; }

  /// Shortest lava-free path length from the start to any goal, or -1.
  int goal_distance() const;

  std::size_t action_count() const override { return 4; }
  bool deterministic() const override { return noise_p_ == 0.0; }
  std::string name() const override { return "gridworld"; }
  std::unique_ptr<Cursor> reset() const override;

  /// Next position after `action` from `from`; off-grid moves are no-ops.
  Coord move(Coord from, Action action) const;
  std::size_t index(Coord c) const { return static_cast<std::size_t>(c.row * width_ + c.col); }
  /// Goal slot for a cell index, or -1 when the cell is not a goal.
  int goal_slot(std::size_t cell) const { return goal_slots_[cell]; }

 private:
  int width_;
  int height_;
  std::vector<Cell> cells_;
  std::vector<int> goal_slots_;
  std::size_t goal_count_ = 0;
  Coord start_;
  double noise_p_;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  int width = 8;
  int height = 8;
  double lava_density = 0.1;
  int goal_count = 1;
  /// Some goal must be reachable from the start within this many moves.
  int max_goal_distance = 0;  // 0: no limit beyond width + height
  double noise_p = 0.0;
};

inline constexpr int kGridGenerationAttempts = 100;

/// Seeded generator. The start is drawn first, then each other cell turns to
/// lava with probability lava_density, then goals are placed on remaining
/// empty cells. Layouts without a reachable goal are redrawn from derived
/// sub-seeds; throws GenerationError after kGridGenerationAttempts.
GridWorld generate_gridworld(const GridSpec& spec, std::uint64_t seed);

}  // namespace olop
