#include "olop/gridworld.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <sstream>

namespace olop {
namespace {

class GridCursor final : public Cursor {
 public:
  explicit GridCursor(const GridWorld* world)
      : world_(world), position_(world->start()), visited_(world->goal_count(), false) {}

  double step(Action action, Rng& rng) override {
    if (terminated_) return 0.0;
    const double reward = advance(action);
    if (world_->noise() > 0.0 && bernoulli(rng, world_->noise())) return 1.0 - reward;
    return reward;
  }

  double mean_step(Action action) override {
    if (terminated_) return 0.0;
    const double reward = advance(action);
    const double p = world_->noise();
    return p + (1.0 - 2.0 * p) * reward;
  }

  std::unique_ptr<Cursor> clone() const override { return std::make_unique<GridCursor>(*this); }

 private:
  double advance(Action action) {
    position_ = world_->move(position_, action);
    const std::size_t cell = world_->index(position_);
    switch (world_->at(position_)) {
      case Cell::kLava:
        terminated_ = true;
        return 0.0;
      case Cell::kGoal: {
        const auto slot = static_cast<std::size_t>(world_->goal_slot(cell));
        if (visited_[slot]) return 0.0;
        visited_[slot] = true;
        return 1.0;
      }
      case Cell::kEmpty:
        return 0.0;
    }
    return 0.0;
  }

  const GridWorld* world_;
  Coord position_;
  std::vector<bool> visited_;
  bool terminated_ = false;
};

}  // namespace

GridWorld::GridWorld(int width, int height, std::vector<Cell> cells, Coord start, double noise_p)
    : width_(width), height_(height), cells_(std::move(cells)), start_(start), noise_p_(noise_p) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("GridWorld: empty grid");
  if (cells_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("GridWorld: cell count does not match dimensions");
  }
  if (start.row < 0 || start.row >= height || start.col < 0 || start.col >= width) {
    throw std::invalid_argument("GridWorld: start outside grid");
  }
  if (cells_[index(start)] != Cell::kEmpty) throw std::invalid_argument("GridWorld: start must be empty");
  if (!(noise_p >= 0.0 && noise_p < 1.0)) throw std::invalid_argument("GridWorld: noise must lie in [0, 1)");
  goal_slots_.assign(cells_.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] == Cell::kGoal) goal_slots_[i] = next++;
  }
  goal_count_ = static_cast<std::size_t>(next);
}

GridWorld GridWorld::parse(std::string_view text, double noise_p) {
  std::vector<Cell> cells;
  int width = -1;
  int height = 0;
  std::optional<Coord> start;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (width < 0) width = static_cast<int>(line.size());
    if (static_cast<int>(line.size()) != width) throw std::invalid_argument("GridWorld::parse: ragged rows");
    for (int col = 0; col < width; ++col) {
      switch (line[static_cast<std::size_t>(col)]) {
        case '.': cells.push_back(Cell::kEmpty); break;
        case 'L': cells.push_back(Cell::kLava); break;
        case 'G': cells.push_back(Cell::kGoal); break;
        case 'S':
          if (start) throw std::invalid_argument("GridWorld::parse: several start cells");
          start = Coord{height, col};
          cells.push_back(Cell::kEmpty);
          break;
        default:
          throw std::invalid_argument(std::string("GridWorld::parse: unknown cell '") +
                                      line[static_cast<std::size_t>(col)] + "'");
      }
    }
    ++height;
  }
  if (height == 0) throw std::invalid_argument("GridWorld::parse: empty map");
  if (!start) throw std::invalid_argument("GridWorld::parse: missing start cell 'S'");
  return GridWorld(width, height, std::move(cells), *start, noise_p);
}

std::string GridWorld::to_text() const {
  std::string out;
  for (int row = 0; row < height_; ++row) {
    for (int col = 0; col < width_; ++col) {
      const Coord c{row, col};
      if (c == start_) {
        out += 'S';
        continue;
      }
      switch (at(c)) {
        case Cell::kEmpty: out += '.'; break;
        case Cell::kLava: out += 'L'; break;
        case Cell::kGoal: out += 'G'; break;
      }
    }
    out += '\n';
  }
  return out;
}

Coord GridWorld::move(Coord from, Action action) const {
  Coord to = from;
  switch (action) {
    case 0: --to.row; break;
    case 1: ++to.row; break;
    case 2: --to.col; break;
    case 3: ++to.col; break;
    default: throw std::out_of_range("GridWorld::move: action out of range");
  }
  if (to.row < 0 || to.row >= height_ || to.col < 0 || to.col >= width_) return from;
  return to;
}

int GridWorld::goal_distance() const {
  std::vector<int> dist(cells_.size(), -1);
  std::queue<Coord> frontier;
  dist[index(start_)] = 0;
  frontier.push(start_);
  while (!frontier.empty()) {
    const Coord c = frontier.front();
    frontier.pop();
    if (at(c) == Cell::kGoal) return dist[index(c)];
    for (Action a = 0; a < 4; ++a) {
      const Coord n = move(c, a);
      if (dist[index(n)] >= 0 || at(n) == Cell::kLava) continue;
      dist[index(n)] = dist[index(c)] + 1;
      frontier.push(n);
    }
  }
  return -1;
}

std::unique_ptr<Cursor> GridWorld::reset() const { return std::make_unique<GridCursor>(this); }

GridWorld generate_gridworld(const GridSpec& spec, std::uint64_t seed) {
  if (spec.width <= 0 || spec.height <= 0) throw std::invalid_argument("generate_gridworld: empty grid");
  if (!(spec.lava_density >= 0.0 && spec.lava_density <= 1.0)) {
    throw std::invalid_argument("generate_gridworld: lava_density outside [0, 1]");
  }
  if (spec.goal_count < 1) throw std::invalid_argument("generate_gridworld: goal_count must be positive");
  const int limit = spec.max_goal_distance > 0 ? spec.max_goal_distance : spec.width + spec.height;
  const auto cell_count = static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height);

  for (int attempt = 0; attempt < kGridGenerationAttempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<Cell> cells(cell_count, Cell::kEmpty);
    const std::size_t start_index = uniform_index(rng, cell_count);
    const Coord start{static_cast<int>(start_index) / spec.width, static_cast<int>(start_index) % spec.width};
    for (std::size_t i = 0; i < cell_count; ++i) {
      if (i != start_index && bernoulli(rng, spec.lava_density)) cells[i] = Cell::kLava;
    }
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < cell_count; ++i) {
      if (i != start_index && cells[i] == Cell::kEmpty) free.push_back(i);
    }
    if (free.size() < static_cast<std::size_t>(spec.goal_count)) continue;
    // Partial Fisher-Yates picks distinct goal cells.
    for (std::size_t g = 0; g < static_cast<std::size_t>(spec.goal_count); ++g) {
      const std::size_t pick = g + uniform_index(rng, free.size() - g);
      std::swap(free[g], free[pick]);
      cells[free[g]] = Cell::kGoal;
    }
    GridWorld world(spec.width, spec.height, std::move(cells), start, spec.noise_p);
    const int distance = world.goal_distance();
    if (distance >= 0 && distance <= limit) return world;
  }
  throw GenerationError("generate_gridworld: no layout with a reachable goal after " +
                        std::to_string(kGridGenerationAttempts) + " attempts");
}

}  // namespace olop
