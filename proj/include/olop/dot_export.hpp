#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>

#include "olop/lazy_tree.hpp"
#include "olop/planner.hpp"

namespace olop {

/// Graphviz digraph of the tree down to `max_depth`: one node per tree node
/// labelled "T=<visits> U=<U-value, 3 decimals>", edge pen width proportional
/// to the child's visit count.
std::string tree_to_dot(const LazyTree& tree, std::size_t max_depth = std::numeric_limits<std::size_t>::max());

/// Writes the result's tree snapshot as DOT. Throws std::invalid_argument when
/// the result carries no snapshot and std::runtime_error on I/O failure.
void export_tree(const PlanResult& result, const std::filesystem::path& path,
                 std::size_t max_depth = std::numeric_limits<std::size_t>::max());

}  // namespace olop
