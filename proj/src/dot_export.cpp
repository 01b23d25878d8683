#include "olop/dot_export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace olop {
namespace {

constexpr double kMaxPenWidth = 10.0;

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string tree_to_dot(const LazyTree& tree, std::size_t max_depth) {
  std::string out = "digraph tree {\n  node [shape=circle, fontsize=10];\n";
  const double root_visits = static_cast<double>(std::max<std::uint64_t>(1, tree.node(LazyTree::root()).stats.visit_count));
  tree.visit_preorder([&](NodeId id) {
    const TreeNode& n = tree.node(id);
    if (n.depth > max_depth) return;
    out += "  n" + std::to_string(id) + " [label=\"T=" + std::to_string(n.stats.visit_count) +
           " U=" + format_value(n.stats.u_value) + "\"];\n";
    if (id == LazyTree::root()) return;
    char width[32];
    std::snprintf(width, sizeof width, "%.3f",
                  kMaxPenWidth * static_cast<double>(n.stats.visit_count) / root_visits);
    out += "  n" + std::to_string(n.parent) + " -> n" + std::to_string(id) + " [label=\"" +
           std::to_string(n.action) + "\", penwidth=" + width + "];\n";
  });
  out += "}\n";
  return out;
}

void export_tree(const PlanResult& result, const std::filesystem::path& path, std::size_t max_depth) {
  if (!result.tree_snapshot) throw std::invalid_argument("export_tree: plan result has no tree snapshot");
  std::ofstream file(path);
  if (!file) throw std::runtime_error("export_tree: cannot open " + path.string());
  file << tree_to_dot(*result.tree_snapshot, max_depth);
  if (!file) throw std::runtime_error("export_tree: write failed for " + path.string());
}

}  // namespace olop
