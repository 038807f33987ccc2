#include "mapspan/metrics.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace mapspan {

BaselineMetrics baseline_metrics(const WorkloadGraph& graph, const Mapping& mapping) {
  BaselineMetrics metrics;

  std::map<std::pair<int, int>, long long> cut_between;
  for (const auto& [u, v] : graph.edges()) {
    int bu = mapping[u];
    int bv = mapping[v];
    if (bu == bv) continue;
    ++metrics.total_cut;
    ++cut_between[{std::min(bu, bv), std::max(bu, bv)}];
  }
  for (const auto& [pair, count] : cut_between) {
    (void)pair;
    metrics.max_cut = std::max(metrics.max_cut, count);
  }

  for (int v = 0; v < graph.num_vertices(); ++v) {
    int own = mapping[v];
    std::set<int> foreign_blocks;
    for (int u : graph.neighbors(v)) {
      if (mapping[u] != own) foreign_blocks.insert(mapping[u]);
    }
    long long d = static_cast<long long>(foreign_blocks.size());
    metrics.cvol_per_block[own] += graph.weight(v) * d;
  }
  for (const auto& [block, cvol] : metrics.cvol_per_block) {
    (void)block;
    metrics.cvol_total += cvol;
    metrics.cvol_max = std::max(metrics.cvol_max, cvol);
  }
  return metrics;
}

}  // namespace mapspan
