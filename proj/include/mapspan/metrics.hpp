#pragma once

#include <map>

#include "mapspan/objective.hpp"
#include "mapspan/workload.hpp"

namespace mapspan {

// The classical cut/volume objectives, computed for the same
// (graph, mapping) so makespan-driven mappings can be compared against
// cut-driven ones. Edge weights are fixed at 1 and c(v) is the vertex
// weight; blocks are the nonempty compute bins.
struct BaselineMetrics {
  long long total_cut = 0;
  long long max_cut = 0;
  std::map<int, long long> cvol_per_block;  // keyed by bin id, nonempty blocks only
  long long cvol_total = 0;
  long long cvol_max = 0;
};

BaselineMetrics baseline_metrics(const WorkloadGraph& graph, const Mapping& mapping);

}  // namespace mapspan
