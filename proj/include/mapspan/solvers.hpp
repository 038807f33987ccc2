#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "mapspan/objective.hpp"
#include "mapspan/routing.hpp"
#include "mapspan/topology.hpp"
#include "mapspan/workload.hpp"

namespace mapspan {

struct SolveConfig {
  std::uint64_t seed = 1;
  int restarts = 3;
  int max_passes = 20;
  // Enumeration-node budget for the exact solver: an instance is admitted
  // when |compute bins| ^ |V| fits within this budget. Set to 0 to force the
  // heuristic path in solve().
  std::uint64_t exact_limit = std::uint64_t(1) << 24;
  std::optional<std::chrono::milliseconds> time_budget;
};

struct SolveCounters {
  long long nodes = 0;       // branch-and-bound nodes expanded
  long long improvements = 0;
  long long passes = 0;      // local search passes
  long long moves = 0;       // accepted local search moves
  long long restarts = 0;
};

struct SolveResult {
  Mapping mapping;
  MakespanReport report;  // always a fresh evaluation of mapping
  bool proven_optimal = false;
  SolveCounters iterations;
};

// Branch-and-bound over vertex-by-bin assignment. Prunes on the partial
// makespan against the incumbent and on the compute lower bound
// ceil(total_weight / |compute bins|); indistinguishable empty bins are
// branched in canonical first-use order. Throws TooLarge when the instance
// exceeds config.exact_limit and Infeasible when a nonempty graph has no
// compute bin.
SolveResult exact_solve(const WorkloadGraph& graph, const Topology& topology,
                        const RoutingOracle& oracle, const SolveConfig& config);

// Visits vertices breadth-first from a seed-derived start vertex and puts
// each on the compute bin minimizing the resulting partial makespan
// (ties: lowest current compute load, then lowest bin id).
Mapping greedy_construct(const WorkloadGraph& graph, const Topology& topology,
                         const RoutingOracle& oracle, const SolveConfig& config);

// Pass-based hill climbing on single-vertex moves. A move is accepted when
// it strictly lowers the lexicographic key (makespan, sum of squared scaled
// link loads, sum of squared compute loads); the secondary terms keep
// descent available on the plateaus of the bottleneck objective, and the
// makespan itself never increases. Stops after a pass without an accepted
// move or after max_passes.
SolveResult local_search(const WorkloadGraph& graph, const Topology& topology,
                         const RoutingOracle& oracle, Mapping start, const SolveConfig& config);

// Exact solver when the instance fits the exact_limit budget, otherwise the
// best of `restarts` independent greedy + local search pipelines with
// derived seeds (merged by makespan, then lowest restart index, so running
// restarts in parallel cannot change the answer).
SolveResult solve(const WorkloadGraph& graph, const Topology& topology,
                  const RoutingOracle& oracle, const SolveConfig& config);

// SplitMix64-style stream derivation for per-restart seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace mapspan
