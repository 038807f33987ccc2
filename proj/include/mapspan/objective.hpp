#pragma once

#include <set>
#include <utility>
#include <vector>

#include "mapspan/rational.hpp"
#include "mapspan/routing.hpp"
#include "mapspan/topology.hpp"
#include "mapspan/workload.hpp"

namespace mapspan {

using BigInt = __int128;

// Total assignment of workload vertices to bins. Feasible when every target
// is a compute bin.
struct Mapping {
  std::vector<int> bin_of;

  int size() const { return static_cast<int>(bin_of.size()); }
  int operator[](int v) const { return bin_of.at(static_cast<size_t>(v)); }

  bool operator==(const Mapping& other) const { return bin_of == other.bin_of; }
  bool operator!=(const Mapping& other) const { return !(*this == other); }
};

// Throws InfeasibleMapping unless the mapping is total, in range, and avoids
// router bins.
void validate_mapping(const WorkloadGraph& graph, const Topology& topology,
                      const Mapping& mapping);

struct Bottleneck {
  enum class Kind { Compute, Communication };

  Kind kind = Kind::Compute;
  int id = 0;  // bin id or link id, depending on kind

  bool operator==(const Bottleneck& other) const {
    return kind == other.kind && id == other.id;
  }
  bool operator!=(const Bottleneck& other) const { return !(*this == other); }
};

// Everything evaluate() knows about one mapping. The makespan is
// max(max_b comp(b), max_l factor(l) * comm(l)), the max over an empty set
// being 0. Ties in the bottleneck tag break compute-first, then lowest id,
// so reports are deterministic.
struct MakespanReport {
  std::vector<long long> comp_per_bin;
  std::vector<Rational> comm_per_link;
  std::vector<Rational> scaled_comm_per_link;
  Rational makespan;
  Bottleneck bottleneck;

  bool operator==(const MakespanReport& other) const {
    return comp_per_bin == other.comp_per_bin && comm_per_link == other.comm_per_link &&
           scaled_comm_per_link == other.scaled_comm_per_link && makespan == other.makespan &&
           bottleneck == other.bottleneck;
  }
  bool operator!=(const MakespanReport& other) const { return !(*this == other); }
};

// Sum of the weights of the vertices mapped to `bin`. Assumes a feasible
// mapping; a router bin then reports 0 by construction.
long long comp_load(const WorkloadGraph& graph, const Mapping& mapping, int bin);

// Load on one link: every cut edge contributes per_path_weight for each of
// its routes that uses the link. Edges internal to a bin route over the
// empty path and contribute nothing.
Rational comm_load(const WorkloadGraph& graph, const Mapping& mapping,
                   const RoutingOracle& oracle, int link);

MakespanReport evaluate(const WorkloadGraph& graph, const Mapping& mapping,
                        const Topology& topology, const RoutingOracle& oracle);

// What move_delta reports for one candidate move. sumsq fields are the
// secondary objective keys used by local search to order moves that tie on
// the makespan.
struct MoveDelta {
  Rational makespan;
  Rational sumsq_scaled_comm;
  BigInt sumsq_comp = 0;
  std::vector<std::pair<int, long long>> comp_changes;    // (bin, new load)
  std::vector<std::pair<int, Rational>> comm_changes;     // (link, new load)
  std::vector<std::pair<int, Rational>> scaled_changes;   // (link, new scaled load)
};

// Incremental makespan bookkeeping for single-vertex moves. Caches per-bin
// loads, per-link loads, and each edge's current route contributions, so a
// move touches only the routes of the moved vertex's bin pairs. Single
// owner; clone freely for parallel multistart.
class IncrementalState {
public:
  IncrementalState(const WorkloadGraph& graph, const Topology& topology,
                   const RoutingOracle& oracle, Mapping mapping);

  const Mapping& mapping() const { return mapping_; }
  Rational makespan() const;
  Rational sumsq_scaled_comm() const { return sumsq_scaled_; }
  BigInt sumsq_comp() const { return sumsq_comp_; }

  // The report evaluate() would produce after moving `vertex` to
  // `target_bin`, without mutating this state. Throws InfeasibleTarget for
  // router targets.
  MoveDelta move_delta(int vertex, int target_bin) const;

  void apply_move(int vertex, int target_bin);

  // Same result as a fresh evaluate() of mapping().
  MakespanReport report() const;

private:
  struct LinkDelta {
    std::vector<std::pair<int, Rational>> entries;  // (link, signed contribution change)
  };
  LinkDelta link_changes(int vertex, int target_bin) const;

  const WorkloadGraph* graph_;
  const Topology* topology_;
  const RoutingOracle* oracle_;
  Mapping mapping_;

  std::vector<long long> comp_;
  std::vector<Rational> comm_;
  std::vector<Rational> scaled_;
  std::multiset<long long> comp_values_;    // compute bins only
  std::multiset<Rational> scaled_values_;   // all links
  Rational sumsq_scaled_;
  BigInt sumsq_comp_ = 0;
  std::vector<std::vector<std::pair<int, Rational>>> edge_contrib_;  // per edge: (link, amount)
};

}  // namespace mapspan
