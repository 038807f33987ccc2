#pragma once

// Deterministic random instances for property and acceptance tests. All
// randomness flows through the passed-in engine; raw engine output is used
// directly (std::uniform_int_distribution is not portable across standard
// libraries, engine output is).

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "common/naive_eval.hpp"
#include "mapspan/objective.hpp"
#include "mapspan/routing.hpp"
#include "mapspan/topology.hpp"
#include "mapspan/workload.hpp"

namespace testsupport {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

struct GenParams {
  int max_vertices = 30;
  int max_bins = 8;
  bool allow_routed = true;
  bool allow_routers = true;
  bool allow_weights = true;
  bool allow_multipath = true;
  bool allow_link_factors = true;
  int max_k = 3;
  int max_compute_bins = 0;  // 0 = unbounded
};

struct Instance {
  mapspan::WorkloadGraph graph{mapspan::WorkloadGraph::from_adjacency({}, {})};
  mapspan::Topology topology{mapspan::build_tree_topology(1, {})};
  std::unique_ptr<mapspan::RoutingOracle> oracle;
  NaiveRoutes routes;                  // independent route source
  mapspan::RouteTable raw_table;       // empty for tree topologies
  std::vector<int> compute;
};

inline mapspan::Rational random_factor(std::mt19937_64& rng) {
  static const std::pair<long long, long long> choices[] = {
      {1, 1}, {2, 1}, {3, 1}, {1, 2}, {3, 2}, {1, 4}, {5, 2}, {4, 1}};
  auto [p, q] = choices[draw(rng, 8)];
  return mapspan::Rational(p, q);
}

// All simple paths between a and b over the given links, DFS, capped.
inline void enumerate_paths(const mapspan::Topology& topo, int at, int b, std::vector<int>& links,
                            std::vector<bool>& visited, std::vector<std::vector<int>>& out,
                            size_t cap) {
  if (out.size() >= cap) return;
  if (at == b) {
    out.push_back(links);
    return;
  }
  for (int l = 0; l < topo.num_links(); ++l) {
    const mapspan::Link& link = topo.link(l);
    int next = -1;
    if (link.a == at) next = link.b;
    if (link.b == at) next = link.a;
    if (next < 0 || visited[static_cast<size_t>(next)]) continue;
    visited[static_cast<size_t>(next)] = true;
    links.push_back(l);
    enumerate_paths(topo, next, b, links, visited, out, cap);
    links.pop_back();
    visited[static_cast<size_t>(next)] = false;
  }
}

inline std::vector<std::vector<int>> all_simple_paths(const mapspan::Topology& topo, int a, int b,
                                                      size_t cap = 64) {
  std::vector<std::vector<int>> out;
  std::vector<int> links;
  std::vector<bool> visited(static_cast<size_t>(topo.num_bins()), false);
  visited[static_cast<size_t>(a)] = true;
  enumerate_paths(topo, a, b, links, visited, out, cap);
  return out;
}

inline Instance random_instance(std::mt19937_64& rng, const GenParams& params) {
  Instance inst;

  // --- topology ---
  int bins = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(params.max_bins)));
  std::vector<std::pair<int, int>> links;
  for (int b = 1; b < bins; ++b)
    links.emplace_back(static_cast<int>(draw(rng, static_cast<std::uint64_t>(b))), b);

  bool routed = params.allow_routed && bins >= 2 && draw(rng, 2) == 0;
  if (routed) {
    // tree links already come normalized as (parent, child) with parent < child
    std::set<std::pair<int, int>> have(links.begin(), links.end());
    int extra = static_cast<int>(draw(rng, 4));
    for (int i = 0; i < extra; ++i) {
      int a = static_cast<int>(draw(rng, static_cast<std::uint64_t>(bins)));
      int b = static_cast<int>(draw(rng, static_cast<std::uint64_t>(bins)));
      if (a == b) continue;
      if (!have.insert({std::min(a, b), std::max(a, b)}).second) continue;
      links.emplace_back(std::min(a, b), std::max(a, b));
    }
  }

  std::set<int> routers;
  if (params.allow_routers && bins >= 2) {
    for (int b = 0; b < bins; ++b) {
      if (draw(rng, 4) == 0) routers.insert(b);
    }
    if (static_cast<int>(routers.size()) == bins) routers.erase(static_cast<int>(draw(rng, static_cast<std::uint64_t>(bins))));
  }
  if (params.max_compute_bins > 0) {
    // Demote extra compute bins to routers to honor the cap.
    std::vector<int> comp;
    for (int b = 0; b < bins; ++b) {
      if (!routers.count(b)) comp.push_back(b);
    }
    while (static_cast<int>(comp.size()) > params.max_compute_bins) {
      size_t pick = draw(rng, comp.size());
      routers.insert(comp[pick]);
      comp.erase(comp.begin() + static_cast<long>(pick));
    }
  }

  std::map<int, mapspan::Rational> factors;
  if (params.allow_link_factors) {
    for (int l = 0; l < static_cast<int>(links.size()); ++l) {
      if (draw(rng, 3) == 0) factors.emplace(l, random_factor(rng));
    }
  }
  mapspan::Rational global_f = random_factor(rng);

  inst.topology = routed
                      ? mapspan::build_routed_topology(bins, links, routers, factors, global_f)
                      : mapspan::build_tree_topology(bins, links, routers, factors, global_f);
  inst.compute = mapspan::compute_bins(inst.topology);

  // --- routes ---
  if (routed) {
    inst.routes.use_tree_bfs = false;
    for (size_t i = 0; i < inst.compute.size(); ++i) {
      for (size_t j = i + 1; j < inst.compute.size(); ++j) {
        int a = inst.compute[i];
        int b = inst.compute[j];
        auto paths = all_simple_paths(inst.topology, a, b);
        if (paths.empty()) throw std::runtime_error("generator: no path between compute bins");
        int k = 1;
        if (params.allow_multipath) {
          int limit = std::min<int>(params.max_k, static_cast<int>(paths.size()));
          k = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(limit)));
        }
        // deterministic shuffle-pick of k distinct paths
        for (size_t p = paths.size(); p > 1; --p)
          std::swap(paths[p - 1], paths[draw(rng, p)]);
        paths.resize(static_cast<size_t>(k));
        inst.raw_table[{a, b}] = paths;
        inst.routes.table[{std::min(a, b), std::max(a, b)}] = paths;
      }
    }
    inst.oracle = std::make_unique<mapspan::TableOracle>(inst.topology, inst.raw_table);
  } else {
    inst.routes.use_tree_bfs = true;
    inst.oracle = std::make_unique<mapspan::TreePathOracle>(inst.topology);
  }

  // --- workload graph ---
  int n = static_cast<int>(draw(rng, static_cast<std::uint64_t>(params.max_vertices) + 1));
  std::vector<std::vector<int>> adjacency(static_cast<size_t>(n));
  if (n >= 2) {
    int target_edges = static_cast<int>(draw(rng, static_cast<std::uint64_t>(2 * n) + 1));
    std::set<std::pair<int, int>> chosen;
    for (int i = 0; i < target_edges; ++i) {
      int u = static_cast<int>(draw(rng, static_cast<std::uint64_t>(n)));
      int v = static_cast<int>(draw(rng, static_cast<std::uint64_t>(n)));
      if (u == v) continue;
      if (!chosen.insert({std::min(u, v), std::max(u, v)}).second) continue;
      adjacency[static_cast<size_t>(std::min(u, v))].push_back(std::max(u, v));
      adjacency[static_cast<size_t>(std::max(u, v))].push_back(std::min(u, v));
    }
  }
  std::vector<long long> weights(static_cast<size_t>(n), 1);
  if (params.allow_weights && draw(rng, 2) == 0) {
    for (auto& w : weights) w = 1 + static_cast<long long>(draw(rng, 10));
  }
  inst.graph = mapspan::WorkloadGraph::from_adjacency(std::move(adjacency), std::move(weights));

  return inst;
}

inline mapspan::Mapping random_feasible_mapping(std::mt19937_64& rng, const Instance& inst) {
  mapspan::Mapping mapping;
  mapping.bin_of.resize(static_cast<size_t>(inst.graph.num_vertices()));
  for (auto& b : mapping.bin_of)
    b = inst.compute[draw(rng, inst.compute.size())];
  return mapping;
}

}  // namespace testsupport
