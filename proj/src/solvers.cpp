#include "mapspan/solvers.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "mapspan/errors.hpp"

namespace mapspan {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

void check_config(const SolveConfig& config) {
  if (config.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (config.max_passes < 1) throw std::invalid_argument("max_passes must be at least 1");
}

// |compute bins| ^ |V| <= limit, overflow-safe.
bool within_exact_limit(int num_compute, int num_vertices, std::uint64_t limit) {
  if (num_vertices == 0) return limit > 0;
  if (num_compute <= 0) return false;
  unsigned __int128 nodes = 1;
  for (int i = 0; i < num_vertices; ++i) {
    nodes *= static_cast<unsigned>(num_compute);
    if (nodes > limit) return false;
  }
  return true;
}

std::vector<int> require_compute_bins(const WorkloadGraph& graph, const Topology& topology) {
  std::vector<int> bins = compute_bins(topology);
  if (bins.empty() && graph.num_vertices() > 0)
    throw Error(ErrorCode::Infeasible, "no compute bins for a nonempty graph");
  return bins;
}

// Vertices in breadth-first order; components are entered at `start` first,
// then at the lowest unvisited id.
std::vector<int> bfs_order(const WorkloadGraph& graph, int start) {
  const int n = graph.num_vertices();
  std::vector<int> order;
  order.reserve(static_cast<size_t>(n));
  std::vector<bool> visited(static_cast<size_t>(n), false);
  std::queue<int> queue;
  auto enter = [&](int s) {
    visited[static_cast<size_t>(s)] = true;
    queue.push(s);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop();
      order.push_back(v);
      for (int u : graph.neighbors(v)) {
        if (!visited[static_cast<size_t>(u)]) {
          visited[static_cast<size_t>(u)] = true;
          queue.push(u);
        }
      }
    }
  };
  if (n > 0) enter(start);
  for (int v = 0; v < n; ++v) {
    if (!visited[static_cast<size_t>(v)]) enter(v);
  }
  return order;
}

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

// --- bin symmetry ----------------------------------------------------------
//
// Two compute bins are interchangeable if transposing them (all other bins
// fixed) preserves router flags, the link set with its factors, and every
// compute-pair route set. Transposability is transitive (conjugating one
// valid swap by another yields the third), so grouping by a representative
// is sound. The check queries the oracle directly, so it is valid for any
// oracle, table or tree.

std::vector<std::vector<int>> canonical_routes(const RouteSet& rs,
                                               const std::map<int, int>& link_perm) {
  std::vector<std::vector<int>> out;
  out.reserve(rs.paths.size());
  for (const auto& path : rs.paths) {
    std::vector<int> links;
    links.reserve(path.size());
    for (int l : path) {
      auto it = link_perm.find(l);
      links.push_back(it == link_perm.end() ? l : it->second);
    }
    std::sort(links.begin(), links.end());
    out.push_back(std::move(links));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool bins_transposable(int b1, int b2, const Topology& topology, const RoutingOracle& oracle,
                       const std::vector<int>& compute) {
  auto swap_bin = [&](int b) { return b == b1 ? b2 : (b == b2 ? b1 : b); };

  std::map<std::pair<int, int>, int> link_of;
  for (int l = 0; l < topology.num_links(); ++l)
    link_of[{topology.link(l).a, topology.link(l).b}] = l;

  std::map<int, int> link_perm;
  for (int l = 0; l < topology.num_links(); ++l) {
    int a = swap_bin(topology.link(l).a);
    int b = swap_bin(topology.link(l).b);
    auto it = link_of.find({std::min(a, b), std::max(a, b)});
    if (it == link_of.end()) return false;
    int mapped = it->second;
    if (!(topology.factor(l) == topology.factor(mapped))) return false;
    link_perm[l] = mapped;
  }

  for (size_t i = 0; i < compute.size(); ++i) {
    for (size_t j = i + 1; j < compute.size(); ++j) {
      int a = compute[i];
      int b = compute[j];
      try {
        RouteSet original = oracle.route(a, b);
        RouteSet swapped = oracle.route(swap_bin(a), swap_bin(b));
        if (original.paths.size() != swapped.paths.size()) return false;
        if (canonical_routes(original, link_perm) != canonical_routes(swapped, {})) return false;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::MissingRoute) return false;
        throw;
      }
    }
  }
  return true;
}

// class_of[b] = lowest-id bin interchangeable with b (compute bins only).
std::vector<int> bin_symmetry_classes(const Topology& topology, const RoutingOracle& oracle,
                                      const std::vector<int>& compute) {
  std::vector<int> class_of(static_cast<size_t>(topology.num_bins()), -1);
  for (int b : compute) class_of[static_cast<size_t>(b)] = b;
  // The pairwise check is quartic in the bin count; desk-scale instances
  // are tiny, but guard against pathological configs.
  if (topology.num_bins() > 24 || compute.size() < 2) return class_of;
  for (size_t i = 0; i < compute.size(); ++i) {
    int b = compute[i];
    if (class_of[static_cast<size_t>(b)] != b) continue;
    for (size_t j = i + 1; j < compute.size(); ++j) {
      int c = compute[j];
      if (class_of[static_cast<size_t>(c)] != c) continue;
      if (bins_transposable(b, c, topology, oracle, compute))
        class_of[static_cast<size_t>(c)] = b;
    }
  }
  return class_of;
}

// --- exact search -----------------------------------------------------------

class ExactSearcher {
public:
  ExactSearcher(const WorkloadGraph& graph, const Topology& topology, const RoutingOracle& oracle,
                const std::vector<int>& compute)
      : graph_(graph),
        topology_(topology),
        oracle_(oracle),
        compute_(compute),
        order_(bfs_order(graph, 0)),
        class_of_(bin_symmetry_classes(topology, oracle, compute)),
        comp_(static_cast<size_t>(topology.num_bins()), 0),
        comm_(static_cast<size_t>(topology.num_links())),
        scaled_(static_cast<size_t>(topology.num_links())),
        assigned_(static_cast<size_t>(graph.num_vertices()), -1) {
    long long width = static_cast<long long>(compute.size());
    lower_bound_ = Rational(ceil_div(total_weight(graph), width));

    // Any single compute bin is a feasible incumbent with makespan equal to
    // the total weight; the search then only needs strict improvements.
    incumbent_mapping_.bin_of.assign(static_cast<size_t>(graph.num_vertices()), compute.front());
    incumbent_ = Rational(total_weight(graph));
  }

  SolveResult run() {
    dfs(0, Rational(0));
    SolveResult result;
    result.mapping = incumbent_mapping_;
    result.report = evaluate(graph_, result.mapping, topology_, oracle_);
    result.proven_optimal = true;
    result.iterations = counters_;
    return result;
  }

private:
  void dfs(int depth, Rational current_max) {
    ++counters_.nodes;
    if (incumbent_ <= Rational::max(current_max, lower_bound_)) return;
    if (depth == graph_.num_vertices()) {
      incumbent_ = current_max;
      incumbent_mapping_.bin_of.assign(assigned_.begin(), assigned_.end());
      ++counters_.improvements;
      return;
    }
    int v = order_[static_cast<size_t>(depth)];
    long long w = graph_.weight(v);

    for (int b : compute_) {
      if (comp_[static_cast<size_t>(b)] == 0 && !first_empty_in_class(b)) continue;

      std::vector<std::pair<int, std::pair<Rational, Rational>>> touched;
      Rational child_max = current_max;

      comp_[static_cast<size_t>(b)] += w;
      child_max = Rational::max(child_max, Rational(comp_[static_cast<size_t>(b)]));
      for (int u : graph_.neighbors(v)) {
        int bu = assigned_[static_cast<size_t>(u)];
        if (bu < 0 || bu == b) continue;
        RouteSet rs = oracle_.route(b, bu);
        for (const auto& path : rs.paths) {
          for (int l : path) {
            touched.emplace_back(
                l, std::make_pair(comm_[static_cast<size_t>(l)], scaled_[static_cast<size_t>(l)]));
            comm_[static_cast<size_t>(l)] += rs.per_path_weight;
            scaled_[static_cast<size_t>(l)] =
                topology_.factor(l) * comm_[static_cast<size_t>(l)];
            child_max = Rational::max(child_max, scaled_[static_cast<size_t>(l)]);
          }
        }
      }

      if (child_max < incumbent_) {
        assigned_[static_cast<size_t>(v)] = b;
        dfs(depth + 1, child_max);
        assigned_[static_cast<size_t>(v)] = -1;
      }

      for (auto it = touched.rbegin(); it != touched.rend(); ++it) {
        comm_[static_cast<size_t>(it->first)] = it->second.first;
        scaled_[static_cast<size_t>(it->first)] = it->second.second;
      }
      comp_[static_cast<size_t>(b)] -= w;
    }
  }

  bool first_empty_in_class(int b) const {
    int cls = class_of_[static_cast<size_t>(b)];
    for (int c : compute_) {
      if (c >= b) break;
      if (class_of_[static_cast<size_t>(c)] == cls && comp_[static_cast<size_t>(c)] == 0)
        return false;
    }
    return true;
  }

  const WorkloadGraph& graph_;
  const Topology& topology_;
  const RoutingOracle& oracle_;
  const std::vector<int>& compute_;
  std::vector<int> order_;
  std::vector<int> class_of_;
  std::vector<long long> comp_;
  std::vector<Rational> comm_;
  std::vector<Rational> scaled_;
  std::vector<int> assigned_;
  Rational lower_bound_;
  Rational incumbent_;
  Mapping incumbent_mapping_;
  SolveCounters counters_;
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ ((index + 1) * 0x9E3779B97F4A7C15ull));
}

SolveResult exact_solve(const WorkloadGraph& graph, const Topology& topology,
                        const RoutingOracle& oracle, const SolveConfig& config) {
  check_config(config);
  std::vector<int> compute = require_compute_bins(graph, topology);

  if (graph.num_vertices() == 0) {
    SolveResult result;
    result.mapping.bin_of = {};
    result.report = evaluate(graph, result.mapping, topology, oracle);
    result.proven_optimal = true;
    return result;
  }
  if (!within_exact_limit(static_cast<int>(compute.size()), graph.num_vertices(),
                          config.exact_limit))
    throw Error(ErrorCode::TooLarge,
                "instance exceeds the exact solver budget of " +
                    std::to_string(config.exact_limit) + " enumeration nodes");

  return ExactSearcher(graph, topology, oracle, compute).run();
}

Mapping greedy_construct(const WorkloadGraph& graph, const Topology& topology,
                         const RoutingOracle& oracle, const SolveConfig& config) {
  std::vector<int> compute = require_compute_bins(graph, topology);
  const int n = graph.num_vertices();
  Mapping mapping;
  mapping.bin_of.assign(static_cast<size_t>(n), -1);
  if (n == 0) return mapping;

  int start = static_cast<int>(splitmix64(config.seed) % static_cast<std::uint64_t>(n));
  std::vector<int> order = bfs_order(graph, start);

  std::vector<long long> comp(static_cast<size_t>(topology.num_bins()), 0);
  std::vector<Rational> comm(static_cast<size_t>(topology.num_links()));
  Rational running_max;

  std::map<int, Rational> additions;
  for (int v : order) {
    long long w = graph.weight(v);
    int best_bin = -1;
    Rational best_max;
    long long best_load = 0;

    for (int b : compute) {
      Rational cand_max = Rational::max(running_max, Rational(comp[static_cast<size_t>(b)] + w));
      additions.clear();
      for (int u : graph.neighbors(v)) {
        int bu = mapping.bin_of[static_cast<size_t>(u)];
        if (bu < 0 || bu == b) continue;
        RouteSet rs = oracle.route(b, bu);
        for (const auto& path : rs.paths) {
          for (int l : path) additions[l] += rs.per_path_weight;
        }
      }
      for (const auto& [l, add] : additions) {
        Rational scaled = topology.factor(l) * (comm[static_cast<size_t>(l)] + add);
        cand_max = Rational::max(cand_max, scaled);
      }
      if (best_bin < 0 || cand_max < best_max ||
          (cand_max == best_max && comp[static_cast<size_t>(b)] < best_load)) {
        best_bin = b;
        best_max = cand_max;
        best_load = comp[static_cast<size_t>(b)];
      }
    }

    mapping.bin_of[static_cast<size_t>(v)] = best_bin;
    comp[static_cast<size_t>(best_bin)] += w;
    running_max = Rational::max(running_max, Rational(comp[static_cast<size_t>(best_bin)]));
    for (int u : graph.neighbors(v)) {
      int bu = mapping.bin_of[static_cast<size_t>(u)];
      if (bu < 0 || bu == best_bin) continue;
      RouteSet rs = oracle.route(best_bin, bu);
      for (const auto& path : rs.paths) {
        for (int l : path) {
          comm[static_cast<size_t>(l)] += rs.per_path_weight;
          running_max =
              Rational::max(running_max, topology.factor(l) * comm[static_cast<size_t>(l)]);
        }
      }
    }
  }
  return mapping;
}

SolveResult local_search(const WorkloadGraph& graph, const Topology& topology,
                         const RoutingOracle& oracle, Mapping start, const SolveConfig& config) {
  check_config(config);
  std::vector<int> compute = require_compute_bins(graph, topology);

  IncrementalState state(graph, topology, oracle, std::move(start));
  SolveCounters counters;

  auto deadline = config.time_budget
                      ? std::optional(std::chrono::steady_clock::now() + *config.time_budget)
                      : std::nullopt;

  // A move is accepted when it strictly decreases the lexicographic key
  // (makespan, sum of squared scaled link loads, sum of squared compute
  // loads). The secondary terms let the search walk plateaus of the
  // bottleneck objective, where most moves leave the max itself unchanged;
  // the makespan still never increases, and every accepted move strictly
  // shrinks a key over a finite value set, so the search cannot cycle.
  for (int pass = 0; pass < config.max_passes; ++pass) {
    ++counters.passes;
    bool improved = false;
    for (int v = 0; v < graph.num_vertices(); ++v) {
      auto current = std::make_tuple(state.makespan(), state.sumsq_scaled_comm(),
                                     state.sumsq_comp());
      int from = state.mapping()[v];
      int best_bin = -1;
      MoveDelta best;
      for (int b : compute) {
        if (b == from) continue;
        MoveDelta delta = state.move_delta(v, b);
        auto key = std::tie(delta.makespan, delta.sumsq_scaled_comm, delta.sumsq_comp);
        if (!(key < current)) continue;
        bool better =
            best_bin < 0 ||
            key < std::tie(best.makespan, best.sumsq_scaled_comm, best.sumsq_comp);
        if (better) {
          best_bin = b;
          best = std::move(delta);
        }
      }
      if (best_bin >= 0) {
        state.apply_move(v, best_bin);
        ++counters.moves;
        improved = true;
      }
    }
    if (!improved) break;
    if (deadline && std::chrono::steady_clock::now() >= *deadline) break;
  }

  SolveResult result;
  result.mapping = state.mapping();
  result.report = evaluate(graph, result.mapping, topology, oracle);
  result.proven_optimal = false;
  result.iterations = counters;
  return result;
}

SolveResult solve(const WorkloadGraph& graph, const Topology& topology,
                  const RoutingOracle& oracle, const SolveConfig& config) {
  check_config(config);
  std::vector<int> compute = require_compute_bins(graph, topology);

  if (within_exact_limit(static_cast<int>(compute.size()), graph.num_vertices(),
                         config.exact_limit))
    return exact_solve(graph, topology, oracle, config);

  const auto start_time = std::chrono::steady_clock::now();
  auto deadline =
      config.time_budget ? std::optional(start_time + *config.time_budget) : std::nullopt;

  const int restarts = config.restarts;
  std::vector<std::optional<SolveResult>> results(static_cast<size_t>(restarts));

  auto run_restart = [&](int index) {
    if (index > 0 && deadline && std::chrono::steady_clock::now() >= *deadline) return;
    SolveConfig restart_config = config;
    restart_config.seed = derive_seed(config.seed, static_cast<std::uint64_t>(index));
    if (deadline) {
      auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
          *deadline - std::chrono::steady_clock::now());
      restart_config.time_budget = remaining.count() > 0 ? remaining : std::chrono::milliseconds(0);
    }
    Mapping greedy = greedy_construct(graph, topology, oracle, restart_config);
    results[static_cast<size_t>(index)] =
        local_search(graph, topology, oracle, std::move(greedy), restart_config);
  };

  unsigned hardware = std::thread::hardware_concurrency();
  int workers = static_cast<int>(std::min<unsigned>(hardware == 0 ? 1 : hardware,
                                                    static_cast<unsigned>(restarts)));
  if (workers <= 1) {
    for (int i = 0; i < restarts; ++i) run_restart(i);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) {
      threads.emplace_back([&, t]() {
        try {
          for (int i = t; i < restarts; i += workers) run_restart(i);
        } catch (...) {
          errors[static_cast<size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& thread : threads) thread.join();
    for (const auto& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }

  // Merge by (makespan, lowest restart index) so the answer does not depend
  // on scheduling.
  SolveResult best;
  bool have_best = false;
  SolveCounters totals;
  for (int i = 0; i < restarts; ++i) {
    if (!results[static_cast<size_t>(i)]) continue;
    SolveResult& r = *results[static_cast<size_t>(i)];
    ++totals.restarts;
    totals.passes += r.iterations.passes;
    totals.moves += r.iterations.moves;
    if (!have_best || r.report.makespan < best.report.makespan) {
      best = std::move(r);
      have_best = true;
    }
  }
  best.iterations = totals;
  return best;
}

}  // namespace mapspan
