#include "mapspan/objective.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "mapspan/errors.hpp"

namespace mapspan {

void validate_mapping(const WorkloadGraph& graph, const Topology& topology,
                      const Mapping& mapping) {
  if (mapping.size() != graph.num_vertices())
    throw Error(ErrorCode::InfeasibleMapping,
                "mapping covers " + std::to_string(mapping.size()) + " vertices, graph has " +
                    std::to_string(graph.num_vertices()));
  for (int v = 0; v < mapping.size(); ++v) {
    int b = mapping[v];
    if (b < 0 || b >= topology.num_bins())
      throw Error(ErrorCode::InfeasibleMapping,
                  "vertex " + std::to_string(v) + " mapped to unknown bin " + std::to_string(b));
    if (topology.is_router(b))
      throw Error(ErrorCode::InfeasibleMapping,
                  "vertex " + std::to_string(v) + " mapped to router bin " + std::to_string(b));
  }
}

long long comp_load(const WorkloadGraph& graph, const Mapping& mapping, int bin) {
  long long load = 0;
  for (int v = 0; v < graph.num_vertices(); ++v) {
    if (mapping[v] == bin) load += graph.weight(v);
  }
  return load;
}

Rational comm_load(const WorkloadGraph& graph, const Mapping& mapping,
                   const RoutingOracle& oracle, int link) {
  Rational load;
  for (const auto& [u, v] : graph.edges()) {
    if (mapping[u] == mapping[v]) continue;
    RouteSet rs = oracle.route(mapping[u], mapping[v]);
    int uses = 0;
    for (const auto& path : rs.paths)
      uses += static_cast<int>(std::count(path.begin(), path.end(), link));
    if (uses > 0) load += rs.per_path_weight * Rational(uses);
  }
  return load;
}

namespace {

// Shared makespan/bottleneck finish so evaluate() and the incremental state
// cannot disagree on tie-breaking.
MakespanReport finalize_report(std::vector<long long> comp, std::vector<Rational> comm,
                               std::vector<Rational> scaled) {
  MakespanReport report;
  report.comp_per_bin = std::move(comp);
  report.comm_per_link = std::move(comm);
  report.scaled_comm_per_link = std::move(scaled);

  long long max_comp = 0;
  int comp_arg = 0;
  for (int b = 0; b < static_cast<int>(report.comp_per_bin.size()); ++b) {
    if (report.comp_per_bin[static_cast<size_t>(b)] > max_comp) {
      max_comp = report.comp_per_bin[static_cast<size_t>(b)];
      comp_arg = b;
    }
  }
  Rational max_scaled;
  int scaled_arg = -1;
  for (int l = 0; l < static_cast<int>(report.scaled_comm_per_link.size()); ++l) {
    // strictly-greater keeps the lowest attaining link id
    if (scaled_arg < 0 || max_scaled < report.scaled_comm_per_link[static_cast<size_t>(l)]) {
      max_scaled = report.scaled_comm_per_link[static_cast<size_t>(l)];
      scaled_arg = l;
    }
  }

  Rational comp_side(max_comp);
  if (scaled_arg >= 0 && comp_side < max_scaled) {
    report.makespan = max_scaled;
    report.bottleneck = {Bottleneck::Kind::Communication, scaled_arg};
  } else {
    report.makespan = comp_side;
    report.bottleneck = {Bottleneck::Kind::Compute, comp_arg};
  }
  return report;
}

}  // namespace

MakespanReport evaluate(const WorkloadGraph& graph, const Mapping& mapping,
                        const Topology& topology, const RoutingOracle& oracle) {
  validate_mapping(graph, topology, mapping);

  std::vector<long long> comp(static_cast<size_t>(topology.num_bins()), 0);
  for (int v = 0; v < graph.num_vertices(); ++v)
    comp[static_cast<size_t>(mapping[v])] += graph.weight(v);

  std::vector<Rational> comm(static_cast<size_t>(topology.num_links()));
  for (const auto& [u, v] : graph.edges()) {
    if (mapping[u] == mapping[v]) continue;
    RouteSet rs = oracle.route(mapping[u], mapping[v]);
    for (const auto& path : rs.paths) {
      for (int l : path) comm[static_cast<size_t>(l)] += rs.per_path_weight;
    }
  }
  std::vector<Rational> scaled(comm.size());
  for (int l = 0; l < topology.num_links(); ++l)
    scaled[static_cast<size_t>(l)] = topology.factor(l) * comm[static_cast<size_t>(l)];

  return finalize_report(std::move(comp), std::move(comm), std::move(scaled));
}

namespace {

// Max of the multiset after removing one instance of each value in
// `removed` (all of which must be present). Walks from the top; at most
// |removed| + 1 steps.
template <typename T>
T max_excluding(const std::multiset<T>& values, std::vector<T> removed) {
  std::sort(removed.begin(), removed.end(), [](const T& x, const T& y) { return y < x; });
  size_t skip = 0;
  for (auto it = values.rbegin(); it != values.rend(); ++it) {
    if (skip < removed.size() && *it == removed[skip]) {
      ++skip;
      continue;
    }
    return *it;
  }
  return T();
}

}  // namespace

IncrementalState::IncrementalState(const WorkloadGraph& graph, const Topology& topology,
                                   const RoutingOracle& oracle, Mapping mapping)
    : graph_(&graph), topology_(&topology), oracle_(&oracle), mapping_(std::move(mapping)) {
  validate_mapping(graph, topology, mapping_);

  comp_.assign(static_cast<size_t>(topology.num_bins()), 0);
  for (int v = 0; v < graph.num_vertices(); ++v)
    comp_[static_cast<size_t>(mapping_[v])] += graph.weight(v);

  comm_.assign(static_cast<size_t>(topology.num_links()), Rational());
  edge_contrib_.assign(graph.edges().size(), {});
  for (int e = 0; e < graph.num_edges(); ++e) {
    const auto& [u, v] = graph.edges()[static_cast<size_t>(e)];
    if (mapping_[u] == mapping_[v]) continue;
    RouteSet rs = oracle.route(mapping_[u], mapping_[v]);
    std::map<int, int> uses;
    for (const auto& path : rs.paths) {
      for (int l : path) ++uses[l];
    }
    auto& contrib = edge_contrib_[static_cast<size_t>(e)];
    for (const auto& [l, count] : uses) {
      Rational amount = rs.per_path_weight * Rational(count);
      contrib.emplace_back(l, amount);
      comm_[static_cast<size_t>(l)] += amount;
    }
  }

  scaled_.resize(comm_.size());
  sumsq_scaled_ = Rational();
  for (int l = 0; l < topology.num_links(); ++l) {
    scaled_[static_cast<size_t>(l)] = topology.factor(l) * comm_[static_cast<size_t>(l)];
    scaled_values_.insert(scaled_[static_cast<size_t>(l)]);
    sumsq_scaled_ += scaled_[static_cast<size_t>(l)] * scaled_[static_cast<size_t>(l)];
  }
  sumsq_comp_ = 0;
  for (int b = 0; b < topology.num_bins(); ++b) {
    if (topology.is_router(b)) continue;
    comp_values_.insert(comp_[static_cast<size_t>(b)]);
    sumsq_comp_ += static_cast<BigInt>(comp_[static_cast<size_t>(b)]) *
                   static_cast<BigInt>(comp_[static_cast<size_t>(b)]);
  }
}

Rational IncrementalState::makespan() const {
  Rational best;
  if (!comp_values_.empty()) best = Rational(*comp_values_.rbegin());
  if (!scaled_values_.empty()) best = Rational::max(best, *scaled_values_.rbegin());
  return best;
}

IncrementalState::LinkDelta IncrementalState::link_changes(int vertex, int target_bin) const {
  std::map<int, Rational> delta;
  for (int e : graph_->incident_edges(vertex)) {
    for (const auto& [l, amount] : edge_contrib_[static_cast<size_t>(e)])
      delta[l] -= amount;
    const auto& [u, v] = graph_->edges()[static_cast<size_t>(e)];
    int other = (u == vertex) ? v : u;
    int other_bin = mapping_[other];
    if (other_bin == target_bin) continue;
    RouteSet rs = oracle_->route(target_bin, other_bin);
    for (const auto& path : rs.paths) {
      for (int l : path) delta[l] += rs.per_path_weight;
    }
  }
  LinkDelta out;
  for (const auto& [l, d] : delta) {
    if (!d.is_zero()) out.entries.emplace_back(l, d);
  }
  return out;
}

MoveDelta IncrementalState::move_delta(int vertex, int target_bin) const {
  if (vertex < 0 || vertex >= graph_->num_vertices())
    throw std::out_of_range("vertex id " + std::to_string(vertex) + " out of range");
  if (target_bin < 0 || target_bin >= topology_->num_bins())
    throw std::out_of_range("bin id " + std::to_string(target_bin) + " out of range");
  if (topology_->is_router(target_bin))
    throw Error(ErrorCode::InfeasibleTarget,
                "bin " + std::to_string(target_bin) + " is a router");

  MoveDelta result;
  int from = mapping_[vertex];
  if (from == target_bin) {
    result.makespan = makespan();
    result.sumsq_scaled_comm = sumsq_scaled_;
    result.sumsq_comp = sumsq_comp_;
    return result;
  }

  long long w = graph_->weight(vertex);
  long long from_new = comp_[static_cast<size_t>(from)] - w;
  long long to_new = comp_[static_cast<size_t>(target_bin)] + w;
  result.comp_changes = {{from, from_new}, {target_bin, to_new}};
  long long max_comp = max_excluding(
      comp_values_, {comp_[static_cast<size_t>(from)], comp_[static_cast<size_t>(target_bin)]});
  max_comp = std::max({max_comp, from_new, to_new});

  LinkDelta changes = link_changes(vertex, target_bin);
  std::vector<Rational> old_scaled;
  Rational max_scaled;
  result.sumsq_scaled_comm = sumsq_scaled_;
  for (const auto& [l, d] : changes.entries) {
    Rational comm_new = comm_[static_cast<size_t>(l)] + d;
    Rational scaled_new = topology_->factor(l) * comm_new;
    result.comm_changes.emplace_back(l, comm_new);
    result.scaled_changes.emplace_back(l, scaled_new);
    old_scaled.push_back(scaled_[static_cast<size_t>(l)]);
    max_scaled = Rational::max(max_scaled, scaled_new);
    result.sumsq_scaled_comm +=
        scaled_new * scaled_new -
        scaled_[static_cast<size_t>(l)] * scaled_[static_cast<size_t>(l)];
  }
  if (!scaled_values_.empty()) {
    Rational unchanged_max = max_excluding(scaled_values_, std::move(old_scaled));
    max_scaled = Rational::max(max_scaled, unchanged_max);
  }

  result.makespan = Rational::max(Rational(max_comp), max_scaled);
  result.sumsq_comp = sumsq_comp_ + static_cast<BigInt>(from_new) * from_new +
                      static_cast<BigInt>(to_new) * to_new -
                      static_cast<BigInt>(comp_[static_cast<size_t>(from)]) *
                          comp_[static_cast<size_t>(from)] -
                      static_cast<BigInt>(comp_[static_cast<size_t>(target_bin)]) *
                          comp_[static_cast<size_t>(target_bin)];
  return result;
}

void IncrementalState::apply_move(int vertex, int target_bin) {
  if (vertex < 0 || vertex >= graph_->num_vertices())
    throw std::out_of_range("vertex id " + std::to_string(vertex) + " out of range");
  if (target_bin < 0 || target_bin >= topology_->num_bins())
    throw std::out_of_range("bin id " + std::to_string(target_bin) + " out of range");
  if (topology_->is_router(target_bin))
    throw Error(ErrorCode::InfeasibleTarget,
                "bin " + std::to_string(target_bin) + " is a router");

  int from = mapping_[vertex];
  if (from == target_bin) return;
  long long w = graph_->weight(vertex);

  auto update_comp = [&](int bin, long long new_value) {
    long long old_value = comp_[static_cast<size_t>(bin)];
    comp_values_.erase(comp_values_.find(old_value));
    comp_values_.insert(new_value);
    sumsq_comp_ += static_cast<BigInt>(new_value) * new_value -
                   static_cast<BigInt>(old_value) * old_value;
    comp_[static_cast<size_t>(bin)] = new_value;
  };
  update_comp(from, comp_[static_cast<size_t>(from)] - w);
  update_comp(target_bin, comp_[static_cast<size_t>(target_bin)] + w);

  auto update_comm = [&](int l, const Rational& delta) {
    Rational comm_new = comm_[static_cast<size_t>(l)] + delta;
    Rational scaled_old = scaled_[static_cast<size_t>(l)];
    Rational scaled_new = topology_->factor(l) * comm_new;
    scaled_values_.erase(scaled_values_.find(scaled_old));
    scaled_values_.insert(scaled_new);
    sumsq_scaled_ += scaled_new * scaled_new - scaled_old * scaled_old;
    comm_[static_cast<size_t>(l)] = comm_new;
    scaled_[static_cast<size_t>(l)] = scaled_new;
  };

  for (int e : graph_->incident_edges(vertex)) {
    auto& contrib = edge_contrib_[static_cast<size_t>(e)];
    for (const auto& [l, amount] : contrib) update_comm(l, Rational() - amount);
    contrib.clear();
    const auto& [u, v] = graph_->edges()[static_cast<size_t>(e)];
    int other = (u == vertex) ? v : u;
    int other_bin = mapping_[other];
    if (other_bin == target_bin) continue;
    RouteSet rs = oracle_->route(target_bin, other_bin);
    std::map<int, int> uses;
    for (const auto& path : rs.paths) {
      for (int l : path) ++uses[l];
    }
    for (const auto& [l, count] : uses) {
      Rational amount = rs.per_path_weight * Rational(count);
      contrib.emplace_back(l, amount);
      update_comm(l, amount);
    }
  }
  mapping_.bin_of[static_cast<size_t>(vertex)] = target_bin;
}

MakespanReport IncrementalState::report() const {
  return finalize_report(comp_, comm_, scaled_);
}

}  // namespace mapspan
