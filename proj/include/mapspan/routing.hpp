#pragma once

#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "mapspan/rational.hpp"
#include "mapspan/topology.hpp"

namespace mapspan {

// The routes between one bin pair: k link-id sequences, each carrying 1/k
// of any communication between the pair. For a bin paired with itself the
// set holds one empty path.
struct RouteSet {
  std::vector<std::vector<int>> paths;
  Rational per_path_weight;  // exactly 1/paths.size()

  size_t path_count() const { return paths.size(); }
};

// Deterministic source of routes. route(a, b) and route(b, a) cover the same
// links with the same weights. Implementations are immutable after
// construction and safe for concurrent queries.
class RoutingOracle {
public:
  virtual ~RoutingOracle() = default;
  virtual RouteSet route(int a, int b) const = 0;
};

// Answers tree-path queries from parent tables built by rooting the tree at
// bin 0 once; a query walks both endpoints up to their lowest common
// ancestor, so it costs O(depth) and needs no all-pairs precomputation.
class TreePathOracle final : public RoutingOracle {
public:
  explicit TreePathOracle(const Topology& topology);

  RouteSet route(int a, int b) const override;

private:
  std::vector<int> parent_;
  std::vector<int> parent_link_;
  std::vector<int> depth_;
};

// Unordered (a, b) -> list of paths, each path a link-id sequence walked
// from a to b.
using RouteTable = std::map<std::pair<int, int>, std::vector<std::vector<int>>>;

// Routing table oracle for routed topologies. Every listed path is checked
// to be a simple, connected walk between its bin pair; entries given for
// both (a, b) and (b, a) must agree or construction fails.
class TableOracle final : public RoutingOracle {
public:
  TableOracle(const Topology& topology, const RouteTable& routes);

  // Text format, '%' comments:
  //   route <binA> <binB> <k>
  //   <link id sequence>            (k lines)
  static TableOracle from_text(std::string_view text, const Topology& topology,
                               std::string_view source_name = "<routes>");

  RouteSet route(int a, int b) const override;

private:
  explicit TableOracle(int num_bins) : num_bins_(num_bins) {}

  int num_bins_;
  // Key is (min, max); paths stored walked from the smaller bin.
  std::map<std::pair<int, int>, std::vector<std::vector<int>>> table_;
};

// Convenience single query; heavy users should construct a TreePathOracle
// once and reuse it.
RouteSet tree_path(const Topology& topology, int a, int b);

}  // namespace mapspan
