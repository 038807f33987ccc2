#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mapspan {

// Undirected workload graph with positive integer vertex weights.
// Vertices are 0-based in the API; the text format below is 1-based.
// Immutable after construction; concurrent reads are safe.
class WorkloadGraph {
public:
  // Validates symmetry, absence of self-loops and parallel edges, and
  // weights >= 1. Neighbor lists are sorted; edge ids are assigned in
  // lexicographic (u, v) order with u < v.
  static WorkloadGraph from_adjacency(std::vector<std::vector<int>> adjacency,
                                      std::vector<long long> weights);

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  long long weight(int v) const { return weights_.at(static_cast<size_t>(v)); }
  const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<size_t>(v)); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& incident_edges(int v) const {
    return incident_.at(static_cast<size_t>(v));
  }

  bool operator==(const WorkloadGraph& other) const {
    return adj_ == other.adj_ && weights_ == other.weights_;
  }
  bool operator!=(const WorkloadGraph& other) const { return !(*this == other); }

private:
  WorkloadGraph() = default;

  std::vector<std::vector<int>> adj_;
  std::vector<long long> weights_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> incident_;
};

// Parses the adjacency text format used by mainstream graph partitioners:
// header "n m [fmt]", then line i with the 1-based neighbors of vertex i.
// A fmt of "10" (or "010") means each vertex line starts with its weight.
// '%' starts a comment line. source_name is used in error messages.
WorkloadGraph parse_graph(std::string_view text, std::string_view source_name = "<graph>");

// Inverse of parse_graph; emits the weight columns only when some weight != 1.
std::string to_text(const WorkloadGraph& graph);

long long total_weight(const WorkloadGraph& graph);

}  // namespace mapspan
