#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mapspan/rational.hpp"

namespace mapspan {

enum class TopologyKind { Tree, Routed };

struct Link {
  int a;  // a < b after construction
  int b;
};

// Machine model: bins connected by links, some bins flagged as routers
// (they carry traffic but take no work), and a positive capacity factor per
// link that defaults to the global factor. Immutable after construction;
// safe for concurrent reads.
class Topology {
public:
  static Topology build(TopologyKind kind, int num_bins, std::vector<std::pair<int, int>> links,
                        const std::set<int>& routers, const std::map<int, Rational>& link_factors,
                        Rational global_factor);

  TopologyKind kind() const { return kind_; }
  int num_bins() const { return static_cast<int>(is_router_.size()); }
  int num_links() const { return static_cast<int>(links_.size()); }
  const Link& link(int l) const { return links_.at(static_cast<size_t>(l)); }
  bool is_router(int b) const { return is_router_.at(static_cast<size_t>(b)); }
  Rational global_factor() const { return global_factor_; }
  const std::optional<Rational>& explicit_factor(int l) const {
    return explicit_factor_.at(static_cast<size_t>(l));
  }

  // Effective per-link factor: the explicit one when present, the global
  // factor otherwise (an explicit factor replaces the global one, the two
  // never compose).
  Rational factor(int l) const {
    const auto& f = explicit_factor_.at(static_cast<size_t>(l));
    return f ? *f : global_factor_;
  }

  // (neighbor bin, link id) pairs, sorted by neighbor.
  const std::vector<std::pair<int, int>>& adjacent(int b) const {
    return adj_.at(static_cast<size_t>(b));
  }

  int num_compute_bins() const { return num_compute_bins_; }

  // Same topology with a different global factor; explicit per-link factors
  // are kept as-is. Used by the CLI --F override and F sweeps.
  Topology with_global_factor(Rational f) const;

private:
  Topology() = default;

  TopologyKind kind_ = TopologyKind::Tree;
  std::vector<Link> links_;
  std::vector<bool> is_router_;
  std::vector<std::optional<Rational>> explicit_factor_;
  Rational global_factor_ = 1;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  int num_compute_bins_ = 0;
};

// Validated tree topology; rejects anything that is not connected and
// acyclic on the given bins.
Topology build_tree_topology(int num_bins, const std::vector<std::pair<int, int>>& links,
                             const std::set<int>& routers = {},
                             const std::map<int, Rational>& link_factors = {},
                             Rational global_factor = 1);

// Arbitrary-link topology; routing must come from an explicit table.
Topology build_routed_topology(int num_bins, const std::vector<std::pair<int, int>>& links,
                               const std::set<int>& routers = {},
                               const std::map<int, Rational>& link_factors = {},
                               Rational global_factor = 1);

// The bins a mapping may target: everything not flagged as a router.
std::vector<int> compute_bins(const Topology& topology);

// Text format, line oriented, '%' comments:
//   topology <tree|routed> <numBins> <numLinks> <globalF>
//   bin <id> [router]                 (one per bin)
//   link <id> <binA> <binB> [factor]  (one per link)
// Factors are decimal strings parsed exactly.
Topology parse_topology(std::string_view text, std::string_view source_name = "<topology>");

std::string to_text(const Topology& topology);

}  // namespace mapspan
