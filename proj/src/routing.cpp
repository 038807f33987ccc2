#include "mapspan/routing.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "mapspan/errors.hpp"
#include "parse_util.hpp"

namespace mapspan {

namespace {

void check_bin(int b, int num_bins) {
  if (b < 0 || b >= num_bins)
    throw std::out_of_range("bin id " + std::to_string(b) + " out of range");
}

}  // namespace

TreePathOracle::TreePathOracle(const Topology& topology) {
  if (topology.kind() != TopologyKind::Tree)
    throw std::invalid_argument("tree-path oracle requires a tree topology");
  const int n = topology.num_bins();
  parent_.assign(static_cast<size_t>(n), -1);
  parent_link_.assign(static_cast<size_t>(n), -1);
  depth_.assign(static_cast<size_t>(n), 0);
  if (n == 0) return;
  std::vector<int> stack = {0};
  std::vector<bool> visited(static_cast<size_t>(n), false);
  visited[0] = true;
  while (!stack.empty()) {
    int b = stack.back();
    stack.pop_back();
    for (auto [nb, l] : topology.adjacent(b)) {
      if (visited[static_cast<size_t>(nb)]) continue;
      visited[static_cast<size_t>(nb)] = true;
      parent_[static_cast<size_t>(nb)] = b;
      parent_link_[static_cast<size_t>(nb)] = l;
      depth_[static_cast<size_t>(nb)] = depth_[static_cast<size_t>(b)] + 1;
      stack.push_back(nb);
    }
  }
}

RouteSet TreePathOracle::route(int a, int b) const {
  const int n = static_cast<int>(parent_.size());
  check_bin(a, n);
  check_bin(b, n);
  RouteSet rs;
  rs.per_path_weight = Rational(1);
  if (a == b) {
    rs.paths.push_back({});
    return rs;
  }
  std::vector<int> up_from_a;
  std::vector<int> up_from_b;
  int x = a;
  int y = b;
  while (depth_[static_cast<size_t>(x)] > depth_[static_cast<size_t>(y)]) {
    up_from_a.push_back(parent_link_[static_cast<size_t>(x)]);
    x = parent_[static_cast<size_t>(x)];
  }
  while (depth_[static_cast<size_t>(y)] > depth_[static_cast<size_t>(x)]) {
    up_from_b.push_back(parent_link_[static_cast<size_t>(y)]);
    y = parent_[static_cast<size_t>(y)];
  }
  while (x != y) {
    up_from_a.push_back(parent_link_[static_cast<size_t>(x)]);
    x = parent_[static_cast<size_t>(x)];
    up_from_b.push_back(parent_link_[static_cast<size_t>(y)]);
    y = parent_[static_cast<size_t>(y)];
  }
  std::vector<int> path = std::move(up_from_a);
  path.insert(path.end(), up_from_b.rbegin(), up_from_b.rend());
  rs.paths.push_back(std::move(path));
  return rs;
}

RouteSet tree_path(const Topology& topology, int a, int b) {
  return TreePathOracle(topology).route(a, b);
}

namespace {

// Walks a path from `from`, checking each link exists, consecutive links
// chain, no bin repeats, and the walk ends at `to`. Returns the path
// re-oriented to start at `from`.
std::vector<int> validate_path(const std::vector<int>& path, int from, int to,
                               const Topology& topology, const std::string& label) {
  if (path.empty())
    throw Error(ErrorCode::InvalidPath, label + ": empty path between distinct bins");
  int at = from;
  std::set<int> seen_bins = {from};
  for (int l : path) {
    if (l < 0 || l >= topology.num_links())
      throw Error(ErrorCode::InvalidPath, label + ": unknown link " + std::to_string(l));
    const Link& link = topology.link(l);
    int next;
    if (link.a == at) {
      next = link.b;
    } else if (link.b == at) {
      next = link.a;
    } else {
      throw Error(ErrorCode::InvalidPath,
                  label + ": link " + std::to_string(l) + " does not continue the path at bin " +
                      std::to_string(at));
    }
    if (!seen_bins.insert(next).second)
      throw Error(ErrorCode::InvalidPath, label + ": path revisits bin " + std::to_string(next));
    at = next;
  }
  if (at != to)
    throw Error(ErrorCode::InvalidPath,
                label + ": path ends at bin " + std::to_string(at) + ", expected " +
                    std::to_string(to));
  return path;
}

std::vector<std::vector<int>> sorted_copy(std::vector<std::vector<int>> paths) {
  std::sort(paths.begin(), paths.end());
  return paths;
}

}  // namespace

TableOracle::TableOracle(const Topology& topology, const RouteTable& routes)
    : num_bins_(topology.num_bins()) {
  for (const auto& [pair, paths] : routes) {
    auto [a, b] = pair;
    std::string label = "route (" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (a < 0 || a >= num_bins_ || b < 0 || b >= num_bins_)
      throw Error(ErrorCode::InvalidPath, label + ": bin id out of range");
    if (a == b)
      throw Error(ErrorCode::InvalidPath, label + ": same-bin routes are implicit");
    if (paths.empty()) throw Error(ErrorCode::InvalidPath, label + ": no paths given");

    // Store canonically under (min, max), each path walked from min.
    int lo = std::min(a, b);
    int hi = std::max(a, b);
    std::vector<std::vector<int>> canonical;
    canonical.reserve(paths.size());
    for (const auto& p : paths) {
      std::vector<int> walked = validate_path(p, a, b, topology, label);
      if (a != lo) std::reverse(walked.begin(), walked.end());
      canonical.push_back(std::move(walked));
    }
    auto [it, inserted] = table_.emplace(std::make_pair(lo, hi), canonical);
    if (!inserted && sorted_copy(it->second) != sorted_copy(canonical))
      throw Error(ErrorCode::InvalidPath,
                  label + ": inconsistent with the entry for the reversed pair");
  }
}

RouteSet TableOracle::route(int a, int b) const {
  check_bin(a, num_bins_);
  check_bin(b, num_bins_);
  RouteSet rs;
  if (a == b) {
    rs.paths.push_back({});
    rs.per_path_weight = Rational(1);
    return rs;
  }
  auto it = table_.find({std::min(a, b), std::max(a, b)});
  if (it == table_.end())
    throw Error(ErrorCode::MissingRoute,
                "no route between bins " + std::to_string(a) + " and " + std::to_string(b));
  rs.paths = it->second;
  rs.per_path_weight = Rational(1, static_cast<long long>(rs.paths.size()));
  return rs;
}

TableOracle TableOracle::from_text(std::string_view text, const Topology& topology,
                                   std::string_view source_name) {
  auto lines = parse::split_lines(text);
  size_t idx = 0;
  auto next_line = [&]() -> const parse::Line* {
    while (idx < lines.size() && parse::is_comment_or_blank(lines[idx].text)) ++idx;
    if (idx >= lines.size()) return nullptr;
    return &lines[idx++];
  };

  RouteTable routes;
  while (const parse::Line* line = next_line()) {
    auto toks = parse::tokens(line->text);
    if (toks.size() != 4 || toks[0] != "route")
      parse::fail(source_name, line->number, "expected 'route <binA> <binB> <k>'");
    long long a = parse::parse_int(toks[1], source_name, line->number, "bin id");
    long long b = parse::parse_int(toks[2], source_name, line->number, "bin id");
    long long k = parse::parse_int(toks[3], source_name, line->number, "path count");
    if (k < 1)
      parse::fail(source_name, line->number, "path count must be at least 1",
                  ErrorCode::InvalidPath);
    auto key = std::make_pair(static_cast<int>(a), static_cast<int>(b));
    if (routes.count(key))
      parse::fail(source_name, line->number,
                  "duplicate route entry for bins " + std::to_string(a) + " and " +
                      std::to_string(b),
                  ErrorCode::InvalidPath);
    std::vector<std::vector<int>> paths;
    for (long long p = 0; p < k; ++p) {
      const parse::Line* path_line = next_line();
      if (path_line == nullptr)
        throw Error(ErrorCode::ParseError,
                    std::string(source_name) + ": expected " + std::to_string(k) +
                        " path lines for route " + std::to_string(a) + " " + std::to_string(b));
      auto path_toks = parse::tokens(path_line->text);
      std::vector<int> path;
      path.reserve(path_toks.size());
      for (auto t : path_toks)
        path.push_back(
            static_cast<int>(parse::parse_int(t, source_name, path_line->number, "link id")));
      paths.push_back(std::move(path));
    }
    routes.emplace(key, std::move(paths));
  }

  try {
    return TableOracle(topology, routes);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(source_name) + ": " + e.what());
  }
}

}  // namespace mapspan
