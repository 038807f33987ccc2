#include "mapspan/topology.hpp"

#include <algorithm>

#include "mapspan/errors.hpp"
#include "parse_util.hpp"

namespace mapspan {

Topology Topology::build(TopologyKind kind, int num_bins, std::vector<std::pair<int, int>> links,
                         const std::set<int>& routers, const std::map<int, Rational>& link_factors,
                         Rational global_factor) {
  if (num_bins < 0) throw std::invalid_argument("negative bin count");
  if (!(global_factor > Rational(0)))
    throw Error(ErrorCode::BadFactor, "global factor must be positive");

  Topology t;
  t.kind_ = kind;
  t.is_router_.assign(static_cast<size_t>(num_bins), false);
  t.global_factor_ = global_factor;

  for (int r : routers) {
    if (r < 0 || r >= num_bins)
      throw Error(ErrorCode::BadLink, "router id " + std::to_string(r) + " out of range");
    t.is_router_[static_cast<size_t>(r)] = true;
  }
  t.num_compute_bins_ = 0;
  for (int b = 0; b < num_bins; ++b) {
    if (!t.is_router_[static_cast<size_t>(b)]) ++t.num_compute_bins_;
  }
  if (t.num_compute_bins_ == 0)
    throw Error(ErrorCode::AllRouters, "every bin is a router; no bin can take work");

  std::set<std::pair<int, int>> seen;
  t.links_.reserve(links.size());
  for (auto [a, b] : links) {
    if (a < 0 || a >= num_bins || b < 0 || b >= num_bins)
      throw Error(ErrorCode::BadLink, "link endpoint out of range");
    if (a == b)
      throw Error(ErrorCode::BadLink, "self-link at bin " + std::to_string(a));
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second)
      throw Error(ErrorCode::BadLink,
                  "duplicate link between bins " + std::to_string(a) + " and " + std::to_string(b));
    t.links_.push_back({a, b});
  }

  t.explicit_factor_.assign(t.links_.size(), std::nullopt);
  for (const auto& [l, f] : link_factors) {
    if (l < 0 || l >= static_cast<int>(t.links_.size()))
      throw Error(ErrorCode::BadLink, "factor for unknown link " + std::to_string(l));
    if (!(f > Rational(0)))
      throw Error(ErrorCode::BadFactor, "factor of link " + std::to_string(l) + " must be positive");
    t.explicit_factor_[static_cast<size_t>(l)] = f;
  }

  t.adj_.assign(static_cast<size_t>(num_bins), {});
  for (int l = 0; l < static_cast<int>(t.links_.size()); ++l) {
    t.adj_[static_cast<size_t>(t.links_[static_cast<size_t>(l)].a)].emplace_back(
        t.links_[static_cast<size_t>(l)].b, l);
    t.adj_[static_cast<size_t>(t.links_[static_cast<size_t>(l)].b)].emplace_back(
        t.links_[static_cast<size_t>(l)].a, l);
  }
  for (auto& nbrs : t.adj_) std::sort(nbrs.begin(), nbrs.end());

  if (kind == TopologyKind::Tree) {
    // Connected plus |L| = |B| - 1 implies acyclic; reject at construction,
    // never defer.
    if (static_cast<int>(t.links_.size()) != num_bins - 1)
      throw Error(ErrorCode::NotATree,
                  "tree topology needs " + std::to_string(num_bins - 1) + " links, got " +
                      std::to_string(t.links_.size()));
    std::vector<bool> visited(static_cast<size_t>(num_bins), false);
    std::vector<int> stack;
    if (num_bins > 0) {
      stack.push_back(0);
      visited[0] = true;
    }
    int reached = num_bins > 0 ? 1 : 0;
    while (!stack.empty()) {
      int b = stack.back();
      stack.pop_back();
      for (auto [nb, l] : t.adj_[static_cast<size_t>(b)]) {
        (void)l;
        if (!visited[static_cast<size_t>(nb)]) {
          visited[static_cast<size_t>(nb)] = true;
          ++reached;
          stack.push_back(nb);
        }
      }
    }
    if (reached != num_bins)
      throw Error(ErrorCode::NotATree, "tree topology is not connected");
  }

  return t;
}

Topology Topology::with_global_factor(Rational f) const {
  if (!(f > Rational(0)))
    throw Error(ErrorCode::BadFactor, "global factor must be positive");
  Topology t = *this;
  t.global_factor_ = f;
  return t;
}

Topology build_tree_topology(int num_bins, const std::vector<std::pair<int, int>>& links,
                             const std::set<int>& routers,
                             const std::map<int, Rational>& link_factors, Rational global_factor) {
  return Topology::build(TopologyKind::Tree, num_bins, links, routers, link_factors,
                         global_factor);
}

Topology build_routed_topology(int num_bins, const std::vector<std::pair<int, int>>& links,
                               const std::set<int>& routers,
                               const std::map<int, Rational>& link_factors,
                               Rational global_factor) {
  return Topology::build(TopologyKind::Routed, num_bins, links, routers, link_factors,
                         global_factor);
}

std::vector<int> compute_bins(const Topology& topology) {
  std::vector<int> bins;
  for (int b = 0; b < topology.num_bins(); ++b) {
    if (!topology.is_router(b)) bins.push_back(b);
  }
  return bins;
}

Topology parse_topology(std::string_view text, std::string_view source_name) {
  auto lines = parse::split_lines(text);
  size_t idx = 0;
  auto next_line = [&]() -> const parse::Line* {
    while (idx < lines.size() && parse::is_comment_or_blank(lines[idx].text)) ++idx;
    if (idx >= lines.size()) return nullptr;
    return &lines[idx++];
  };

  const parse::Line* header = next_line();
  if (header == nullptr)
    throw Error(ErrorCode::ParseError, std::string(source_name) + ": missing header line");
  auto head = parse::tokens(header->text);
  if (head.size() != 5 || head[0] != "topology")
    parse::fail(source_name, header->number,
                "header must be 'topology <tree|routed> <numBins> <numLinks> <globalF>'");
  TopologyKind kind;
  if (head[1] == "tree") {
    kind = TopologyKind::Tree;
  } else if (head[1] == "routed") {
    kind = TopologyKind::Routed;
  } else {
    parse::fail(source_name, header->number, "unknown topology kind '" + std::string(head[1]) + "'");
  }
  long long num_bins = parse::parse_int(head[2], source_name, header->number, "bin count");
  long long num_links = parse::parse_int(head[3], source_name, header->number, "link count");
  if (num_bins < 0 || num_links < 0 || num_bins > INT32_MAX || num_links > INT32_MAX)
    parse::fail(source_name, header->number, "bad header counts");
  Rational global_factor;
  try {
    global_factor = Rational::parse_decimal(head[4]);
  } catch (const Error& e) {
    parse::fail(source_name, header->number, e.what());
  }
  if (!(global_factor > Rational(0)))
    parse::fail(source_name, header->number, "global factor must be positive",
                ErrorCode::BadFactor);

  std::set<int> routers;
  std::vector<bool> bin_seen(static_cast<size_t>(num_bins), false);
  for (long long i = 0; i < num_bins; ++i) {
    const parse::Line* line = next_line();
    if (line == nullptr)
      throw Error(ErrorCode::ParseError,
                  std::string(source_name) + ": expected " + std::to_string(num_bins) +
                      " bin lines");
    auto toks = parse::tokens(line->text);
    if (toks.size() < 2 || toks.size() > 3 || toks[0] != "bin")
      parse::fail(source_name, line->number, "expected 'bin <id> [router]'");
    long long id = parse::parse_int(toks[1], source_name, line->number, "bin id");
    if (id < 0 || id >= num_bins)
      parse::fail(source_name, line->number, "bin id " + std::to_string(id) + " out of range");
    if (bin_seen[static_cast<size_t>(id)])
      parse::fail(source_name, line->number, "duplicate bin id " + std::to_string(id));
    bin_seen[static_cast<size_t>(id)] = true;
    if (toks.size() == 3) {
      if (toks[2] != "router")
        parse::fail(source_name, line->number, "unexpected token '" + std::string(toks[2]) + "'");
      routers.insert(static_cast<int>(id));
    }
  }

  std::vector<std::pair<int, int>> links(static_cast<size_t>(num_links), {-1, -1});
  std::vector<bool> link_seen(static_cast<size_t>(num_links), false);
  std::map<int, Rational> factors;
  for (long long i = 0; i < num_links; ++i) {
    const parse::Line* line = next_line();
    if (line == nullptr)
      throw Error(ErrorCode::ParseError,
                  std::string(source_name) + ": expected " + std::to_string(num_links) +
                      " link lines");
    auto toks = parse::tokens(line->text);
    if ((toks.size() != 4 && toks.size() != 5) || toks[0] != "link")
      parse::fail(source_name, line->number, "expected 'link <id> <binA> <binB> [factor]'");
    long long id = parse::parse_int(toks[1], source_name, line->number, "link id");
    if (id < 0 || id >= num_links)
      parse::fail(source_name, line->number, "link id " + std::to_string(id) + " out of range");
    if (link_seen[static_cast<size_t>(id)])
      parse::fail(source_name, line->number, "duplicate link id " + std::to_string(id));
    link_seen[static_cast<size_t>(id)] = true;
    long long a = parse::parse_int(toks[2], source_name, line->number, "bin id");
    long long b = parse::parse_int(toks[3], source_name, line->number, "bin id");
    if (a < 0 || a >= num_bins || b < 0 || b >= num_bins)
      parse::fail(source_name, line->number, "link endpoint out of range", ErrorCode::BadLink);
    links[static_cast<size_t>(id)] = {static_cast<int>(a), static_cast<int>(b)};
    if (toks.size() == 5) {
      Rational f;
      try {
        f = Rational::parse_decimal(toks[4]);
      } catch (const Error& e) {
        parse::fail(source_name, line->number, e.what());
      }
      if (!(f > Rational(0)))
        parse::fail(source_name, line->number, "link factor must be positive",
                    ErrorCode::BadFactor);
      factors.emplace(static_cast<int>(id), f);
    }
  }

  const parse::Line* extra = next_line();
  if (extra != nullptr)
    parse::fail(source_name, extra->number, "unexpected trailing line");

  try {
    return Topology::build(kind, static_cast<int>(num_bins), std::move(links), routers, factors,
                           global_factor);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(source_name) + ": " + e.what());
  }
}

std::string to_text(const Topology& topology) {
  std::string out = "topology ";
  out += topology.kind() == TopologyKind::Tree ? "tree" : "routed";
  out += ' ';
  out += std::to_string(topology.num_bins());
  out += ' ';
  out += std::to_string(topology.num_links());
  out += ' ';
  out += topology.global_factor().to_decimal_string();
  out += '\n';
  for (int b = 0; b < topology.num_bins(); ++b) {
    out += "bin " + std::to_string(b);
    if (topology.is_router(b)) out += " router";
    out += '\n';
  }
  for (int l = 0; l < topology.num_links(); ++l) {
    out += "link " + std::to_string(l) + " " + std::to_string(topology.link(l).a) + " " +
           std::to_string(topology.link(l).b);
    if (topology.explicit_factor(l)) out += " " + topology.explicit_factor(l)->to_decimal_string();
    out += '\n';
  }
  return out;
}

}  // namespace mapspan
