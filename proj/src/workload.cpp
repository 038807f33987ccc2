#include "mapspan/workload.hpp"

#include <algorithm>
#include <numeric>

#include "mapspan/errors.hpp"
#include "parse_util.hpp"

namespace mapspan {

WorkloadGraph WorkloadGraph::from_adjacency(std::vector<std::vector<int>> adjacency,
                                            std::vector<long long> weights) {
  const int n = static_cast<int>(adjacency.size());
  if (weights.empty()) weights.assign(static_cast<size_t>(n), 1);
  if (static_cast<int>(weights.size()) != n)
    throw std::invalid_argument("weight count does not match vertex count");

  for (int v = 0; v < n; ++v) {
    if (weights[static_cast<size_t>(v)] < 1)
      throw Error(ErrorCode::BadWeight,
                  "vertex " + std::to_string(v) + " has weight < 1");
    auto& nbrs = adjacency[static_cast<size_t>(v)];
    std::sort(nbrs.begin(), nbrs.end());
    for (size_t i = 0; i < nbrs.size(); ++i) {
      int u = nbrs[i];
      if (u < 0 || u >= n)
        throw std::invalid_argument("neighbor id out of range");
      if (u == v)
        throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(v) + " has a self-loop");
      if (i > 0 && nbrs[i - 1] == u)
        throw Error(ErrorCode::ParseError,
                    "parallel edge between vertices " + std::to_string(v) + " and " +
                        std::to_string(u));
    }
  }
  for (int v = 0; v < n; ++v) {
    for (int u : adjacency[static_cast<size_t>(v)]) {
      const auto& back = adjacency[static_cast<size_t>(u)];
      if (!std::binary_search(back.begin(), back.end(), v))
        throw Error(ErrorCode::AsymmetricEdge,
                    "vertex " + std::to_string(v) + " lists " + std::to_string(u) +
                        " but not vice versa");
    }
  }

  WorkloadGraph g;
  g.adj_ = std::move(adjacency);
  g.weights_ = std::move(weights);
  g.incident_.assign(static_cast<size_t>(n), {});
  for (int v = 0; v < n; ++v) {
    for (int u : g.adj_[static_cast<size_t>(v)]) {
      if (v < u) {
        int e = static_cast<int>(g.edges_.size());
        g.edges_.emplace_back(v, u);
        g.incident_[static_cast<size_t>(v)].push_back(e);
        g.incident_[static_cast<size_t>(u)].push_back(e);
      }
    }
  }
  return g;
}

namespace {

// fmt is read right-to-left like the partitioner convention:
// last digit = edge weights, middle = vertex weights, first = vertex sizes.
// Only the vertex-weight flag is supported here.
bool parse_fmt(std::string_view fmt, std::string_view source, int line) {
  if (fmt.empty() || fmt.size() > 3)
    parse::fail(source, line, "bad fmt field '" + std::string(fmt) + "'");
  for (char c : fmt) {
    if (c != '0' && c != '1')
      parse::fail(source, line, "bad fmt field '" + std::string(fmt) + "'");
  }
  std::string padded(3 - fmt.size(), '0');
  padded += fmt;
  if (padded[2] == '1')
    parse::fail(source, line, "edge weights are not supported");
  if (padded[0] == '1')
    parse::fail(source, line, "vertex sizes are not supported");
  return padded[1] == '1';
}

}  // namespace

WorkloadGraph parse_graph(std::string_view text, std::string_view source_name) {
  auto lines = parse::split_lines(text);
  size_t idx = 0;
  while (idx < lines.size() && parse::is_comment_or_blank(lines[idx].text)) ++idx;
  if (idx >= lines.size())
    throw Error(ErrorCode::ParseError, std::string(source_name) + ": missing header line");

  const auto& header = lines[idx];
  auto head_tokens = parse::tokens(header.text);
  if (head_tokens.size() < 2 || head_tokens.size() > 3)
    parse::fail(source_name, header.number, "header must be 'n m [fmt]'");
  long long n = parse::parse_int(head_tokens[0], source_name, header.number, "vertex count");
  long long m = parse::parse_int(head_tokens[1], source_name, header.number, "edge count");
  if (n < 0 || m < 0 || n > INT32_MAX)
    parse::fail(source_name, header.number, "bad header counts");
  bool has_weights =
      head_tokens.size() == 3 && parse_fmt(head_tokens[2], source_name, header.number);
  ++idx;

  std::vector<std::vector<int>> adjacency(static_cast<size_t>(n));
  std::vector<long long> weights(static_cast<size_t>(n), 1);
  for (long long v = 0; v < n; ++v) {
    // Vertex lines may be blank (isolated vertex); only '%' lines are skipped.
    while (idx < lines.size() && !parse::is_blank(lines[idx].text) &&
           parse::is_comment_or_blank(lines[idx].text))
      ++idx;
    if (idx >= lines.size())
      throw Error(ErrorCode::ParseError,
                  std::string(source_name) + ": expected " + std::to_string(n) +
                      " vertex lines, found " + std::to_string(v));
    const auto& line = lines[idx];
    ++idx;
    auto toks = parse::tokens(line.text);
    size_t t = 0;
    if (has_weights) {
      if (toks.empty())
        parse::fail(source_name, line.number, "missing vertex weight");
      long long w = parse::parse_int(toks[0], source_name, line.number, "vertex weight");
      if (w < 1)
        parse::fail(source_name, line.number,
                    "vertex " + std::to_string(v + 1) + " has weight " + std::to_string(w),
                    ErrorCode::BadWeight);
      weights[static_cast<size_t>(v)] = w;
      t = 1;
    }
    auto& nbrs = adjacency[static_cast<size_t>(v)];
    for (; t < toks.size(); ++t) {
      long long u = parse::parse_int(toks[t], source_name, line.number, "neighbor id");
      if (u < 1 || u > n)
        parse::fail(source_name, line.number, "neighbor id " + std::to_string(u) + " out of range");
      if (u == v + 1)
        parse::fail(source_name, line.number,
                    "vertex " + std::to_string(v + 1) + " lists itself", ErrorCode::SelfLoop);
      nbrs.push_back(static_cast<int>(u - 1));
    }
    std::sort(nbrs.begin(), nbrs.end());
    for (size_t i = 1; i < nbrs.size(); ++i) {
      if (nbrs[i] == nbrs[i - 1])
        parse::fail(source_name, line.number,
                    "parallel edge between vertices " + std::to_string(v + 1) + " and " +
                        std::to_string(nbrs[i] + 1));
    }
  }
  for (; idx < lines.size(); ++idx) {
    if (!parse::is_comment_or_blank(lines[idx].text))
      parse::fail(source_name, lines[idx].number, "unexpected trailing line");
  }

  for (long long v = 0; v < n; ++v) {
    for (int u : adjacency[static_cast<size_t>(v)]) {
      const auto& back = adjacency[static_cast<size_t>(u)];
      if (!std::binary_search(back.begin(), back.end(), static_cast<int>(v)))
        throw Error(ErrorCode::AsymmetricEdge,
                    std::string(source_name) + ": vertex " + std::to_string(v + 1) + " lists " +
                        std::to_string(u + 1) + " but not vice versa");
    }
  }
  long long degree_sum = 0;
  for (const auto& nbrs : adjacency) degree_sum += static_cast<long long>(nbrs.size());
  if (degree_sum / 2 != m)
    throw Error(ErrorCode::ParseError,
                std::string(source_name) + ": header declares " + std::to_string(m) +
                    " edges, found " + std::to_string(degree_sum / 2));

  return WorkloadGraph::from_adjacency(std::move(adjacency), std::move(weights));
}

std::string to_text(const WorkloadGraph& graph) {
  bool weighted = false;
  for (int v = 0; v < graph.num_vertices(); ++v) {
    if (graph.weight(v) != 1) {
      weighted = true;
      break;
    }
  }
  std::string out = std::to_string(graph.num_vertices()) + " " + std::to_string(graph.num_edges());
  if (weighted) out += " 10";
  out += '\n';
  for (int v = 0; v < graph.num_vertices(); ++v) {
    std::string line;
    if (weighted) line += std::to_string(graph.weight(v));
    for (int u : graph.neighbors(v)) {
      if (!line.empty()) line += ' ';
      line += std::to_string(u + 1);
    }
    out += line;
    out += '\n';
  }
  return out;
}

long long total_weight(const WorkloadGraph& graph) {
  long long sum = 0;
  for (int v = 0; v < graph.num_vertices(); ++v) sum += graph.weight(v);
  return sum;
}

}  // namespace mapspan
