#include "mapspan/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "mapspan/routing.hpp"
#include "mapspan/solvers.hpp"
#include "mapspan/topology.hpp"
#include "mapspan/workload.hpp"
#include "parse_util.hpp"

namespace mapspan {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingRoute:
      return exit_code::missing_route;
    case ErrorCode::AllRouters:
    case ErrorCode::Infeasible:
    case ErrorCode::InfeasibleMapping:
    case ErrorCode::InfeasibleTarget:
      return exit_code::infeasible;
    case ErrorCode::TooLarge:
      return exit_code::too_large;
    default:
      return exit_code::parse;
  }
}

Mapping parse_mapping(std::string_view text, int num_vertices, std::string_view source_name) {
  auto lines = parse::split_lines(text);
  Mapping mapping;
  mapping.bin_of.reserve(static_cast<size_t>(num_vertices));
  for (const auto& line : lines) {
    if (parse::is_comment_or_blank(line.text)) continue;
    auto toks = parse::tokens(line.text);
    if (toks.size() != 1)
      parse::fail(source_name, line.number, "expected one bin id per line");
    long long bin = parse::parse_int(toks[0], source_name, line.number, "bin id");
    if (bin < 0 || bin > INT32_MAX)
      parse::fail(source_name, line.number, "bad bin id " + std::to_string(bin));
    mapping.bin_of.push_back(static_cast<int>(bin));
  }
  if (mapping.size() != num_vertices)
    throw Error(ErrorCode::ParseError,
                std::string(source_name) + ": mapping has " + std::to_string(mapping.size()) +
                    " entries, graph has " + std::to_string(num_vertices) + " vertices");
  return mapping;
}

std::string mapping_to_text(const Mapping& mapping) {
  std::string out;
  for (int b : mapping.bin_of) {
    out += std::to_string(b);
    out += '\n';
  }
  return out;
}

std::string render_report(const MakespanReport& report,
                          const std::optional<BaselineMetrics>& metrics,
                          std::optional<bool> proven_optimal,
                          const std::optional<std::string>& sweep_label) {
  std::string out;
  if (sweep_label) out += "F=" + *sweep_label + "\n";
  out += "makespan=" + report.makespan.to_string() + "\n";
  out += "bottleneck=";
  out += report.bottleneck.kind == Bottleneck::Kind::Compute ? "compute" : "communication";
  out += ":" + std::to_string(report.bottleneck.id) + "\n";
  for (size_t b = 0; b < report.comp_per_bin.size(); ++b)
    out += "comp." + std::to_string(b) + "=" + std::to_string(report.comp_per_bin[b]) + "\n";
  for (size_t l = 0; l < report.comm_per_link.size(); ++l)
    out += "comm." + std::to_string(l) + "=" + report.comm_per_link[l].to_string() + "\n";
  for (size_t l = 0; l < report.scaled_comm_per_link.size(); ++l)
    out += "scaled_comm." + std::to_string(l) + "=" +
           report.scaled_comm_per_link[l].to_string() + "\n";
  if (proven_optimal) out += std::string("proven_optimal=") + (*proven_optimal ? "true" : "false") + "\n";
  if (metrics) {
    out += "cut.total=" + std::to_string(metrics->total_cut) + "\n";
    out += "cut.max=" + std::to_string(metrics->max_cut) + "\n";
    out += "cvol.total=" + std::to_string(metrics->cvol_total) + "\n";
    out += "cvol.max=" + std::to_string(metrics->cvol_max) + "\n";
    for (const auto& [block, cvol] : metrics->cvol_per_block)
      out += "cvol." + std::to_string(block) + "=" + std::to_string(cvol) + "\n";
  }
  return out;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path);
}

void emit_report(const RunSpec& spec, const std::string& suffix, const std::string& report) {
  if (spec.out_report_path) {
    write_file(*spec.out_report_path + suffix, report);
  } else {
    std::cout << report;
  }
}

void emit_mapping(const RunSpec& spec, const std::string& suffix, const Mapping& mapping) {
  std::string path = spec.out_mapping_path ? *spec.out_mapping_path
                                           : spec.graph_path + ".mapping";
  write_file(path + suffix, mapping_to_text(mapping));
}

int run_checked(const RunSpec& spec) {
  Topology topology = parse_topology(read_file(spec.topology_path), spec.topology_path);
  if (spec.factor_override) topology = topology.with_global_factor(*spec.factor_override);
  WorkloadGraph graph = parse_graph(read_file(spec.graph_path), spec.graph_path);

  std::unique_ptr<RoutingOracle> oracle;
  if (spec.routes_path) {
    oracle = std::make_unique<TableOracle>(
        TableOracle::from_text(read_file(*spec.routes_path), topology, *spec.routes_path));
  } else if (topology.kind() == TopologyKind::Tree) {
    oracle = std::make_unique<TreePathOracle>(topology);
  } else {
    std::cerr << "error: routed topologies require --routes\n";
    return exit_code::usage;
  }

  SolveConfig config;
  config.seed = spec.seed;
  config.restarts = spec.restarts;

  switch (spec.mode) {
    case RunSpec::Mode::Solve: {
      SolveResult result = solve(graph, topology, *oracle, config);
      emit_mapping(spec, "", result.mapping);
      emit_report(spec, "", render_report(result.report, std::nullopt, result.proven_optimal,
                                          std::nullopt));
      return exit_code::ok;
    }
    case RunSpec::Mode::Evaluate:
    case RunSpec::Mode::Metrics: {
      if (!spec.mapping_path) {
        std::cerr << "error: evaluate/metrics modes require --mapping\n";
        return exit_code::usage;
      }
      Mapping mapping =
          parse_mapping(read_file(*spec.mapping_path), graph.num_vertices(), *spec.mapping_path);
      MakespanReport report = evaluate(graph, mapping, topology, *oracle);
      std::optional<BaselineMetrics> metrics;
      if (spec.mode == RunSpec::Mode::Metrics) metrics = baseline_metrics(graph, mapping);
      emit_report(spec, "", render_report(report, metrics, std::nullopt, std::nullopt));
      return exit_code::ok;
    }
    case RunSpec::Mode::Sweep: {
      if (spec.sweep_factors.empty()) {
        std::cerr << "error: sweep mode requires --sweep-F\n";
        return exit_code::usage;
      }
      for (const auto& [token, factor] : spec.sweep_factors) {
        Topology swept = topology.with_global_factor(factor);
        SolveResult result = solve(graph, swept, *oracle, config);
        std::string suffix = ".F=" + token;
        emit_mapping(spec, suffix, result.mapping);
        emit_report(spec, suffix,
                    render_report(result.report, std::nullopt, result.proven_optimal, token));
      }
      return exit_code::ok;
    }
  }
  return exit_code::usage;
}

}  // namespace

int run(const RunSpec& spec) {
  try {
    return run_checked(spec);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::usage;
  }
}

}  // namespace mapspan
