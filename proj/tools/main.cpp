// Command-line front end: load a topology and a workload graph, then solve,
// evaluate, report baseline metrics, or sweep the communication factor.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mapspan/cli.hpp"
#include "mapspan/rational.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= csv.size()) {
    size_t end = csv.find(',', start);
    if (end == std::string::npos) {
      out.push_back(csv.substr(start));
      break;
    }
    out.push_back(csv.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maps workload graphs onto machine topologies, minimizing the "
               "bottleneck of compute and scaled link loads"};

  std::string mode = "solve";
  std::string topology_path;
  std::string graph_path;
  std::string routes_path;
  std::string mapping_path;
  std::string factor_text;
  std::string sweep_text;
  std::string out_mapping;
  std::string out_report;
  std::uint64_t seed = 1;
  int restarts = 3;

  app.add_option("--mode", mode, "solve | evaluate | metrics | sweep")
      ->check(CLI::IsMember({"solve", "evaluate", "metrics", "sweep"}));
  app.add_option("--topology", topology_path, "topology file")->required();
  app.add_option("--graph", graph_path, "workload graph file")->required();
  app.add_option("--routes", routes_path, "route table file (required for routed topologies)");
  app.add_option("--mapping", mapping_path, "mapping file to evaluate");
  app.add_option("--F", factor_text, "override the global communication factor");
  app.add_option("--sweep-F", sweep_text, "comma-separated factors for sweep mode");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--restarts", restarts, "heuristic restarts")->check(CLI::PositiveNumber);
  app.add_option("--out-mapping", out_mapping, "mapping output path");
  app.add_option("--out-report", out_report, "report output path (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : mapspan::exit_code::usage;
  }

  mapspan::RunSpec spec;
  if (mode == "solve") spec.mode = mapspan::RunSpec::Mode::Solve;
  if (mode == "evaluate") spec.mode = mapspan::RunSpec::Mode::Evaluate;
  if (mode == "metrics") spec.mode = mapspan::RunSpec::Mode::Metrics;
  if (mode == "sweep") spec.mode = mapspan::RunSpec::Mode::Sweep;
  spec.topology_path = topology_path;
  spec.graph_path = graph_path;
  if (!routes_path.empty()) spec.routes_path = routes_path;
  if (!mapping_path.empty()) spec.mapping_path = mapping_path;
  spec.seed = seed;
  spec.restarts = restarts;
  if (!out_mapping.empty()) spec.out_mapping_path = out_mapping;
  if (!out_report.empty()) spec.out_report_path = out_report;

  try {
    if (!factor_text.empty()) {
      if (mode == "sweep") {
        std::cerr << "error: --F conflicts with --sweep-F; pick one\n";
        return mapspan::exit_code::usage;
      }
      spec.factor_override = mapspan::Rational::parse_decimal(factor_text);
    }
    if (!sweep_text.empty()) {
      if (mode != "sweep") {
        std::cerr << "error: --sweep-F is only valid with --mode sweep\n";
        return mapspan::exit_code::usage;
      }
      for (const auto& token : split_csv(sweep_text))
        spec.sweep_factors.emplace_back(token, mapspan::Rational::parse_decimal(token));
    }
  } catch (const mapspan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mapspan::exit_code::usage;
  }

  return mapspan::run(spec);
}
