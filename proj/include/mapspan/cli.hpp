#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapspan/errors.hpp"
#include "mapspan/metrics.hpp"
#include "mapspan/objective.hpp"
#include "mapspan/rational.hpp"

namespace mapspan {

// One batch invocation: load topology + graph, solve or evaluate, emit
// mapping and report files.
struct RunSpec {
  enum class Mode { Solve, Evaluate, Metrics, Sweep };

  Mode mode = Mode::Solve;
  std::string topology_path;
  std::string graph_path;
  std::optional<std::string> routes_path;
  std::optional<std::string> mapping_path;   // required by evaluate/metrics
  std::optional<Rational> factor_override;   // --F
  std::vector<std::pair<std::string, Rational>> sweep_factors;  // (token, value)
  std::uint64_t seed = 1;
  int restarts = 3;
  std::optional<std::string> out_mapping_path;
  std::optional<std::string> out_report_path;  // stdout when absent
};

namespace exit_code {
constexpr int ok = 0;
constexpr int usage = 1;
constexpr int parse = 2;
constexpr int infeasible = 3;
constexpr int missing_route = 4;
constexpr int too_large = 5;
}  // namespace exit_code

int exit_code_for(ErrorCode code);

// Executes the run, writing output files and reporting failures on stderr.
// Returns a exit_code value.
int run(const RunSpec& spec);

// Mapping file: line i holds the 0-based bin id of vertex i, vertices in
// the 1-based order of the graph file. '%' comments allowed.
Mapping parse_mapping(std::string_view text, int num_vertices,
                      std::string_view source_name = "<mapping>");
std::string mapping_to_text(const Mapping& mapping);

// Flat key-value report. Rationals render as p/q when q != 1.
std::string render_report(const MakespanReport& report,
                          const std::optional<BaselineMetrics>& metrics,
                          std::optional<bool> proven_optimal,
                          const std::optional<std::string>& sweep_label);

}  // namespace mapspan
