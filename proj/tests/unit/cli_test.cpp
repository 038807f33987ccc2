#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mapspan/cli.hpp"
#include "mapspan/workload.hpp"

using namespace mapspan;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path = fs::temp_directory_path() /
           fs::path("mapspan_cli_test_" + std::to_string(rng()) + "_" +
                    std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }
  std::string name(const std::string& n) const { return (path / n).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const char* kK2Graph = "2 1\n2\n1\n";
const char* kLinkedPair = "topology tree 2 1 1\nbin 0\nbin 1\nlink 0 0 1\n";

}  // namespace

TEST_CASE("solve writes a mapping and a report") {
  TempDir dir;
  RunSpec spec;
  spec.mode = RunSpec::Mode::Solve;
  spec.topology_path = dir.file("k2.topo", kLinkedPair);
  spec.graph_path = dir.file("k2.graph", kK2Graph);
  spec.out_mapping_path = dir.name("out.mapping");
  spec.out_report_path = dir.name("out.report");

  CHECK(run(spec) == exit_code::ok);

  std::string mapping = slurp(dir.name("out.mapping"));
  CHECK((mapping == "0\n1\n" || mapping == "1\n0\n"));
  std::string report = slurp(dir.name("out.report"));
  CHECK(report.find("makespan=1\n") != std::string::npos);
  CHECK(report.find("proven_optimal=true\n") != std::string::npos);
}

TEST_CASE("evaluate reproduces the solved makespan from the mapping file") {
  TempDir dir;
  RunSpec solve_spec;
  solve_spec.mode = RunSpec::Mode::Solve;
  solve_spec.topology_path = dir.file("k2.topo", kLinkedPair);
  solve_spec.graph_path = dir.file("k2.graph", kK2Graph);
  solve_spec.out_mapping_path = dir.name("out.mapping");
  solve_spec.out_report_path = dir.name("solve.report");
  REQUIRE(run(solve_spec) == exit_code::ok);

  RunSpec eval_spec = solve_spec;
  eval_spec.mode = RunSpec::Mode::Evaluate;
  eval_spec.mapping_path = dir.name("out.mapping");
  eval_spec.out_report_path = dir.name("eval.report");
  REQUIRE(run(eval_spec) == exit_code::ok);

  std::string solve_report = slurp(dir.name("solve.report"));
  std::string eval_report = slurp(dir.name("eval.report"));
  CHECK(eval_report.find("makespan=1\n") != std::string::npos);
  // the solve report carries one extra key; the shared prefix is identical
  CHECK(solve_report.substr(0, eval_report.size()) == eval_report);
}

TEST_CASE("metrics mode appends the baseline section") {
  TempDir dir;
  RunSpec spec;
  spec.mode = RunSpec::Mode::Metrics;
  spec.topology_path = dir.file("k2.topo", kLinkedPair);
  spec.graph_path = dir.file("k2.graph", kK2Graph);
  spec.mapping_path = dir.file("split.mapping", "0\n1\n");
  spec.out_report_path = dir.name("metrics.report");

  CHECK(run(spec) == exit_code::ok);
  std::string report = slurp(dir.name("metrics.report"));
  CHECK(report.find("cut.total=1\n") != std::string::npos);
  CHECK(report.find("cut.max=1\n") != std::string::npos);
  CHECK(report.find("cvol.total=2\n") != std::string::npos);
  CHECK(report.find("cvol.max=1\n") != std::string::npos);
  CHECK(report.find("cvol.0=1\n") != std::string::npos);
}

TEST_CASE("sweep writes one report and mapping per factor") {
  TempDir dir;
  RunSpec spec;
  spec.mode = RunSpec::Mode::Sweep;
  spec.topology_path = dir.file("k2.topo", kLinkedPair);
  spec.graph_path = dir.file("k2.graph", kK2Graph);
  spec.sweep_factors = {{"1", Rational(1)}, {"3", Rational(3)}};
  spec.out_mapping_path = dir.name("sweep.mapping");
  spec.out_report_path = dir.name("sweep.report");

  CHECK(run(spec) == exit_code::ok);

  std::string report1 = slurp(dir.name("sweep.report.F=1"));
  std::string report3 = slurp(dir.name("sweep.report.F=3"));
  CHECK(report1.find("F=1\n") == 0);
  CHECK(report1.find("makespan=1\n") != std::string::npos);
  CHECK(report3.find("makespan=2\n") != std::string::npos);

  std::string mapping1 = slurp(dir.name("sweep.mapping.F=1"));
  std::string mapping3 = slurp(dir.name("sweep.mapping.F=3"));
  CHECK(mapping1 != mapping3);  // split vs co-located
}

TEST_CASE("reports are byte-identical across repeated runs") {
  TempDir dir;
  RunSpec spec;
  spec.mode = RunSpec::Mode::Solve;
  spec.topology_path =
      dir.file("star.topo",
               "topology tree 4 3 0.5\nbin 0 router\nbin 1\nbin 2\nbin 3\n"
               "link 0 0 1\nlink 1 0 2\nlink 2 0 3\n");
  spec.graph_path = dir.file("ring.graph", "6 6\n2 6\n1 3\n2 4\n3 5\n4 6\n5 1\n");
  spec.seed = 7;
  spec.out_mapping_path = dir.name("a.mapping");
  spec.out_report_path = dir.name("a.report");
  REQUIRE(run(spec) == exit_code::ok);

  RunSpec again = spec;
  again.out_mapping_path = dir.name("b.mapping");
  again.out_report_path = dir.name("b.report");
  REQUIRE(run(again) == exit_code::ok);

  CHECK(slurp(dir.name("a.mapping")) == slurp(dir.name("b.mapping")));
  CHECK(slurp(dir.name("a.report")) == slurp(dir.name("b.report")));
}

TEST_CASE("error exits are distinct") {
  TempDir dir;
  std::string topo = dir.file("k2.topo", kLinkedPair);
  std::string graph = dir.file("k2.graph", kK2Graph);

  RunSpec broken_graph;
  broken_graph.topology_path = topo;
  broken_graph.graph_path = dir.file("broken.graph", "2 1\n2\n");
  CHECK(run(broken_graph) == exit_code::parse);

  RunSpec missing_file;
  missing_file.topology_path = dir.name("nope.topo");
  missing_file.graph_path = graph;
  CHECK(run(missing_file) == exit_code::parse);

  RunSpec on_router;
  on_router.mode = RunSpec::Mode::Evaluate;
  on_router.topology_path = dir.file(
      "star.topo", "topology tree 3 2 1\nbin 0\nbin 1 router\nbin 2\nlink 0 0 1\nlink 1 1 2\n");
  on_router.graph_path = graph;
  on_router.mapping_path = dir.file("bad.mapping", "0\n1\n");
  on_router.out_report_path = dir.name("unused.report");
  CHECK(run(on_router) == exit_code::infeasible);

  RunSpec no_route;
  no_route.mode = RunSpec::Mode::Evaluate;
  no_route.topology_path = dir.file(
      "sq.topo",
      "topology routed 3 3 1\nbin 0\nbin 1\nbin 2\nlink 0 0 1\nlink 1 1 2\nlink 2 0 2\n");
  no_route.graph_path = graph;
  no_route.routes_path = dir.file("partial.routes", "route 0 1 1\n0\n");
  no_route.mapping_path = dir.file("far.mapping", "0\n2\n");
  no_route.out_report_path = dir.name("unused2.report");
  CHECK(run(no_route) == exit_code::missing_route);

  RunSpec routed_without_table;
  routed_without_table.topology_path = no_route.topology_path;
  routed_without_table.graph_path = graph;
  CHECK(run(routed_without_table) == exit_code::usage);

  RunSpec eval_without_mapping;
  eval_without_mapping.mode = RunSpec::Mode::Evaluate;
  eval_without_mapping.topology_path = topo;
  eval_without_mapping.graph_path = graph;
  CHECK(run(eval_without_mapping) == exit_code::usage);
}

TEST_CASE("routed topology solves through a route table") {
  TempDir dir;
  RunSpec spec;
  spec.mode = RunSpec::Mode::Solve;
  spec.topology_path = dir.file(
      "tri.topo",
      "topology routed 3 3 1\nbin 0\nbin 1\nbin 2\nlink 0 0 1\nlink 1 1 2\nlink 2 0 2\n");
  spec.graph_path = dir.file("tri.graph", "3 3\n2 3\n1 3\n1 2\n");
  spec.routes_path = dir.file("tri.routes",
                              "route 0 1 2\n0\n2 1\nroute 1 2 1\n1\nroute 0 2 1\n2\n");
  spec.out_mapping_path = dir.name("tri.mapping");
  spec.out_report_path = dir.name("tri.report");
  CHECK(run(spec) == exit_code::ok);
  std::string report = slurp(dir.name("tri.report"));
  CHECK(report.find("makespan=") == 0);
  CHECK(report.find("proven_optimal=true\n") != std::string::npos);
}

TEST_CASE("factor override changes the decision") {
  TempDir dir;
  RunSpec spec;
  spec.mode = RunSpec::Mode::Solve;
  spec.topology_path = dir.file("k2.topo", kLinkedPair);
  spec.graph_path = dir.file("k2.graph", kK2Graph);
  spec.factor_override = Rational(3);
  spec.out_mapping_path = dir.name("f3.mapping");
  spec.out_report_path = dir.name("f3.report");
  CHECK(run(spec) == exit_code::ok);
  CHECK(slurp(dir.name("f3.report")).find("makespan=2\n") != std::string::npos);
}

TEST_CASE("mapping files tolerate comments and reject junk") {
  Mapping m = parse_mapping("% header\n0\n1\n", 2);
  CHECK(m.bin_of == std::vector<int>{0, 1});
  CHECK_THROWS_AS(parse_mapping("0\n", 2, "m.txt"), Error);
  CHECK_THROWS_AS(parse_mapping("0 1\n", 2, "m.txt"), Error);
  CHECK(mapping_to_text(m) == "0\n1\n");
}
