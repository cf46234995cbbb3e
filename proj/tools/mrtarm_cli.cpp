// mrtarm: roadmap, solve and bench front-end.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mrtarm/mrtarm.hpp"

namespace fs = std::filesystem;
using namespace mrtarm;

namespace {

struct RoadmapOpts {
  std::string map;
  double radius = 0.0;
  std::string out;
  std::string svg;
  double node_spacing = 0.0;
  double sample_spacing = 0.0;
};

struct SolveOpts {
  std::string map;
  std::string scenario;
  std::string method = "mrta-rm";
  std::string out;
  std::string roadmap;
  std::string plan;
  std::string svg;
  bool simulate = false;
  double node_spacing = 0.0;
};

struct BenchOpts {
  std::string spec;
  std::string out_dir = ".";
  unsigned jobs = 1;
};

RoadmapParams params_from(double node_spacing, double sample_spacing = 0.0) {
  RoadmapParams p;
  p.node_spacing = node_spacing;
  p.sample_spacing = sample_spacing;
  return p;
}

int cmd_roadmap(const RoadmapOpts& o) {
  const Workspace ws = load_map(o.map);
  const Environment env =
      build_environment(ws, o.radius, params_from(o.node_spacing, o.sample_spacing));
  const std::string text = roadmap_to_json(env.roadmap, env.partition).dump(1) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
    std::cout << "nodes " << env.roadmap.size() << "  edges " << env.roadmap.edges().size()
              << "  jc " << env.partition.jc_nodes.size() << "  sections "
              << env.partition.sections.size() << "\n";
  }
  if (!o.svg.empty()) write_text_file(o.svg, roadmap_svg(ws, env.roadmap, env.partition));
  std::cerr << "roadmap_ms " << format_ms(env.roadmap_ms) << "\n";
  return 0;
}

int cmd_solve(const SolveOpts& o) {
  const Workspace ws = load_map(o.map);
  const Scenario sc = load_scenario(o.scenario, ws);
  const Method method = method_from_string(o.method);
  const RoadmapParams params = params_from(o.node_spacing);
  const Environment env = o.roadmap.empty()
                              ? build_environment(ws, sc.radius, params)
                              : make_environment(ws, sc.radius, load_roadmap(o.roadmap), params);

  const MethodOutcome out = run_method(method, env, sc);
  write_text_file(o.out, assignment_to_json(out.result, o.method).dump(1) + "\n");

  if (out.mrta) {
    const auto& m = *out.mrta;
    std::cout << "initial plan (" << m.initial.flows.size() << " flows)\n"
              << plan_to_text(m.initial) << "revised plan (" << m.revised.flows.size()
              << " flows)\n"
              << plan_to_text(m.revised);
    if (!o.plan.empty()) write_text_file(o.plan, plan_to_text(m.revised));
    const auto& t = m.timings;
    std::cout << "analysis_ms " << format_ms(t.analysis_ms) << "\ncost_matrix_ms "
              << format_ms(t.cost_matrix_ms) << "\nmatching_ms " << format_ms(t.matching_ms)
              << "\nrevise_ms " << format_ms(t.revise_ms) << "\nallocation_ms "
              << format_ms(t.allocation_ms) << "\n";
  } else if (!o.plan.empty()) {
    write_text_file(o.plan, "");
  }
  std::cout << "solve_ms " << format_ms(out.solve_ms) << "\n";
  std::cout << "roadmap_ms " << format_ms(env.roadmap_ms) << " (not part of solve time)\n";

  if (o.simulate) {
    const Metrics met = simulate(env.roadmap, out.result, arrival_order(out));
    std::cout << "sim_success " << (met.success ? 1 : 0) << "\nmakespan " << met.makespan
              << "\nsoc " << met.soc << "\n";
  }
  if (!o.svg.empty()) write_text_file(o.svg, roadmap_svg(ws, env.roadmap, env.partition, &sc));
  return 0;
}

int cmd_bench(const BenchOpts& o) {
  BenchmarkSpec spec = parse_benchmark_spec(detail::read_json_file(o.spec));
  apply_seed_override(spec);
  fs::create_directories(o.out_dir);
  const auto rows = run_benchmark(spec, o.jobs);
  write_text_file((fs::path(o.out_dir) / "results.csv").string(), rows_to_csv(rows));
  const std::string table = summary_table(rows);
  write_text_file((fs::path(o.out_dir) / "summary.txt").string(), table);
  std::cout << table;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roadmap-based multi-robot task allocation"};
  app.require_subcommand(1);

  RoadmapOpts ro;
  auto* roadmap = app.add_subcommand("roadmap", "Build a roadmap and its partition");
  roadmap->add_option("--map", ro.map, "Map file (JSON)")->required()->check(CLI::ExistingFile);
  roadmap->add_option("--radius", ro.radius, "Robot radius")->required()->check(CLI::PositiveNumber);
  roadmap->add_option("--out", ro.out, "Roadmap output file (default: stdout)");
  roadmap->add_option("--svg", ro.svg, "Write an SVG drawing");
  roadmap->add_option("--node-spacing", ro.node_spacing, "Node spacing (default 2r)");
  roadmap->add_option("--sample-spacing", ro.sample_spacing, "Boundary sample spacing (default r/2)");

  SolveOpts so;
  auto* solve = app.add_subcommand("solve", "Allocate tasks for one scenario");
  solve->add_option("--map", so.map, "Map file (JSON)")->required()->check(CLI::ExistingFile);
  solve->add_option("--scenario", so.scenario, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
  solve->add_option("--method", so.method, "mrta-rm | hungarian-ta | greedy-ta")
      ->check(CLI::IsMember({"mrta-rm", "hungarian-ta", "greedy-ta"}));
  solve->add_option("--out", so.out, "Assignment output file")->required();
  solve->add_option("--roadmap", so.roadmap, "Use this roadmap instead of building one")
      ->check(CLI::ExistingFile);
  solve->add_option("--plan", so.plan, "Write the revised plan as text");
  solve->add_option("--svg", so.svg, "Write an SVG drawing with robots and tasks");
  solve->add_option("--node-spacing", so.node_spacing, "Node spacing (default 2r)");
  solve->add_flag("--simulate", so.simulate, "Execute the result and print metrics");

  BenchOpts bo;
  auto* bench = app.add_subcommand("bench", "Run a benchmark spec");
  bench->add_option("--spec", bo.spec, "Benchmark spec (JSON)")->required()->check(CLI::ExistingFile);
  bench->add_option("--out-dir", bo.out_dir, "Directory for results.csv and summary.txt");
  bench->add_option("--jobs", bo.jobs, "Worker threads")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*roadmap) return cmd_roadmap(ro);
    if (*solve) return cmd_solve(so);
    if (*bench) return cmd_bench(bo);
  } catch (const DegenerateSpace& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 1;
}
