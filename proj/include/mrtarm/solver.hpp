#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "mrtarm/allocation.hpp"
#include "mrtarm/analysis.hpp"
#include "mrtarm/assignment.hpp"
#include "mrtarm/errors.hpp"
#include "mrtarm/partition.hpp"
#include "mrtarm/redistribution.hpp"
#include "mrtarm/roadmap.hpp"
#include "mrtarm/world.hpp"

namespace mrtarm {

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

inline double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

inline void check_deadline(const Deadline& deadline, const char* stage) {
  if (deadline && Clock::now() > *deadline) throw Timeout(std::string("time limit hit during ") + stage);
}

/// Roadmap and partition for one workspace; built once and shared read-only.
struct Environment {
  Workspace workspace;
  ResolvedRoadmapParams params{};
  Roadmap roadmap;
  Partition partition;
  double roadmap_ms = 0.0;

  double visibility_clearance() const { return params.min_clearance(); }
};

inline Environment build_environment(Workspace ws, double radius, const RoadmapParams& params = {}) {
  Environment env;
  const auto t0 = Clock::now();
  env.params = resolve(params, radius);
  env.roadmap = build_roadmap(ws, radius, params);
  env.partition = partition(env.roadmap);
  env.roadmap_ms = elapsed_ms(t0);
  env.workspace = std::move(ws);
  return env;
}

/// Uses a prepared roadmap (e.g. loaded from disk) instead of building one.
inline Environment make_environment(Workspace ws, double radius, Roadmap rm,
                                    const RoadmapParams& params = {}) {
  Environment env;
  env.params = resolve(params, radius);
  env.roadmap = std::move(rm);
  env.partition = partition(env.roadmap);
  env.workspace = std::move(ws);
  return env;
}

struct StageTimings {
  double roadmap_ms = 0.0;  // reported apart from the solve time
  double analysis_ms = 0.0;
  double cost_matrix_ms = 0.0;
  double matching_ms = 0.0;
  double revise_ms = 0.0;
  double allocation_ms = 0.0;
  double solve_ms = 0.0;  // everything except the roadmap
};

struct MrtaSolution {
  Association association;
  SupplyReport report;
  Plan initial;
  Plan revised;
  std::vector<Category> categories;
  FlowSchedule schedule;
  AssignmentResult result;
  StageTimings timings;
};

/// Pipeline after association: supply analysis, redistribution, allocation.
inline MrtaSolution solve_associated(const Environment& env, Association assoc,
                                     const Deadline& deadline = std::nullopt) {
  MrtaSolution out;
  const auto& part = env.partition;
  const auto& rm = env.roadmap;
  out.timings.roadmap_ms = env.roadmap_ms;
  const auto start = Clock::now();
  auto t = start;
  auto lap = [&](double& slot, const char* stage) {
    slot = elapsed_ms(t);
    t = Clock::now();
    check_deadline(deadline, stage);
  };

  if (assoc.robot_count() != assoc.task_count()) {
    throw CountMismatch("robot and task counts differ");
  }
  out.association = index_sections(part, std::move(assoc));
  out.report = supply_analysis(part, out.association);
  lap(out.timings.analysis_ms, "analysis");

  RedistributionProblem problem;
  if (!out.report.balanced()) problem = build_cost_matrix(part, rm, out.report);
  lap(out.timings.cost_matrix_ms, "cost matrix");

  const Assignment matching = hungarian_solve(problem.costs);
  lap(out.timings.matching_ms, "matching");

  out.initial = initial_plan(matching, problem);
  out.revised = revise(out.initial, problem.paths, part);
  lap(out.timings.revise_ms, "revision");

  out.categories = categorize(out.revised, part.size());
  out.schedule = schedule_flows(out.revised, out.categories, out.association, part, rm);
  out.result = assign_tasks(out.schedule, out.association, part);
  lap(out.timings.allocation_ms, "allocation");

  out.timings.solve_ms = elapsed_ms(start);
  return out;
}

inline MrtaSolution solve_mrta_rm(const Environment& env, const Scenario& sc,
                                  const Deadline& deadline = std::nullopt) {
  const auto start = Clock::now();
  if (sc.robots.size() != sc.tasks.size()) {
    throw CountMismatch("robot and task counts differ");
  }
  Association assoc = associate(env.roadmap, env.workspace, sc, env.visibility_clearance());
  const double assoc_ms = elapsed_ms(start);
  check_deadline(deadline, "analysis");
  MrtaSolution out = solve_associated(env, std::move(assoc), deadline);
  out.timings.analysis_ms += assoc_ms;
  out.timings.solve_ms += assoc_ms;
  return out;
}

/// End to end: builds the roadmap, then solves. Roadmap time is kept apart.
inline MrtaSolution solve(const Workspace& ws, const Scenario& sc, const RoadmapParams& params = {}) {
  validate_scenario(ws, sc);
  const Environment env = build_environment(ws, sc.radius, params);
  return solve_mrta_rm(env, sc);
}

}  // namespace mrtarm
