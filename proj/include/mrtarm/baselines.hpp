#pragma once

#include <map>
#include <vector>

#include "mrtarm/allocation.hpp"
#include "mrtarm/analysis.hpp"
#include "mrtarm/assignment.hpp"
#include "mrtarm/partition.hpp"
#include "mrtarm/solver.hpp"

namespace mrtarm {

/// Robot x task matrix of roadmap hop counts, with the BFS trees kept so the
/// chosen pairs can be expanded into paths.
struct HopCosts {
  CostMatrix costs;
  std::map<NodeId, BfsTree> trees;  // keyed by robot start node
};

inline HopCosts hop_costs(const Roadmap& rm, const Association& assoc) {
  HopCosts h;
  const std::size_t n = assoc.robot_count();
  h.costs = CostMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId s = assoc.robot_node[i];
    auto it = h.trees.find(s);
    if (it == h.trees.end()) it = h.trees.emplace(s, bfs(rm, s)).first;
    for (std::size_t j = 0; j < n; ++j) {
      const NodeId g = assoc.task_node[j];
      if (!it->second.reaches(g)) {
        throw Unreachable("robot " + std::to_string(i) + " cannot reach task " + std::to_string(j));
      }
      h.costs(i, j) = static_cast<double>(it->second.hops[g]);
    }
  }
  return h;
}

inline AssignmentResult expand_matching(const Assignment& a, const HopCosts& h,
                                        const Association& assoc, const Partition& part) {
  const std::size_t n = assoc.robot_count();
  AssignmentResult res;
  res.robot_task = a.match;
  res.waypoints.resize(n);
  res.recommended.resize(n);
  res.arrival_hops.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    res.waypoints[i] = h.trees.at(assoc.robot_node[i]).path_to(assoc.task_node[a.match[i]]);
    res.recommended[i] = junction_subsequence(part, res.waypoints[i]);
    res.arrival_hops[i] = res.waypoints[i].size() - 1;
  }
  return res;
}

/// Greedy-TA: commits the cheapest remaining robot-task pair until done.
inline AssignmentResult greedy_ta(const Roadmap& rm, const Association& assoc,
                                  const Partition& part) {
  const HopCosts h = hop_costs(rm, assoc);
  return expand_matching(greedy_solve(h.costs), h, assoc, part);
}

/// Hungarian-TA: optimal sum-of-hops matching over all robots and tasks.
inline AssignmentResult hungarian_ta(const Roadmap& rm, const Association& assoc,
                                     const Partition& part) {
  const HopCosts h = hop_costs(rm, assoc);
  return expand_matching(hungarian_solve(h.costs), h, assoc, part);
}

enum class Method { kMrtaRm, kHungarianTa, kGreedyTa };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::kMrtaRm: return "mrta-rm";
    case Method::kHungarianTa: return "hungarian-ta";
    case Method::kGreedyTa: return "greedy-ta";
  }
  return "?";
}

inline Method method_from_string(const std::string& s) {
  if (s == "mrta-rm") return Method::kMrtaRm;
  if (s == "hungarian-ta") return Method::kHungarianTa;
  if (s == "greedy-ta") return Method::kGreedyTa;
  throw ParseError("unknown method '" + s + "'");
}

struct MethodOutcome {
  AssignmentResult result;
  bool ordered_arrivals = false;  // result carries a planned arrival order
  std::optional<MrtaSolution> mrta;  // pipeline internals for mrta-rm
  double solve_ms = 0.0;
};

/// Runs any method on a prepared environment; solve_ms excludes the roadmap.
inline MethodOutcome run_method(Method m, const Environment& env, const Scenario& sc,
                                const Deadline& deadline = std::nullopt) {
  MethodOutcome out;
  if (m == Method::kMrtaRm) {
    out.mrta = solve_mrta_rm(env, sc, deadline);
    out.result = out.mrta->result;
    out.ordered_arrivals = true;
    out.solve_ms = out.mrta->timings.solve_ms;
    return out;
  }
  const auto t0 = Clock::now();
  if (sc.robots.size() != sc.tasks.size()) throw CountMismatch("robot and task counts differ");
  const Association assoc = associate(env.roadmap, env.workspace, sc, env.visibility_clearance());
  check_deadline(deadline, "analysis");
  out.result = m == Method::kGreedyTa ? greedy_ta(env.roadmap, assoc, env.partition)
                                      : hungarian_ta(env.roadmap, assoc, env.partition);
  out.solve_ms = elapsed_ms(t0);
  check_deadline(deadline, "matching");
  return out;
}

}  // namespace mrtarm
