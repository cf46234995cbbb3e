#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mrtarm/allocation.hpp"
#include "mrtarm/analysis.hpp"
#include "mrtarm/partition.hpp"
#include "mrtarm/redistribution.hpp"

// Verifiers for the structural guarantees of a solved instance. Each returns
// human-readable violations; an empty list means the property holds.
namespace mrtarm::checks {

using Violations = std::vector<std::string>;

inline Violations bijection(const AssignmentResult& res, std::size_t task_count) {
  Violations v;
  std::vector<int> hits(task_count, 0);
  for (std::size_t i = 0; i < res.robot_task.size(); ++i) {
    const std::size_t t = res.robot_task[i];
    if (t >= task_count) {
      v.push_back("robot " + std::to_string(i) + " has no task");
      continue;
    }
    if (++hits[t] > 1) v.push_back("task " + std::to_string(t) + " assigned twice");
  }
  if (res.robot_task.size() != task_count) v.push_back("robot and task counts differ");
  return v;
}

/// Paths start at the robot node, end at the task node, step along edges and
/// never revisit a node.
inline Violations waypoints_valid(const AssignmentResult& res, const Association& assoc,
                                  const Roadmap& rm) {
  Violations v;
  for (std::size_t i = 0; i < res.waypoints.size(); ++i) {
    const auto& p = res.waypoints[i];
    if (p.empty() || p.front() != assoc.robot_node[i] ||
        p.back() != assoc.task_node[res.robot_task[i]]) {
      v.push_back("robot " + std::to_string(i) + " path has wrong endpoints");
      continue;
    }
    for (std::size_t k = 1; k < p.size(); ++k) {
      if (!rm.adjacent(p[k - 1], p[k])) {
        v.push_back("robot " + std::to_string(i) + " path jumps between non-adjacent nodes");
        break;
      }
    }
    std::set<NodeId> seen(p.begin(), p.end());
    if (seen.size() != p.size()) v.push_back("robot " + std::to_string(i) + " path revisits a node");
  }
  return v;
}

/// No roadmap edge is traversed in both directions by the union of paths.
inline Violations edge_unidirectional(const AssignmentResult& res) {
  std::set<std::pair<NodeId, NodeId>> used;
  for (const auto& p : res.waypoints) {
    for (std::size_t k = 1; k < p.size(); ++k) used.insert({p[k - 1], p[k]});
  }
  Violations v;
  for (const auto& [a, b] : used) {
    if (a < b && used.count({b, a})) {
      v.push_back("edge " + std::to_string(a) + "-" + std::to_string(b) + " used both ways");
    }
  }
  return v;
}

/// Plan level: no pair of opposite flows between the same two components.
/// Path level: at every junction node, no robot crosses from component a to
/// b while another crosses from b to a.
inline Violations junction_unidirectional(const Plan& plan, const AssignmentResult& res,
                                          const Partition& part) {
  Violations v;
  std::set<std::pair<ComponentId, ComponentId>> flows;
  for (const Flow& f : plan.flows) flows.insert({f.src, f.dst});
  for (const auto& [a, b] : flows) {
    if (a < b && flows.count({b, a})) {
      v.push_back("opposite flows between components " + std::to_string(a) + " and " +
                  std::to_string(b));
    }
  }
  std::map<NodeId, std::set<std::pair<ComponentId, ComponentId>>> crossings;
  for (const auto& p : res.waypoints) {
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
      if (!part.is_jc_node(p[k])) continue;
      const ComponentId in = part.component_of[p[k - 1]];
      const ComponentId out = part.component_of[p[k + 1]];
      if (in != out) crossings[p[k]].insert({in, out});
    }
  }
  for (const auto& [node, set] : crossings) {
    for (const auto& [a, b] : set) {
      if (a < b && set.count({b, a})) {
        v.push_back("junction " + std::to_string(node) + " crossed both ways");
      }
    }
  }
  return v;
}

/// Under unit-speed planned timing, a robot never has to pass through a node
/// where another robot has already settled: if robot j's path visits robot
/// i's destination at interior step k, then k <= arrival time of i.
inline Violations no_blocking(const AssignmentResult& res) {
  Violations v;
  std::map<NodeId, std::vector<std::size_t>> settle_times;  // node -> arrival steps
  for (const auto& p : res.waypoints) settle_times[p.back()].push_back(p.size() - 1);
  for (auto& [node, times] : settle_times) std::sort(times.begin(), times.end());
  for (std::size_t j = 0; j < res.waypoints.size(); ++j) {
    const auto& p = res.waypoints[j];
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
      const auto it = settle_times.find(p[k]);
      if (it == settle_times.end()) continue;
      if (it->second.front() < k) {
        v.push_back("robot " + std::to_string(j) + " passes node " + std::to_string(p[k]) +
                    " after a robot settled there");
      }
    }
  }
  return v;
}

/// Applying the plan's net flows to the supply report zeroes every component.
inline Violations balance_restored(const Plan& plan, const SupplyReport& report) {
  Violations v;
  const auto net = net_outflow(plan, report.demand.size());
  for (std::size_t z = 0; z < net.size(); ++z) {
    if (report.demand[z] - net[z] != 0) {
      v.push_back("component " + std::to_string(z) + " left with imbalance " +
                  std::to_string(report.demand[z] - net[z]));
    }
  }
  return v;
}

inline Violations plan_adjacent(const Plan& plan, const Partition& part) {
  Violations v;
  for (const Flow& f : plan.flows) {
    if (!part.adjacent(f.src, f.dst)) {
      v.push_back("flow " + std::to_string(f.src) + "->" + std::to_string(f.dst) +
                  " joins non-adjacent components");
    }
  }
  return v;
}

}  // namespace mrtarm::checks
