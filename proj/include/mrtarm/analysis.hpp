#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "mrtarm/errors.hpp"
#include "mrtarm/partition.hpp"
#include "mrtarm/roadmap.hpp"
#include "mrtarm/world.hpp"

namespace mrtarm {

/// Robot/task to roadmap-node association plus per-component orderings.
struct Association {
  std::vector<NodeId> robot_node;
  std::vector<NodeId> task_node;
  std::vector<double> robot_offset;  // distance entity -> node
  std::vector<double> task_offset;

  // Filled by index_sections. Per component: sections list entities by node
  // position from the front end, junctions by distance to their node; ties
  // go to the closer entity, then the lower id.
  std::vector<std::vector<std::size_t>> component_robots;
  std::vector<std::vector<std::size_t>> component_tasks;

  std::size_t robot_count() const { return robot_node.size(); }
  std::size_t task_count() const { return task_node.size(); }
};

namespace detail {

inline std::pair<NodeId, double> nearest_visible_node(const Roadmap& rm, const Workspace& ws,
                                                      Vec2 p, double clearance) {
  std::vector<std::pair<double, NodeId>> order(rm.size());
  for (NodeId v = 0; v < rm.size(); ++v) order[v] = {distance(p, rm.position(v)), v};
  std::sort(order.begin(), order.end());
  for (const auto& [d, v] : order) {
    if (ws.segment_clearance(p, rm.position(v)) >= clearance) return {v, d};
  }
  return {kNoIndex, 0.0};
}

}  // namespace detail

/// Maps every robot and task to its nearest node whose connecting segment
/// keeps `clearance` from every obstacle (obstacles inflated by the body).
inline Association associate(const Roadmap& rm, const Workspace& ws, const Scenario& sc,
                             double clearance) {
  Association a;
  auto run = [&](const std::vector<Vec2>& pts, std::vector<NodeId>& nodes,
                 std::vector<double>& offsets, const char* kind) {
    nodes.reserve(pts.size());
    offsets.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto [v, d] = detail::nearest_visible_node(rm, ws, pts[i], clearance);
      if (v == kNoIndex) {
        throw NoVisibleNode(std::string(kind) + " " + std::to_string(i) + " sees no roadmap node");
      }
      nodes.push_back(v);
      offsets.push_back(d);
    }
  };
  run(sc.robots, a.robot_node, a.robot_offset, "robot");
  run(sc.tasks, a.task_node, a.task_offset, "task");
  return a;
}

inline Association associate(const Roadmap& rm, const Workspace& ws, const Scenario& sc) {
  return associate(rm, ws, sc, sc.radius);
}

/// Orders entities within each component. Section entities follow node
/// positions from the front end; entities sharing a node are ordered by
/// distance to it, then by id.
inline Association index_sections(const Partition& part, Association a) {
  auto fill = [&](const std::vector<NodeId>& nodes, const std::vector<double>& offsets,
                  std::vector<std::vector<std::size_t>>& out) {
    out.assign(part.size(), {});
    for (std::size_t i = 0; i < nodes.size(); ++i) out[part.component_of[nodes[i]]].push_back(i);
    for (ComponentId z = 0; z < part.size(); ++z) {
      auto key = [&](std::size_t i) {
        return std::make_tuple(part.position_in_section[nodes[i]], offsets[i], i);
      };
      std::sort(out[z].begin(), out[z].end(),
                [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
    }
  };
  fill(a.robot_node, a.robot_offset, a.component_robots);
  fill(a.task_node, a.task_offset, a.component_tasks);
  return a;
}

struct SupplyReport {
  std::vector<long> demand;            // robots minus tasks, per component
  std::vector<ComponentId> oversupplied;   // D > 0, ascending
  std::vector<ComponentId> undersupplied;  // D < 0, ascending

  bool balanced() const { return oversupplied.empty() && undersupplied.empty(); }
  long surplus() const {
    long k = 0;
    for (ComponentId z : oversupplied) k += demand[z];
    return k;
  }
};

inline SupplyReport supply_analysis(const Partition& part, const Association& a) {
  SupplyReport r;
  r.demand.assign(part.size(), 0);
  for (NodeId v : a.robot_node) ++r.demand[part.component_of[v]];
  for (NodeId v : a.task_node) --r.demand[part.component_of[v]];
  for (ComponentId z = 0; z < part.size(); ++z) {
    if (r.demand[z] > 0) r.oversupplied.push_back(z);
    if (r.demand[z] < 0) r.undersupplied.push_back(z);
  }
  return r;
}

}  // namespace mrtarm
