#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "mrtarm/analysis.hpp"
#include "mrtarm/errors.hpp"
#include "mrtarm/partition.hpp"
#include "mrtarm/redistribution.hpp"

namespace mrtarm {

/// C1: idle, C2: source only, C3: sink only, C4: relays robots.
enum class Category { kC1 = 1, kC2 = 2, kC3 = 3, kC4 = 4 };

inline const char* to_string(Category c) {
  switch (c) {
    case Category::kC1: return "C1";
    case Category::kC2: return "C2";
    case Category::kC3: return "C3";
    case Category::kC4: return "C4";
  }
  return "?";
}

inline std::vector<Category> categorize(const Plan& plan, std::size_t component_count) {
  std::vector<char> in(component_count, 0), out(component_count, 0);
  for (const Flow& f : plan.flows) {
    out[f.src] = 1;
    in[f.dst] = 1;
  }
  std::vector<Category> cat(component_count, Category::kC1);
  for (std::size_t z = 0; z < component_count; ++z) {
    if (in[z] && out[z]) cat[z] = Category::kC4;
    else if (out[z]) cat[z] = Category::kC2;
    else if (in[z]) cat[z] = Category::kC3;
  }
  return cat;
}

/// How a robot reached the component it currently sits in.
enum class Entry { kNative, kFront, kBack, kJunction };

struct RobotTrack {
  ComponentId component = 0;
  NodeId node = 0;
  std::size_t traveled = 0;  // hops so far
  Entry entry = Entry::kNative;
  std::vector<NodeId> waypoints;
};

struct ScheduledFlow {
  Flow flow;
  int phase = 0;  // 1: C2->C4, 2: C2->C3, 3: C4->C4, 4: C4->C3
  std::vector<std::size_t> robots;  // in sending order
};

/// Result of hypothetically executing a revised plan.
struct FlowSchedule {
  std::vector<ScheduledFlow> steps;
  std::vector<RobotTrack> robots;
  std::vector<std::vector<std::size_t>> natives;   // per component, not sent away
  std::vector<std::vector<std::size_t>> arrivals;  // per component, still present
};

namespace detail {

// Nodes strictly after `from` up to and including `to`, walking inside one
// component. Both nodes belong to the same component.
inline void walk_within(const Partition& part, NodeId from, NodeId to, std::vector<NodeId>& out) {
  if (from == to) return;
  const ComponentId z = part.component_of[from];
  const auto& nodes = part.section(z).nodes;
  const std::size_t a = part.position_in_section[from];
  const std::size_t b = part.position_in_section[to];
  if (a < b) {
    for (std::size_t k = a + 1; k <= b; ++k) out.push_back(nodes[k]);
  } else {
    for (std::size_t k = a; k-- > b;) out.push_back(nodes[k]);
  }
}

inline std::size_t hops_within(const Partition& part, NodeId from, NodeId to) {
  if (from == to) return 0;
  const std::size_t a = part.position_in_section[from];
  const std::size_t b = part.position_in_section[to];
  return a > b ? a - b : b - a;
}

inline bool arrival_before(const std::vector<RobotTrack>& robots, std::size_t x, std::size_t y) {
  return std::make_pair(robots[x].traveled, x) < std::make_pair(robots[y].traveled, y);
}

}  // namespace detail

/// Executes flows in the mandated phase order, sending native robots nearest
/// the exit first and relayed robots first-in first-out.
inline FlowSchedule schedule_flows(const Plan& plan, const std::vector<Category>& cat,
                                   const Association& assoc, const Partition& part,
                                   const Roadmap& rm) {
  FlowSchedule s;
  s.robots.resize(assoc.robot_count());
  for (std::size_t i = 0; i < assoc.robot_count(); ++i) {
    auto& r = s.robots[i];
    r.node = assoc.robot_node[i];
    r.component = part.component_of[r.node];
    r.waypoints.push_back(r.node);
  }
  s.natives = assoc.component_robots;
  s.arrivals.assign(part.size(), {});

  std::vector<std::size_t> pending_in(part.size(), 0);
  for (const Flow& f : plan.flows) ++pending_in[f.dst];

  auto execute = [&](const Flow& f, int phase) {
    const NodeId exit = part.boundary_node(f.src, f.dst, rm);
    const NodeId entry = part.boundary_node(f.dst, f.src, rm);
    ScheduledFlow step{f, phase, {}};

    auto& natives = s.natives[f.src];
    // Natives nearest the exit node leave first.
    const bool exit_is_back = !part.is_junction(f.src) &&
                              part.position_in_section[exit] != 0;
    while (step.robots.size() < f.count && !natives.empty()) {
      if (exit_is_back) {
        step.robots.push_back(natives.back());
        natives.pop_back();
      } else {
        step.robots.push_back(natives.front());
        natives.erase(natives.begin());
      }
    }
    auto& relay = s.arrivals[f.src];
    std::stable_sort(relay.begin(), relay.end(), [&](std::size_t x, std::size_t y) {
      return detail::arrival_before(s.robots, x, y);
    });
    std::size_t taken = 0;
    while (step.robots.size() < f.count && taken < relay.size()) {
      step.robots.push_back(relay[taken++]);
    }
    relay.erase(relay.begin(), relay.begin() + static_cast<std::ptrdiff_t>(taken));
    if (step.robots.size() < f.count) {
      throw StuckSchedule("component " + std::to_string(f.src) + " has too few robots to send");
    }

    Entry side = Entry::kJunction;
    if (!part.is_junction(f.dst)) {
      side = part.position_in_section[entry] == 0 ? Entry::kFront : Entry::kBack;
    }
    for (std::size_t id : step.robots) {
      auto& r = s.robots[id];
      if (!part.is_junction(f.src)) {
        r.traveled += detail::hops_within(part, r.node, exit);
        detail::walk_within(part, r.node, exit, r.waypoints);
      }
      r.traveled += 1;
      r.waypoints.push_back(entry);
      r.node = entry;
      r.component = f.dst;
      r.entry = side;
      s.arrivals[f.dst].push_back(id);
    }
    --pending_in[f.dst];
    s.steps.push_back(std::move(step));
  };

  std::vector<char> done(plan.flows.size(), 0);
  auto run_unconditional = [&](Category src, Category dst, int phase) {
    for (std::size_t i = 0; i < plan.flows.size(); ++i) {
      const Flow& f = plan.flows[i];
      if (!done[i] && cat[f.src] == src && cat[f.dst] == dst) {
        execute(f, phase);
        done[i] = 1;
      }
    }
  };
  // Relay sources wait until every inbound flow has landed.
  auto run_relays = [&](Category dst, int phase) {
    for (;;) {
      bool remaining = false;
      bool progressed = false;
      for (std::size_t i = 0; i < plan.flows.size(); ++i) {
        const Flow& f = plan.flows[i];
        if (done[i] || cat[f.src] != Category::kC4 || cat[f.dst] != dst) continue;
        remaining = true;
        if (pending_in[f.src] != 0) continue;
        execute(f, phase);
        done[i] = 1;
        progressed = true;
        break;
      }
      if (!remaining) return;
      if (!progressed) throw StuckSchedule("no relay flow is eligible");
    }
  };

  run_unconditional(Category::kC2, Category::kC4, 1);
  run_unconditional(Category::kC2, Category::kC3, 2);
  run_relays(Category::kC4, 3);
  run_relays(Category::kC3, 4);
  for (std::size_t i = 0; i < plan.flows.size(); ++i) {
    if (!done[i]) throw StuckSchedule("flow " + std::to_string(i) + " was never scheduled");
  }
  return s;
}

/// Task groups of one component, each listed by ascending section index.
struct TaskGroups {
  std::vector<std::size_t> front;
  std::vector<std::size_t> middle;
  std::vector<std::size_t> back;
};

/// Splits ordered tasks: the first `incoming_front` go to robots entering at
/// the front end, the last `incoming_back` to robots entering at the back, and
/// the rest to resident robots.
inline TaskGroups group_tasks(const std::vector<std::size_t>& ordered_tasks,
                              std::size_t incoming_front, std::size_t incoming_back,
                              std::size_t natives) {
  if (incoming_front + incoming_back + natives != ordered_tasks.size()) {
    throw CountMismatch(std::to_string(incoming_front + incoming_back + natives) +
                        " robots for " + std::to_string(ordered_tasks.size()) + " tasks");
  }
  TaskGroups g;
  const auto b = ordered_tasks.begin();
  g.front.assign(b, b + static_cast<std::ptrdiff_t>(incoming_front));
  g.middle.assign(b + static_cast<std::ptrdiff_t>(incoming_front),
                  b + static_cast<std::ptrdiff_t>(incoming_front + natives));
  g.back.assign(b + static_cast<std::ptrdiff_t>(incoming_front + natives), ordered_tasks.end());
  return g;
}

struct AssignmentResult {
  std::vector<std::size_t> robot_task;
  std::vector<std::vector<NodeId>> waypoints;
  std::vector<std::vector<NodeId>> recommended;  // junction nodes only
  // Planned hop count at which each robot enters its final component; zero
  // for robots that never move between components.
  std::vector<std::size_t> arrival_hops;
};

inline std::vector<NodeId> junction_subsequence(const Partition& part,
                                                const std::vector<NodeId>& path) {
  std::vector<NodeId> out;
  for (NodeId v : path) {
    if (part.is_jc_node(v)) out.push_back(v);
  }
  return out;
}

/// First-come first-serve allocation inside every component: earlier
/// arrivals take tasks deeper from their entry side, residents pair up in
/// index order.
inline AssignmentResult assign_tasks(FlowSchedule sched, const Association& assoc,
                                     const Partition& part) {
  const std::size_t n = assoc.robot_count();
  AssignmentResult res;
  res.robot_task.assign(n, kNoIndex);
  res.arrival_hops.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) res.arrival_hops[i] = sched.robots[i].traveled;

  auto settle = [&](std::size_t robot, std::size_t task) {
    auto& r = sched.robots[robot];
    const NodeId target = assoc.task_node[task];
    if (!part.is_junction(r.component)) detail::walk_within(part, r.node, target, r.waypoints);
    r.node = target;
    res.robot_task[robot] = task;
  };
  auto by_arrival = [&](std::vector<std::size_t> v) {
    std::stable_sort(v.begin(), v.end(), [&](std::size_t x, std::size_t y) {
      return detail::arrival_before(sched.robots, x, y);
    });
    return v;
  };

  for (ComponentId z = 0; z < part.size(); ++z) {
    const auto& tasks = assoc.component_tasks[z];
    const auto& natives = sched.natives[z];
    if (part.is_junction(z)) {
      std::vector<std::size_t> robots = natives;
      const auto arrived = by_arrival(sched.arrivals[z]);
      robots.insert(robots.end(), arrived.begin(), arrived.end());
      if (robots.size() != tasks.size()) {
        throw CountMismatch("junction component " + std::to_string(z) + " ends with " +
                            std::to_string(robots.size()) + " robots for " +
                            std::to_string(tasks.size()) + " tasks");
      }
      for (std::size_t k = 0; k < robots.size(); ++k) settle(robots[k], tasks[k]);
      continue;
    }
    std::vector<std::size_t> from_front, from_back;
    for (std::size_t id : by_arrival(sched.arrivals[z])) {
      (sched.robots[id].entry == Entry::kFront ? from_front : from_back).push_back(id);
    }
    const TaskGroups g = group_tasks(tasks, from_front.size(), from_back.size(), natives.size());
    for (std::size_t k = 0; k < from_front.size(); ++k) {
      settle(from_front[k], g.front[g.front.size() - 1 - k]);
    }
    for (std::size_t k = 0; k < from_back.size(); ++k) settle(from_back[k], g.back[k]);
    for (std::size_t k = 0; k < natives.size(); ++k) settle(natives[k], g.middle[k]);
  }

  res.waypoints.resize(n);
  res.recommended.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    res.waypoints[i] = std::move(sched.robots[i].waypoints);
    res.recommended[i] = junction_subsequence(part, res.waypoints[i]);
  }
  return res;
}

}  // namespace mrtarm
