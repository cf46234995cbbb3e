#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

#include "mrtarm/allocation.hpp"
#include "mrtarm/roadmap.hpp"

namespace mrtarm {

/// Node-synchronous executor settings: each tick a robot advances at most one
/// node along its waypoints.
struct SimConfig {
  std::size_t stall_limit = 5;     // ticks without progress that count as deadlock
  std::size_t max_ticks = 100'000;
  // Enter every node in planned visit order: by hop time, then the robot with
  // more hops still to go, then arrival priority. Off means purely reactive.
  bool respect_order = true;
  // Moving robots hold their node against every other robot. Off: only
  // settled robots and head-on swaps block.
  bool exclusive_nodes = false;
};

struct Metrics {
  bool success = false;
  std::size_t makespan = 0;
  std::size_t soc = 0;
  std::size_t ticks = 0;
  std::vector<std::size_t> finish_tick;
  std::vector<std::size_t> per_robot_travel;  // nodes advanced
};

/// Processing priority for contested nodes. Empty means robot-id order.
struct ArrivalOrder {
  std::vector<std::size_t> robots;

  static ArrivalOrder by_id() { return {}; }

  /// Earlier planned arrival first, ties by id.
  static ArrivalOrder from_plan(const AssignmentResult& res) {
    ArrivalOrder o;
    o.robots.resize(res.arrival_hops.size());
    std::iota(o.robots.begin(), o.robots.end(), std::size_t{0});
    std::stable_sort(o.robots.begin(), o.robots.end(), [&](std::size_t a, std::size_t b) {
      return res.arrival_hops[a] < res.arrival_hops[b];
    });
    return o;
  }
};

/// A robot may not enter a node held by an unfinished robot, and may not pass
/// through a node where another robot has settled (it may still settle there
/// itself, since task spots sit beside their node). Two robots facing each
/// other across an edge therefore both wait. Deadlock is declared when an
/// unfinished robot makes no progress for `stall_limit` consecutive ticks.
///
/// With `respect_order`, a robot additionally waits until every visit planned
/// ahead of its own at the next node has been completed.
inline Metrics simulate(const Roadmap& rm, const AssignmentResult& res, const ArrivalOrder& order,
                        const SimConfig& cfg = {}) {
  const std::size_t n = res.waypoints.size();
  Metrics m;
  m.finish_tick.assign(n, 0);
  m.per_robot_travel.assign(n, 0);

  std::vector<std::size_t> seq = order.robots;
  if (seq.size() != n) {
    seq.resize(n);
    std::iota(seq.begin(), seq.end(), std::size_t{0});
  }

  std::vector<std::size_t> step(n, 0), stall(n, 0);
  std::vector<char> done(n, 0), moved(n, 0);
  std::vector<std::size_t> active_at(rm.size(), 0), settled_at(rm.size(), 0);
  std::vector<std::vector<std::size_t>> occupants(rm.size());
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[seq[k]] = k;

  // Planned visits per node, and each robot's slot in those lists. Robots
  // planned on the same nodes at the same hops keep one relative order along
  // the shared stretch, since their remaining hop counts differ by a
  // constant. Settling visits (nothing remaining) come last.
  struct Visit {
    std::size_t time;
    std::size_t remaining;
    std::size_t rank;
    std::size_t robot;
    auto key() const {
      return std::tuple(time, std::numeric_limits<std::size_t>::max() - remaining, rank);
    }
  };
  std::vector<std::vector<Visit>> visits(cfg.respect_order ? rm.size() : 0);
  std::vector<std::vector<std::size_t>> slot(n);
  if (cfg.respect_order) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = res.waypoints[i];
      for (std::size_t k = 0; k < p.size(); ++k) {
        visits[p[k]].push_back({k, p.size() - 1 - k, rank[i], i});
      }
    }
    for (auto& list : visits) {
      std::sort(list.begin(), list.end(), [](const Visit& a, const Visit& b) { return a.key() < b.key(); });
    }
    for (std::size_t i = 0; i < n; ++i) slot[i].assign(res.waypoints[i].size(), 0);
    for (NodeId v = 0; v < visits.size(); ++v) {
      for (std::size_t s = 0; s < visits[v].size(); ++s) {
        const Visit& e = visits[v][s];
        // Paths never revisit a node, so (robot, time) pins the visit.
        slot[e.robot][e.time] = s;
      }
    }
  }
  // Earlier visits at `v` are complete when their robot has moved on, or has
  // settled there and this visit settles too.
  auto turn_to_enter = [&](std::size_t i, std::size_t k) {
    const NodeId v = res.waypoints[i][k];
    const bool settles = k + 1 == res.waypoints[i].size();
    for (std::size_t s = 0; s < slot[i][k]; ++s) {
      const Visit& e = visits[v][s];
      if (step[e.robot] > e.time) continue;
      if (e.remaining == 0 && settles && step[e.robot] == e.time) continue;
      return false;
    }
    return true;
  };

  // Someone at `next` is about to step onto `here`.
  auto head_on = [&](std::size_t i, NodeId here, NodeId next) {
    for (std::size_t j : occupants[next]) {
      const auto& q = res.waypoints[j];
      if (j != i && step[j] + 1 < q.size() && q[step[j] + 1] == here) return true;
    }
    return false;
  };

  auto settle = [&](std::size_t i) { ++settled_at[res.waypoints[i].back()]; };

  std::size_t remaining = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = res.waypoints[i];
    if (p.size() <= 1) {
      done[i] = 1;
      settle(i);
    } else {
      ++active_at[p.front()];
      occupants[p.front()].push_back(i);
      ++remaining;
    }
  }

  std::size_t tick = 0;
  bool deadlock = false;
  while (remaining > 0 && !deadlock) {
    if (tick >= cfg.max_ticks) {
      deadlock = true;
      break;
    }
    ++tick;
    std::fill(moved.begin(), moved.end(), 0);
    for (bool progress = true; progress;) {
      progress = false;
      for (std::size_t i : seq) {
        if (done[i] || moved[i]) continue;
        const auto& p = res.waypoints[i];
        const NodeId here = p[step[i]];
        const NodeId next = p[step[i] + 1];
        const bool final_hop = step[i] + 2 == p.size();
        if (cfg.exclusive_nodes && active_at[next] > 0) continue;
        if (!cfg.exclusive_nodes && head_on(i, here, next)) continue;
        if (!final_hop && settled_at[next] > 0) continue;
        if (cfg.respect_order && !turn_to_enter(i, step[i] + 1)) continue;
        --active_at[here];
        std::erase(occupants[here], i);
        ++step[i];
        ++m.per_robot_travel[i];
        moved[i] = 1;
        progress = true;
        if (final_hop) {
          settle(i);
          done[i] = 1;
          m.finish_tick[i] = tick;
          --remaining;
        } else {
          ++active_at[next];
          occupants[next].push_back(i);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      stall[i] = moved[i] ? 0 : stall[i] + 1;
      if (stall[i] >= cfg.stall_limit) deadlock = true;
    }
  }

  m.ticks = tick;
  m.success = !deadlock && remaining == 0;
  for (std::size_t i = 0; i < n; ++i) {
    m.makespan = std::max(m.makespan, m.finish_tick[i]);
    m.soc += m.finish_tick[i];
  }
  return m;
}

}  // namespace mrtarm
