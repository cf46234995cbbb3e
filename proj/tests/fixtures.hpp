#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mrtarm/mrtarm.hpp"

namespace fixtures {

using namespace mrtarm;

inline std::string data(const std::string& name) { return std::string(MRTARM_DATA_DIR) + "/" + name; }

/// Line A-S3-J2-S4-J5-S6-B along y = 10 with a dead-end branch hanging off
/// each of J2 and J5. Three robots in S3, two tasks in S4, one in S6.
struct Example {
  Environment env;
  Scenario sc;
  // Node indices in the fixture file.
  static constexpr NodeId kJ2 = 4, kJ5 = 8, kS3 = 2, kS4 = 6, kS6 = 10;

  Example() {
    Workspace ws = load_map(data("example_map.json"));
    sc = load_scenario(data("example_scenario.json"), ws);
    env = make_environment(ws, sc.radius, load_roadmap(data("example_roadmap.json")));
  }
  ComponentId z(NodeId v) const { return env.partition.component_of[v]; }
};

/// Entities sitting exactly on the given nodes.
inline Association on_nodes(std::vector<NodeId> robots, std::vector<NodeId> tasks) {
  Association a;
  a.robot_offset.assign(robots.size(), 0.0);
  a.task_offset.assign(tasks.size(), 0.0);
  a.robot_node = std::move(robots);
  a.task_node = std::move(tasks);
  return a;
}

/// Straight line of `length` nodes, 10 apart, with a one-node tooth hanging
/// off each listed index. Teeth turn their base node into a junction.
inline Roadmap comb(std::size_t length, const std::vector<std::size_t>& teeth) {
  std::vector<Vec2> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < length; ++i) {
    nodes.push_back({10.0 * i, 0.0});
    if (i > 0) edges.emplace_back(i - 1, i);
  }
  for (std::size_t t : teeth) {
    nodes.push_back({10.0 * t, 10.0});
    edges.emplace_back(t, nodes.size() - 1);
  }
  return Roadmap(nodes, edges);
}

inline Environment environment_of(Roadmap rm, double radius = 1.0) {
  Workspace ws{1.0, 1.0, {}};
  return make_environment(ws, radius, std::move(rm));
}

/// Comb of random length and teeth with `n` robots and `n` tasks dropped on
/// random nodes.
struct RandomComb {
  Environment env;
  Association assoc;
};

inline RandomComb random_comb(std::mt19937_64& rng, std::size_t n) {
  const std::size_t length = 30 + rng() % 30;
  std::vector<std::size_t> teeth;
  for (std::size_t i = 2; i + 2 < length; ++i) {
    if (rng() % 4 == 0) teeth.push_back(i);
  }
  RandomComb out{environment_of(comb(length, teeth)), {}};
  std::uniform_int_distribution<NodeId> pick(0, out.env.roadmap.size() - 1);
  std::vector<NodeId> robots(n), tasks(n);
  for (auto& v : robots) v = pick(rng);
  for (auto& v : tasks) v = pick(rng);
  out.assoc = on_nodes(robots, tasks);
  return out;
}

/// Exhaustive minimum over all permutations.
inline double brute_force_min(const CostMatrix& cm) {
  std::vector<std::size_t> perm(cm.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) c += cm(i, perm[i]);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline CostMatrix random_matrix(std::mt19937_64& rng, std::size_t k, bool integral) {
  CostMatrix cm(k);
  std::uniform_int_distribution<int> ui(0, 20);
  std::uniform_real_distribution<double> ur(0.0, 100.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) cm(i, j) = integral ? ui(rng) : ur(rng);
  return cm;
}

/// Greedy reference: sort every (cost, row, col) triple and sweep, taking a
/// pair whenever both its row and column are still free.
inline std::vector<std::size_t> sort_and_sweep(const CostMatrix& cm) {
  const std::size_t n = cm.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) all.emplace_back(cm(i, j), i, j);
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> match(n, kNoIndex);
  std::vector<char> col_used(n, 0);
  for (const auto& [c, i, j] : all) {
    if (match[i] == kNoIndex && !col_used[j]) {
      match[i] = j;
      col_used[j] = 1;
    }
  }
  return match;
}

/// Collects every structural violation of a solved instance.
inline checks::Violations all_violations(const Environment& env, const MrtaSolution& s,
                                         std::size_t n) {
  checks::Violations v;
  auto add = [&](checks::Violations more) { v.insert(v.end(), more.begin(), more.end()); };
  add(checks::bijection(s.result, n));
  add(checks::waypoints_valid(s.result, s.association, env.roadmap));
  add(checks::edge_unidirectional(s.result));
  add(checks::junction_unidirectional(s.revised, s.result, env.partition));
  add(checks::no_blocking(s.result));
  add(checks::balance_restored(s.revised, s.report));
  add(checks::plan_adjacent(s.revised, env.partition));
  return v;
}

}  // namespace fixtures
