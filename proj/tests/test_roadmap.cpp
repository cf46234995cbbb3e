#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace mrtarm;
using namespace fixtures;

TEST(Roadmap, ToleranceDefaults) {
  const auto p = resolve({}, 8.0);
  EXPECT_DOUBLE_EQ(p.sample_spacing, 4.0);
  EXPECT_DOUBLE_EQ(p.node_spacing, 16.0);
  EXPECT_DOUBLE_EQ(p.clearance_tolerance, 16.0 / 64.0);
  EXPECT_DOUBLE_EQ(p.min_clearance(), 8.0 - 0.25);
}

TEST(Roadmap, EmptySquareHasCentralJunction) {
  const Workspace ws = load_map(data("empty_map.json"));
  const Roadmap rm = build_roadmap(ws, 5.0);
  const Partition part = partition(rm);
  bool found = false;
  for (NodeId v : part.jc_nodes) {
    if (distance(rm.position(v), {50, 50}) < 1e-6) {
      found = true;
      EXPECT_NEAR(ws.clearance(rm.position(v)), 50.0, 1e-6);
      EXPECT_EQ(rm.degree(v), 4u);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Roadmap, CorridorFollowsMidline) {
  const Workspace ws = load_map(data("corridor_map.json"));
  const double r = 5.0;
  const Roadmap rm = build_roadmap(ws, r);
  const double tol = resolve({}, r).clearance_tolerance;
  std::size_t inside = 0;
  for (NodeId v = 0; v < rm.size(); ++v) {
    const Vec2 p = rm.position(v);
    if (p.x <= 22 || p.x >= 78) continue;
    ++inside;
    EXPECT_NEAR(p.y, 50.0, tol);
    EXPECT_NEAR(ws.clearance(p), 6.0, tol);
  }
  // 56 units of corridor at spacing about 10
  EXPECT_GE(inside, 5u);
}

TEST(Roadmap, NarrowCorridorIsCut) {
  const Workspace ws = load_map(data("corridor_map.json"));
  // Width 12 < 2r: the rooms keep roadmaps but nothing crosses.
  const Roadmap rm = build_roadmap(ws, 7.0);
  for (NodeId v = 0; v < rm.size(); ++v) {
    const double x = rm.position(v).x;
    EXPECT_TRUE(x < 20 || x > 80) << x;
  }
  EXPECT_THROW(build_roadmap(load_map(data("empty_map.json")), 51.0), DegenerateSpace);
  EXPECT_THROW(build_roadmap(ws, 0.0), DegenerateSpace);
}

TEST(Roadmap, ClearanceAndSpacingOnGeneratedMaps) {
  const double r = 5.0;
  const auto prm = resolve({}, r);
  for (MapStyle s : {MapStyle::kClutter, MapStyle::kWarehouse, MapStyle::kMall}) {
    for (std::uint64_t seed : {1, 2}) {
      const Workspace ws = generate_map(s, MapParams{}, seed);
      const Roadmap rm = build_roadmap(ws, r);
      ASSERT_GT(rm.size(), 10u);
      for (NodeId v = 0; v < rm.size(); ++v) {
        EXPECT_GE(ws.clearance(rm.position(v)), prm.min_clearance()) << to_string(s);
      }
      for (const auto& e : rm.edges()) {
        const Vec2 a = rm.position(e.a), b = rm.position(e.b);
        EXPECT_GE(ws.segment_clearance(a, b), prm.min_clearance()) << to_string(s);
        EXPECT_GT(distance(a, b), 0.0);
        EXPECT_LE(distance(a, b), 2.0 * prm.node_spacing) << to_string(s);
      }
    }
  }
}

TEST(Roadmap, Deterministic) {
  const Workspace ws = generate_map(MapStyle::kMall, MapParams{}, 9);
  const Roadmap a = build_roadmap(ws, 5.0), b = build_roadmap(ws, 5.0);
  EXPECT_EQ(a.nodes(), b.nodes());
  ASSERT_EQ(a.edges().size(), b.edges().size());
  for (std::size_t i = 0; i < a.edges().size(); ++i) {
    EXPECT_EQ(a.edges()[i].a, b.edges()[i].a);
    EXPECT_EQ(a.edges()[i].b, b.edges()[i].b);
  }
}

TEST(Roadmap, GraphConstruction) {
  EXPECT_THROW(Roadmap({{0, 0}, {1, 0}}, {{0, 2}}), GeometryError);
  // Loops and duplicates are dropped.
  const Roadmap rm({{0, 0}, {3, 4}}, {{1, 1}, {0, 1}, {1, 0}});
  ASSERT_EQ(rm.edges().size(), 1u);
  EXPECT_DOUBLE_EQ(rm.edges()[0].length, 5.0);
  EXPECT_TRUE(rm.adjacent(1, 0));
}

TEST(Partition, CoversGeneratedRoadmaps) {
  for (MapStyle s : {MapStyle::kClutter, MapStyle::kWarehouse, MapStyle::kMall}) {
    const Roadmap rm = build_roadmap(generate_map(s, MapParams{}, 4), 5.0);
    const Partition part = partition(rm);
    std::vector<int> seen(rm.size(), 0);
    for (NodeId v : part.jc_nodes) ++seen[v];
    for (const auto& sec : part.sections) {
      for (NodeId v : sec.nodes) {
        ++seen[v];
        EXPECT_EQ(rm.degree(v), 2u);
      }
    }
    for (NodeId v = 0; v < rm.size(); ++v) EXPECT_EQ(seen[v], 1) << v;
  }
}

TEST(Association, PicksNearestVisibleNode) {
  // A thin wall at x in [40, 44] hides the closer node.
  Workspace ws{100, 100, {box(40, 20, 44, 80)}};
  const Roadmap rm({{35, 50}, {60, 50}}, {});
  Scenario sc;
  sc.radius = 1.0;
  sc.robots = {{47, 50}};
  sc.tasks = {{30, 52}};
  const Association a = associate(rm, ws, sc);
  EXPECT_EQ(a.robot_node[0], 1u);
  EXPECT_DOUBLE_EQ(a.robot_offset[0], 13.0);
  EXPECT_EQ(a.task_node[0], 0u);
  // Clearance larger than the gap to the wall makes node 1 invisible too.
  sc.robots = {{47, 50}};
  EXPECT_THROW(associate(rm, ws, sc, 4.0), NoVisibleNode);
}

TEST(Association, SectionOrderingFollowsFront) {
  const Environment env = environment_of(comb(10, {}));
  // Section 1..8, front at node 1. Two robots share node 5 at different offsets.
  Association a = on_nodes({7, 5, 5, 2}, {0, 9, 3, 4});
  a.robot_offset = {0.0, 2.0, 1.0, 0.0};
  a = index_sections(env.partition, a);
  const ComponentId s = env.partition.component_of[3];
  EXPECT_EQ(a.component_robots[s], (std::vector<std::size_t>{3, 2, 1, 0}));
  EXPECT_EQ(a.component_tasks[s], (std::vector<std::size_t>{2, 3}));
}

TEST(Association, JunctionOrderingByDistance) {
  const Environment env = environment_of(comb(10, {5}));
  Association a = on_nodes({5, 5, 5, 5}, {5, 1, 2, 3});
  a.robot_offset = {3.0, 1.0, 2.0, 1.0};
  a = index_sections(env.partition, a);
  EXPECT_EQ(a.component_robots[env.partition.component_of[5]], (std::vector<std::size_t>{1, 3, 2, 0}));
}

TEST(Supply, ExampleDemand) {
  Example f;
  const Association a = index_sections(f.env.partition, associate(f.env.roadmap, f.env.workspace, f.sc));
  const SupplyReport r = supply_analysis(f.env.partition, a);
  for (ComponentId z = 0; z < f.env.partition.size(); ++z) {
    long expected = 0;
    if (z == f.z(Example::kS3)) expected = 3;
    if (z == f.z(Example::kS4)) expected = -2;
    if (z == f.z(Example::kS6)) expected = -1;
    EXPECT_EQ(r.demand[z], expected) << z;
  }
  EXPECT_EQ(r.surplus(), 3);
  EXPECT_FALSE(r.balanced());
}

TEST(Supply, MatchesCountingOracle) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rng() % 12;
    const auto rc = random_comb(rng, n);
    const SupplyReport r = supply_analysis(rc.env.partition, rc.assoc);
    long total = 0;
    for (ComponentId z = 0; z < rc.env.partition.size(); ++z) {
      long d = 0;
      for (NodeId v : rc.assoc.robot_node) d += rc.env.partition.component_of[v] == z;
      for (NodeId v : rc.assoc.task_node) d -= rc.env.partition.component_of[v] == z;
      EXPECT_EQ(r.demand[z], d);
      total += d;
    }
    EXPECT_EQ(total, 0);
  }
}
