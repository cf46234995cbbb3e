#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/polygon/voronoi.hpp>

#include "mrtarm/errors.hpp"
#include "mrtarm/geometry.hpp"
#include "mrtarm/world.hpp"

namespace mrtarm {

using NodeId = std::size_t;

struct RoadmapEdge {
  NodeId a = 0;
  NodeId b = 0;
  double length = 0.0;
};

/// Undirected topological graph embedded in free space.
class Roadmap {
public:
  Roadmap() = default;

  Roadmap(std::vector<Vec2> nodes, const std::vector<std::pair<NodeId, NodeId>>& edges)
      : nodes_(std::move(nodes)), adjacency_(nodes_.size()) {
    std::set<std::pair<NodeId, NodeId>> seen;
    for (auto [a, b] : edges) {
      if (a >= nodes_.size() || b >= nodes_.size()) {
        throw GeometryError("edge references a missing node");
      }
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (!seen.insert({a, b}).second) continue;
      edges_.push_back({a, b, distance(nodes_[a], nodes_[b])});
      adjacency_[a].push_back(b);
      adjacency_[b].push_back(a);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  }

  std::size_t size() const { return nodes_.size(); }
  const std::vector<Vec2>& nodes() const { return nodes_; }
  Vec2 position(NodeId v) const { return nodes_[v]; }
  const std::vector<RoadmapEdge>& edges() const { return edges_; }
  const std::vector<NodeId>& neighbors(NodeId v) const { return adjacency_[v]; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }

  bool adjacent(NodeId a, NodeId b) const {
    const auto& adj = adjacency_[a];
    return std::binary_search(adj.begin(), adj.end(), b);
  }

private:
  std::vector<Vec2> nodes_;
  std::vector<RoadmapEdge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Builder knobs. Zero means "derive from the robot radius".
struct RoadmapParams {
  double sample_spacing = 0.0;       // boundary sampling step, default r/2
  double node_spacing = 0.0;         // target edge length, default 2r
  double clearance_tolerance = -1.0;  // slack for sampled-boundary error, default spacing^2/(8r)
};

struct ResolvedRoadmapParams {
  double radius;
  double sample_spacing;
  double node_spacing;
  double clearance_tolerance;

  double min_clearance() const { return radius - clearance_tolerance; }
};

inline ResolvedRoadmapParams resolve(const RoadmapParams& p, double radius) {
  ResolvedRoadmapParams out{};
  out.radius = radius;
  out.sample_spacing = p.sample_spacing > 0.0 ? p.sample_spacing : radius / 2.0;
  out.node_spacing = p.node_spacing > 0.0 ? p.node_spacing : 2.0 * radius;
  // Bisectors of boundary samples drift off the true medial axis by at most
  // spacing^2 / (16 r) in a corridor of width 2r; twice that is allowed.
  out.clearance_tolerance = p.clearance_tolerance >= 0.0
                                ? p.clearance_tolerance
                                : out.sample_spacing * out.sample_spacing / (8.0 * radius);
  return out;
}

namespace detail {

struct IntPoint {
  std::int32_t x;
  std::int32_t y;
};

}  // namespace detail
}  // namespace mrtarm

template <>
struct boost::polygon::geometry_concept<mrtarm::detail::IntPoint> {
  typedef point_concept type;
};

template <>
struct boost::polygon::point_traits<mrtarm::detail::IntPoint> {
  typedef std::int32_t coordinate_type;
  static coordinate_type get(const mrtarm::detail::IntPoint& p, orientation_2d o) {
    return o == HORIZONTAL ? p.x : p.y;
  }
};

namespace mrtarm {
namespace detail {

struct BoundarySamples {
  std::vector<IntPoint> points;
  std::vector<std::size_t> group;  // generator group per point
  double scale = 1.0;
};

// Obstacles are groups 0..n-1; the four workspace walls are groups n..n+3 so
// that the skeleton also runs between walls and along room centers.
inline BoundarySamples sample_boundaries(const Workspace& ws, double spacing) {
  BoundarySamples out;
  out.scale = std::floor(static_cast<double>(1 << 26) / std::max(ws.width, ws.height));
  std::set<std::pair<std::int32_t, std::int32_t>> seen;
  auto add_segment = [&](Vec2 a, Vec2 b, std::size_t group) {
    const double len = distance(a, b);
    const auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / spacing)));
    for (std::size_t k = 0; k < m; ++k) {
      const Vec2 p = a + (b - a) * (static_cast<double>(k) / static_cast<double>(m));
      const IntPoint q{static_cast<std::int32_t>(std::lround(p.x * out.scale)),
                       static_cast<std::int32_t>(std::lround(p.y * out.scale))};
      if (!seen.insert({q.x, q.y}).second) continue;
      out.points.push_back(q);
      out.group.push_back(group);
    }
  };
  const std::size_t n = ws.obstacles.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& poly = ws.obstacles[i].polygon;
    for (std::size_t k = 0; k < poly.size(); ++k) add_segment(poly[k], poly[(k + 1) % poly.size()], i);
  }
  const Vec2 c0{0.0, 0.0}, c1{ws.width, 0.0}, c2{ws.width, ws.height}, c3{0.0, ws.height};
  add_segment(c0, c1, n);
  add_segment(c1, c2, n + 1);
  add_segment(c2, c3, n + 2);
  add_segment(c3, c0, n + 3);
  return out;
}

struct Skeleton {
  std::vector<Vec2> vertices;
  std::vector<std::set<std::size_t>> adjacency;
};

inline Skeleton extract_skeleton(const Workspace& ws, const ResolvedRoadmapParams& prm) {
  namespace bp = boost::polygon;
  const BoundarySamples samples = sample_boundaries(ws, prm.sample_spacing);
  bp::voronoi_diagram<double> vd;
  bp::construct_voronoi(samples.points.begin(), samples.points.end(), &vd);

  const double min_clear = prm.min_clearance();
  const double step = prm.radius / 4.0;
  Skeleton sk;
  std::unordered_map<const void*, std::size_t> vertex_index;

  auto to_world = [&](const bp::voronoi_vertex<double>* v) {
    return Vec2{v->x() / samples.scale, v->y() / samples.scale};
  };
  auto site = [&](std::size_t idx) {
    const IntPoint q = samples.points[idx];
    return Vec2{q.x / samples.scale, q.y / samples.scale};
  };
  auto index_of = [&](const bp::voronoi_vertex<double>* v) {
    auto [it, inserted] = vertex_index.try_emplace(v, sk.vertices.size());
    if (inserted) {
      sk.vertices.push_back(to_world(v));
      sk.adjacency.emplace_back();
    }
    return it->second;
  };

  for (const auto& e : vd.edges()) {
    if (!e.is_finite() || &e > e.twin()) continue;
    const std::size_t s1 = e.cell()->source_index();
    const std::size_t s2 = e.twin()->cell()->source_index();
    if (samples.group[s1] == samples.group[s2]) continue;
    const Vec2 a = to_world(e.vertex0());
    const Vec2 b = to_world(e.vertex1());
    if (!ws.contains(a) || !ws.contains(b)) continue;
    // Distance to the generating samples bounds the true clearance from above.
    const Vec2 g = site(s1);
    if (std::min(distance(a, g), distance(b, g)) < min_clear) continue;
    if (point_segment_distance(g, a, b) < min_clear) continue;
    const double len = distance(a, b);
    const auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / step)));
    bool ok = true;
    for (std::size_t k = 0; k <= m && ok; ++k) {
      const Vec2 p = a + (b - a) * (static_cast<double>(k) / static_cast<double>(m));
      ok = ws.clearance(p) >= min_clear;
    }
    if (!ok) continue;
    const std::size_t ia = index_of(e.vertex0());
    const std::size_t ib = index_of(e.vertex1());
    if (ia == ib) continue;
    sk.adjacency[ia].insert(ib);
    sk.adjacency[ib].insert(ia);
  }
  return sk;
}

struct Chain {
  std::size_t from = 0;  // skeleton vertex (junction)
  std::size_t to = 0;
  std::vector<Vec2> polyline;
  double length = 0.0;
};

inline double polyline_length(const std::vector<Vec2>& pl) {
  double s = 0.0;
  for (std::size_t i = 1; i < pl.size(); ++i) s += distance(pl[i - 1], pl[i]);
  return s;
}

inline Vec2 point_at_arclength(const std::vector<Vec2>& pl, double s) {
  for (std::size_t i = 1; i < pl.size(); ++i) {
    const double seg = distance(pl[i - 1], pl[i]);
    if (s <= seg || i + 1 == pl.size()) {
      const double t = seg > 0.0 ? std::clamp(s / seg, 0.0, 1.0) : 0.0;
      return pl[i - 1] + (pl[i] - pl[i - 1]) * t;
    }
    s -= seg;
  }
  return pl.back();
}

// Splits the skeleton into maximal chains between junction vertices (degree
// != 2). Cycles without junctions get their lowest vertex as a junction.
inline std::vector<Chain> trace_chains(const Skeleton& sk, std::vector<char>& is_junction) {
  const std::size_t n = sk.vertices.size();
  is_junction.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) is_junction[v] = sk.adjacency[v].size() != 2;

  // Promote one vertex per junction-free cycle.
  std::vector<char> seen(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v] || sk.adjacency[v].empty()) continue;
    std::vector<std::size_t> stack{v};
    std::vector<std::size_t> members;
    seen[v] = 1;
    bool has_junction = false;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      has_junction = has_junction || is_junction[u];
      for (std::size_t w : sk.adjacency[u]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (!has_junction) is_junction[*std::min_element(members.begin(), members.end())] = 1;
  }

  std::vector<Chain> chains;
  std::set<std::pair<std::size_t, std::size_t>> used;  // directed first step
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_junction[j]) continue;
    for (std::size_t first : sk.adjacency[j]) {
      if (used.count({j, first})) continue;
      Chain c;
      c.from = j;
      c.polyline.push_back(sk.vertices[j]);
      std::size_t prev = j;
      std::size_t cur = first;
      while (!is_junction[cur]) {
        c.polyline.push_back(sk.vertices[cur]);
        const auto& adj = sk.adjacency[cur];
        const std::size_t next = *adj.begin() == prev ? *std::next(adj.begin()) : *adj.begin();
        prev = cur;
        cur = next;
      }
      c.polyline.push_back(sk.vertices[cur]);
      c.to = cur;
      used.insert({j, first});
      used.insert({cur, prev});
      c.length = polyline_length(c.polyline);
      chains.push_back(std::move(c));
    }
  }
  return chains;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// Approximate GVD roadmap: Voronoi diagram of sampled obstacle and wall
/// boundaries, pruned to clearance >= r, then resampled at roughly uniform
/// node spacing.
inline Roadmap build_roadmap(const Workspace& ws, double radius, const RoadmapParams& params = {}) {
  if (!(radius > 0.0)) throw DegenerateSpace("radius must be positive");
  const ResolvedRoadmapParams prm = resolve(params, radius);
  const double d = prm.node_spacing;
  const double min_clear = prm.min_clearance();

  const detail::Skeleton sk = detail::extract_skeleton(ws, prm);
  std::vector<char> is_junction;
  std::vector<detail::Chain> chains = detail::trace_chains(sk, is_junction);

  // Collapse junction clusters joined by chains too short to hold an edge.
  detail::UnionFind uf(sk.vertices.size());
  for (const auto& c : chains) {
    if (c.from != c.to && c.length < 0.75 * d) uf.unite(c.from, c.to);
  }

  std::vector<Vec2> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::map<std::size_t, NodeId> cluster_node;
  std::map<std::size_t, std::size_t> cluster_rep;
  for (std::size_t v = 0; v < sk.vertices.size(); ++v) {
    if (!is_junction[v]) continue;
    const std::size_t root = uf.find(v);
    auto it = cluster_rep.find(root);
    if (it == cluster_rep.end()) {
      cluster_rep.emplace(root, v);
    } else if (ws.clearance(sk.vertices[v]) > ws.clearance(sk.vertices[it->second])) {
      it->second = v;
    }
  }
  for (const auto& [root, rep] : cluster_rep) {
    cluster_node.emplace(root, nodes.size());
    nodes.push_back(sk.vertices[rep]);
  }

  std::set<std::pair<NodeId, NodeId>> direct;
  for (const auto& c : chains) {
    const NodeId a = cluster_node.at(uf.find(c.from));
    const NodeId b = cluster_node.at(uf.find(c.to));
    if (a == b && c.length < 2.0 * d) continue;
    if (a != b && c.length < 0.75 * d) continue;
    std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(c.length / d)));
    if (a == b) k = std::max<std::size_t>(k, 3);
    if (a != b && k == 1 && direct.count(std::minmax(a, b))) {
      // A second short route between the same pair needs an interior node.
      if (c.length < d) continue;
      k = 2;
    }
    const std::size_t k_max = std::max<std::size_t>(k, static_cast<std::size_t>(c.length / (0.5 * d)));
    std::vector<Vec2> interior;
    for (; k <= k_max; ++k) {
      interior.clear();
      for (std::size_t i = 1; i < k; ++i) {
        interior.push_back(detail::point_at_arclength(c.polyline, c.length * static_cast<double>(i) /
                                                                      static_cast<double>(k)));
      }
      std::vector<Vec2> pts;
      pts.push_back(nodes[a]);
      pts.insert(pts.end(), interior.begin(), interior.end());
      pts.push_back(nodes[b]);
      bool ok = true;
      for (std::size_t i = 1; i < pts.size() && ok; ++i) {
        ok = ws.segment_clearance(pts[i - 1], pts[i]) >= min_clear;
      }
      if (ok) break;
    }
    if (k > k_max) k = k_max;  // keep the densest attempt
    if (k == 1) direct.insert(std::minmax(a, b));
    NodeId prev = a;
    for (const Vec2 p : interior) {
      nodes.push_back(p);
      edges.emplace_back(prev, nodes.size() - 1);
      prev = nodes.size() - 1;
    }
    edges.emplace_back(prev, b);
  }

  if (nodes.empty()) throw DegenerateSpace("no point of the workspace has clearance >= r");
  return Roadmap(std::move(nodes), edges);
}

}  // namespace mrtarm
