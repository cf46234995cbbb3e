#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "mrtarm/errors.hpp"
#include "mrtarm/roadmap.hpp"

namespace mrtarm {

using ComponentId = std::size_t;

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

/// Maximal chain of non-junction nodes, ordered from its front end. The front
/// end is the one touching the lower-indexed junction.
struct Section {
  ComponentId id = 0;
  std::vector<NodeId> nodes;
  NodeId front_jc = 0;
  NodeId back_jc = 0;
};

enum class ComponentKind { kJunction, kSection };

struct Component {
  ComponentKind kind = ComponentKind::kJunction;
  NodeId node = 0;             // junction node
  std::size_t section = 0;     // index into Partition::sections
};

struct Partition {
  std::vector<NodeId> jc_nodes;         // ascending
  std::vector<Section> sections;
  std::vector<Component> components;    // junctions first, then sections
  std::vector<ComponentId> component_of;  // per node
  std::vector<std::size_t> position_in_section;  // per node; kNoIndex for junctions
  std::vector<std::vector<ComponentId>> component_graph;  // sorted adjacency
  std::vector<NodeId> promoted;         // degree-2 nodes forced to be junctions

  std::size_t size() const { return components.size(); }
  bool is_junction(ComponentId z) const { return components[z].kind == ComponentKind::kJunction; }
  const Section& section(ComponentId z) const { return sections[components[z].section]; }
  bool is_jc_node(NodeId v) const { return position_in_section[v] == kNoIndex; }

  bool adjacent(ComponentId a, ComponentId b) const {
    const auto& adj = component_graph[a];
    return std::binary_search(adj.begin(), adj.end(), b);
  }

  /// Node of `from` that touches component `to` (from and to adjacent).
  NodeId boundary_node(ComponentId from, ComponentId to, const Roadmap& rm) const {
    if (is_junction(from)) return components[from].node;
    const Section& s = section(from);
    for (NodeId v : {s.nodes.front(), s.nodes.back()}) {
      for (NodeId w : rm.neighbors(v)) {
        if (component_of[w] == to) return v;
      }
    }
    throw NonAdjacentSequence("components are not adjacent");
  }
};

/// Junctions are nodes of degree != 2. A cycle made only of degree-2 nodes
/// gets its lowest node promoted, and a section whose two ends touch the same
/// junction gets its middle node promoted, so every section joins two
/// distinct junctions.
inline Partition partition(const Roadmap& rm) {
  const std::size_t n = rm.size();
  std::vector<char> jc(n, 0);
  for (NodeId v = 0; v < n; ++v) jc[v] = rm.degree(v) != 2;

  Partition part;
  // Junction-free cycles.
  {
    std::vector<char> seen(n, 0);
    for (NodeId v = 0; v < n; ++v) {
      if (seen[v]) continue;
      std::vector<NodeId> stack{v}, members;
      seen[v] = 1;
      bool has_jc = false;
      while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        members.push_back(u);
        has_jc = has_jc || jc[u];
        for (NodeId w : rm.neighbors(u)) {
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
      if (!has_jc) {
        const NodeId p = *std::min_element(members.begin(), members.end());
        jc[p] = 1;
        part.promoted.push_back(p);
      }
    }
  }

  std::vector<std::vector<NodeId>> chains;
  std::vector<std::pair<NodeId, NodeId>> ends;
  for (;;) {
    chains.clear();
    ends.clear();
    std::vector<char> seen(n, 0);
    bool changed = false;
    for (NodeId v = 0; v < n && !changed; ++v) {
      if (jc[v] || seen[v]) continue;
      auto walk = [&](NodeId first) {
        std::vector<NodeId> out;
        NodeId prev = v, cur = first;
        while (!jc[cur]) {
          out.push_back(cur);
          const auto& adj = rm.neighbors(cur);
          const NodeId next = adj[0] != prev ? adj[0] : adj[1];
          prev = cur;
          cur = next;
        }
        return std::make_pair(std::move(out), cur);
      };
      auto [left, front] = walk(rm.neighbors(v)[0]);
      auto [right, back] = walk(rm.neighbors(v)[1]);
      std::vector<NodeId> chain(left.rbegin(), left.rend());
      chain.push_back(v);
      chain.insert(chain.end(), right.begin(), right.end());
      for (NodeId u : chain) seen[u] = 1;
      if (front == back) {
        const NodeId mid = chain[chain.size() / 2];
        jc[mid] = 1;
        part.promoted.push_back(mid);
        changed = true;
        break;
      }
      if (back < front) {
        std::reverse(chain.begin(), chain.end());
        std::swap(front, back);
      }
      chains.push_back(std::move(chain));
      ends.emplace_back(front, back);
    }
    if (!changed) break;
  }
  std::sort(part.promoted.begin(), part.promoted.end());

  part.component_of.assign(n, kNoIndex);
  part.position_in_section.assign(n, kNoIndex);
  for (NodeId v = 0; v < n; ++v) {
    if (!jc[v]) continue;
    part.component_of[v] = part.components.size();
    part.jc_nodes.push_back(v);
    part.components.push_back({ComponentKind::kJunction, v, 0});
  }
  for (std::size_t i = 0; i < chains.size(); ++i) {
    Section s;
    s.id = part.components.size();
    s.nodes = std::move(chains[i]);
    s.front_jc = ends[i].first;
    s.back_jc = ends[i].second;
    for (std::size_t k = 0; k < s.nodes.size(); ++k) {
      part.component_of[s.nodes[k]] = s.id;
      part.position_in_section[s.nodes[k]] = k;
    }
    part.components.push_back({ComponentKind::kSection, 0, part.sections.size()});
    part.sections.push_back(std::move(s));
  }

  part.component_graph.assign(part.components.size(), {});
  for (const auto& e : rm.edges()) {
    const ComponentId za = part.component_of[e.a];
    const ComponentId zb = part.component_of[e.b];
    if (za == zb) continue;
    part.component_graph[za].push_back(zb);
    part.component_graph[zb].push_back(za);
  }
  for (auto& adj : part.component_graph) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return part;
}

/// Junction node itself, or the middle node (index floor(len/2)) of a section.
inline NodeId component_center(const Partition& part, ComponentId z) {
  if (part.is_junction(z)) return part.components[z].node;
  const auto& nodes = part.section(z).nodes;
  return nodes[nodes.size() / 2];
}

/// Breadth-first search tree over the roadmap; neighbors are visited in
/// ascending index order so the tree is deterministic.
struct BfsTree {
  NodeId source = 0;
  std::vector<std::size_t> hops;  // kNoIndex when unreachable
  std::vector<NodeId> parent;

  bool reaches(NodeId v) const { return hops[v] != kNoIndex; }

  std::vector<NodeId> path_to(NodeId v) const {
    if (!reaches(v)) throw Unreachable("node " + std::to_string(v) + " is not reachable");
    std::vector<NodeId> path;
    for (NodeId cur = v; cur != source; cur = parent[cur]) path.push_back(cur);
    path.push_back(source);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

inline BfsTree bfs(const Roadmap& rm, NodeId source) {
  BfsTree t;
  t.source = source;
  t.hops.assign(rm.size(), kNoIndex);
  t.parent.assign(rm.size(), kNoIndex);
  t.hops[source] = 0;
  std::deque<NodeId> queue{source};
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId w : rm.neighbors(u)) {
      if (t.hops[w] != kNoIndex) continue;
      t.hops[w] = t.hops[u] + 1;
      t.parent[w] = u;
      queue.push_back(w);
    }
  }
  return t;
}

struct ComponentPath {
  std::vector<NodeId> nodes;            // center to center
  std::vector<ComponentId> components;  // consecutive duplicates removed
  std::size_t cost = 0;                 // node count
};

inline std::vector<ComponentId> components_along(const Partition& part,
                                                 const std::vector<NodeId>& nodes) {
  std::vector<ComponentId> seq;
  for (NodeId v : nodes) {
    const ComponentId z = part.component_of[v];
    if (seq.empty() || seq.back() != z) seq.push_back(z);
  }
  return seq;
}

inline ComponentPath component_path_from(const Partition& part, const BfsTree& tree,
                                         ComponentId to) {
  ComponentPath p;
  p.nodes = tree.path_to(component_center(part, to));
  p.components = components_along(part, p.nodes);
  p.cost = p.nodes.size();
  return p;
}

/// Shortest node path between two component centers, measured in nodes.
inline ComponentPath shortest_component_path(const Partition& part, const Roadmap& rm,
                                             ComponentId from, ComponentId to) {
  return component_path_from(part, bfs(rm, component_center(part, from)), to);
}

}  // namespace mrtarm
