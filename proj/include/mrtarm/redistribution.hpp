#pragma once

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mrtarm/analysis.hpp"
#include "mrtarm/assignment.hpp"
#include "mrtarm/errors.hpp"
#include "mrtarm/partition.hpp"

namespace mrtarm {

struct Flow {
  ComponentId src = 0;
  ComponentId dst = 0;
  std::size_t count = 0;

  friend bool operator==(const Flow&, const Flow&) = default;
};

enum class PlanKind { kInitial, kRevised };

struct Plan {
  std::vector<Flow> flows;
  PlanKind kind = PlanKind::kInitial;
};

using PathCache = std::map<std::pair<ComponentId, ComponentId>, ComponentPath>;

/// Component-level redistribution problem: one row per surplus robot, one
/// column per missing robot, costs are center-to-center node counts.
struct RedistributionProblem {
  CostMatrix costs;
  std::vector<ComponentId> row_component;
  std::vector<ComponentId> col_component;
  PathCache paths;
};

inline RedistributionProblem build_cost_matrix(const Partition& part, const Roadmap& rm,
                                               const SupplyReport& report) {
  RedistributionProblem p;
  for (ComponentId z : report.oversupplied) {
    p.row_component.insert(p.row_component.end(), static_cast<std::size_t>(report.demand[z]), z);
  }
  for (ComponentId z : report.undersupplied) {
    p.col_component.insert(p.col_component.end(), static_cast<std::size_t>(-report.demand[z]), z);
  }
  if (p.row_component.size() != p.col_component.size()) {
    throw CountMismatch("surplus and deficit totals differ");
  }
  for (ComponentId zi : report.oversupplied) {
    const BfsTree tree = bfs(rm, component_center(part, zi));
    for (ComponentId zj : report.undersupplied) {
      p.paths.emplace(std::make_pair(zi, zj), component_path_from(part, tree, zj));
    }
  }
  const std::size_t k = p.row_component.size();
  p.costs = CostMatrix(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      p.costs(i, j) = static_cast<double>(p.paths.at({p.row_component[i], p.col_component[j]}).cost);
    }
  }
  return p;
}

/// Aggregates matched (row, column) pairs into flows keyed by component pair,
/// in order of first appearance over rows.
inline Plan initial_plan(const Assignment& a, const RedistributionProblem& problem) {
  Plan plan;
  plan.kind = PlanKind::kInitial;
  std::map<std::pair<ComponentId, ComponentId>, std::size_t> slot;
  for (std::size_t i = 0; i < a.match.size(); ++i) {
    const ComponentId src = problem.row_component[i];
    const ComponentId dst = problem.col_component[a.match[i]];
    auto [it, inserted] = slot.try_emplace({src, dst}, plan.flows.size());
    if (inserted) plan.flows.push_back({src, dst, 0});
    ++plan.flows[it->second].count;
  }
  return plan;
}

/// Splits a flow along its component sequence into adjacent hops.
inline std::vector<Flow> decompose(const Flow& f, const std::vector<ComponentId>& sequence,
                                   const Partition& part) {
  if (sequence.size() < 2 || sequence.front() != f.src || sequence.back() != f.dst) {
    throw NonAdjacentSequence("sequence does not run from the flow source to its destination");
  }
  std::vector<Flow> out;
  out.reserve(sequence.size() - 1);
  for (std::size_t k = 0; k + 1 < sequence.size(); ++k) {
    if (!part.adjacent(sequence[k], sequence[k + 1])) {
      throw NonAdjacentSequence("components " + std::to_string(sequence[k]) + " and " +
                                std::to_string(sequence[k + 1]) + " are not adjacent");
    }
    out.push_back({sequence[k], sequence[k + 1], f.count});
  }
  return out;
}

/// Sums flows with the same directed (src, dst); keeps first-appearance order.
inline Plan merge(const std::vector<Flow>& flows) {
  Plan plan;
  plan.kind = PlanKind::kRevised;
  std::map<std::pair<ComponentId, ComponentId>, std::size_t> slot;
  for (const Flow& f : flows) {
    auto [it, inserted] = slot.try_emplace({f.src, f.dst}, plan.flows.size());
    if (inserted) {
      plan.flows.push_back(f);
    } else {
      plan.flows[it->second].count += f.count;
    }
  }
  return plan;
}

/// Flows between adjacent components need no cached path.
inline Plan revise(const Plan& initial, const PathCache& paths, const Partition& part) {
  std::vector<Flow> pieces;
  for (const Flow& f : initial.flows) {
    const auto it = paths.find({f.src, f.dst});
    if (it == paths.end()) {
      if (!part.adjacent(f.src, f.dst)) throw Unreachable("no cached path for flow");
      pieces.push_back(f);
      continue;
    }
    const auto split = decompose(f, it->second.components, part);
    pieces.insert(pieces.end(), split.begin(), split.end());
  }
  return merge(pieces);
}

/// Outflow minus inflow per component.
inline std::vector<long> net_outflow(const Plan& plan, std::size_t component_count) {
  std::vector<long> net(component_count, 0);
  for (const Flow& f : plan.flows) {
    net[f.src] += static_cast<long>(f.count);
    net[f.dst] -= static_cast<long>(f.count);
  }
  return net;
}

/// One `src -> dst : count` line per flow.
inline std::string plan_to_text(const Plan& plan) {
  std::ostringstream os;
  for (const Flow& f : plan.flows) os << f.src << " -> " << f.dst << " : " << f.count << '\n';
  return os.str();
}

inline Plan plan_from_text(const std::string& text, PlanKind kind = PlanKind::kRevised) {
  Plan plan;
  plan.kind = kind;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Flow f;
    std::string arrow, colon;
    if (!(ls >> f.src >> arrow >> f.dst >> colon >> f.count) || arrow != "->" || colon != ":") {
      throw ParseError("bad plan line '" + line + "'");
    }
    plan.flows.push_back(f);
  }
  return plan;
}

}  // namespace mrtarm
