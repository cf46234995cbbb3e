// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "fixtures.hpp"

using namespace mrtarm;
using namespace fixtures;

namespace {

// Pinned tolerances.
constexpr std::size_t kPropertyInstancesPerStyle = 200;
constexpr double kPropertyBudgetS = 300.0;
constexpr std::size_t kOracleMatrices = 500;
constexpr std::size_t kOracleMaxK = 7;
constexpr double kSmallSolveLimitMs = 1000.0;   // N = 30
constexpr double kLargeSolveLimitMs = 30000.0;  // N = 500
constexpr double kDoublingRatioLimit = 8.0;
constexpr double kTimingFloorMs = 1.0;  // below this, timer noise dominates a ratio
constexpr std::size_t kBaselineSeeds = 20;

const MapStyle kStyles[] = {MapStyle::kClutter, MapStyle::kWarehouse, MapStyle::kMall};

bool all_pass = true;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  all_pass = all_pass && ok;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << " " << name << ": " << detail << std::endl;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Shared by criteria 1 and 4.
struct PropertyTally {
  std::size_t instances = 0, solved = 0, edge = 0, junction = 0, blocking = 0, incomplete = 0;
  std::size_t balance = 0, final_mismatch = 0;
  std::vector<std::string> errors;
};

// Independent balance oracle: every component ends with as many robots as
// it holds tasks.
bool final_counts_match(const Environment& env, const MrtaSolution& s) {
  std::vector<long> net(env.partition.size(), 0);
  for (const auto& p : s.result.waypoints) ++net[env.partition.component_of[p.back()]];
  for (NodeId v : s.association.task_node) --net[env.partition.component_of[v]];
  return std::all_of(net.begin(), net.end(), [](long d) { return d == 0; });
}

PropertyTally run_property_suite(double& elapsed_s) {
  PropertyTally t;
  const auto t0 = Clock::now();
  const std::size_t ns[] = {10, 20, 30};
  const PlacementMode modes[] = {PlacementMode::kRandom, PlacementMode::kSeparated};
  for (MapStyle style : kStyles) {
    std::map<std::uint64_t, Environment> maps;
    for (std::size_t k = 0; k < kPropertyInstancesPerStyle; ++k) {
      const std::uint64_t map_seed = 1 + k / 10;
      const std::size_t n = ns[k % 3];
      const PlacementMode mode = modes[(k / 3) % 2];
      ++t.instances;
      auto it = maps.find(map_seed);
      if (it == maps.end()) {
        const MapParams mp;
        it = maps.emplace(map_seed, build_environment(generate_map(style, mp, map_seed), mp.radius)).first;
      }
      const Environment& env = it->second;
      std::ostringstream tag;
      tag << to_string(style) << "/" << to_string(mode) << "/n" << n << "/k" << k;
      MrtaSolution s;
      try {
        const Scenario sc = generate_scenario(env.workspace, n, env.params.radius, mode, 1000 + k);
        s = solve_mrta_rm(env, sc);
      } catch (const StuckSchedule& e) {
        ++t.incomplete;
        t.errors.push_back(tag.str() + " " + e.what());
        continue;
      } catch (const Error& e) {
        t.errors.push_back(tag.str() + " " + e.what());
        continue;
      }
      ++t.solved;
      t.edge += !checks::edge_unidirectional(s.result).empty();
      t.junction += !checks::junction_unidirectional(s.revised, s.result, env.partition).empty();
      t.blocking += !checks::no_blocking(s.result).empty();
      if (s.schedule.steps.size() != s.revised.flows.size() || !checks::bijection(s.result, n).empty() ||
          !checks::waypoints_valid(s.result, s.association, env.roadmap).empty()) {
        ++t.incomplete;
      }
      t.balance += !checks::balance_restored(s.revised, s.report).empty();
      t.final_mismatch += !final_counts_match(env, s);
    }
  }
  elapsed_s = seconds_since(t0);
  return t;
}

void criterion_1(const PropertyTally& t, double elapsed_s) {
  std::ostringstream d;
  d << t.solved << "/" << t.instances << " solved; violations edge=" << t.edge << " junction=" << t.junction
    << " blocking=" << t.blocking << " incomplete=" << t.incomplete << "; " << std::fixed
    << std::setprecision(1) << elapsed_s << " s (budget " << kPropertyBudgetS << " s)";
  if (!t.errors.empty()) d << "; first error: " << t.errors.front();
  const bool ok = t.solved == t.instances && t.edge == 0 && t.junction == 0 && t.blocking == 0 &&
                  t.incomplete == 0 && elapsed_s < kPropertyBudgetS;
  report(1, "structural properties", ok, d.str());
}

void criterion_2() {
  std::mt19937_64 rng(2024);
  std::size_t mismatches = 0;
  for (std::size_t m = 0; m < kOracleMatrices; ++m) {
    const std::size_t k = 1 + m % kOracleMaxK;
    const CostMatrix cm = random_matrix(rng, k, m % 2 == 0);
    const double got = assignment_cost(cm, hungarian_solve(cm).match);
    // Integer matrices must agree exactly; real ones to summation rounding.
    const double tol = m % 2 == 0 ? 0.0 : 1e-9 * (1.0 + std::abs(got));
    if (std::abs(got - brute_force_min(cm)) > tol) ++mismatches;
  }
  report(2, "hungarian vs brute force", mismatches == 0,
         std::to_string(kOracleMatrices - mismatches) + "/" + std::to_string(kOracleMatrices) +
             " matrices optimal (K <= " + std::to_string(kOracleMaxK) + ")");
}

void criterion_3() {
  Example f;
  const MrtaSolution s = solve_mrta_rm(f.env, f.sc);
  const ComponentId z2 = f.z(Example::kJ2), z3 = f.z(Example::kS3), z4 = f.z(Example::kS4), z5 = f.z(Example::kJ5),
                    z6 = f.z(Example::kS6);
  const std::vector<Flow> want_initial{{z3, z4, 2}, {z3, z6, 1}};
  const std::vector<Flow> want_revised{{z3, z2, 3}, {z2, z4, 3}, {z4, z5, 1}, {z5, z6, 1}};
  const bool init_ok = s.initial.flows == want_initial;
  const bool rev_ok = s.revised.flows == want_revised;
  const auto& c = s.categories;
  bool cat_ok = c[z3] == Category::kC2 && c[z6] == Category::kC3 && c[z2] == Category::kC4 &&
                c[z4] == Category::kC4 && c[z5] == Category::kC4;
  for (ComponentId z = 0; z < c.size(); ++z) {
    if (z != z2 && z != z3 && z != z4 && z != z5 && z != z6) cat_ok = cat_ok && c[z] == Category::kC1;
  }
  report(3, "worked example", init_ok && rev_ok && cat_ok,
         std::string("initial plan ") + (init_ok ? "ok" : "differs") + ", revised plan " + (rev_ok ? "ok" : "differs") +
             ", categories " + (cat_ok ? "ok" : "differ"));
}

void criterion_4(const PropertyTally& t) {
  report(4, "balance restoration", t.solved > 0 && t.balance == 0 && t.final_mismatch == 0,
         std::to_string(t.solved) + " solved instances; plan imbalance in " + std::to_string(t.balance) +
             ", final robot/task count mismatch in " + std::to_string(t.final_mismatch));
}

// Best of `reps` solve times, roadmap excluded.
double solve_time_ms(const Environment& env, const Scenario& sc, int reps) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < reps; ++r) best = std::min(best, solve_mrta_rm(env, sc).timings.solve_ms);
  return best;
}

void criterion_5() {
  const MapParams mp;
  bool ok = true;
  std::ostringstream d;
  d << std::fixed << std::setprecision(1);

  double worst_small = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Environment env = build_environment(generate_map(MapStyle::kClutter, mp, seed), mp.radius);
    for (PlacementMode mode : {PlacementMode::kRandom, PlacementMode::kSeparated}) {
      const Scenario sc = generate_scenario(env.workspace, 30, mp.radius, mode, seed);
      worst_small = std::max(worst_small, solve_time_ms(env, sc, 1));
    }
  }
  ok = ok && worst_small <= kSmallSolveLimitMs;
  d << "N=30 worst " << worst_small << " ms (limit " << kSmallSolveLimitMs << ")";

  double worst_large = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Environment env = build_environment(generate_map(MapStyle::kClutter, mp, seed), mp.radius);
    const Scenario sc = generate_scenario(env.workspace, 500, mp.radius, PlacementMode::kRandom, seed);
    worst_large = std::max(worst_large, solve_time_ms(env, sc, 1));
  }
  ok = ok && worst_large <= kLargeSolveLimitMs;
  d << "; N=500 worst " << worst_large << " ms (limit " << kLargeSolveLimitMs << ")";

  const Environment env = build_environment(generate_map(MapStyle::kClutter, mp, 7), mp.radius);
  double prev = 0.0, worst_ratio = 0.0;
  for (std::size_t n : {60, 120, 240, 480}) {
    const Scenario sc = generate_scenario(env.workspace, n, mp.radius, PlacementMode::kRandom, 7);
    const double t = solve_time_ms(env, sc, 3);
    if (prev > 0.0) worst_ratio = std::max(worst_ratio, t / std::max(prev, kTimingFloorMs));
    prev = t;
  }
  ok = ok && worst_ratio <= kDoublingRatioLimit;
  d << std::setprecision(2) << "; worst doubling ratio " << worst_ratio << " (limit " << kDoublingRatioLimit << ")";
  report(5, "scaling", ok, d.str());
}

void criterion_6() {
  const std::size_t n_values[] = {20, 40, 60};
  const MapStyle styles[] = {MapStyle::kClutter, MapStyle::kWarehouse};
  const Method methods[] = {Method::kMrtaRm, Method::kHungarianTa, Method::kGreedyTa};
  std::size_t success[3] = {}, total = 0, joint = 0;
  double makespan_mrta = 0.0, makespan_hung = 0.0;
  const MapParams mp;
  for (MapStyle style : styles) {
    for (std::uint64_t seed = 1; seed <= kBaselineSeeds; ++seed) {
      const Environment env = build_environment(generate_map(style, mp, seed), mp.radius);
      for (std::size_t n : n_values) {
        const Scenario sc = generate_scenario(env.workspace, n, mp.radius, PlacementMode::kSeparated, seed);
        ++total;
        Metrics met[3];
        for (int m = 0; m < 3; ++m) {
          try {
            const MethodOutcome out = run_method(methods[m], env, sc);
            met[m] = simulate(env.roadmap, out.result, arrival_order(out));
          } catch (const Error&) {
            met[m] = Metrics{};
          }
          success[m] += met[m].success;
        }
        if (met[0].success && met[1].success) {
          ++joint;
          makespan_mrta += static_cast<double>(met[0].makespan);
          makespan_hung += static_cast<double>(met[1].makespan);
        }
      }
    }
  }
  const bool rate_ok = success[0] > success[2] && success[0] >= success[1];
  // With no jointly successful instance the makespan clause has nothing to
  // compare and cannot pass.
  const bool makespan_ok = joint > 0 && makespan_mrta <= makespan_hung;
  std::ostringstream d;
  d << std::fixed << std::setprecision(2) << "success mrta-rm " << success[0] << "/" << total << ", hungarian-ta "
    << success[1] << "/" << total << ", greedy-ta " << success[2] << "/" << total << "; ";
  if (joint > 0) {
    d << "mean makespan over " << joint << " joint successes " << makespan_mrta / joint << " vs "
      << makespan_hung / joint;
  } else {
    d << "makespan clause not evaluable: no jointly successful instance";
  }
  report(6, "baseline comparison", rate_ok && makespan_ok, d.str());
}

// Serializations a CLI run would write, computed twice.
std::string serialize_all() {
  std::string out;
  const MapParams mp;
  for (MapStyle style : kStyles) {
    const Environment env = build_environment(generate_map(style, mp, 5), mp.radius);
    out += roadmap_to_json(env.roadmap, env.partition).dump(1);
    for (PlacementMode mode : {PlacementMode::kRandom, PlacementMode::kSeparated}) {
      const Scenario sc = generate_scenario(env.workspace, 25, mp.radius, mode, 5);
      for (Method m : {Method::kMrtaRm, Method::kHungarianTa, Method::kGreedyTa}) {
        const MethodOutcome o = run_method(m, env, sc);
        out += assignment_to_json(o.result, to_string(m)).dump(1);
        if (o.mrta) out += plan_to_text(o.mrta->initial) + plan_to_text(o.mrta->revised);
      }
    }
  }
  Example f;
  const MrtaSolution s = solve_mrta_rm(f.env, f.sc);
  out += plan_to_text(s.revised) + assignment_to_json(s.result, "mrta-rm").dump(1);
  return out;
}

void criterion_7() {
  const std::string a = serialize_all(), b = serialize_all();
  report(7, "determinism", a == b && !a.empty(),
         std::to_string(a.size()) + " bytes of roadmap, plan and assignment output " +
             (a == b ? "identical" : "differ") + " across reruns");
}

}  // namespace

int main() {
  double property_s = 0.0;
  const PropertyTally tally = run_property_suite(property_s);
  criterion_1(tally, property_s);
  criterion_2();
  criterion_3();
  criterion_4(tally);
  criterion_5();
  criterion_6();
  criterion_7();
  return all_pass ? 0 : 1;
}
