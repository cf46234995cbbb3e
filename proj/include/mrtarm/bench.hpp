#pragma once

#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "mrtarm/baselines.hpp"
#include "mrtarm/io.hpp"
#include "mrtarm/maps.hpp"
#include "mrtarm/simulator.hpp"

namespace mrtarm {

struct BenchmarkSpec {
  std::vector<MapStyle> maps{MapStyle::kClutter};
  std::vector<std::size_t> n{10};
  std::vector<PlacementMode> modes{PlacementMode::kRandom};
  std::vector<std::uint64_t> seeds{1};
  std::vector<Method> methods{Method::kMrtaRm};
  double time_limit_s = 300.0;
  MapParams map_params{};
  SimConfig sim{};
};

inline void validate(const BenchmarkSpec& s) {
  if (s.maps.empty() || s.n.empty() || s.modes.empty() || s.seeds.empty() || s.methods.empty()) {
    throw ParseError("benchmark spec lists must be nonempty");
  }
  if (!(s.time_limit_s > 0.0)) throw ParseError("time_limit_s must be positive");
  if (s.sim.stall_limit < 1 || s.sim.max_ticks <= s.sim.stall_limit) {
    throw ParseError("need stall_limit >= 1 and max_ticks > stall_limit");
  }
}

namespace detail {

// Accepts a single value or a list.
template <class T, class F>
std::vector<T> one_or_many(const nlohmann::json& j, F convert) {
  std::vector<T> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(convert(x));
  } else {
    out.push_back(convert(j));
  }
  return out;
}

}  // namespace detail

/// {"maps": [...], "n": [...], "modes": [...], "seeds": [...], "methods": [...],
///  "time_limit_s": 300, "radius": 5, "map_params": {...}, "stall_limit": 5}
/// Singular keys (map, mode) are accepted as aliases.
inline BenchmarkSpec parse_benchmark_spec(const nlohmann::json& j) {
  BenchmarkSpec s;
  try {
    auto str = [](const nlohmann::json& x) { return x.get<std::string>(); };
    if (j.contains("maps") || j.contains("map")) {
      const auto& v = j.contains("maps") ? j["maps"] : j["map"];
      s.maps = detail::one_or_many<MapStyle>(v, [&](const auto& x) { return map_style_from_string(str(x)); });
    }
    if (j.contains("n")) {
      s.n = detail::one_or_many<std::size_t>(j["n"], [](const auto& x) { return x.template get<std::size_t>(); });
    }
    if (j.contains("modes") || j.contains("mode")) {
      const auto& v = j.contains("modes") ? j["modes"] : j["mode"];
      s.modes = detail::one_or_many<PlacementMode>(
          v, [&](const auto& x) { return placement_mode_from_string(str(x)); });
    }
    if (j.contains("seeds")) {
      s.seeds = detail::one_or_many<std::uint64_t>(j["seeds"],
                                                   [](const auto& x) { return x.template get<std::uint64_t>(); });
    }
    if (j.contains("methods")) {
      s.methods = detail::one_or_many<Method>(j["methods"], [&](const auto& x) { return method_from_string(str(x)); });
    }
    s.time_limit_s = j.value("time_limit_s", s.time_limit_s);
    s.map_params.radius = j.value("radius", s.map_params.radius);
    if (j.contains("map_params")) {
      const auto& m = j["map_params"];
      auto& p = s.map_params;
      p.width = m.value("width", p.width);
      p.height = m.value("height", p.height);
      p.obstacle_count = m.value("obstacle_count", p.obstacle_count);
      p.obstacle_size = m.value("obstacle_size", p.obstacle_size);
      p.shelf_length = m.value("shelf_length", p.shelf_length);
      p.shelf_depth = m.value("shelf_depth", p.shelf_depth);
      p.aisle = m.value("aisle", p.aisle);
      p.cross_aisle = m.value("cross_aisle", p.cross_aisle);
      p.rooms_x = m.value("rooms_x", p.rooms_x);
      p.rooms_y = m.value("rooms_y", p.rooms_y);
      p.wall = m.value("wall", p.wall);
      p.door = m.value("door", p.door);
    }
    s.sim.stall_limit = j.value("stall_limit", s.sim.stall_limit);
    s.sim.max_ticks = j.value("max_ticks", s.sim.max_ticks);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad benchmark spec: ") + e.what());
  }
  validate(s);
  return s;
}

/// MRTA_SEED, when set, replaces the seed list with that single seed.
inline void apply_seed_override(BenchmarkSpec& s) {
  if (const char* env = std::getenv("MRTA_SEED"); env && *env) {
    try {
      s.seeds = {std::stoull(env)};
    } catch (const std::logic_error&) {
      throw ParseError(std::string("MRTA_SEED is not an integer: ") + env);
    }
  }
}

inline ArrivalOrder arrival_order(const MethodOutcome& out) {
  return out.ordered_arrivals ? ArrivalOrder::from_plan(out.result) : ArrivalOrder::by_id();
}

struct BenchInstance {
  MapStyle map;
  PlacementMode mode;
  std::size_t n;
  std::uint64_t seed;

  std::string id() const {
    return std::string(to_string(map)) + "-" + to_string(mode) + "-n" + std::to_string(n) + "-s" +
           std::to_string(seed);
  }
};

inline std::vector<BenchInstance> expand(const BenchmarkSpec& s) {
  std::vector<BenchInstance> out;
  for (MapStyle m : s.maps)
    for (PlacementMode mode : s.modes)
      for (std::size_t n : s.n)
        for (std::uint64_t seed : s.seeds) out.push_back({m, mode, n, seed});
  return out;
}

/// One row per method. The map and scenario both derive from the seed; any
/// failure before solving marks every method's row as a computation failure.
inline std::vector<CsvRow> run_instance(const BenchmarkSpec& spec, const BenchInstance& inst) {
  std::vector<CsvRow> rows;
  for (Method m : spec.methods) {
    CsvRow r;
    r.instance = inst.id();
    r.method = to_string(m);
    r.n = inst.n;
    r.mode = to_string(inst.mode);
    r.map = to_string(inst.map);
    rows.push_back(r);
  }
  const double radius = spec.map_params.radius;
  Environment env;
  Scenario sc;
  try {
    Workspace ws = generate_map(inst.map, spec.map_params, inst.seed);
    sc = generate_scenario(ws, inst.n, radius, inst.mode, inst.seed);
    env = build_environment(std::move(ws), radius);
  } catch (const Error&) {
    return rows;
  }
  for (std::size_t k = 0; k < spec.methods.size(); ++k) {
    CsvRow& r = rows[k];
    r.roadmap_ms = env.roadmap_ms;
    const auto limit = std::chrono::duration_cast<Clock::duration>(
        std::chrono::duration<double>(spec.time_limit_s));
    try {
      const MethodOutcome out = run_method(spec.methods[k], env, sc, Clock::now() + limit);
      r.comp_success = true;
      r.solve_ms = out.solve_ms;
      const Metrics met = simulate(env.roadmap, out.result, arrival_order(out), spec.sim);
      r.sim_success = met.success;
      r.makespan = met.makespan;
      r.soc = met.soc;
    } catch (const Error&) {
      r.comp_success = false;
    }
  }
  return rows;
}

/// Runs every instance on `jobs` worker threads; rows come back in spec order.
inline std::vector<CsvRow> run_benchmark(const BenchmarkSpec& spec, unsigned jobs = 1) {
  const auto instances = expand(spec);
  std::vector<std::vector<CsvRow>> results(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < instances.size();) {
      results[i] = run_instance(spec, instances[i]);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(instances.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<CsvRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

inline std::string rows_to_csv(const std::vector<CsvRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) out += to_csv(r) + "\n";
  return out;
}

/// Per (map, mode, n, method): computation success rate, mean solve time over
/// computed instances, simulation success rate, and mean makespan / SoC over
/// simulated successes.
inline std::string summary_table(const std::vector<CsvRow>& rows) {
  struct Cell {
    std::size_t total = 0, computed = 0, succeeded = 0;
    double solve_ms = 0.0, makespan = 0.0, soc = 0.0;
  };
  std::map<std::tuple<std::string, std::string, std::size_t, std::string>, Cell> cells;
  for (const auto& r : rows) {
    Cell& c = cells[{r.map, r.mode, r.n, r.method}];
    ++c.total;
    if (!r.comp_success) continue;
    ++c.computed;
    c.solve_ms += r.solve_ms;
    if (!r.sim_success) continue;
    ++c.succeeded;
    c.makespan += static_cast<double>(r.makespan);
    c.soc += static_cast<double>(r.soc);
  }
  std::ostringstream s;
  s << std::fixed << std::setprecision(1);
  s << "map            mode       n    method        comp%   solve_ms  succ%   makespan  soc\n";
  for (const auto& [key, c] : cells) {
    const auto& [map, mode, n, method] = key;
    auto pct = [&](std::size_t k) { return c.total ? 100.0 * k / c.total : 0.0; };
    s << std::left << std::setw(15) << map << std::setw(11) << mode << std::setw(5) << n
      << std::setw(14) << method << std::right << std::setw(5) << pct(c.computed) << "  "
      << std::setw(9) << std::setprecision(3) << (c.computed ? c.solve_ms / c.computed : 0.0)
      << std::setprecision(1) << "  " << std::setw(5) << pct(c.succeeded) << "  ";
    if (c.succeeded) {
      s << std::setw(8) << c.makespan / c.succeeded << "  " << c.soc / c.succeeded;
    } else {
      s << std::setw(8) << "-" << "  -";
    }
    s << "\n";
  }
  return s.str();
}

}  // namespace mrtarm
