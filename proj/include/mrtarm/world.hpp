#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrtarm/errors.hpp"
#include "mrtarm/geometry.hpp"

namespace mrtarm {

struct Obstacle {
  std::vector<Vec2> polygon;
};

struct Workspace {
  double width = 0.0;
  double height = 0.0;
  std::vector<Obstacle> obstacles;

  bool contains(Vec2 p) const {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }

  // Distance from p to the nearest obstacle or workspace wall; zero when p
  // lies inside an obstacle or outside the bounding rectangle.
  double clearance(Vec2 p) const {
    if (!contains(p)) return 0.0;
    double best = std::min({p.x, width - p.x, p.y, height - p.y});
    for (const auto& o : obstacles) {
      best = std::min(best, point_polygon_distance(p, o.polygon));
      if (best == 0.0) break;
    }
    return best;
  }

  // Distance from segment ab to the nearest obstacle. Walls are ignored: the
  // rectangle is convex, so a segment between two interior points stays in it.
  double segment_clearance(Vec2 a, Vec2 b) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : obstacles) {
      best = std::min(best, segment_polygon_distance(a, b, o.polygon));
      if (best == 0.0) break;
    }
    return best;
  }
};

struct Scenario {
  std::vector<Vec2> robots;
  std::vector<Vec2> tasks;
  double radius = 0.0;
};

enum class PlacementMode { kRandom, kSeparated };

inline const char* to_string(PlacementMode m) {
  return m == PlacementMode::kRandom ? "random" : "separated";
}

inline PlacementMode placement_mode_from_string(const std::string& s) {
  if (s == "random") return PlacementMode::kRandom;
  if (s == "separated") return PlacementMode::kSeparated;
  throw ParseError("unknown placement mode '" + s + "'");
}

namespace detail {

inline double finite_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
  return v;
}

inline Vec2 parse_point(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("point must be [x, y]");
  return {finite_number(j[0], "x"), finite_number(j[1], "y")};
}

inline std::vector<Vec2> parse_points(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<Vec2> out;
  out.reserve(j.size());
  for (const auto& p : j) out.push_back(parse_point(p));
  return out;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

}  // namespace detail

inline void validate_workspace(const Workspace& ws) {
  if (!(ws.width > 0.0) || !(ws.height > 0.0)) {
    throw GeometryError("workspace dimensions must be positive");
  }
  for (std::size_t i = 0; i < ws.obstacles.size(); ++i) {
    const auto& poly = ws.obstacles[i].polygon;
    if (poly.size() < 3) {
      throw GeometryError("obstacle " + std::to_string(i) + " has fewer than 3 vertices");
    }
    for (const Vec2 p : poly) {
      if (!ws.contains(p)) {
        throw GeometryError("obstacle " + std::to_string(i) + " leaves the workspace");
      }
    }
    if (!polygon_is_simple(poly)) {
      throw GeometryError("obstacle " + std::to_string(i) + " is not a simple polygon");
    }
  }
}

inline Workspace parse_map(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("map must be a JSON object");
  Workspace ws;
  try {
    ws.width = detail::finite_number(j.at("width"), "width");
    ws.height = detail::finite_number(j.at("height"), "height");
    const auto& obs = j.at("obstacles");
    if (!obs.is_array()) throw ParseError("obstacles must be an array");
    for (const auto& poly : obs) {
      ws.obstacles.push_back({detail::parse_points(poly, "obstacle")});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  validate_workspace(ws);
  return ws;
}

inline Workspace load_map(const std::string& path) {
  return parse_map(detail::read_json_file(path));
}

inline nlohmann::ordered_json map_to_json(const Workspace& ws) {
  nlohmann::ordered_json j;
  j["width"] = ws.width;
  j["height"] = ws.height;
  auto obs = nlohmann::ordered_json::array();
  for (const auto& o : ws.obstacles) {
    auto poly = nlohmann::ordered_json::array();
    for (const Vec2 p : o.polygon) poly.push_back({p.x, p.y});
    obs.push_back(std::move(poly));
  }
  j["obstacles"] = std::move(obs);
  return j;
}

inline void validate_scenario(const Workspace& ws, const Scenario& sc) {
  if (sc.robots.size() != sc.tasks.size()) {
    throw CountMismatch(std::to_string(sc.robots.size()) + " robots vs " +
                        std::to_string(sc.tasks.size()) + " tasks");
  }
  if (!(sc.radius > 0.0)) throw PlacementError("radius must be positive");
  auto check = [&](const std::vector<Vec2>& pts, const char* kind) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double c = ws.clearance(pts[i]);
      if (c < sc.radius) {
        std::ostringstream msg;
        msg << kind << ' ' << i << " has clearance " << c << " < radius " << sc.radius;
        throw PlacementError(msg.str());
      }
      for (std::size_t k = 0; k < i; ++k) {
        if (pts[k] == pts[i]) {
          throw PlacementError(std::string(kind) + "s " + std::to_string(k) + " and " +
                               std::to_string(i) + " coincide");
        }
      }
    }
  };
  check(sc.robots, "robot");
  check(sc.tasks, "task");
}

inline Scenario parse_scenario(const nlohmann::json& j, const Workspace& ws) {
  if (!j.is_object()) throw ParseError("scenario must be a JSON object");
  Scenario sc;
  try {
    sc.radius = detail::finite_number(j.at("radius"), "radius");
    sc.robots = detail::parse_points(j.at("robots"), "robots");
    sc.tasks = detail::parse_points(j.at("tasks"), "tasks");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  validate_scenario(ws, sc);
  return sc;
}

inline Scenario load_scenario(const std::string& path, const Workspace& ws) {
  return parse_scenario(detail::read_json_file(path), ws);
}

inline nlohmann::ordered_json scenario_to_json(const Scenario& sc) {
  nlohmann::ordered_json j;
  j["radius"] = sc.radius;
  auto pts = [](const std::vector<Vec2>& v) {
    auto a = nlohmann::ordered_json::array();
    for (const Vec2 p : v) a.push_back({p.x, p.y});
    return a;
  };
  j["robots"] = pts(sc.robots);
  j["tasks"] = pts(sc.tasks);
  return j;
}

/// Extra acceptance test for sampled positions (e.g. "sees a roadmap node").
using PlacementFilter = std::function<bool(Vec2)>;

inline constexpr int kPlacementRetryBudget = 10'000;

/// Samples n robots and n tasks by rejection. Robots are kept at least 2r
/// apart from each other, and likewise tasks, so every body fits. In
/// separated mode robot centers satisfy x < width/2 and task centers
/// x >= width/2.
inline Scenario generate_scenario(const Workspace& ws, std::size_t n, double radius,
                                  PlacementMode mode, std::uint64_t seed,
                                  const PlacementFilter& filter = {}) {
  if (n == 0) throw CapacityError("n must be at least 1");
  if (!(radius > 0.0)) throw PlacementError("radius must be positive");
  std::mt19937_64 rng(seed);
  Scenario sc;
  sc.radius = radius;

  auto place = [&](std::vector<Vec2>& out, double x_lo, double x_hi, const char* kind) {
    x_lo = std::max(x_lo, radius);
    x_hi = std::min(x_hi, ws.width - radius);
    const double y_lo = radius;
    const double y_hi = ws.height - radius;
    if (!(x_lo < x_hi) || !(y_lo < y_hi)) {
      throw CapacityError(std::string("no room for ") + kind + "s");
    }
    std::uniform_real_distribution<double> ux(x_lo, x_hi);
    std::uniform_real_distribution<double> uy(y_lo, y_hi);
    for (std::size_t i = 0; i < n; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < kPlacementRetryBudget && !placed; ++attempt) {
        const Vec2 p{ux(rng), uy(rng)};
        if (p.x >= x_hi) continue;  // keep the half-open split exact
        if (ws.clearance(p) < radius) continue;
        bool crowded = false;
        for (const Vec2 q : out) {
          if (distance(p, q) < 2.0 * radius) {
            crowded = true;
            break;
          }
        }
        if (crowded) continue;
        if (filter && !filter(p)) continue;
        out.push_back(p);
        placed = true;
      }
      if (!placed) {
        throw CapacityError(std::string("could not place ") + kind + " " + std::to_string(i) +
                            " within the retry budget");
      }
    }
  };

  const double half = ws.width / 2.0;
  if (mode == PlacementMode::kSeparated) {
    place(sc.robots, 0.0, std::nextafter(half, 0.0), "robot");
    place(sc.tasks, half, ws.width, "task");
  } else {
    place(sc.robots, 0.0, ws.width, "robot");
    place(sc.tasks, 0.0, ws.width, "task");
  }
  return sc;
}

}  // namespace mrtarm
