#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mrtarm/errors.hpp"
#include "mrtarm/world.hpp"

// Procedural workspaces in three styles. Every generator keeps a gap of at
// least `min_gap` between neighbouring obstacles and the outer wall so the
// free space stays connected for robots of the given radius.
namespace mrtarm {

enum class MapStyle { kClutter, kWarehouse, kMall };

inline const char* to_string(MapStyle s) {
  switch (s) {
    case MapStyle::kClutter: return "clutter";
    case MapStyle::kWarehouse: return "warehouse-like";
    case MapStyle::kMall: return "mall-like";
  }
  return "?";
}

inline MapStyle map_style_from_string(const std::string& s) {
  if (s == "clutter") return MapStyle::kClutter;
  if (s == "warehouse-like" || s == "warehouse") return MapStyle::kWarehouse;
  if (s == "mall-like" || s == "mall") return MapStyle::kMall;
  throw ParseError("unknown map style '" + s + "'");
}

struct MapParams {
  double width = 640.0;
  double height = 640.0;
  double radius = 5.0;
  // clutter
  std::size_t obstacle_count = 30;
  double obstacle_size = 40.0;
  // warehouse
  double shelf_length = 100.0;
  double shelf_depth = 16.0;
  double aisle = 24.0;
  double cross_aisle = 40.0;
  // mall
  std::size_t rooms_x = 4;
  std::size_t rooms_y = 4;
  double wall = 40.0;   // wall thickness, i.e. corridor length
  double door = 30.0;   // corridor width
};

inline Obstacle box(double x0, double y0, double x1, double y1) {
  return Obstacle{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

/// Equal squares at uniform random positions.
inline Workspace clutter_map(const MapParams& p, std::uint64_t seed) {
  Workspace ws{p.width, p.height, {}};
  const double gap = 4.0 * p.radius;
  const double s = p.obstacle_size;
  if (p.width < s + 2 * gap || p.height < s + 2 * gap) throw CapacityError("map too small for obstacles");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(gap, p.width - gap - s), uy(gap, p.height - gap - s);
  std::vector<Vec2> corners;
  int attempts = 0;
  while (corners.size() < p.obstacle_count) {
    if (++attempts > kPlacementRetryBudget) throw CapacityError("cannot fit clutter obstacles");
    const Vec2 c{ux(rng), uy(rng)};
    const bool clear = std::all_of(corners.begin(), corners.end(), [&](Vec2 o) {
      return std::abs(o.x - c.x) >= s + gap || std::abs(o.y - c.y) >= s + gap;
    });
    if (clear) corners.push_back(c);
  }
  for (const Vec2& c : corners) ws.obstacles.push_back(box(c.x, c.y, c.x + s, c.y + s));
  return ws;
}

/// Rows of shelves in blocks separated by cross aisles. The seed shifts the
/// block grid slightly so instances differ.
inline Workspace warehouse_map(const MapParams& p, std::uint64_t seed) {
  Workspace ws{p.width, p.height, {}};
  const double margin = p.cross_aisle;
  const double pitch_x = p.shelf_length + p.cross_aisle;
  const double pitch_y = p.shelf_depth + p.aisle;
  const auto cols = static_cast<std::size_t>((p.width - 2 * margin + p.cross_aisle) / pitch_x);
  const auto rows = static_cast<std::size_t>((p.height - 2 * margin + p.aisle) / pitch_y);
  if (cols == 0 || rows == 0) throw CapacityError("map too small for shelves");
  std::mt19937_64 rng(seed);
  const double slack_x = p.width - 2 * margin - (cols * pitch_x - p.cross_aisle);
  const double slack_y = p.height - 2 * margin - (rows * pitch_y - p.aisle);
  const double x0 = margin + std::uniform_real_distribution<double>(0.0, slack_x)(rng);
  const double y0 = margin + std::uniform_real_distribution<double>(0.0, slack_y)(rng);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      const double x = x0 + c * pitch_x, y = y0 + r * pitch_y;
      ws.obstacles.push_back(box(x, y, x + p.shelf_length, y + p.shelf_depth));
    }
  }
  return ws;
}

/// Grid of rooms whose shared walls are thick blocks, pierced by one door per
/// wall so that doors become short corridors. Some rooms get a central kiosk.
inline Workspace mall_map(const MapParams& p, std::uint64_t seed) {
  Workspace ws{p.width, p.height, {}};
  const std::size_t nx = p.rooms_x, ny = p.rooms_y;
  if (nx < 1 || ny < 1) throw CapacityError("mall needs at least one room");
  const double cw = p.width / static_cast<double>(nx);
  const double ch = p.height / static_cast<double>(ny);
  const double t = p.wall / 2;
  const double seam = 1.0;  // keeps wall pieces disjoint
  if (cw < p.wall + p.door + 4 * seam || ch < p.wall + p.door + 4 * seam) {
    throw CapacityError("rooms too small for walls and doors");
  }
  std::mt19937_64 rng(seed);
  auto door_at = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi - p.door)(rng);
  };

  // Pillars at interior wall crossings.
  for (std::size_t i = 1; i < nx; ++i) {
    for (std::size_t j = 1; j < ny; ++j) {
      const double x = i * cw, y = j * ch;
      ws.obstacles.push_back(box(x - t, y - t, x + t, y + t));
    }
  }
  // Vertical walls between horizontally adjacent rooms.
  for (std::size_t i = 1; i < nx; ++i) {
    const double x = i * cw;
    for (std::size_t j = 0; j < ny; ++j) {
      const double lo = j == 0 ? seam : j * ch + t + seam;
      const double hi = j + 1 == ny ? p.height - seam : (j + 1) * ch - t - seam;
      const double d = door_at(lo + seam, hi - seam);
      ws.obstacles.push_back(box(x - t, lo, x + t, d));
      ws.obstacles.push_back(box(x - t, d + p.door, x + t, hi));
    }
  }
  // Horizontal walls between vertically adjacent rooms.
  for (std::size_t j = 1; j < ny; ++j) {
    const double y = j * ch;
    for (std::size_t i = 0; i < nx; ++i) {
      const double lo = i == 0 ? seam : i * cw + t + seam;
      const double hi = i + 1 == nx ? p.width - seam : (i + 1) * cw - t - seam;
      const double d = door_at(lo + seam, hi - seam);
      ws.obstacles.push_back(box(lo, y - t, d, y + t));
      ws.obstacles.push_back(box(d + p.door, y - t, hi, y + t));
    }
  }
  // Kiosks in about half the rooms.
  const double k = std::min(cw, ch) / 4;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      if (std::bernoulli_distribution(0.5)(rng)) {
        const double cx = (i + 0.5) * cw, cy = (j + 0.5) * ch;
        ws.obstacles.push_back(box(cx - k / 2, cy - k / 2, cx + k / 2, cy + k / 2));
      }
    }
  }
  return ws;
}

inline Workspace generate_map(MapStyle style, const MapParams& p, std::uint64_t seed) {
  switch (style) {
    case MapStyle::kClutter: return clutter_map(p, seed);
    case MapStyle::kWarehouse: return warehouse_map(p, seed);
    case MapStyle::kMall: return mall_map(p, seed);
  }
  throw ParseError("unknown map style");
}

}  // namespace mrtarm
