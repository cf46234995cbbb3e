#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrtarm/allocation.hpp"
#include "mrtarm/errors.hpp"
#include "mrtarm/partition.hpp"
#include "mrtarm/roadmap.hpp"
#include "mrtarm/world.hpp"

namespace mrtarm {

// ---- roadmap files ----------------------------------------------------------
// {"nodes": [[x,y],...], "edges": [[a,b],...], "jc_nodes": [...],
//  "sections": [[n0,n1,...],...]}. Partition fields are written for readers;
// loading recomputes the partition from the graph.

inline nlohmann::ordered_json roadmap_to_json(const Roadmap& rm, const Partition& part) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const Vec2& p : rm.nodes()) j["nodes"].push_back({p.x, p.y});
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : rm.edges()) j["edges"].push_back({e.a, e.b});
  j["jc_nodes"] = part.jc_nodes;
  j["sections"] = nlohmann::ordered_json::array();
  for (const auto& s : part.sections) j["sections"].push_back(s.nodes);
  return j;
}

inline Roadmap parse_roadmap(const nlohmann::json& j) {
  try {
    const auto nodes = detail::parse_points(j.at("nodes"), "node");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair of node indices");
      edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
    }
    return Roadmap(nodes, edges);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("bad roadmap file: ") + ex.what());
  }
}

inline Roadmap load_roadmap(const std::string& path) {
  return parse_roadmap(detail::read_json_file(path));
}

// ---- assignment files -------------------------------------------------------

inline nlohmann::ordered_json assignment_to_json(const AssignmentResult& res, const std::string& method) {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["robots"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < res.robot_task.size(); ++i) {
    nlohmann::ordered_json r;
    r["robot"] = i;
    r["task"] = res.robot_task[i];
    r["waypoints"] = res.waypoints[i];
    r["recommended"] = res.recommended[i];
    r["arrival_hops"] = res.arrival_hops[i];
    j["robots"].push_back(std::move(r));
  }
  return j;
}

inline AssignmentResult parse_assignment(const nlohmann::json& j) {
  AssignmentResult res;
  try {
    for (const auto& r : j.at("robots")) {
      res.robot_task.push_back(r.at("task").get<std::size_t>());
      res.waypoints.push_back(r.at("waypoints").get<std::vector<NodeId>>());
      res.recommended.push_back(r.at("recommended").get<std::vector<NodeId>>());
      res.arrival_hops.push_back(r.value("arrival_hops", std::size_t{0}));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("bad assignment file: ") + ex.what());
  }
  return res;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
  if (!out) throw ParseError("failed writing " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- benchmark CSV ----------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "instance,method,n,mode,map,comp_success,solve_ms,roadmap_ms,sim_success,makespan,soc";

struct CsvRow {
  std::string instance;
  std::string method;
  std::size_t n = 0;
  std::string mode;
  std::string map;
  bool comp_success = false;
  double solve_ms = 0.0;
  double roadmap_ms = 0.0;
  // Blank when the solve failed.
  bool sim_success = false;
  std::size_t makespan = 0;
  std::size_t soc = 0;
};

inline std::string format_ms(double ms) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(3) << ms;
  return ss.str();
}

inline std::string to_csv(const CsvRow& r) {
  std::ostringstream ss;
  ss << r.instance << ',' << r.method << ',' << r.n << ',' << r.mode << ',' << r.map << ','
     << (r.comp_success ? 1 : 0) << ',' << format_ms(r.solve_ms) << ',' << format_ms(r.roadmap_ms)
     << ',';
  if (r.comp_success) ss << (r.sim_success ? 1 : 0) << ',' << r.makespan << ',' << r.soc;
  else ss << ",,";
  return ss.str();
}

inline CsvRow parse_csv_row(const std::string& line) {
  std::vector<std::string> f;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) f.push_back(cell);
  if (!line.empty() && line.back() == ',') f.emplace_back();
  if (f.size() != 11) throw ParseError("CSV row needs 11 fields: " + line);
  try {
    CsvRow r;
    r.instance = f[0];
    r.method = f[1];
    r.n = std::stoul(f[2]);
    r.mode = f[3];
    r.map = f[4];
    r.comp_success = f[5] == "1";
    r.solve_ms = std::stod(f[6]);
    r.roadmap_ms = std::stod(f[7]);
    if (r.comp_success) {
      r.sim_success = f[8] == "1";
      r.makespan = std::stoul(f[9]);
      r.soc = std::stoul(f[10]);
    }
    return r;
  } catch (const std::logic_error&) {
    throw ParseError("bad CSV row: " + line);
  }
}

// ---- SVG --------------------------------------------------------------------

/// Obstacles in grey, roadmap edges in blue, junction nodes as red circles
/// with class "jc". Optional robots/tasks are drawn when a scenario is given.
inline std::string roadmap_svg(const Workspace& ws, const Roadmap& rm, const Partition& part,
                               const Scenario* sc = nullptr) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2);
  const double dot = std::max(1.0, std::min(ws.width, ws.height) / 200.0);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << ws.width << ' ' << ws.height
    << "\" width=\"" << ws.width << "\" height=\"" << ws.height << "\">\n";
  // Flip y so the picture matches map coordinates.
  s << "<g transform=\"translate(0," << ws.height << ") scale(1,-1)\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << ws.width << "\" height=\"" << ws.height
    << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (const auto& o : ws.obstacles) {
    s << "<polygon fill=\"#999\" points=\"";
    for (const Vec2& p : o.polygon) s << p.x << ',' << p.y << ' ';
    s << "\"/>\n";
  }
  for (const auto& e : rm.edges()) {
    const Vec2 a = rm.position(e.a), b = rm.position(e.b);
    s << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y
      << "\" stroke=\"#36c\" stroke-width=\"" << dot / 2 << "\"/>\n";
  }
  for (NodeId v = 0; v < rm.size(); ++v) {
    const Vec2 p = rm.position(v);
    if (part.is_jc_node(v)) {
      s << "<circle class=\"jc\" cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"" << dot * 1.5
        << "\" fill=\"#d22\"/>\n";
    } else {
      s << "<circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"" << dot / 2
        << "\" fill=\"#36c\"/>\n";
    }
  }
  if (sc) {
    for (const Vec2& p : sc->robots) {
      s << "<circle class=\"robot\" cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"" << sc->radius
        << "\" fill=\"none\" stroke=\"#080\"/>\n";
    }
    for (const Vec2& p : sc->tasks) {
      s << "<rect class=\"task\" x=\"" << p.x - dot << "\" y=\"" << p.y - dot << "\" width=\""
        << 2 * dot << "\" height=\"" << 2 * dot << "\" fill=\"#f90\"/>\n";
    }
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

}  // namespace mrtarm
