#include "cga/scene_io.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cga/errors.hpp"

namespace cga {
namespace {

using nlohmann::json;

std::size_t expected_parents(NodeKind kind, bool has_radius) {
  switch (kind) {
    case NodeKind::free_point: return 0;
    case NodeKind::derived_point: return 3;
    case NodeKind::line: return 2;
    case NodeKind::circle: return 3;
    case NodeKind::sphere: return has_radius ? 1 : 4;
  }
  return 0;
}

SceneNode parse_node(const json& j) {
  if (!j.is_object()) throw ParseError("node entry is not an object");
  if (!j.contains("id") || !j["id"].is_number_integer()) throw ParseError("node without integer id");
  SceneNode n;
  n.id = j["id"].get<int>();
  const std::string where = "node " + std::to_string(n.id) + ": ";
  if (n.id < 0) throw ParseError(where + "negative id");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError(where + "missing kind");
  const auto kind = parse_node_kind(j["kind"].get<std::string>());
  if (!kind) throw ParseError(where + "unknown kind '" + j["kind"].get<std::string>() + "'");
  n.kind = *kind;

  if (!j.contains("parents") || !j["parents"].is_array()) throw ParseError(where + "missing parents");
  for (const json& p : j["parents"]) {
    if (!p.is_number_integer()) throw ParseError(where + "parent ids must be integers");
    n.parents.push_back(p.get<int>());
  }
  if (j.contains("radius")) {
    if (!j["radius"].is_number()) throw ParseError(where + "radius must be a number");
    if (n.kind != NodeKind::sphere) throw ParseError(where + "only spheres carry a radius");
    n.radius = j["radius"].get<double>();
  }
  if (n.parents.size() != expected_parents(n.kind, n.radius.has_value())) {
    throw ParseError(where + "wrong number of parents for " + std::string(to_string(n.kind)));
  }
  if (j.contains("coords")) {
    const json& c = j["coords"];
    if (!c.is_array() || c.size() != 3 || !c[0].is_number() || !c[1].is_number() || !c[2].is_number()) {
      throw ParseError(where + "coords must be three numbers");
    }
    n.coords = {c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
  } else if (n.is_point()) {
    throw ParseError(where + "points need coords");
  }
  if (!j.contains("color") || !j["color"].is_string()) throw ParseError(where + "missing color");
  n.color = j["color"].get<std::string>();
  if (!j.contains("valid") || !j["valid"].is_boolean()) throw ParseError(where + "missing valid flag");
  n.valid = j["valid"].get<bool>();
  return n;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// SVG helpers. Fixed-precision output keeps the document byte-stable.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v == 0.0 ? 0.0 : v);
  return buf;
}

struct SvgPanel {
  Panel panel;
  const PanelTransform& tf;
  double offset;

  std::string xy(const Vec3& p) const {
    const Pixel w = panel_coords(panel, p);
    const Pixel px = tf.to_pixel(w.h, w.v);
    return num(px.h + offset) + "," + num(px.v);
  }
};

std::string polyline(const SvgPanel& sp, const std::vector<Vec3>& pts, const std::string& color, bool closed) {
  std::string out = closed ? "<polygon" : "<polyline";
  out += " fill=\"none\" stroke=\"" + color + "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += sp.xy(pts[i]);
  }
  return out + "\"/>\n";
}

std::string disk(const SvgPanel& sp, const Vec3& p, double r, const std::string& color) {
  const std::string at = sp.xy(p);
  const auto comma = at.find(',');
  return "<circle cx=\"" + at.substr(0, comma) + "\" cy=\"" + at.substr(comma + 1) + "\" r=\"" + num(r) +
         "\" fill=\"" + color + "\"/>\n";
}

std::string point_color(const SceneNode& n, Panel panel) {
  if (!n.valid) return "gray";
  if (n.kind == NodeKind::derived_point) return panel == Panel::front ? "darkblue" : "darkgreen";
  return panel == Panel::front ? "blue" : "green";
}

}  // namespace

std::string save_scene(const Scene& scene) {
  json nodes = json::array();
  for (const auto& [id, n] : scene.nodes()) {
    json j;
    j["id"] = id;
    j["kind"] = std::string(to_string(n.kind));
    j["parents"] = n.parents;
    if (n.is_point()) j["coords"] = {n.coords.x, n.coords.y, n.coords.z};
    if (n.radius) j["radius"] = *n.radius;
    j["color"] = n.color;
    j["valid"] = n.valid;
    nodes.push_back(std::move(j));
  }
  json doc;
  doc["version"] = kSceneFormatVersion;
  doc["nodes"] = std::move(nodes);
  return doc.dump();
}

void load_scene(Scene& scene, const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scene document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scene document must be an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer()) throw ParseError("missing version");
  if (doc["version"].get<int>() != kSceneFormatVersion) {
    throw ParseError("unsupported scene version " + doc["version"].dump());
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw ParseError("missing nodes array");

  std::map<int, SceneNode> nodes;
  for (const json& j : doc["nodes"]) {
    SceneNode n = parse_node(j);
    const int id = n.id;
    if (!nodes.emplace(id, std::move(n)).second) throw ParseError("node " + std::to_string(id) + ": duplicate id");
  }
  Scene fresh(scene.options());
  try {
    fresh.assign(std::move(nodes));
  } catch (const ConstructionError& e) {
    throw ParseError(e.what());
  }
  scene = std::move(fresh);
}

void save_scene_file(const Scene& scene, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << save_scene(scene) << '\n';
}

void load_scene_file(Scene& scene, const std::string& path) { load_scene(scene, read_file(path)); }

std::string export_svg(const Scene& scene) {
  const PanelTransform& ft = scene.transform(Panel::front);
  const PanelTransform& st = scene.transform(Panel::side);
  const double width = ft.width + st.width;
  const double height = std::max(ft.height, st.height);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
                    num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";

  for (const SvgPanel sp : {SvgPanel{Panel::front, ft, 0.0}, SvgPanel{Panel::side, st, ft.width}}) {
    out += "<g id=\"" + std::string(to_string(sp.panel)) + "\">\n";
    out += "<rect x=\"" + num(sp.offset) + "\" y=\"0.000\" width=\"" + num(sp.tf.width) + "\" height=\"" +
           num(sp.tf.height) + "\" fill=\"white\" stroke=\"black\"/>\n";
    for (const auto& [id, n] : scene.nodes()) {
      // An invalid entity has no geometry left to draw; invalid points keep
      // their last position and are grayed out below.
      if (n.is_point() || !n.valid) continue;
      const std::string& color = n.color;
      switch (n.kind) {
        case NodeKind::line: {
          const auto seg = scene.clip_line(id, sp.panel);
          if (!seg.empty()) out += polyline(sp, seg, color, false);
          break;
        }
        case NodeKind::circle:
          out += polyline(sp, scene.tessellate_circle(id), color, true);
          break;
        case NodeKind::sphere: {
          const SphereNet net = scene.tessellate_sphere(id);
          for (const auto& m : net.meridians) out += polyline(sp, m, color, false);
          for (const auto& l : net.latitudes) out += polyline(sp, l, color, true);
          out += disk(sp, net.north, 2.5, "black");
          out += disk(sp, net.south, 2.5, "black");
          break;
        }
        default:
          break;
      }
    }
    for (const auto& [id, n] : scene.nodes()) {
      if (n.is_point()) out += disk(sp, n.coords, 4.0, point_color(n, sp.panel));
    }
    out += "</g>\n";
  }
  return out + "</svg>\n";
}

}  // namespace cga
