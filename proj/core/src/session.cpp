#include "cga/session.hpp"

#include "cga/errors.hpp"
#include "cga/scene_io.hpp"

namespace cga {
namespace {

using nlohmann::json;

json to_json(const Pixel& p) { return json::array({p.h, p.v}); }

json polyline(Panel panel, const std::vector<Vec3>& pts, bool closed) {
  json line = json::array();
  for (const Vec3& p : pts) line.push_back(to_json(panel_coords(panel, p)));
  if (closed && !pts.empty()) line.push_back(to_json(panel_coords(panel, pts.front())));
  return line;
}

json transform_json(const PanelTransform& tf) {
  return {{"scale", tf.scale}, {"origin", {tf.origin_h, tf.origin_v}}, {"size", {tf.width, tf.height}}};
}

const json& field(const json& args, const char* name) {
  if (!args.contains(name)) throw ParseError(std::string("missing argument '") + name + "'");
  return args[name];
}

int id_arg(const json& v) {
  if (!v.is_number_integer()) throw ParseError("node ids must be integers");
  return v.get<int>();
}

std::vector<int> ids_arg(const json& args, const char* name, std::size_t count) {
  const json& v = field(args, name);
  if (!v.is_array() || v.size() != count) {
    throw ParseError(std::string("'") + name + "' must list " + std::to_string(count) + " ids");
  }
  std::vector<int> out;
  for (const json& e : v) out.push_back(id_arg(e));
  return out;
}

double real_arg(const json& v) {
  if (!v.is_number()) throw ParseError("expected a number");
  return v.get<double>();
}

Vec3 vec_arg(const json& args, const char* name) {
  const json& v = field(args, name);
  if (!v.is_array() || v.size() != 3) throw ParseError(std::string("'") + name + "' must be [x, y, z]");
  return {real_arg(v[0]), real_arg(v[1]), real_arg(v[2])};
}

Panel panel_arg(const json& args) {
  const json& v = field(args, "panel");
  if (!v.is_string()) throw ParseError("panel must be \"front\" or \"side\"");
  const auto p = parse_panel(v.get<std::string>());
  if (!p) throw ParseError("panel must be \"front\" or \"side\"");
  return *p;
}

Pixel pixel_arg(const json& args) {
  const json& v = field(args, "pixel");
  if (!v.is_array() || v.size() != 2) throw ParseError("pixel must be [h, v]");
  return {real_arg(v[0]), real_arg(v[1])};
}

json renders(const Scene& scene, const std::vector<int>& ids) {
  json out = json::array();
  for (int id : ids) out.push_back(render_node(scene, id));
  return out;
}

}  // namespace

json render_node(const Scene& scene, int id) {
  const SceneNode& n = scene.node(id);
  json r = {{"id", id},
            {"kind", std::string(to_string(n.kind))},
            {"parents", n.parents},
            {"color", n.valid ? n.color : std::string("gray")},
            {"valid", n.valid}};
  for (Panel panel : {Panel::front, Panel::side}) {
    json lines = json::array();
    json disks = json::array();
    if (n.is_point()) {
      std::string color = "gray";
      if (n.valid) {
        const bool derived = n.kind == NodeKind::derived_point;
        color = panel == Panel::front ? (derived ? "darkblue" : "blue") : (derived ? "darkgreen" : "green");
      }
      disks.push_back({{"at", to_json(panel_coords(panel, n.coords))}, {"color", color}});
    } else if (n.valid) {
      switch (n.kind) {
        case NodeKind::line: {
          const auto seg = scene.clip_line(id, panel);
          if (!seg.empty()) lines.push_back(polyline(panel, seg, false));
          break;
        }
        case NodeKind::circle:
          lines.push_back(polyline(panel, scene.tessellate_circle(id), true));
          break;
        case NodeKind::sphere: {
          const SphereNet net = scene.tessellate_sphere(id);
          for (const auto& m : net.meridians) lines.push_back(polyline(panel, m, false));
          for (const auto& l : net.latitudes) lines.push_back(polyline(panel, l, true));
          disks.push_back({{"at", to_json(panel_coords(panel, net.north))}, {"color", "black"}, {"pole", "north"}});
          disks.push_back({{"at", to_json(panel_coords(panel, net.south))}, {"color", "black"}, {"pole", "south"}});
          break;
        }
        default:
          break;
      }
    }
    r[std::string(to_string(panel))] = {{"polylines", lines}, {"disks", disks}};
  }
  if (n.is_point()) r["coords"] = {n.coords.x, n.coords.y, n.coords.z};
  if (n.radius) r["radius"] = *n.radius;
  return r;
}

Session::Session(SceneOptions options) : scene_(options) {}

void Session::load(const std::string& document) { load_scene(scene_, document); }

json Session::handshake() const {
  return {{"type", "handshake"},
          {"protocol", "cga-sketch"},
          {"version", kProtocolVersion},
          {"panels",
           {{"front", transform_json(scene_.transform(Panel::front))},
            {"side", transform_json(scene_.transform(Panel::side))}}}};
}

json Session::snapshot() const {
  std::vector<int> ids;
  for (const auto& [id, n] : scene_.nodes()) ids.push_back(id);
  return {{"type", "snapshot"}, {"nodes", renders(scene_, ids)}};
}

json Session::apply(Scene& scene, const std::string& op, const json& args) {
  json out = {{"status", ""}, {"messages", json::array()}, {"changed_nodes", json::array()}};
  auto created = [&](int id) {
    out["changed_nodes"] = renders(scene, {id});
    out["result"] = {{"id", id}};
  };

  if (op == "create_point") {
    created(scene.create_point(vec_arg(args, "coords")));
  } else if (op == "create_line") {
    const auto p = ids_arg(args, "points", 2);
    created(scene.create_line(p[0], p[1]));
  } else if (op == "create_circle") {
    const auto p = ids_arg(args, "points", 3);
    created(scene.create_circle(p[0], p[1], p[2]));
  } else if (op == "create_sphere4") {
    const auto p = ids_arg(args, "points", 4);
    created(scene.create_sphere(p[0], p[1], p[2], p[3]));
  } else if (op == "create_sphere_cr") {
    created(scene.create_sphere_cr(id_arg(field(args, "center")), real_arg(field(args, "radius"))));
  } else if (op == "move_point") {
    const std::vector<int> changed = scene.move_point(id_arg(field(args, "id")), vec_arg(args, "coords"));
    out["changed_nodes"] = renders(scene, changed);
    out["result"] = {{"changed", changed}};
  } else if (op == "pick") {
    const json& target = field(args, "target");
    const Panel panel = panel_arg(args);
    const Pixel pixel = pixel_arg(args);
    int id = -1;
    if (target == "line") {
      id = scene.pick_line(panel, pixel);
      out["messages"].push_back("Line No. " + std::to_string(id) + " selected.");
      if (id >= 0) out["messages"].push_back("And now select a sphere!");
    } else if (target == "sphere") {
      id = scene.pick_sphere(panel, pixel);
      out["messages"].push_back("Sphere No. " + std::to_string(id) + " selected.");
    } else if (target == "point") {
      id = scene.pick_point(panel, pixel);
      if (id >= 0 && args.contains("selection")) {
        out["messages"].push_back("point " + std::to_string(id_arg(args["selection"])) + " chosen!");
      }
    } else {
      throw ParseError("pick target must be \"line\", \"sphere\" or \"point\"");
    }
    out["result"] = {{"id", id}};
  } else if (op == "intersect") {
    const IntersectOutcome r = scene.intersect(id_arg(field(args, "sphere")), id_arg(field(args, "line")));
    for (const auto& m : r.messages) out["messages"].push_back(m);
    out["changed_nodes"] = renders(scene, r.created);
    out["result"] = {{"created", r.created}};
  } else if (op == "snapshot") {
    std::vector<int> ids;
    for (const auto& [id, n] : scene.nodes()) ids.push_back(id);
    out["changed_nodes"] = renders(scene, ids);
  } else if (op == "save") {
    out["result"] = {{"document", json::parse(save_scene(scene))}};
  } else if (op == "load") {
    const json& doc = field(args, "document");
    load_scene(scene, doc.is_string() ? doc.get<std::string>() : doc.dump());
    std::vector<int> ids;
    for (const auto& [id, n] : scene.nodes()) ids.push_back(id);
    out["changed_nodes"] = renders(scene, ids);
  } else {
    throw ParseError("unknown op '" + op + "'");
  }
  if (!out["messages"].empty()) out["status"] = out["messages"][0];
  return out;
}

json Session::handle(const json& message) {
  json reply = {{"type", "response"}, {"in_reply_to", nullptr}};
  auto fail = [&](const std::string& reason, const std::vector<int>& ids = {}) {
    reply["ok"] = false;
    reply["error"] = reason;
    reply["ids"] = ids;
    return reply;
  };

  if (!message.is_object()) return fail("message must be a JSON object");
  if (!message.contains("seq") || !message["seq"].is_number_integer()) return fail("message needs an integer seq");
  const std::int64_t seq = message["seq"].get<std::int64_t>();
  reply["in_reply_to"] = seq;
  if (last_seq_ && seq <= *last_seq_) {
    return fail("out-of-order seq " + std::to_string(seq) + " (last was " + std::to_string(*last_seq_) + ")");
  }
  if (!message.contains("op") || !message["op"].is_string()) return fail("message needs a string op");
  const json args = message.value("args", json::object());
  if (!args.is_object()) return fail("args must be an object");
  last_seq_ = seq;

  // Work on a copy so a failing command leaves the session scene untouched.
  Scene working = scene_;
  try {
    json body = apply(working, message["op"].get<std::string>(), args);
    scene_ = std::move(working);
    reply["ok"] = true;
    reply.update(body);
    return reply;
  } catch (const ConstructionError& e) {
    return fail(e.what(), e.ids());
  } catch (const Error& e) {
    return fail(e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(std::string("malformed arguments: ") + e.what());
  }
}

}  // namespace cga
