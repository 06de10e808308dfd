#include "cga/scene.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <set>

#include "cga/errors.hpp"
#include "cga/incidence.hpp"
#include "cga/transforms.hpp"

namespace cga {
namespace {

constexpr std::array<std::pair<NodeKind, std::string_view>, 5> kKindNames = {{
    {NodeKind::free_point, "free_point"},
    {NodeKind::derived_point, "derived_point"},
    {NodeKind::line, "line"},
    {NodeKind::circle, "circle"},
    {NodeKind::sphere, "sphere"},
}};

// Slack on the pick thresholds so a click exactly on the boundary pixel hits.
constexpr double kPickSlack = 1e-9;

std::string default_color(NodeKind kind) {
  switch (kind) {
    case NodeKind::free_point: return "blue";
    case NodeKind::derived_point: return "darkblue";
    case NodeKind::line: return "skyblue";
    case NodeKind::circle: return "red";
    case NodeKind::sphere: return "yellow";
  }
  return "black";
}

// A node whose reconstruction failed keeps its identity (and a point its last
// position) but no geometry, so live and reloaded scenes agree.
void invalidate(SceneNode& n) {
  n.valid = false;
  n.blade = Multivector{};
}

double pixel_distance(Pixel a, Pixel b) { return std::hypot(a.h - b.h, a.v - b.v); }

double segment_distance(Pixel p, Pixel a, Pixel b) {
  const double dh = b.h - a.h;
  const double dv = b.v - a.v;
  const double len2 = dh * dh + dv * dv;
  if (len2 == 0.0) return pixel_distance(p, a);
  const double t = std::clamp(((p.h - a.h) * dh + (p.v - a.v) * dv) / len2, 0.0, 1.0);
  return pixel_distance(p, {a.h + t * dh, a.v + t * dv});
}

std::string format_vec(const Vec3& v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.10g, %.10g, %.10g)", v.x + 0.0, v.y + 0.0, v.z + 0.0);
  return buf;
}

std::vector<ConformalPoint> points_of(const std::vector<const SceneNode*>& nodes) {
  std::vector<ConformalPoint> out;
  out.reserve(nodes.size());
  for (const SceneNode* n : nodes) out.emplace_back(n->coords);
  return out;
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<NodeKind> parse_node_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Panel panel) { return panel == Panel::front ? "front" : "side"; }

std::optional<Panel> parse_panel(std::string_view name) {
  if (name == "front") return Panel::front;
  if (name == "side") return Panel::side;
  return std::nullopt;
}

Pixel panel_coords(Panel panel, const Vec3& x) {
  return panel == Panel::front ? Pixel{x.x, x.y} : Pixel{x.z, x.y};
}

Scene::Scene(SceneOptions options) : options_(options) {}

const PanelTransform& Scene::transform(Panel panel) const {
  return panel == Panel::front ? front_ : side_;
}

const SceneNode& Scene::node(int id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw DomainError("no node with id " + std::to_string(id));
  return it->second;
}

const SceneNode& Scene::require(int id, const char* role) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw ConstructionError(std::string(role) + " " + std::to_string(id) + " does not exist", {id});
  }
  return it->second;
}

const SceneNode& Scene::require_point(int id) const {
  const SceneNode& n = require(id, "point");
  if (!n.is_point()) throw ConstructionError("node " + std::to_string(id) + " is not a point", {id});
  if (!n.valid) throw ConstructionError("point " + std::to_string(id) + " is invalid", {id});
  return n;
}

int Scene::add(SceneNode node) {
  node.id = next_id_;
  node.color = default_color(node.kind);
  try {
    rebuild(node);
  } catch (const ConstructionError&) {
    throw;
  } catch (const Error& e) {
    throw ConstructionError(e.what(), node.parents);
  }
  nodes_.emplace(node.id, node);
  return next_id_++;
}

// Recomputes the payload of a node from its parents. Throws on degenerate
// geometry; callers decide whether that is an error or an invalid flag.
void Scene::rebuild(SceneNode& node) const {
  const double eps = options_.tolerance;
  std::vector<const SceneNode*> parents;
  const std::size_t point_parents =
      node.kind == NodeKind::derived_point ? 0 : node.parents.size();
  for (std::size_t i = 0; i < point_parents; ++i) {
    const SceneNode& p = require(node.parents[i], "point");
    if (!p.is_point()) throw ConstructionError("parent is not a point", {p.id});
    if (!p.valid) throw ConstructionError("parent point is invalid", {p.id});
    parents.push_back(&p);
  }
  const std::vector<ConformalPoint> pts = points_of(parents);

  switch (node.kind) {
    case NodeKind::free_point:
      node.blade = embed_point(node.coords).mv();
      break;
    case NodeKind::line:
      if (pts.size() != 2) throw ConstructionError("a line needs 2 points", node.parents);
      node.blade = line_through(pts[0], pts[1], eps).blade;
      break;
    case NodeKind::circle:
      if (pts.size() != 3) throw ConstructionError("a circle needs 3 points", node.parents);
      if (is_collinear(pts[0], pts[1], pts[2], eps)) {
        throw ConstructionError("circle points are collinear", node.parents);
      }
      node.blade = circle_through(pts[0], pts[1], pts[2], eps).blade;
      break;
    case NodeKind::sphere:
      if (node.radius) {
        if (pts.size() != 1) throw ConstructionError("a center-radius sphere needs 1 point", node.parents);
        node.blade = sphere_from_center_radius(pts[0].position(), *node.radius).blade;
      } else {
        if (pts.size() != 4) throw ConstructionError("a sphere needs 4 points", node.parents);
        if (is_coplanar(pts[0], pts[1], pts[2], pts[3], eps)) {
          throw ConstructionError("sphere points are coplanar", node.parents);
        }
        node.blade = sphere_through(pts[0], pts[1], pts[2], pts[3], eps).blade;
      }
      break;
    case NodeKind::derived_point: {
      if (node.parents.size() != 3 || node.parents[2] < 0 || node.parents[2] > 1) {
        throw ConstructionError("derived point needs sphere, line and branch 0|1", node.parents);
      }
      const SceneNode& s = require(node.parents[0], "sphere");
      const SceneNode& l = require(node.parents[1], "line");
      if (s.kind != NodeKind::sphere || l.kind != NodeKind::line) {
        throw ConstructionError("derived point parents must be a sphere and a line", node.parents);
      }
      if (!s.valid || !l.valid) throw ConstructionError("parent entity is invalid", node.parents);
      const IncidenceResult r = sphere_line_intersect({s.blade}, {l.blade}, eps);
      if (r.points.empty()) throw ConstructionError("intersection vanished", node.parents);
      const std::size_t branch = std::min<std::size_t>(node.parents[2], r.points.size() - 1);
      node.coords = r.points[branch].position();
      node.blade = r.points[branch].mv();
      break;
    }
  }
  node.valid = true;
}

int Scene::create_point(const Vec3& x) {
  if (!std::isfinite(x.x) || !std::isfinite(x.y) || !std::isfinite(x.z)) {
    throw ConstructionError("point coordinates must be finite", {});
  }
  SceneNode n;
  n.kind = NodeKind::free_point;
  n.coords = x;
  return add(n);
}

int Scene::create_line(int p1, int p2) {
  require_point(p1);
  require_point(p2);
  SceneNode n;
  n.kind = NodeKind::line;
  n.parents = {p1, p2};
  return add(n);
}

int Scene::create_circle(int p1, int p2, int p3) {
  for (int p : {p1, p2, p3}) require_point(p);
  SceneNode n;
  n.kind = NodeKind::circle;
  n.parents = {p1, p2, p3};
  return add(n);
}

int Scene::create_sphere(int p1, int p2, int p3, int p4) {
  for (int p : {p1, p2, p3, p4}) require_point(p);
  SceneNode n;
  n.kind = NodeKind::sphere;
  n.parents = {p1, p2, p3, p4};
  return add(n);
}

int Scene::create_sphere_cr(int center, double radius) {
  require_point(center);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConstructionError("sphere radius must be positive", {center});
  }
  SceneNode n;
  n.kind = NodeKind::sphere;
  n.parents = {center};
  n.radius = radius;
  return add(n);
}

std::vector<int> Scene::dependents(int id) const {
  std::set<int> affected = {id};
  std::vector<int> out;
  for (auto it = nodes_.upper_bound(id); it != nodes_.end(); ++it) {
    const SceneNode& n = it->second;
    const std::size_t count = n.kind == NodeKind::derived_point ? 2 : n.parents.size();
    for (std::size_t i = 0; i < count && i < n.parents.size(); ++i) {
      if (affected.count(n.parents[i])) {
        affected.insert(n.id);
        out.push_back(n.id);
        break;
      }
    }
  }
  return out;
}

std::vector<int> Scene::move_point(int id, const Vec3& x) {
  const SceneNode& target = node(id);
  if (target.kind != NodeKind::free_point) {
    throw DomainError("node " + std::to_string(id) + " is not a free point; only free points move");
  }
  if (!std::isfinite(x.x) || !std::isfinite(x.y) || !std::isfinite(x.z)) {
    throw DomainError("point coordinates must be finite");
  }
  std::vector<int> changed = {id};
  SceneNode& moved = nodes_.at(id);
  moved.coords = x;
  rebuild(moved);
  for (int dep : dependents(id)) {
    SceneNode& n = nodes_.at(dep);
    try {
      rebuild(n);
    } catch (const Error&) {
      invalidate(n);
    }
    changed.push_back(dep);
  }
  return changed;
}

IntersectOutcome Scene::intersect(int sphere, int line) {
  const SceneNode& s = require(sphere, "sphere");
  const SceneNode& l = require(line, "line");
  if (s.kind != NodeKind::sphere) throw ConstructionError("node is not a sphere", {sphere});
  if (l.kind != NodeKind::line) throw ConstructionError("node is not a line", {line});
  if (!s.valid || !l.valid) throw ConstructionError("cannot intersect an invalid node", {sphere, line});

  IncidenceResult r;
  try {
    r = sphere_line_intersect({s.blade}, {l.blade}, options_.tolerance);
  } catch (const ConstructionError&) {
    throw;
  } catch (const Error& e) {
    throw ConstructionError(e.what(), {sphere, line});
  }

  IntersectOutcome out;
  switch (r.kind) {
    case IncidenceKind::two_points: out.messages.emplace_back("Two points of intersection!"); break;
    case IncidenceKind::one_point: out.messages.emplace_back("One point of intersection!"); break;
    default: out.messages.emplace_back("No intersection!"); break;
  }
  for (std::size_t b = 0; b < r.points.size(); ++b) {
    SceneNode n;
    n.kind = NodeKind::derived_point;
    n.parents = {sphere, line, static_cast<int>(b)};
    out.created.push_back(add(n));
  }
  out.messages.emplace_back("Select a new line!");
  return out;
}

std::vector<Vec3> Scene::clip_line(int id, Panel panel) const {
  const SceneNode& n = node(id);
  if (n.kind != NodeKind::line) throw DomainError("node " + std::to_string(id) + " is not a line");
  const LineParams lp = line_params({n.blade}, options_.tolerance);
  const PanelTransform& tf = transform(panel);
  const double lo[2] = {-tf.origin_h / tf.scale, (tf.origin_v - tf.height) / tf.scale};
  const double hi[2] = {(tf.width - tf.origin_h) / tf.scale, tf.origin_v / tf.scale};
  const Pixel p0 = panel_coords(panel, lp.base);
  const Pixel d = panel_coords(panel, lp.unit_direction);
  const double p[2] = {p0.h, p0.v};
  const double dir[2] = {d.h, d.v};

  // Liang-Barsky against the visible world rectangle.
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 2; ++k) {
    if (std::fabs(dir[k]) < 1e-12) {
      if (p[k] < lo[k] || p[k] > hi[k]) return {};
      continue;
    }
    double a = (lo[k] - p[k]) / dir[k];
    double b = (hi[k] - p[k]) / dir[k];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  if (!std::isfinite(t0) || !std::isfinite(t1)) {
    // Seen end-on: the line projects to a single point.
    return {lp.base, lp.base};
  }
  if (t0 > t1) return {};
  return {lp.point_at(t0), lp.point_at(t1)};
}

int Scene::pick_line(Panel panel, Pixel pixel) const {
  const PanelTransform& tf = transform(panel);
  int best = -1;
  double best_d = options_.line_pick_px + kPickSlack;
  for (const auto& [id, n] : nodes_) {
    if (n.kind != NodeKind::line || !n.valid) continue;
    const std::vector<Vec3> seg = clip_line(id, panel);
    if (seg.empty()) continue;
    const Pixel a0 = panel_coords(panel, seg[0]);
    const Pixel b0 = panel_coords(panel, seg[1]);
    const double d = segment_distance(pixel, tf.to_pixel(a0.h, a0.v), tf.to_pixel(b0.h, b0.v));
    if (d <= best_d && (best < 0 || d < best_d)) {
      best = id;
      best_d = d;
    }
  }
  return best;
}

int Scene::pick_sphere(Panel panel, Pixel pixel) const {
  const PanelTransform& tf = transform(panel);
  int best = -1;
  double best_d = options_.pole_pick_px + kPickSlack;
  for (const auto& [id, n] : nodes_) {
    if (n.kind != NodeKind::sphere || !n.valid) continue;
    const SphereParams sp = sphere_params({n.blade}, options_.tolerance);
    for (double sign : {1.0, -1.0}) {
      const Pixel w = panel_coords(panel, sp.center + Vec3{0, sign * sp.radius, 0});
      const double d = pixel_distance(pixel, tf.to_pixel(w.h, w.v));
      if (d <= best_d && (best < 0 || d < best_d)) {
        best = id;
        best_d = d;
      }
    }
  }
  return best;
}

int Scene::pick_point(Panel panel, Pixel pixel) const {
  const PanelTransform& tf = transform(panel);
  int best = -1;
  double best_d = options_.point_pick_px + kPickSlack;
  for (const auto& [id, n] : nodes_) {
    if (!n.is_point() || !n.valid) continue;
    const Pixel w = panel_coords(panel, n.coords);
    const double d = pixel_distance(pixel, tf.to_pixel(w.h, w.v));
    if (d <= best_d && (best < 0 || d < best_d)) {
      best = id;
      best_d = d;
    }
  }
  return best;
}

std::vector<Vec3> Scene::tessellate_circle(int id) const {
  const SceneNode& n = node(id);
  if (n.kind != NodeKind::circle) throw DomainError("node " + std::to_string(id) + " is not a circle");
  const CircleParams cp = circle_params({n.blade}, options_.tolerance);
  const Vec3 normal = cp.plane.as_vec();
  // Seed direction: normal crossed with the axis it is least aligned with.
  Vec3 axis{1, 0, 0};
  if (std::fabs(normal.y) < std::fabs(normal.x) && std::fabs(normal.y) <= std::fabs(normal.z)) axis = {0, 1, 0};
  else if (std::fabs(normal.z) < std::fabs(normal.x)) axis = {0, 0, 1};
  const Vec3 w = normal.cross(axis);
  const Vec3 seed = cp.center + w * (cp.radius / w.norm());

  const int segments = std::max(3, options_.circle_segments);
  std::vector<Vec3> out;
  out.reserve(segments);
  for (int k = 0; k < segments; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / segments;
    out.push_back(apply_versor(make_rotor_about(cp.plane, angle, cp.center), seed));
  }
  return out;
}

SphereNet Scene::tessellate_sphere(int id) const {
  const SceneNode& n = node(id);
  if (n.kind != NodeKind::sphere) throw DomainError("node " + std::to_string(id) + " is not a sphere");
  const SphereParams sp = sphere_params({n.blade}, options_.tolerance);
  const Vec3& c = sp.center;
  const double r = sp.radius;
  const int ring = std::max(8, options_.circle_segments);
  const int half = ring / 2;
  auto at = [&](double theta, double phi) {
    return c + Vec3{std::sin(theta) * std::cos(phi), std::cos(theta), std::sin(theta) * std::sin(phi)} * r;
  };

  SphereNet net;
  const int meridians = std::max(1, options_.sphere_meridians);
  for (int j = 0; j < meridians; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / meridians;
    std::vector<Vec3> line;
    for (int k = 0; k <= half; ++k) line.push_back(at(std::numbers::pi * k / half, phi));
    net.meridians.push_back(std::move(line));
  }
  const int latitudes = std::max(0, options_.sphere_latitudes);
  for (int i = 1; i <= latitudes; ++i) {
    const double theta = std::numbers::pi * i / (latitudes + 1);
    std::vector<Vec3> line;
    for (int k = 0; k < ring; ++k) line.push_back(at(theta, 2.0 * std::numbers::pi * k / ring));
    net.latitudes.push_back(std::move(line));
  }
  net.north = c + Vec3{0, r, 0};
  net.south = c - Vec3{0, r, 0};
  return net;
}

std::string Scene::describe(int id) const {
  const SceneNode& n = node(id);
  std::string out = std::string(to_string(n.kind)) + " " + std::to_string(id);
  if (!n.valid) return out + ": invalid";
  char buf[64];
  switch (n.kind) {
    case NodeKind::free_point:
    case NodeKind::derived_point:
      out += ": " + format_vec(n.coords);
      break;
    case NodeKind::line: {
      const LineParams lp = line_params({n.blade}, options_.tolerance);
      out += ": base " + format_vec(lp.base) + " direction " + format_vec(lp.unit_direction) +
             " moment " + format_vec(lp.moment.as_vec());
      break;
    }
    case NodeKind::circle: {
      const CircleParams cp = circle_params({n.blade}, options_.tolerance);
      std::snprintf(buf, sizeof buf, "%.10g", cp.radius);
      out += ": center " + format_vec(cp.center) + " radius " + buf + " normal " + format_vec(cp.plane.as_vec());
      break;
    }
    case NodeKind::sphere: {
      const SphereParams sp = sphere_params({n.blade}, options_.tolerance);
      std::snprintf(buf, sizeof buf, "%.10g", sp.radius);
      out += ": center " + format_vec(sp.center) + " radius " + buf;
      break;
    }
  }
  return out;
}

void Scene::assign(std::map<int, SceneNode> nodes) {
  std::map<int, SceneNode> old = std::move(nodes_);
  nodes_ = std::move(nodes);
  try {
    for (auto& [id, n] : nodes_) {
      for (std::size_t i = 0; i < (n.kind == NodeKind::derived_point ? 2 : n.parents.size()); ++i) {
        if (i >= n.parents.size() || n.parents[i] >= id || !nodes_.count(n.parents[i])) {
          throw ConstructionError("node " + std::to_string(id) + " has a parent that is not an earlier node",
                                  {id});
        }
      }
      try {
        rebuild(n);
      } catch (const Error&) {
        invalidate(n);
      }
    }
  } catch (...) {
    nodes_ = std::move(old);
    throw;
  }
  next_id_ = nodes_.empty() ? 0 : nodes_.rbegin()->first + 1;
}

}  // namespace cga
