#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cga/entities.hpp"
#include "cga/euclid.hpp"
#include "cga/multivector.hpp"

namespace cga {

enum class NodeKind { free_point, derived_point, line, circle, sphere };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view name);

enum class Panel { front, side };

std::string_view to_string(Panel panel);
std::optional<Panel> parse_panel(std::string_view name);

struct Pixel {
  double h = 0.0;
  double v = 0.0;
};

// World-to-pixel affine map of one panel. Front shows (x, y), side shows
// (z, y); both share the vertical axis so a point sits at the same height.
struct PanelTransform {
  double scale = 40.0;
  double origin_h = 200.0;
  double origin_v = 200.0;
  double width = 400.0;
  double height = 400.0;

  Pixel to_pixel(double world_h, double world_v) const {
    return {origin_h + scale * world_h, origin_v - scale * world_v};
  }
};

// Horizontal and vertical world coordinates of x in a panel.
Pixel panel_coords(Panel panel, const Vec3& x);

struct SceneOptions {
  double tolerance = kDefaultTolerance;
  int circle_segments = 64;
  int sphere_meridians = 12;
  int sphere_latitudes = 8;
  double line_pick_px = 3.0;
  double pole_pick_px = 5.0;
  double point_pick_px = 5.0;
};

struct SceneNode {
  int id = 0;
  NodeKind kind = NodeKind::free_point;
  // line: 2 points; circle: 3 points; sphere: 4 points or 1 point plus radius;
  // derived_point: sphere id, line id, branch (0 or 1).
  std::vector<int> parents;
  std::string color;
  bool valid = true;
  Vec3 coords;                  // points only
  std::optional<double> radius; // center-radius spheres only
  Multivector blade;            // grade-1 point or the entity blade

  bool is_point() const { return kind == NodeKind::free_point || kind == NodeKind::derived_point; }
};

struct IntersectOutcome {
  std::vector<int> created;
  std::vector<std::string> messages;
};

struct SphereNet {
  std::vector<std::vector<Vec3>> meridians;
  std::vector<std::vector<Vec3>> latitudes;
  Vec3 north;
  Vec3 south;
};

// Construction state with dependency tracking. Node ids grow monotonically
// and every parent has a smaller id than its child, so id order is a
// topological order of the dependency graph.
class Scene {
 public:
  explicit Scene(SceneOptions options = {});

  const SceneOptions& options() const { return options_; }
  void set_options(const SceneOptions& options) { options_ = options; }
  const PanelTransform& transform(Panel panel) const;

  int create_point(const Vec3& x);
  int create_line(int p1, int p2);
  int create_circle(int p1, int p2, int p3);
  int create_sphere(int p1, int p2, int p3, int p4);
  int create_sphere_cr(int center, double radius);

  // Re-embeds a free point and rebuilds every transitive dependent. Returns
  // the moved id followed by the rebuilt ids in ascending order.
  std::vector<int> move_point(int id, const Vec3& x);

  IntersectOutcome intersect(int sphere, int line);

  // -1 on a miss.
  int pick_line(Panel panel, Pixel pixel) const;
  int pick_sphere(Panel panel, Pixel pixel) const;
  int pick_point(Panel panel, Pixel pixel) const;

  std::vector<Vec3> tessellate_circle(int id) const;
  SphereNet tessellate_sphere(int id) const;
  // The part of a line visible in a panel, as two world points; empty when
  // the line misses the panel.
  std::vector<Vec3> clip_line(int id, Panel panel) const;

  std::string describe(int id) const;

  const SceneNode& node(int id) const;
  bool contains(int id) const { return nodes_.count(id) != 0; }
  const std::map<int, SceneNode>& nodes() const { return nodes_; }
  int next_id() const { return next_id_; }

  // Ids of nodes that depend on id, directly or transitively, ascending.
  std::vector<int> dependents(int id) const;

  // Replaces the scene content (used by the loader); rebuilds every node.
  void assign(std::map<int, SceneNode> nodes);

 private:
  int add(SceneNode node);
  void rebuild(SceneNode& node) const;
  const SceneNode& require(int id, const char* role) const;
  const SceneNode& require_point(int id) const;

  SceneOptions options_;
  std::map<int, SceneNode> nodes_;
  int next_id_ = 0;
  PanelTransform front_;
  PanelTransform side_;
};

}  // namespace cga
