#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>

#include "cga/scene.hpp"

namespace cga {

inline constexpr int kProtocolVersion = 1;

// Display geometry of one node: per-panel polylines and disks in world
// coordinates (front = (x, y), side = (z, y)).
nlohmann::json render_node(const Scene& scene, int id);

// One client session over its own scene. Commands carry a strictly
// increasing "seq"; a failed command leaves the scene untouched.
class Session {
 public:
  explicit Session(SceneOptions options = {});

  nlohmann::json handshake() const;
  nlohmann::json snapshot() const;
  nlohmann::json handle(const nlohmann::json& message);

  const Scene& scene() const { return scene_; }
  void load(const std::string& document);

 private:
  nlohmann::json apply(Scene& scene, const std::string& op, const nlohmann::json& args);

  Scene scene_;
  std::optional<std::int64_t> last_seq_;
};

}  // namespace cga
