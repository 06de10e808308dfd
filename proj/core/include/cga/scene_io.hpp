#pragma once

#include <string>

#include "cga/scene.hpp"

namespace cga {

inline constexpr int kSceneFormatVersion = 1;

// {"version":1,"nodes":[{"id","kind","parents","coords"?,"radius"?,"color","valid"}]}.
// Reals are written with enough digits to read back bit-identically.
std::string save_scene(const Scene& scene);

// Throws ParseError (naming the node id where possible) on schema violations.
void load_scene(Scene& scene, const std::string& document);

void save_scene_file(const Scene& scene, const std::string& path);
void load_scene_file(Scene& scene, const std::string& path);

// Front and side panels side by side; byte-stable for a given scene.
std::string export_svg(const Scene& scene);

}  // namespace cga
