#pragma once

#include <iosfwd>
#include <string>

#include "cga/scene.hpp"

namespace cga {

// Line-oriented command interpreter over a Scene:
//   point X Y Z | line P1 P2 | circle P1 P2 P3 | sphere P1 P2 P3 P4
//   sphere_cr PC R | move P X Y Z | intersect S L | params ID
//   save FILE | load FILE | export FILE.svg
// Blank lines and text after '#' are ignored.
class ScriptRunner {
 public:
  ScriptRunner(Scene& scene, std::ostream& out) : scene_(scene), out_(out) {}

  // Executes one line; throws cga::Error (or ParseError for bad syntax).
  void execute(const std::string& line);

  // Runs every line; stops at the first error, reporting its line number.
  // Returns true when the whole script succeeded.
  bool run(std::istream& in, std::ostream& err);

 private:
  Scene& scene_;
  std::ostream& out_;
};

}  // namespace cga
