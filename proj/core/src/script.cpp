#include "cga/script.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "cga/errors.hpp"
#include "cga/scene_io.hpp"

namespace cga {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  const std::string code = line.substr(0, line.find('#'));
  std::istringstream ss(code);
  std::vector<std::string> tokens;
  for (std::string t; ss >> t;) tokens.push_back(t);
  return tokens;
}

double to_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw ParseError("expected a number, got '" + s + "'");
  return v;
}

int to_id(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a node id, got '" + s + "'");
  }
  if (used != s.size() || v < 0) throw ParseError("expected a node id, got '" + s + "'");
  return v;
}

void expect_args(const std::vector<std::string>& t, std::size_t n, const char* usage) {
  if (t.size() != n + 1) throw ParseError(std::string("usage: ") + usage);
}

Vec3 vec_at(const std::vector<std::string>& t, std::size_t i) {
  return {to_real(t[i]), to_real(t[i + 1]), to_real(t[i + 2])};
}

}  // namespace

void ScriptRunner::execute(const std::string& line) {
  const std::vector<std::string> t = tokenize(line);
  if (t.empty()) return;
  const std::string& cmd = t[0];

  auto announce = [&](std::size_t count) {
    for (std::size_t k = 1; k <= count; ++k) out_ << "point " << k << " chosen!\n";
  };
  auto created = [&](int id) { out_ << "created " << to_string(scene_.node(id).kind) << ' ' << id << '\n'; };

  if (cmd == "point") {
    expect_args(t, 3, "point X Y Z");
    created(scene_.create_point(vec_at(t, 1)));
  } else if (cmd == "line") {
    expect_args(t, 2, "line P1 P2");
    const int id = scene_.create_line(to_id(t[1]), to_id(t[2]));
    announce(2);
    created(id);
  } else if (cmd == "circle") {
    expect_args(t, 3, "circle P1 P2 P3");
    const int id = scene_.create_circle(to_id(t[1]), to_id(t[2]), to_id(t[3]));
    announce(3);
    created(id);
  } else if (cmd == "sphere") {
    expect_args(t, 4, "sphere P1 P2 P3 P4");
    const int id = scene_.create_sphere(to_id(t[1]), to_id(t[2]), to_id(t[3]), to_id(t[4]));
    announce(4);
    created(id);
  } else if (cmd == "sphere_cr") {
    expect_args(t, 2, "sphere_cr PC R");
    created(scene_.create_sphere_cr(to_id(t[1]), to_real(t[2])));
  } else if (cmd == "move") {
    expect_args(t, 4, "move P X Y Z");
    const std::vector<int> changed = scene_.move_point(to_id(t[1]), vec_at(t, 2));
    out_ << "moved " << changed.front() << "; rebuilt";
    for (std::size_t i = 1; i < changed.size(); ++i) {
      out_ << ' ' << changed[i] << (scene_.node(changed[i]).valid ? "" : "(invalid)");
    }
    out_ << '\n';
  } else if (cmd == "intersect") {
    expect_args(t, 2, "intersect S L");
    const IntersectOutcome r = scene_.intersect(to_id(t[1]), to_id(t[2]));
    out_ << r.messages.front() << '\n';
    for (int id : r.created) created(id);
    for (std::size_t i = 1; i < r.messages.size(); ++i) out_ << r.messages[i] << '\n';
  } else if (cmd == "params") {
    expect_args(t, 1, "params ID");
    out_ << scene_.describe(to_id(t[1])) << '\n';
  } else if (cmd == "save") {
    expect_args(t, 1, "save FILE");
    save_scene_file(scene_, t[1]);
    out_ << "saved " << t[1] << '\n';
  } else if (cmd == "load") {
    expect_args(t, 1, "load FILE");
    load_scene_file(scene_, t[1]);
    out_ << "loaded " << t[1] << " (" << scene_.nodes().size() << " nodes)\n";
  } else if (cmd == "export") {
    expect_args(t, 1, "export FILE.svg");
    std::ofstream f(t[1], std::ios::binary);
    if (!f) throw Error("cannot write " + t[1]);
    f << export_svg(scene_);
    out_ << "exported " << t[1] << '\n';
  } else {
    throw ParseError("unknown command '" + cmd + "'");
  }
}

bool ScriptRunner::run(std::istream& in, std::ostream& err) {
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    try {
      execute(line);
    } catch (const Error& e) {
      err << "line " << number << ": " << e.what() << '\n';
      return false;
    }
  }
  return true;
}

}  // namespace cga
