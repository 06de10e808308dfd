#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cga/errors.hpp"
#include "cga/scene.hpp"
#include "cga/scene_io.hpp"
#include "cga/script.hpp"
#include "cga/server.hpp"

namespace {

cga::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int run_script(const std::string& path, const cga::SceneOptions& options) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << '\n';
    return 2;
  }
  cga::Scene scene(options);
  cga::ScriptRunner runner(scene, std::cout);
  return runner.run(in, std::cerr) ? 0 : 1;
}

int repl(const cga::SceneOptions& options) {
  cga::Scene scene(options);
  cga::ScriptRunner runner(scene, std::cout);
  std::string line;
  std::cout << "> " << std::flush;
  while (std::getline(std::cin, line)) {
    if (line == "quit" || line == "exit") break;
    try {
      runner.execute(line);
    } catch (const cga::Error& e) {
      std::cout << "error: " << e.what() << '\n';
    }
    std::cout << "> " << std::flush;
  }
  return 0;
}

int serve(int port, const std::string& scene_file, const cga::SceneOptions& options) {
  cga::ServerOptions so;
  so.port = port;
  so.scene = options;
  if (!scene_file.empty()) {
    std::ifstream in(scene_file, std::ios::binary);
    if (!in) {
      std::cerr << "cannot open " << scene_file << '\n';
      return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    so.scene_document = ss.str();
    cga::Scene probe(options);
    try {
      cga::load_scene(probe, *so.scene_document);
    } catch (const cga::Error& e) {
      std::cerr << scene_file << ": " << e.what() << '\n';
      return 2;
    }
  }
  cga::Server server(so);
  const int bound = server.bind();
  std::cout << "listening on 127.0.0.1:" << bound << std::endl;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.serve();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cga-sketch: conformal geometric algebra sketching"};
  app.require_subcommand(1);
  cga::SceneOptions options;
  app.add_option("--tolerance", options.tolerance, "Degeneracy tolerance")->check(CLI::PositiveNumber);
  app.add_option("--segments", options.circle_segments, "Segments per tessellated circle")
      ->check(CLI::Range(3, 100000));

  std::string script;
  auto* run = app.add_subcommand("run", "Execute a script file");
  run->add_option("script", script, "Script path")->required();

  auto* repl_cmd = app.add_subcommand("repl", "Interactive command prompt");

  int port = 7878;
  std::string scene_file;
  auto* serve_cmd = app.add_subcommand("serve", "Run the sketch service on a loopback port");
  serve_cmd->add_option("--port", port, "TCP port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--scene", scene_file, "Scene document loaded into every session");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_script(script, options);
    if (*repl_cmd) return repl(options);
    if (*serve_cmd) return serve(port, scene_file, options);
  } catch (const cga::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
