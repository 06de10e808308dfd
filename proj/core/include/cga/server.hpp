#pragma once

#include <atomic>
#include <optional>
#include <string>

#include "cga/scene.hpp"

namespace cga {

struct ServerOptions {
  int port = 0;  // 0 picks a free port
  std::optional<std::string> scene_document;  // loaded into every new session
  SceneOptions scene;
};

// Loopback TCP server speaking newline-delimited JSON. Each connection gets
// a handshake, a full snapshot, then one response line per request line.
// Connections are served on their own threads with independent scenes.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds 127.0.0.1; returns the bound port. Throws cga::Error on failure.
  int bind();
  // Accept loop; returns after stop().
  void serve();
  void stop();

 private:
  ServerOptions options_;
  int listen_fd_ = -1;
  std::atomic<bool> stopping_{false};
};

}  // namespace cga
