#include "cga/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>
#include <vector>

#include "cga/errors.hpp"
#include "cga/session.hpp"

namespace cga {
namespace {

bool send_line(int fd, const std::string& text) {
  std::string data = text + '\n';
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

void serve_connection(const ServerOptions& options, int fd) {
  Session session(options.scene);
  bool ok = true;
  if (options.scene_document) {
    try {
      session.load(*options.scene_document);
    } catch (const Error& e) {
      send_line(fd, nlohmann::json{{"type", "error"}, {"error", e.what()}}.dump());
      ok = false;
    }
  }
  ok = ok && send_line(fd, session.handshake().dump()) && send_line(fd, session.snapshot().dump());

  std::string buffer;
  char chunk[4096];
  while (ok) {
    const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    for (std::size_t pos; ok && (pos = buffer.find('\n')) != std::string::npos;) {
      std::string line = buffer.substr(0, pos);
      buffer.erase(0, pos + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      nlohmann::json reply;
      try {
        reply = session.handle(nlohmann::json::parse(line));
      } catch (const nlohmann::json::parse_error& e) {
        reply = {{"type", "response"}, {"in_reply_to", nullptr}, {"ok", false},
                 {"error", std::string("malformed JSON: ") + e.what()}, {"ids", nlohmann::json::array()}};
      }
      ok = send_line(fd, reply.dump());
    }
  }
  ::close(fd);
}

}  // namespace

Server::Server(ServerOptions options) : options_(std::move(options)) {}

Server::~Server() {
  stop();
}

int Server::bind() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error(std::string("socket: ") + std::strerror(errno));
  const int yes = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<std::uint16_t>(options_.port));
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listen_fd_, 16) < 0) {
    const std::string reason = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw Error("cannot listen on port " + std::to_string(options_.port) + ": " + reason);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  return ntohs(addr.sin_port);
}

void Server::serve() {
  if (listen_fd_ < 0) bind();
  // stop() may reset listen_fd_ from another thread; shutdown wakes accept.
  const int listener = listen_fd_;
  while (!stopping_) {
    const int fd = ::accept(listener, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;
    }
    std::thread([options = options_, fd] { serve_connection(options, fd); }).detach();
  }
}

void Server::stop() {
  if (stopping_.exchange(true)) return;
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
}

}  // namespace cga
