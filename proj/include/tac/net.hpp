#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tac::net {

class NetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Connected TCP stream carrying newline-delimited text.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket();
  Socket(Socket&& other) noexcept;
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  /// Throws NetError when nobody is listening.
  static Socket connect(const std::string& host, int port);

  bool valid() const { return fd_ >= 0; }
  void write_line(std::string_view line);
  /// nullopt on timeout. Throws NetError when the peer hung up.
  std::optional<std::string> read_line(std::chrono::milliseconds timeout);
  /// Blocks until a full line arrives.
  std::string read_line();
  void close();

 private:
  int fd_ = -1;
  std::string buffer_;
};

class Listener {
 public:
  Listener() = default;
  ~Listener();
  Listener(Listener&& other) noexcept;
  Listener& operator=(Listener&& other) noexcept;
  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;

  /// Port 0 picks an ephemeral port.
  static Listener bind(int port, const std::string& host = "127.0.0.1");

  int port() const { return port_; }
  /// Throws NetError on timeout.
  Socket accept(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
  int port_ = 0;
};

}  // namespace tac::net
