#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "tac/net.hpp"
#include "tac/protocol.hpp"

namespace tac {

/// Strategy driven by server messages. Commands produced while handling a
/// message are appended to `out`; the transport flushes them after each tick.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  virtual void on_message(const Message& m, std::vector<Message>& out) = 0;
};

/// The server's view of one seat.
class AgentSession {
 public:
  virtual ~AgentSession() = default;
  virtual std::string name() const = 0;
  /// Delivers one batch; the batch always ends with a tick.
  virtual void send(const std::vector<Message>& batch) = 0;
  /// Commands the agent issued in response to the tick at `time`.
  virtual std::vector<Message> receive(GameTime time) = 0;
  virtual void finish(const msg::GameEnd& end) = 0;
  /// True once the seat stopped answering and is treated as silent.
  virtual bool silent() const { return false; }
};

class InProcessSession final : public AgentSession {
 public:
  explicit InProcessSession(std::unique_ptr<Agent> agent) : agent_(std::move(agent)) {}

  std::string name() const override { return agent_->name(); }
  void send(const std::vector<Message>& batch) override;
  std::vector<Message> receive(GameTime time) override;
  void finish(const msg::GameEnd& end) override;

  Agent& agent() { return *agent_; }

 private:
  std::unique_ptr<Agent> agent_;
  std::vector<Message> pending_;
};

class SocketSession final : public AgentSession {
 public:
  /// Connects to an agent listening at host:port and waits for its join.
  static std::unique_ptr<SocketSession> dial(const std::string& host, int port,
                                             std::chrono::milliseconds grace);
  /// Waits for an agent to connect and join.
  static std::unique_ptr<SocketSession> accept(net::Listener& listener, std::chrono::milliseconds wait,
                                               std::chrono::milliseconds grace);

  std::string name() const override { return name_; }
  void send(const std::vector<Message>& batch) override;
  std::vector<Message> receive(GameTime time) override;
  void finish(const msg::GameEnd& end) override;
  bool silent() const override { return silent_; }

 private:
  SocketSession(net::Socket socket, std::chrono::milliseconds grace);
  void handshake();
  void go_silent(const std::string& why);

  net::Socket socket_;
  std::chrono::milliseconds grace_;
  std::string name_;
  bool silent_ = false;
};

/// Agent side of the wire protocol: joins, then answers every tick until game_end.
/// Returns the final score table.
msg::GameEnd serve_agent(Agent& agent, net::Socket& socket);

}  // namespace tac
