#include "tac/session.hpp"

#include <iostream>

namespace tac {

void InProcessSession::send(const std::vector<Message>& batch) {
  for (const Message& m : batch) agent_->on_message(m, pending_);
}

std::vector<Message> InProcessSession::receive(GameTime /*time*/) {
  std::vector<Message> out;
  out.swap(pending_);
  return out;
}

void InProcessSession::finish(const msg::GameEnd& end) {
  std::vector<Message> ignored;
  agent_->on_message(end, ignored);
}

SocketSession::SocketSession(net::Socket socket, std::chrono::milliseconds grace)
    : socket_(std::move(socket)), grace_(grace) {}

void SocketSession::handshake() {
  auto line = socket_.read_line(grace_);
  if (!line) throw net::NetError("agent did not send join");
  Message m = decode_message(*line);
  auto* join = std::get_if<msg::Join>(&m);
  if (join == nullptr) throw net::NetError("expected join, got " + std::string(message_type(m)));
  name_ = join->agent_name;
}

std::unique_ptr<SocketSession> SocketSession::dial(const std::string& host, int port,
                                                   std::chrono::milliseconds grace) {
  std::unique_ptr<SocketSession> s(new SocketSession(net::Socket::connect(host, port), grace));
  s->handshake();
  return s;
}

std::unique_ptr<SocketSession> SocketSession::accept(net::Listener& listener, std::chrono::milliseconds wait,
                                                     std::chrono::milliseconds grace) {
  std::unique_ptr<SocketSession> s(new SocketSession(listener.accept(wait), grace));
  s->handshake();
  return s;
}

void SocketSession::go_silent(const std::string& why) {
  if (!silent_) std::cerr << "AGENT_TIMEOUT: " << name_ << ": " << why << "\n";
  silent_ = true;
}

void SocketSession::send(const std::vector<Message>& batch) {
  if (silent_) return;
  try {
    for (const Message& m : batch) socket_.write_line(encode_message(m));
  } catch (const net::NetError& e) {
    go_silent(e.what());
  }
}

std::vector<Message> SocketSession::receive(GameTime time) {
  std::vector<Message> out;
  if (silent_) return out;
  const auto deadline = std::chrono::steady_clock::now() + grace_;
  try {
    for (;;) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      auto line = socket_.read_line(left);
      if (!line) {
        go_silent("no ready within grace period");
        return out;
      }
      if (line->empty()) continue;
      try {
        Message m = decode_message(*line);
        if (auto* ready = std::get_if<msg::Ready>(&m)) {
          if (ready->time == time) return out;
          continue;
        }
        out.push_back(std::move(m));
      } catch (const ProtocolError& e) {
        socket_.write_line(encode_message(msg::Rejected{0, "MALFORMED", std::nullopt}));
      }
    }
  } catch (const net::NetError& e) {
    go_silent(e.what());
  }
  return out;
}

void SocketSession::finish(const msg::GameEnd& end) {
  if (!silent_) {
    try {
      socket_.write_line(encode_message(end));
    } catch (const net::NetError&) {
    }
  }
  socket_.close();
}

msg::GameEnd serve_agent(Agent& agent, net::Socket& socket) {
  socket.write_line(encode_message(msg::Join{agent.name()}));
  std::vector<Message> out;
  for (;;) {
    Message m = decode_message(socket.read_line());
    if (auto* end = std::get_if<msg::GameEnd>(&m)) {
      agent.on_message(m, out);
      return *end;
    }
    agent.on_message(m, out);
    if (auto* tick = std::get_if<msg::Tick>(&m)) {
      for (const Message& cmd : out) socket.write_line(encode_message(cmd));
      out.clear();
      socket.write_line(encode_message(msg::Ready{tick->time}));
    }
  }
}

}  // namespace tac
