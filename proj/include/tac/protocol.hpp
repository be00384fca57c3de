#pragma once

// Newline-delimited JSON messages exchanged between the game server and agents.
// Every message is one JSON object with a "type" field; unknown fields are ignored.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tac/allocator.hpp"
#include "tac/auction.hpp"
#include "tac/game.hpp"

namespace tac {

namespace msg {

struct Join {
  std::string agent_name;
  friend bool operator==(const Join&, const Join&) = default;
};

struct Joined {
  AgentId agent_id = 0;
  friend bool operator==(const Joined&, const Joined&) = default;
};

struct GameStart {
  GameConfig config;
  AgentId agent_id = 0;
  std::vector<ClientPreference> preferences;
  Holdings endowment;
  friend bool operator==(const GameStart&, const GameStart&) = default;
};

struct QuoteUpdate {
  Quote quote;
  friend bool operator==(const QuoteUpdate&, const QuoteUpdate&) = default;
};

/// `ref` is chosen by the agent and echoed in the matching accepted/rejected.
/// Flights ignore the price (posted-price fill); CDA orders carry exactly one point.
struct Submit {
  std::int64_t ref = 0;
  GoodId auction;
  Side side = Side::Buy;
  std::vector<BidPoint> points;
  friend bool operator==(const Submit&, const Submit&) = default;
};

struct Accepted {
  std::int64_t ref = 0;
  std::optional<OrderId> order_id;
  friend bool operator==(const Accepted&, const Accepted&) = default;
};

struct Rejected {
  std::int64_t ref = 0;
  std::string reason;
  /// Current ask, sent with BID_TOO_LOW.
  std::optional<Money> ask;
  friend bool operator==(const Rejected&, const Rejected&) = default;
};

struct Replace {
  std::int64_t ref = 0;
  OrderId order_id = 0;
  Money price = 0;
  friend bool operator==(const Replace&, const Replace&) = default;
};

struct Cancel {
  std::int64_t ref = 0;
  OrderId order_id = 0;
  friend bool operator==(const Cancel&, const Cancel&) = default;
};

/// One leg of a trade, as seen by the receiving agent.
struct TransactionNotice {
  GoodId auction;
  Side side = Side::Buy;
  int qty = 1;
  Money price = 0;
  GameTime time = 0;
  std::optional<OrderId> order_id;
  friend bool operator==(const TransactionNotice&, const TransactionNotice&) = default;
};

struct AuctionClosed {
  GoodId auction;
  GameTime time = 0;
  friend bool operator==(const AuctionClosed&, const AuctionClosed&) = default;
};

/// Ends each server batch. The agent answers with its commands followed by `ready`.
/// On the final tick the agent should send its `allocation`.
struct Tick {
  GameTime time = 0;
  bool final = false;
  friend bool operator==(const Tick&, const Tick&) = default;
};

struct Ready {
  GameTime time = 0;
  friend bool operator==(const Ready&, const Ready&) = default;
};

struct AllocationReport {
  Allocation allocation;
  friend bool operator==(const AllocationReport&, const AllocationReport&) = default;
};

struct GameEnd {
  std::vector<AgentScore> scores;
  friend bool operator==(const GameEnd&, const GameEnd&) = default;
};

}  // namespace msg

using Message = std::variant<msg::Join, msg::Joined, msg::GameStart, msg::QuoteUpdate, msg::Submit,
                             msg::Accepted, msg::Rejected, msg::Replace, msg::Cancel,
                             msg::TransactionNotice, msg::AuctionClosed, msg::Tick, msg::Ready,
                             msg::AllocationReport, msg::GameEnd>;

class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& detail) : std::runtime_error("MALFORMED: " + detail) {}
};

/// One line, without the trailing newline.
std::string encode_message(const Message& m);
/// Throws ProtocolError on anything that is not a well-formed message.
Message decode_message(std::string_view line);

std::string_view message_type(const Message& m);

}  // namespace tac
