#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tac/market.hpp"
#include "tac/rng.hpp"

namespace tac {

using AgentId = int;
/// Counterparty for every flight and hotel sale.
inline constexpr AgentId kMarket = -1;

/// Logical game clock, in game-seconds.
using GameTime = int;

/// CDA order ids are unique across all books: the low five bits carry the auction index.
using OrderId = std::uint64_t;
inline GoodId auction_of_order(OrderId id) { return GoodId::from_index(static_cast<int>(id & 31)); }

enum class Side : std::uint8_t { Buy, Sell };
std::string_view to_string(Side side);

enum class AuctionErrorCode : std::uint8_t {
  Closed,
  AlreadyClosed,
  BidTooLow,
  InvalidQuantity,
  InsufficientTickets,
  UnknownOrder,
  Malformed,
};

std::string_view to_string(AuctionErrorCode code);

class AuctionError : public std::runtime_error {
 public:
  explicit AuctionError(AuctionErrorCode code)
      : std::runtime_error(std::string(to_string(code))), code_(code) {}
  AuctionErrorCode code() const { return code_; }

 private:
  AuctionErrorCode code_;
};

struct Quote {
  GoodId auction;
  /// Flights: posted price. Hotels: 16th-highest unit bid (0 under capacity). CDA: best sell, if any.
  std::optional<Money> ask;
  /// CDA best buy.
  std::optional<Money> bid;
  GameTime time = 0;
  bool closed = false;

  friend bool operator==(const Quote&, const Quote&) = default;
};

struct Transaction {
  GoodId auction;
  AgentId buyer = kMarket;
  AgentId seller = kMarket;
  int qty = 1;
  Money price = 0;
  GameTime time = 0;
  std::optional<OrderId> buy_order;
  std::optional<OrderId> sell_order;

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

struct FlightParams {
  Money min_increment = 3;
  Money max_increment = 10;

  friend bool operator==(const FlightParams&, const FlightParams&) = default;
};

/// Posted-price market whose price starts at 0 and rises on every tick.
class FlightAuction {
 public:
  explicit FlightAuction(GoodId good, FlightParams params = {});

  GoodId good() const { return good_; }
  Money price() const { return price_; }
  bool closed() const { return closed_; }

  /// Raises the price by a uniform integer increment. Throws Closed.
  Money tick(Rng& rng);
  /// Immediate fill at the posted price. Throws InvalidQuantity or Closed.
  Transaction buy(AgentId agent, int qty, GameTime time);
  /// Throws AlreadyClosed.
  void close();
  Quote quote(GameTime time) const;

 private:
  GoodId good_;
  FlightParams params_;
  Money price_ = 0;
  bool closed_ = false;
};

struct BidPoint {
  int qty = 1;
  Money price = 0;

  friend bool operator==(const BidPoint&, const BidPoint&) = default;
};

struct UnitBid {
  AgentId agent;
  Money price;
  GameTime time;
  std::uint64_t seq;
};

/// Ascending multi-unit auction with uniform clearing at the capacity-th highest
/// unit bid. Bids are never withdrawn and each new unit must beat the current ask.
class HotelAuction {
 public:
  static constexpr int kDefaultCapacity = 16;

  explicit HotelAuction(GoodId good, int capacity = kDefaultCapacity);

  GoodId good() const { return good_; }
  int capacity() const { return capacity_; }
  bool closed() const { return closed_; }

  /// All-or-nothing: every unit price must be at least ask + 1.
  /// Throws BidTooLow, InvalidQuantity or Closed.
  void submit(AgentId agent, std::span<const BidPoint> points, GameTime time);

  /// capacity-th highest unit price, or 0 while fewer units have been bid.
  Money ask() const;
  Quote quote(GameTime time) const;

  /// Top `capacity` unit bids by (price desc, submission order) win one room each
  /// at the uniform clearing price. Throws AlreadyClosed.
  std::vector<Transaction> close(GameTime time);

  const std::vector<UnitBid>& unit_bids() const { return unit_bids_; }

 private:
  GoodId good_;
  int capacity_;
  bool closed_ = false;
  std::uint64_t next_seq_ = 0;
  std::vector<UnitBid> unit_bids_;
};

struct Order {
  OrderId id;
  AgentId agent;
  Side side;
  Money price;
  int qty;
  std::uint64_t seq;
  GameTime time;
};

struct OrderResult {
  OrderId order_id = 0;
  std::vector<Transaction> fills;
  /// Set when a remainder rests in the book.
  bool resting = false;
};

/// Continuous double auction for one entertainment ticket. Trades execute at the
/// resting order's limit; remainders rest with price-time priority.
class OrderBook {
 public:
  explicit OrderBook(GoodId good);

  GoodId good() const { return good_; }
  bool closed() const { return closed_; }

  /// `owned` is the agent's ticket count, used to reject naked sells.
  /// Throws InvalidQuantity, InsufficientTickets or Closed.
  OrderResult submit(AgentId agent, Side side, Money limit, int qty, int owned, GameTime time);
  /// Re-prices a resting order; it loses time priority and may trade immediately.
  /// Throws UnknownOrder or Closed.
  OrderResult replace(AgentId agent, OrderId id, Money limit, GameTime time);
  /// Throws UnknownOrder or Closed.
  void cancel(AgentId agent, OrderId id);
  /// Discards all resting orders. Throws AlreadyClosed.
  void close();

  std::optional<Money> best_bid() const;
  std::optional<Money> best_ask() const;
  Quote quote(GameTime time) const;

  int resting_qty(AgentId agent, Side side) const;
  const Order* find(OrderId id) const;
  /// Priority order: best first.
  const std::vector<Order>& buys() const { return buys_; }
  const std::vector<Order>& sells() const { return sells_; }

 private:
  OrderResult match_and_rest(Order order, GameTime time);
  void rest(Order order);

  GoodId good_;
  bool closed_ = false;
  std::uint64_t next_seq_ = 0;
  std::uint64_t next_id_ = 1;
  std::vector<Order> buys_;
  std::vector<Order> sells_;
};

}  // namespace tac
