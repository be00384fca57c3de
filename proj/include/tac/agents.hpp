#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tac/allocator.hpp"
#include "tac/rng.hpp"
#include "tac/session.hpp"

namespace tac {

/// Hotel bid with quote momentum: (ask1 - ask2) + ask, never below ask + 1.
/// ask1 and ask2 are the two quotes preceding the current one, most recent first.
Money hotel_bid_price(std::optional<Money> ask1, std::optional<Money> ask2, Money ask);

/// Asking price for a redundant ticket: 200 * (1 - ln(1 + (e - 1) * elapsed / total)).
double sell_price(double elapsed, double total);

/// Shared bookkeeping: quotes, holdings, closed auctions and in-flight requests.
class TradingAgent : public Agent {
 public:
  void on_message(const Message& m, std::vector<Message>& out) override;

  const Holdings& holdings() const { return holdings_; }
  AgentId id() const { return id_; }
  /// Last game_end received, if any.
  const std::optional<msg::GameEnd>& game_end() const { return end_; }

 protected:
  virtual void on_start() {}
  virtual void on_tick(GameTime t, bool final, std::vector<Message>& out) = 0;
  virtual void on_accepted(const msg::Submit&, const msg::Accepted&, std::vector<Message>&) {}
  virtual void on_rejected(const msg::Submit&, const msg::Rejected&, std::vector<Message>&) {}
  virtual void on_transaction(const msg::TransactionNotice&) {}
  virtual void on_quote(const Quote&) {}

  std::int64_t submit(std::vector<Message>& out, GoodId good, Side side, std::vector<BidPoint> points);
  std::int64_t next_ref() { return next_ref_++; }

  bool is_open(GoodId g) const { return started_ && !closed_[g.index()]; }
  const Quote& quote(GoodId g) const { return quotes_[g.index()]; }
  /// Units of our standing hotel bids priced at or above the current ask.
  int winning_hotel_units(GoodId g) const;

  AgentId id_ = 0;
  GameConfig config_;
  std::vector<ClientPreference> prefs_;
  Holdings holdings_;
  bool started_ = false;
  std::array<Quote, kNumGoods> quotes_{};
  std::array<bool, kNumGoods> closed_{};
  std::array<std::vector<BidPoint>, kNumGoods> hotel_bids_{};
  std::map<std::int64_t, msg::Submit> pending_;
  std::optional<msg::GameEnd> end_;

 private:
  std::int64_t next_ref_ = 1;
};

struct AgentClock {
  GameTime allocation_interval = 60;
  GameTime flight_review_interval = 30;
  GameTime flight_commit_time = 480;
};

/// Replans every minute over owned goods and open-auction prices, bids for hotels
/// with quote momentum, buys flights only from the commit time on, and trades
/// entertainment tickets on the order books.
class TotaAgent final : public TradingAgent {
 public:
  explicit TotaAgent(AgentClock clock = {}) : clock_(clock) {}

  std::string name() const override { return "tota"; }

  const Allocation& plan() const { return plan_; }
  /// Owned tickets the current plan does not use.
  int redundant_tickets() const;
  /// Sell orders resting in the books or awaiting acknowledgement.
  int resting_sells() const;
  /// Prices used for the latest replan.
  const PriceVector& planning_prices() const { return prices_; }
  /// Holdings used for the latest replan: owned goods plus winning hotel units.
  Holdings planning_holdings() const;

 protected:
  void on_tick(GameTime t, bool final, std::vector<Message>& out) override;
  void on_accepted(const msg::Submit& s, const msg::Accepted& a, std::vector<Message>& out) override;
  void on_rejected(const msg::Submit& s, const msg::Rejected& r, std::vector<Message>& out) override;
  void on_transaction(const msg::TransactionNotice& n) override;
  void on_quote(const Quote& q) override;

 private:
  struct RestingOrder {
    GoodId good;
    Side side;
    int qty;
  };

  void replan();
  void on_minute(GameTime t, std::vector<Message>& out);
  void on_flight_review(GameTime t, std::vector<Message>& out);
  void bid_hotels(std::vector<Message>& out);
  void trade_entertainment(GameTime t, std::vector<Message>& out);
  Money hotel_price(GoodId g) const;
  int pending_qty(GoodId g, Side side) const;

  AgentClock clock_;
  Allocation plan_;
  PriceVector prices_;
  /// Hotel ask quotes in arrival order, at most three (current and two before it).
  std::array<std::vector<Money>, kNumGoods> ask_history_{};
  std::map<OrderId, RestingOrder> resting_;
  std::map<std::int64_t, bool> retried_;
};

/// Each minute, per good class with probability 1/2, bids ask + U{1..50} for one
/// unit on a random open auction of that class.
class RandomAgent final : public TradingAgent {
 public:
  std::string name() const override { return "random"; }

 protected:
  void on_start() override;
  void on_tick(GameTime t, bool final, std::vector<Message>& out) override;

 private:
  std::optional<Rng> rng_;
};

/// Buys every client's preferred flights at 10 s and bids ask + 10 for the
/// preferred hotel nights each minute. BETTER when the premium exceeds 100.
/// Never trades entertainment.
class GreedyAgent final : public TradingAgent {
 public:
  std::string name() const override { return "greedy"; }

 protected:
  void on_tick(GameTime t, bool final, std::vector<Message>& out) override;
};

/// "tota", "random" or "greedy". Throws std::invalid_argument otherwise.
std::unique_ptr<Agent> make_agent(const std::string& kind);
bool is_builtin_agent(const std::string& kind);

}  // namespace tac
