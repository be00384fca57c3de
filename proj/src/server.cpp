#include "tac/server.hpp"

#include <map>
#include <stdexcept>
#include <thread>

namespace tac {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class GameServer {
 public:
  GameServer(const GameConfig& config, std::vector<std::unique_ptr<AgentSession>>& sessions)
      : config_(config), sessions_(sessions), rng_(config.seed), flight_rng_(rng_.substream("flights")) {
    validate(config_);
    if (static_cast<int>(sessions_.size()) != config_.agents) {
      throw std::invalid_argument("run_game: expected " + std::to_string(config_.agents) + " agent sessions, got " +
                                  std::to_string(sessions_.size()));
    }
    close_minutes_ = hotel_close_schedule(config_);
    scenario_ = generate_scenario(config_, rng_.substream("scenario"));
    holdings_ = scenario_.endowments;
    reported_.resize(sessions_.size());
    outbox_.resize(sessions_.size());
    for (int d = 1; d <= 4; ++d) flights_.emplace_back(GoodId::flight_in(d), config_.flight);
    for (int d = 2; d <= 5; ++d) flights_.emplace_back(GoodId::flight_out(d), config_.flight);
    for (int h = 0; h < kHotelAuctions; ++h) hotels_.emplace_back(hotel_auction_good(h), config_.hotel_capacity);
    for (int i = 16; i < kNumGoods; ++i) books_.emplace_back(GoodId::from_index(i));
  }

  GameRun run() {
    const int n = static_cast<int>(sessions_.size());
    GameConfig echo = config_;
    echo.hotel_close_minutes.reset();
    for (int a = 0; a < n; ++a) {
      outbox_[a].push_back(msg::Joined{a});
      outbox_[a].push_back(msg::GameStart{echo, a, scenario_.preferences[a], scenario_.endowments[a]});
    }

    int step = 0;
    for (GameTime t = 0;; t += config_.flight_tick, ++step) {
      const bool final = t >= config_.game_length;
      market_events(t);
      publish_quotes(t);

      for (int a = 0; a < n; ++a) {
        outbox_[a].push_back(msg::Tick{t, final});
        sessions_[a]->send(outbox_[a]);
        outbox_[a].clear();
      }
      std::vector<std::vector<Message>> commands(n);
      for (int a = 0; a < n; ++a) commands[a] = sessions_[a]->receive(t);
      for (int k = 0; k < n; ++k) {
        const int a = (step + k) % n;
        for (const Message& cmd : commands[a]) apply(a, cmd, t);
      }
      if (final) break;
      if (config_.time_scale > 0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(config_.flight_tick * config_.time_scale));
      }
    }

    GameRun run;
    run.result = score_game(scenario_, holdings_, reported_, log_);
    run.result.seed = config_.seed;
    run.result.closings = closings_;
    for (int a = 0; a < n; ++a) run.result.agents[a].name = sessions_[a]->name();
    msg::GameEnd end{run.result.agents};
    for (auto& s : sessions_) s->finish(end);
    run.scenario = scenario_;
    run.log = std::move(log_);
    run.rejections.assign(rejections_.begin(), rejections_.end());
    return run;
  }

 private:
  void broadcast(const Message& m) {
    for (auto& box : outbox_) box.push_back(m);
  }

  void record_close(GoodId good, GameTime t) {
    closings_.push_back(AuctionClose{good, t});
    broadcast(msg::AuctionClosed{good, t});
  }

  void market_events(GameTime t) {
    if (t > 0 && t < config_.game_length) {
      for (auto& f : flights_) f.tick(flight_rng_);
    }
    if (t > 0 && t % 60 == 0) {
      const int minute = t / 60;
      for (int h = 0; h < kHotelAuctions; ++h) {
        if (close_minutes_[h] != minute || hotels_[h].closed()) continue;
        for (const Transaction& tx : hotels_[h].close(t)) apply_transaction(tx);
        record_close(hotels_[h].good(), t);
        broadcast(msg::QuoteUpdate{hotels_[h].quote(t)});
      }
    }
    if (t >= config_.game_length) {
      for (auto& f : flights_) {
        if (f.closed()) continue;
        f.close();
        record_close(f.good(), t);
      }
      for (auto& h : hotels_) {
        if (h.closed()) continue;
        for (const Transaction& tx : h.close(t)) apply_transaction(tx);
        record_close(h.good(), t);
      }
      for (auto& b : books_) {
        if (b.closed()) continue;
        b.close();
        record_close(b.good(), t);
      }
    }
  }

  void publish_quotes(GameTime t) {
    for (const auto& f : flights_) broadcast(msg::QuoteUpdate{f.quote(t)});
    if (t % config_.hotel_quote_interval == 0) {
      for (const auto& h : hotels_) {
        if (!h.closed()) broadcast(msg::QuoteUpdate{h.quote(t)});
      }
    }
    for (const auto& b : books_) broadcast(msg::QuoteUpdate{b.quote(t)});
  }

  void apply_transaction(const Transaction& tx) {
    log_.push_back(tx);
    if (tx.buyer != kMarket) {
      holdings_[tx.buyer].add(tx.auction, tx.qty);
      outbox_[tx.buyer].push_back(msg::TransactionNotice{tx.auction, Side::Buy, tx.qty, tx.price, tx.time, tx.buy_order});
    }
    if (tx.seller != kMarket) {
      holdings_[tx.seller].remove(tx.auction, tx.qty);
      outbox_[tx.seller].push_back(
          msg::TransactionNotice{tx.auction, Side::Sell, tx.qty, tx.price, tx.time, tx.sell_order});
    }
  }

  FlightAuction& flight(GoodId g) { return flights_[g.index()]; }
  HotelAuction& hotel(GoodId g) { return hotels_[g.index() - 8]; }
  OrderBook& book(GoodId g) { return books_[g.index() - 16]; }

  void reject(int agent, std::int64_t ref, std::string_view reason, std::optional<Money> ask = std::nullopt) {
    ++rejections_[std::string(reason)];
    outbox_[agent].push_back(msg::Rejected{ref, std::string(reason), ask});
  }

  void apply(int a, const Message& cmd, GameTime t) {
    std::visit(Overloaded{
                   [&](const msg::Submit& s) { submit(a, s, t); },
                   [&](const msg::Replace& r) { replace(a, r, t); },
                   [&](const msg::Cancel& c) { cancel(a, c); },
                   [&](const msg::AllocationReport& r) { reported_[a] = r.allocation; },
                   [&](const auto&) { reject(a, 0, "MALFORMED"); },
               },
               cmd);
  }

  void submit(int a, const msg::Submit& s, GameTime t) {
    try {
      if (s.points.empty()) throw AuctionError(AuctionErrorCode::InvalidQuantity);
      const GoodId g = s.auction;
      if (g.is_flight()) {
        if (s.side != Side::Buy) throw AuctionError(AuctionErrorCode::Malformed);
        int qty = 0;
        for (const BidPoint& p : s.points) {
          if (p.qty < 1) throw AuctionError(AuctionErrorCode::InvalidQuantity);
          qty += p.qty;
        }
        Transaction tx = flight(g).buy(a, qty, t);
        outbox_[a].push_back(msg::Accepted{s.ref, std::nullopt});
        apply_transaction(tx);
      } else if (g.is_hotel()) {
        if (s.side != Side::Buy) throw AuctionError(AuctionErrorCode::Malformed);
        try {
          hotel(g).submit(a, s.points, t);
        } catch (const AuctionError& e) {
          if (e.code() != AuctionErrorCode::BidTooLow) throw;
          reject(a, s.ref, to_string(e.code()), hotel(g).ask());
          return;
        }
        outbox_[a].push_back(msg::Accepted{s.ref, std::nullopt});
      } else {
        if (s.points.size() != 1) throw AuctionError(AuctionErrorCode::Malformed);
        const BidPoint& p = s.points.front();
        OrderResult r = book(g).submit(a, s.side, p.price, p.qty, holdings_[a].count(g), t);
        outbox_[a].push_back(msg::Accepted{s.ref, r.order_id});
        for (const Transaction& tx : r.fills) apply_transaction(tx);
      }
    } catch (const AuctionError& e) {
      reject(a, s.ref, to_string(e.code()));
    }
  }

  std::optional<GoodId> book_of(OrderId id) {
    const int index = static_cast<int>(id & 31);
    if (index < 16 || index >= kNumGoods) return std::nullopt;
    return GoodId::from_index(index);
  }

  void replace(int a, const msg::Replace& r, GameTime t) {
    auto g = book_of(r.order_id);
    if (!g) return reject(a, r.ref, to_string(AuctionErrorCode::UnknownOrder));
    try {
      OrderResult res = book(*g).replace(a, r.order_id, r.price, t);
      outbox_[a].push_back(msg::Accepted{r.ref, r.order_id});
      for (const Transaction& tx : res.fills) apply_transaction(tx);
    } catch (const AuctionError& e) {
      reject(a, r.ref, to_string(e.code()));
    }
  }

  void cancel(int a, const msg::Cancel& c) {
    auto g = book_of(c.order_id);
    if (!g) return reject(a, c.ref, to_string(AuctionErrorCode::UnknownOrder));
    try {
      book(*g).cancel(a, c.order_id);
      outbox_[a].push_back(msg::Accepted{c.ref, c.order_id});
    } catch (const AuctionError& e) {
      reject(a, c.ref, to_string(e.code()));
    }
  }

  GameConfig config_;
  std::vector<std::unique_ptr<AgentSession>>& sessions_;
  Rng rng_;
  Rng flight_rng_;
  std::array<int, kHotelAuctions> close_minutes_{};
  Scenario scenario_;
  std::vector<Holdings> holdings_;
  std::vector<std::optional<Allocation>> reported_;
  std::vector<std::vector<Message>> outbox_;
  std::vector<FlightAuction> flights_;
  std::vector<HotelAuction> hotels_;
  std::vector<OrderBook> books_;
  std::vector<Transaction> log_;
  std::vector<AuctionClose> closings_;
  std::map<std::string, int> rejections_;
};

}  // namespace

GameRun run_game(const GameConfig& config, std::vector<std::unique_ptr<AgentSession>>& sessions) {
  return GameServer(config, sessions).run();
}

}  // namespace tac
