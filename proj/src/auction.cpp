#include "tac/auction.hpp"

#include <algorithm>

namespace tac {

std::string_view to_string(Side side) { return side == Side::Buy ? "buy" : "sell"; }

std::string_view to_string(AuctionErrorCode code) {
  switch (code) {
    case AuctionErrorCode::Closed: return "CLOSED";
    case AuctionErrorCode::AlreadyClosed: return "ALREADY_CLOSED";
    case AuctionErrorCode::BidTooLow: return "BID_TOO_LOW";
    case AuctionErrorCode::InvalidQuantity: return "INVALID_QUANTITY";
    case AuctionErrorCode::InsufficientTickets: return "INSUFFICIENT_TICKETS";
    case AuctionErrorCode::UnknownOrder: return "UNKNOWN_ORDER";
    case AuctionErrorCode::Malformed: return "MALFORMED";
  }
  return "UNKNOWN";
}

// ---------------------------------------------------------------------------
// Flights

FlightAuction::FlightAuction(GoodId good, FlightParams params) : good_(good), params_(params) {
  if (!good.is_flight()) throw std::invalid_argument("flight auction needs a flight good");
  if (params.min_increment < 1 || params.max_increment < params.min_increment) {
    throw std::invalid_argument("flight increments must satisfy 1 <= min <= max");
  }
}

Money FlightAuction::tick(Rng& rng) {
  if (closed_) throw AuctionError(AuctionErrorCode::Closed);
  price_ += rng.uniform_int(params_.min_increment, params_.max_increment);
  return price_;
}

Transaction FlightAuction::buy(AgentId agent, int qty, GameTime time) {
  if (qty < 1) throw AuctionError(AuctionErrorCode::InvalidQuantity);
  if (closed_) throw AuctionError(AuctionErrorCode::Closed);
  return Transaction{good_, agent, kMarket, qty, price_, time, std::nullopt, std::nullopt};
}

void FlightAuction::close() {
  if (closed_) throw AuctionError(AuctionErrorCode::AlreadyClosed);
  closed_ = true;
}

Quote FlightAuction::quote(GameTime time) const {
  return Quote{good_, price_, std::nullopt, time, closed_};
}

// ---------------------------------------------------------------------------
// Hotels

HotelAuction::HotelAuction(GoodId good, int capacity) : good_(good), capacity_(capacity) {
  if (!good.is_hotel()) throw std::invalid_argument("hotel auction needs a hotel good");
  if (capacity < 1) throw std::invalid_argument("hotel capacity must be positive");
}

void HotelAuction::submit(AgentId agent, std::span<const BidPoint> points, GameTime time) {
  if (closed_) throw AuctionError(AuctionErrorCode::Closed);
  if (points.empty()) throw AuctionError(AuctionErrorCode::InvalidQuantity);
  const Money current = ask();
  for (const BidPoint& p : points) {
    if (p.qty < 1) throw AuctionError(AuctionErrorCode::InvalidQuantity);
    if (p.price < current + 1) throw AuctionError(AuctionErrorCode::BidTooLow);
  }
  for (const BidPoint& p : points) {
    for (int i = 0; i < p.qty; ++i) {
      unit_bids_.push_back(UnitBid{agent, p.price, time, next_seq_++});
    }
  }
}

Money HotelAuction::ask() const {
  if (static_cast<int>(unit_bids_.size()) < capacity_) return 0;
  std::vector<Money> prices;
  prices.reserve(unit_bids_.size());
  for (const UnitBid& b : unit_bids_) prices.push_back(b.price);
  auto nth = prices.begin() + (capacity_ - 1);
  std::nth_element(prices.begin(), nth, prices.end(), std::greater<>());
  return *nth;
}

Quote HotelAuction::quote(GameTime time) const {
  return Quote{good_, ask(), std::nullopt, time, closed_};
}

std::vector<Transaction> HotelAuction::close(GameTime time) {
  if (closed_) throw AuctionError(AuctionErrorCode::AlreadyClosed);
  const Money clearing = ask();
  closed_ = true;

  std::vector<UnitBid> ranked = unit_bids_;
  std::stable_sort(ranked.begin(), ranked.end(), [](const UnitBid& a, const UnitBid& b) {
    if (a.price != b.price) return a.price > b.price;
    return a.seq < b.seq;
  });
  if (static_cast<int>(ranked.size()) > capacity_) ranked.resize(capacity_);

  std::vector<Transaction> out;
  out.reserve(ranked.size());
  for (const UnitBid& b : ranked) {
    out.push_back(Transaction{good_, b.agent, kMarket, 1, clearing, time, std::nullopt, std::nullopt});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Continuous double auction

namespace {

bool buy_before(const Order& a, const Order& b) {
  if (a.price != b.price) return a.price > b.price;
  return a.seq < b.seq;
}

bool sell_before(const Order& a, const Order& b) {
  if (a.price != b.price) return a.price < b.price;
  return a.seq < b.seq;
}

}  // namespace

OrderBook::OrderBook(GoodId good) : good_(good) {
  if (!good.is_event()) throw std::invalid_argument("order book needs an event ticket good");
}

OrderResult OrderBook::submit(AgentId agent, Side side, Money limit, int qty, int owned, GameTime time) {
  if (closed_) throw AuctionError(AuctionErrorCode::Closed);
  if (qty < 1 || limit < 0) throw AuctionError(AuctionErrorCode::InvalidQuantity);
  if (side == Side::Sell && owned - resting_qty(agent, Side::Sell) < qty) {
    throw AuctionError(AuctionErrorCode::InsufficientTickets);
  }
  const OrderId id = (next_id_++ << 5) | static_cast<OrderId>(good_.index());
  return match_and_rest(Order{id, agent, side, limit, qty, next_seq_++, time}, time);
}

OrderResult OrderBook::replace(AgentId agent, OrderId id, Money limit, GameTime time) {
  if (closed_) throw AuctionError(AuctionErrorCode::Closed);
  if (limit < 0) throw AuctionError(AuctionErrorCode::InvalidQuantity);
  for (auto* book : {&buys_, &sells_}) {
    auto it = std::find_if(book->begin(), book->end(),
                           [&](const Order& o) { return o.id == id && o.agent == agent; });
    if (it == book->end()) continue;
    Order order = *it;
    book->erase(it);
    order.price = limit;
    order.seq = next_seq_++;
    order.time = time;
    return match_and_rest(order, time);
  }
  throw AuctionError(AuctionErrorCode::UnknownOrder);
}

void OrderBook::cancel(AgentId agent, OrderId id) {
  if (closed_) throw AuctionError(AuctionErrorCode::Closed);
  for (auto* book : {&buys_, &sells_}) {
    auto it = std::find_if(book->begin(), book->end(),
                           [&](const Order& o) { return o.id == id && o.agent == agent; });
    if (it != book->end()) {
      book->erase(it);
      return;
    }
  }
  throw AuctionError(AuctionErrorCode::UnknownOrder);
}

void OrderBook::close() {
  if (closed_) throw AuctionError(AuctionErrorCode::AlreadyClosed);
  closed_ = true;
  buys_.clear();
  sells_.clear();
}

OrderResult OrderBook::match_and_rest(Order order, GameTime time) {
  OrderResult result;
  result.order_id = order.id;
  auto& opposite = order.side == Side::Buy ? sells_ : buys_;
  while (order.qty > 0 && !opposite.empty()) {
    Order& top = opposite.front();
    const bool crosses = order.side == Side::Buy ? order.price >= top.price : order.price <= top.price;
    if (!crosses) break;
    const int qty = std::min(order.qty, top.qty);
    Transaction t{good_, kMarket, kMarket, qty, top.price, time, std::nullopt, std::nullopt};
    if (order.side == Side::Buy) {
      t.buyer = order.agent;
      t.buy_order = order.id;
      t.seller = top.agent;
      t.sell_order = top.id;
    } else {
      t.buyer = top.agent;
      t.buy_order = top.id;
      t.seller = order.agent;
      t.sell_order = order.id;
    }
    result.fills.push_back(t);
    order.qty -= qty;
    top.qty -= qty;
    if (top.qty == 0) opposite.erase(opposite.begin());
  }
  if (order.qty > 0) {
    rest(order);
    result.resting = true;
  }
  return result;
}

void OrderBook::rest(Order order) {
  if (order.side == Side::Buy) {
    buys_.insert(std::upper_bound(buys_.begin(), buys_.end(), order, buy_before), order);
  } else {
    sells_.insert(std::upper_bound(sells_.begin(), sells_.end(), order, sell_before), order);
  }
}

std::optional<Money> OrderBook::best_bid() const {
  if (buys_.empty()) return std::nullopt;
  return buys_.front().price;
}

std::optional<Money> OrderBook::best_ask() const {
  if (sells_.empty()) return std::nullopt;
  return sells_.front().price;
}

Quote OrderBook::quote(GameTime time) const {
  return Quote{good_, best_ask(), best_bid(), time, closed_};
}

int OrderBook::resting_qty(AgentId agent, Side side) const {
  const auto& book = side == Side::Buy ? buys_ : sells_;
  int sum = 0;
  for (const Order& o : book) {
    if (o.agent == agent) sum += o.qty;
  }
  return sum;
}

const Order* OrderBook::find(OrderId id) const {
  for (const auto* book : {&buys_, &sells_}) {
    for (const Order& o : *book) {
      if (o.id == id) return &o;
    }
  }
  return nullptr;
}

}  // namespace tac
