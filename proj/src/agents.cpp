#include "tac/agents.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace tac {

Money hotel_bid_price(std::optional<Money> ask1, std::optional<Money> ask2, Money ask) {
  const Money raw = (ask1 && ask2) ? (*ask1 - *ask2) + ask : ask;
  return std::max(raw, ask + 1);
}

double sell_price(double elapsed, double total) {
  const double tau = total > 0 ? std::clamp(elapsed / total, 0.0, 1.0) : 1.0;
  return 200.0 * (1.0 - std::log(1.0 + (std::numbers::e - 1.0) * tau));
}

// ---------------------------------------------------------------------------

void TradingAgent::on_message(const Message& m, std::vector<Message>& out) {
  if (auto* joined = std::get_if<msg::Joined>(&m)) {
    id_ = joined->agent_id;
  } else if (auto* start = std::get_if<msg::GameStart>(&m)) {
    id_ = start->agent_id;
    config_ = start->config;
    prefs_ = start->preferences;
    holdings_ = start->endowment;
    for (GoodId g : GoodId::all()) quotes_[g.index()].auction = g;
    started_ = true;
    on_start();
  } else if (auto* q = std::get_if<msg::QuoteUpdate>(&m)) {
    quotes_[q->quote.auction.index()] = q->quote;
    if (q->quote.closed) closed_[q->quote.auction.index()] = true;
    on_quote(q->quote);
  } else if (auto* acc = std::get_if<msg::Accepted>(&m)) {
    auto it = pending_.find(acc->ref);
    if (it == pending_.end()) return;
    const msg::Submit s = it->second;
    pending_.erase(it);
    if (s.auction.is_hotel()) {
      auto& bids = hotel_bids_[s.auction.index()];
      bids.insert(bids.end(), s.points.begin(), s.points.end());
    }
    on_accepted(s, *acc, out);
  } else if (auto* rej = std::get_if<msg::Rejected>(&m)) {
    auto it = pending_.find(rej->ref);
    if (it == pending_.end()) return;
    const msg::Submit s = it->second;
    pending_.erase(it);
    on_rejected(s, *rej, out);
  } else if (auto* tx = std::get_if<msg::TransactionNotice>(&m)) {
    if (tx->side == Side::Buy) {
      holdings_.add(tx->auction, tx->qty);
    } else {
      holdings_.remove(tx->auction, tx->qty);
    }
    on_transaction(*tx);
  } else if (auto* closed = std::get_if<msg::AuctionClosed>(&m)) {
    closed_[closed->auction.index()] = true;
    hotel_bids_[closed->auction.index()].clear();
  } else if (auto* tick = std::get_if<msg::Tick>(&m)) {
    on_tick(tick->time, tick->final, out);
  } else if (auto* end = std::get_if<msg::GameEnd>(&m)) {
    end_ = *end;
  }
}

std::int64_t TradingAgent::submit(std::vector<Message>& out, GoodId good, Side side, std::vector<BidPoint> points) {
  msg::Submit s{next_ref(), good, side, std::move(points)};
  pending_[s.ref] = s;
  out.push_back(s);
  return s.ref;
}

int TradingAgent::winning_hotel_units(GoodId g) const {
  const Money ask = quote(g).ask.value_or(0);
  int units = 0;
  for (const BidPoint& p : hotel_bids_[g.index()]) {
    if (p.price >= ask) units += p.qty;
  }
  return std::min(units, config_.hotel_capacity);
}

// ---------------------------------------------------------------------------

int TotaAgent::pending_qty(GoodId g, Side side) const {
  int qty = 0;
  for (const auto& [ref, s] : pending_) {
    if (s.auction != g || s.side != side) continue;
    for (const BidPoint& p : s.points) qty += p.qty;
  }
  return qty;
}

Money TotaAgent::hotel_price(GoodId g) const {
  const auto& h = ask_history_[g.index()];
  const Money ask = quote(g).ask.value_or(0);
  std::optional<Money> ask1, ask2;
  if (h.size() >= 2) ask1 = h[h.size() - 2];
  if (h.size() >= 3) ask2 = h[h.size() - 3];
  return hotel_bid_price(ask1, ask2, ask);
}

void TotaAgent::on_quote(const Quote& q) {
  if (!q.auction.is_hotel() || q.closed || !q.ask) return;
  auto& h = ask_history_[q.auction.index()];
  h.push_back(*q.ask);
  if (h.size() > 3) h.erase(h.begin());
}

Holdings TotaAgent::planning_holdings() const {
  Holdings h = holdings_;
  for (GoodId g : GoodId::all()) {
    if (g.is_hotel() && is_open(g)) h.add(g, winning_hotel_units(g));
  }
  return h;
}

void TotaAgent::replan() {
  prices_ = PriceVector{};
  for (GoodId g : GoodId::all()) {
    if (!is_open(g)) continue;
    if (g.is_flight()) {
      prices_.set(g, quote(g).ask.value_or(0));
    } else if (g.is_hotel()) {
      prices_.set(g, hotel_price(g));
    } else if (quote(g).ask) {
      prices_.set(g, *quote(g).ask);
    }
  }
  const Allocation* previous = plan_.packages.empty() ? nullptr : &plan_;
  plan_ = optimize_greedy(prefs_, planning_holdings(), prices_, previous).allocation;
}

void TotaAgent::on_tick(GameTime t, bool final, std::vector<Message>& out) {
  if (final) {
    plan_ = optimize_greedy(prefs_, holdings_, PriceVector{}).allocation;
    out.push_back(msg::AllocationReport{plan_});
    return;
  }
  bool replanned = false;
  if (t % clock_.allocation_interval == 0) {
    on_minute(t, out);
    replanned = true;
  }
  if (t % clock_.flight_review_interval == 0) {
    if (!replanned) replan();
    on_flight_review(t, out);
  }
}

void TotaAgent::on_minute(GameTime t, std::vector<Message>& out) {
  replan();
  bid_hotels(out);
  trade_entertainment(t, out);
}

void TotaAgent::bid_hotels(std::vector<Message>& out) {
  const Holdings demand = plan_.demand();
  for (GoodId g : GoodId::all()) {
    if (!g.is_hotel() || !is_open(g)) continue;
    const int need = demand.count(g) - holdings_.count(g) - winning_hotel_units(g) - pending_qty(g, Side::Buy);
    if (need > 0) submit(out, g, Side::Buy, {BidPoint{need, hotel_price(g)}});
  }
}

void TotaAgent::on_flight_review(GameTime t, std::vector<Message>& out) {
  if (t < clock_.flight_commit_time) return;
  const Holdings demand = plan_.demand();
  for (GoodId g : GoodId::all()) {
    if (!g.is_flight() || !is_open(g)) continue;
    const int need = demand.count(g) - holdings_.count(g) - pending_qty(g, Side::Buy);
    if (need > 0) submit(out, g, Side::Buy, {BidPoint{need, quote(g).ask.value_or(0)}});
  }
}

void TotaAgent::trade_entertainment(GameTime t, std::vector<Message>& out) {
  const Holdings demand = plan_.demand();
  const Money ask_price = std::llround(sell_price(t, config_.game_length));
  for (GoodId g : GoodId::all()) {
    if (!g.is_event() || !is_open(g)) continue;
    const int owned = holdings_.count(g);
    const int wanted = demand.count(g);

    // Sell side: one resting order per redundant ticket.
    const int redundant = std::max(0, owned - wanted);
    int selling = pending_qty(g, Side::Sell);
    std::vector<OrderId> sells, buys;
    for (const auto& [id, o] : resting_) {
      if (o.good != g) continue;
      (o.side == Side::Sell ? sells : buys).push_back(id);
    }
    for (OrderId id : sells) {
      if (selling >= redundant) {
        out.push_back(msg::Cancel{next_ref(), id});
        resting_.erase(id);
      } else {
        out.push_back(msg::Replace{next_ref(), id, ask_price});
        selling += resting_[id].qty;
      }
    }
    for (; selling < redundant; ++selling) submit(out, g, Side::Sell, {BidPoint{1, ask_price}});

    // Buy side: unfilled bids are withdrawn and re-placed against the current plan.
    for (OrderId id : buys) {
      out.push_back(msg::Cancel{next_ref(), id});
      resting_.erase(id);
    }
    const auto ask = quote(g).ask;
    if (wanted <= owned || !ask) continue;
    std::vector<Money> gains;
    for (std::size_t c = 0; c < plan_.packages.size(); ++c) {
      const auto& pkg = plan_.packages[c];
      if (!pkg) continue;
      const int k = static_cast<int>(g.event_kind());
      if (pkg->events[k] == g.day()) gains.push_back(prefs_[c].event_premium[k]);
    }
    std::sort(gains.begin(), gains.end(), std::greater<>());
    for (std::size_t i = static_cast<std::size_t>(owned); i < gains.size(); ++i) {
      if (gains[i] > *ask) submit(out, g, Side::Buy, {BidPoint{1, gains[i] - 1}});
    }
  }
}

void TotaAgent::on_accepted(const msg::Submit& s, const msg::Accepted& a, std::vector<Message>&) {
  if (s.auction.is_event() && a.order_id) resting_[*a.order_id] = RestingOrder{s.auction, s.side, s.points.front().qty};
}

void TotaAgent::on_transaction(const msg::TransactionNotice& n) {
  if (!n.auction.is_event() || !n.order_id) return;
  auto it = resting_.find(*n.order_id);
  if (it == resting_.end()) return;
  it->second.qty -= n.qty;
  if (it->second.qty <= 0) resting_.erase(it);
}

void TotaAgent::on_rejected(const msg::Submit& s, const msg::Rejected& r, std::vector<Message>& out) {
  if (!s.auction.is_hotel() || r.reason != "BID_TOO_LOW" || !r.ask || retried_.count(s.ref)) return;
  quotes_[s.auction.index()].ask = r.ask;
  on_quote(quotes_[s.auction.index()]);
  int qty = 0;
  for (const BidPoint& p : s.points) qty += p.qty;
  retried_[submit(out, s.auction, Side::Buy, {BidPoint{qty, hotel_price(s.auction)}})] = true;
}

int TotaAgent::redundant_tickets() const {
  const Holdings demand = plan_.demand();
  int n = 0;
  for (GoodId g : GoodId::all()) {
    if (g.is_event() && is_open(g)) n += std::max(0, holdings_.count(g) - demand.count(g));
  }
  return n;
}

int TotaAgent::resting_sells() const {
  int n = 0;
  for (const auto& [id, o] : resting_) {
    if (o.side == Side::Sell && is_open(o.good)) n += o.qty;
  }
  for (GoodId g : GoodId::all()) {
    if (g.is_event()) n += pending_qty(g, Side::Sell);
  }
  return n;
}

// ---------------------------------------------------------------------------

void RandomAgent::on_start() { rng_.emplace(Rng(config_.seed).substream("random-agent", static_cast<std::uint64_t>(id_))); }

void RandomAgent::on_tick(GameTime t, bool final, std::vector<Message>& out) {
  if (final || t % 60 != 0 || !rng_) return;
  const std::function<bool(GoodId)> classes[] = {&GoodId::is_flight, &GoodId::is_hotel, &GoodId::is_event};
  for (const auto& in_class : classes) {
    if (!rng_->bernoulli(0.5)) continue;
    std::vector<GoodId> open;
    for (GoodId g : GoodId::all()) {
      if (in_class(g) && is_open(g)) open.push_back(g);
    }
    if (open.empty()) continue;
    const GoodId g = open[static_cast<std::size_t>(rng_->uniform_int(0, static_cast<std::int64_t>(open.size()) - 1))];
    const Money price = quote(g).ask.value_or(0) + rng_->uniform_int(1, 50);
    submit(out, g, Side::Buy, {BidPoint{1, price}});
  }
}

// ---------------------------------------------------------------------------

void GreedyAgent::on_tick(GameTime t, bool final, std::vector<Message>& out) {
  if (final) return;
  if (t == 10) {
    Holdings flights;
    for (const ClientPreference& p : prefs_) {
      flights.add(GoodId::flight_in(p.preferred_arrival), 1);
      flights.add(GoodId::flight_out(p.preferred_departure), 1);
    }
    for (GoodId g : GoodId::all()) {
      if (flights.count(g) > 0 && is_open(g)) {
        submit(out, g, Side::Buy, {BidPoint{flights.count(g), quote(g).ask.value_or(0)}});
      }
    }
  }
  if (t % 60 != 0) return;
  Holdings rooms;
  for (const ClientPreference& p : prefs_) {
    const HotelKind kind = p.hotel_premium > 100 ? HotelKind::Better : HotelKind::Alt;
    for (int night = p.preferred_arrival; night < p.preferred_departure; ++night) rooms.add(GoodId::hotel(kind, night), 1);
  }
  for (GoodId g : GoodId::all()) {
    if (!g.is_hotel() || !is_open(g)) continue;
    int in_flight = 0;
    for (const auto& [ref, s] : pending_) {
      if (s.auction == g) in_flight += s.points.front().qty;
    }
    const int need = rooms.count(g) - holdings_.count(g) - winning_hotel_units(g) - in_flight;
    if (need > 0) submit(out, g, Side::Buy, {BidPoint{need, quote(g).ask.value_or(0) + 10}});
  }
}

// ---------------------------------------------------------------------------

bool is_builtin_agent(const std::string& kind) { return kind == "tota" || kind == "random" || kind == "greedy"; }

std::unique_ptr<Agent> make_agent(const std::string& kind) {
  if (kind == "tota") return std::make_unique<TotaAgent>();
  if (kind == "random") return std::make_unique<RandomAgent>();
  if (kind == "greedy") return std::make_unique<GreedyAgent>();
  throw std::invalid_argument("unknown agent kind '" + kind + "'");
}

}  // namespace tac
