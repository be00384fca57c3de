#include "tac/json_io.hpp"

#include <stdexcept>

namespace tac {

namespace {

HotelKind parse_hotel(const std::string& s) {
  if (s == "BETTER") return HotelKind::Better;
  if (s == "ALT") return HotelKind::Alt;
  throw std::invalid_argument("unknown hotel kind: " + s);
}

Json party(AgentId id) { return id == kMarket ? Json("MARKET") : Json(id); }

AgentId parse_party(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "MARKET") return kMarket;
    throw std::invalid_argument("unknown party");
  }
  return j.get<AgentId>();
}

}  // namespace

void to_json(Json& j, GoodId good) { j = good.name(); }

void from_json(const Json& j, GoodId& good) {
  auto parsed = GoodId::parse(j.get<std::string>());
  if (!parsed) throw std::invalid_argument("unknown good: " + j.get<std::string>());
  good = *parsed;
}

void to_json(Json& j, const ClientPreference& p) {
  j = Json{{"preferred_arrival", p.preferred_arrival},
           {"preferred_departure", p.preferred_departure},
           {"hotel_premium", p.hotel_premium},
           {"event_premium", Json{{"E1", p.event_premium[0]}, {"E2", p.event_premium[1]}, {"E3", p.event_premium[2]}}}};
}

void from_json(const Json& j, ClientPreference& p) {
  p.preferred_arrival = j.at("preferred_arrival").get<int>();
  p.preferred_departure = j.at("preferred_departure").get<int>();
  p.hotel_premium = j.at("hotel_premium").get<Points>();
  const Json& e = j.at("event_premium");
  for (EventKind k : kEventKinds) p.event_premium[static_cast<int>(k)] = e.at(std::string(to_string(k))).get<Points>();
  validate(p);
}

void to_json(Json& j, const TravelPackage& p) {
  Json events = Json::object();
  for (EventKind k : kEventKinds) {
    if (auto n = p.event_night(k)) events[std::string(to_string(k))] = *n;
  }
  j = Json{{"arrival", p.arrival}, {"departure", p.departure}, {"hotel", to_string(p.hotel)}, {"events", events}};
}

void from_json(const Json& j, TravelPackage& p) {
  p.arrival = j.at("arrival").get<int>();
  p.departure = j.at("departure").get<int>();
  p.hotel = parse_hotel(j.at("hotel").get<std::string>());
  p.events = {};
  if (j.contains("events")) {
    for (EventKind k : kEventKinds) {
      const std::string key(to_string(k));
      if (j.at("events").contains(key)) p.events[static_cast<int>(k)] = j.at("events").at(key).get<int>();
    }
  }
  validate(p);
}

void to_json(Json& j, const Holdings& h) {
  j = Json::object();
  for (GoodId g : GoodId::all()) {
    if (h.count(g) > 0) j[g.name()] = h.count(g);
  }
}

void from_json(const Json& j, Holdings& h) {
  h = Holdings{};
  for (const auto& [key, value] : j.items()) {
    auto good = GoodId::parse(key);
    if (!good) throw std::invalid_argument("unknown good: " + key);
    const int count = value.get<int>();
    if (count < 0) throw std::invalid_argument("negative holding");
    h.add(*good, count);
  }
}

void to_json(Json& j, const Allocation& a) {
  j = Json::array();
  for (const auto& p : a.packages) j.push_back(p ? Json(*p) : Json(nullptr));
}

void from_json(const Json& j, Allocation& a) {
  a.packages.clear();
  for (const Json& p : j) {
    if (p.is_null()) {
      a.packages.emplace_back();
    } else {
      a.packages.emplace_back(p.get<TravelPackage>());
    }
  }
}

void to_json(Json& j, const PriceVector& p) {
  j = Json::object();
  for (GoodId g : GoodId::all()) {
    if (auto price = p.price(g)) j[g.name()] = *price;
  }
}

void from_json(const Json& j, PriceVector& p) {
  p = PriceVector{};
  for (const auto& [key, value] : j.items()) {
    auto good = GoodId::parse(key);
    if (!good) throw std::invalid_argument("unknown good: " + key);
    if (!value.is_null()) p.set(*good, value.get<Money>());
  }
}

void to_json(Json& j, const Quote& q) {
  j = Json{{"auction", q.auction},
           {"ask", q.ask ? Json(*q.ask) : Json(nullptr)},
           {"bid", q.bid ? Json(*q.bid) : Json(nullptr)},
           {"time", q.time},
           {"closed", q.closed}};
}

void from_json(const Json& j, Quote& q) {
  q.auction = j.at("auction").get<GoodId>();
  q.ask = j.contains("ask") && !j.at("ask").is_null() ? std::optional<Money>(j.at("ask").get<Money>()) : std::nullopt;
  q.bid = j.contains("bid") && !j.at("bid").is_null() ? std::optional<Money>(j.at("bid").get<Money>()) : std::nullopt;
  q.time = j.at("time").get<GameTime>();
  q.closed = j.at("closed").get<bool>();
}

void to_json(Json& j, const Transaction& t) {
  j = Json{{"auction", t.auction}, {"buyer", party(t.buyer)}, {"seller", party(t.seller)},
           {"qty", t.qty},         {"price", t.price},          {"time", t.time}};
  if (t.buy_order) j["buy_order"] = *t.buy_order;
  if (t.sell_order) j["sell_order"] = *t.sell_order;
}

void from_json(const Json& j, Transaction& t) {
  t.auction = j.at("auction").get<GoodId>();
  t.buyer = parse_party(j.at("buyer"));
  t.seller = parse_party(j.at("seller"));
  t.qty = j.at("qty").get<int>();
  t.price = j.at("price").get<Money>();
  t.time = j.at("time").get<GameTime>();
  t.buy_order = j.contains("buy_order") ? std::optional<OrderId>(j.at("buy_order").get<OrderId>()) : std::nullopt;
  t.sell_order = j.contains("sell_order") ? std::optional<OrderId>(j.at("sell_order").get<OrderId>()) : std::nullopt;
}

void to_json(Json& j, const GameConfig& c) {
  j = Json{{"game_length", c.game_length},
           {"flight_tick", c.flight_tick},
           {"hotel_quote_interval", c.hotel_quote_interval},
           {"clients_per_agent", c.clients_per_agent},
           {"agents", c.agents},
           {"endowment_per_agent", c.endowment_per_agent},
           {"seed", c.seed},
           {"time_scale", c.time_scale},
           {"flight_min_increment", c.flight.min_increment},
           {"flight_max_increment", c.flight.max_increment},
           {"hotel_capacity", c.hotel_capacity},
           {"agent_grace_ms", c.agent_grace_ms}};
  j["hotel_close_minutes"] = c.hotel_close_minutes ? Json(*c.hotel_close_minutes) : Json(nullptr);
}

void from_json(const Json& j, GameConfig& c) {
  GameConfig d;
  c.game_length = j.value("game_length", d.game_length);
  c.flight_tick = j.value("flight_tick", d.flight_tick);
  c.hotel_quote_interval = j.value("hotel_quote_interval", d.hotel_quote_interval);
  c.clients_per_agent = j.value("clients_per_agent", d.clients_per_agent);
  c.agents = j.value("agents", d.agents);
  c.endowment_per_agent = j.value("endowment_per_agent", d.endowment_per_agent);
  c.seed = j.value("seed", d.seed);
  c.time_scale = j.value("time_scale", d.time_scale);
  c.flight.min_increment = j.value("flight_min_increment", d.flight.min_increment);
  c.flight.max_increment = j.value("flight_max_increment", d.flight.max_increment);
  c.hotel_capacity = j.value("hotel_capacity", d.hotel_capacity);
  c.agent_grace_ms = j.value("agent_grace_ms", d.agent_grace_ms);
  if (j.contains("hotel_close_minutes") && !j.at("hotel_close_minutes").is_null()) {
    c.hotel_close_minutes = j.at("hotel_close_minutes").get<std::array<int, kHotelAuctions>>();
  } else {
    c.hotel_close_minutes.reset();
  }
}

void to_json(Json& j, const AgentScore& s) {
  Json packages = Json::array();
  for (const auto& p : s.packages) packages.push_back(p ? Json(*p) : Json(nullptr));
  j = Json{{"agent", s.agent},     {"name", s.name},   {"utility", s.utility},   {"spend", s.spend},
           {"revenue", s.revenue}, {"score", s.score}, {"reported", s.reported}, {"packages", packages}};
}

void from_json(const Json& j, AgentScore& s) {
  s.agent = j.at("agent").get<AgentId>();
  s.name = j.value("name", std::string{});
  s.utility = j.at("utility").get<Points>();
  s.spend = j.at("spend").get<Money>();
  s.revenue = j.at("revenue").get<Money>();
  s.score = j.at("score").get<Money>();
  s.reported = j.value("reported", false);
  s.packages.clear();
  if (j.contains("packages")) {
    for (const Json& p : j.at("packages")) {
      s.packages.push_back(p.is_null() ? std::nullopt : std::optional<TravelPackage>(p.get<TravelPackage>()));
    }
  }
}

void to_json(Json& j, const GameResult& r) {
  Json closings = Json::array();
  for (const auto& c : r.closings) closings.push_back(Json{{"auction", c.auction}, {"time", c.time}});
  j = Json{{"seed", r.seed}, {"agents", r.agents}, {"closings", closings}};
}

void from_json(const Json& j, GameResult& r) {
  r.seed = j.at("seed").get<std::uint64_t>();
  r.agents = j.at("agents").get<std::vector<AgentScore>>();
  r.closings.clear();
  for (const Json& c : j.at("closings")) {
    r.closings.push_back(AuctionClose{c.at("auction").get<GoodId>(), c.at("time").get<GameTime>()});
  }
}

}  // namespace tac
