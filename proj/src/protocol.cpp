#include "tac/protocol.hpp"

#include "tac/json_io.hpp"

namespace tac {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json optional_json(const auto& v) { return v ? Json(*v) : Json(nullptr); }

template <typename T>
std::optional<T> optional_field(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

Side parse_side(const std::string& s) {
  if (s == "buy") return Side::Buy;
  if (s == "sell") return Side::Sell;
  throw ProtocolError("unknown side " + s);
}

Json points_json(const std::vector<BidPoint>& points) {
  Json out = Json::array();
  for (const BidPoint& p : points) out.push_back(Json{{"qty", p.qty}, {"price", p.price}});
  return out;
}

}  // namespace

std::string_view message_type(const Message& m) {
  return std::visit(Overloaded{
                        [](const msg::Join&) { return "join"; },
                        [](const msg::Joined&) { return "joined"; },
                        [](const msg::GameStart&) { return "game_start"; },
                        [](const msg::QuoteUpdate&) { return "quote"; },
                        [](const msg::Submit&) { return "submit"; },
                        [](const msg::Accepted&) { return "accepted"; },
                        [](const msg::Rejected&) { return "rejected"; },
                        [](const msg::Replace&) { return "replace"; },
                        [](const msg::Cancel&) { return "cancel"; },
                        [](const msg::TransactionNotice&) { return "transaction"; },
                        [](const msg::AuctionClosed&) { return "auction_closed"; },
                        [](const msg::Tick&) { return "tick"; },
                        [](const msg::Ready&) { return "ready"; },
                        [](const msg::AllocationReport&) { return "allocation"; },
                        [](const msg::GameEnd&) { return "game_end"; },
                    },
                    m);
}

std::string encode_message(const Message& m) {
  Json j = std::visit(
      Overloaded{
          [](const msg::Join& x) { return Json{{"agent_name", x.agent_name}}; },
          [](const msg::Joined& x) { return Json{{"agent_id", x.agent_id}}; },
          [](const msg::GameStart& x) {
            return Json{{"config", x.config},
                        {"agent_id", x.agent_id},
                        {"preferences", x.preferences},
                        {"endowment", x.endowment}};
          },
          [](const msg::QuoteUpdate& x) {
            Json q = x.quote;
            return q;
          },
          [](const msg::Submit& x) {
            return Json{{"ref", x.ref},
                        {"auction", x.auction},
                        {"side", to_string(x.side)},
                        {"points", points_json(x.points)}};
          },
          [](const msg::Accepted& x) { return Json{{"ref", x.ref}, {"order_id", optional_json(x.order_id)}}; },
          [](const msg::Rejected& x) {
            return Json{{"ref", x.ref}, {"reason", x.reason}, {"ask", optional_json(x.ask)}};
          },
          [](const msg::Replace& x) { return Json{{"ref", x.ref}, {"order_id", x.order_id}, {"price", x.price}}; },
          [](const msg::Cancel& x) { return Json{{"ref", x.ref}, {"order_id", x.order_id}}; },
          [](const msg::TransactionNotice& x) {
            return Json{{"auction", x.auction}, {"side", to_string(x.side)}, {"qty", x.qty},
                        {"price", x.price},     {"time", x.time},            {"order_id", optional_json(x.order_id)}};
          },
          [](const msg::AuctionClosed& x) { return Json{{"auction", x.auction}, {"time", x.time}}; },
          [](const msg::Tick& x) { return Json{{"time", x.time}, {"final", x.final}}; },
          [](const msg::Ready& x) { return Json{{"time", x.time}}; },
          [](const msg::AllocationReport& x) { return Json{{"packages", x.allocation}}; },
          [](const msg::GameEnd& x) { return Json{{"scores", x.scores}}; },
      },
      m);
  j["type"] = message_type(m);
  return j.dump();
}

Message decode_message(std::string_view line) {
  Json j = Json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ProtocolError("not JSON");
  if (!j.is_object()) throw ProtocolError("not a JSON object");
  if (!j.contains("type") || !j.at("type").is_string()) throw ProtocolError("missing type");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "join") return msg::Join{j.at("agent_name").get<std::string>()};
    if (type == "joined") return msg::Joined{j.at("agent_id").get<AgentId>()};
    if (type == "game_start") {
      msg::GameStart x;
      x.config = j.at("config").get<GameConfig>();
      x.agent_id = j.at("agent_id").get<AgentId>();
      x.preferences = j.at("preferences").get<std::vector<ClientPreference>>();
      x.endowment = j.at("endowment").get<Holdings>();
      return x;
    }
    if (type == "quote") return msg::QuoteUpdate{j.get<Quote>()};
    if (type == "submit") {
      msg::Submit x;
      x.ref = j.value("ref", std::int64_t{0});
      x.auction = j.at("auction").get<GoodId>();
      x.side = parse_side(j.at("side").get<std::string>());
      for (const Json& p : j.at("points")) x.points.push_back(BidPoint{p.at("qty").get<int>(), p.at("price").get<Money>()});
      return x;
    }
    if (type == "accepted") return msg::Accepted{j.value("ref", std::int64_t{0}), optional_field<OrderId>(j, "order_id")};
    if (type == "rejected") {
      return msg::Rejected{j.value("ref", std::int64_t{0}), j.at("reason").get<std::string>(),
                           optional_field<Money>(j, "ask")};
    }
    if (type == "replace") {
      return msg::Replace{j.value("ref", std::int64_t{0}), j.at("order_id").get<OrderId>(), j.at("price").get<Money>()};
    }
    if (type == "cancel") return msg::Cancel{j.value("ref", std::int64_t{0}), j.at("order_id").get<OrderId>()};
    if (type == "transaction") {
      return msg::TransactionNotice{j.at("auction").get<GoodId>(), parse_side(j.at("side").get<std::string>()),
                                    j.at("qty").get<int>(),        j.at("price").get<Money>(),
                                    j.at("time").get<GameTime>(),  optional_field<OrderId>(j, "order_id")};
    }
    if (type == "auction_closed") return msg::AuctionClosed{j.at("auction").get<GoodId>(), j.at("time").get<GameTime>()};
    if (type == "tick") return msg::Tick{j.at("time").get<GameTime>(), j.value("final", false)};
    if (type == "ready") return msg::Ready{j.at("time").get<GameTime>()};
    if (type == "allocation") return msg::AllocationReport{j.at("packages").get<Allocation>()};
    if (type == "game_end") return msg::GameEnd{j.at("scores").get<std::vector<AgentScore>>()};
  } catch (const ProtocolError&) {
    throw;
  } catch (const std::exception& e) {
    throw ProtocolError(type + ": " + e.what());
  }
  throw ProtocolError("unknown message type " + type);
}

}  // namespace tac
