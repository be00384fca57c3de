#include <string>

#include "doctest.h"
#include "generators.hpp"
#include "tac/json_io.hpp"
#include "tac/protocol.hpp"

using namespace tac;

namespace {

GoodId random_good(Rng& rng) { return GoodId::from_index(static_cast<int>(rng.uniform_int(0, kNumGoods - 1))); }

std::optional<Money> maybe_price(Rng& rng) {
  if (rng.bernoulli(0.3)) return std::nullopt;
  return rng.uniform_int(0, 1000);
}

Message random_message(Rng& rng, int kind) {
  switch (kind) {
    case 0:
      return msg::Join{"agent-" + std::to_string(rng.uniform_int(0, 99))};
    case 1:
      return msg::Joined{static_cast<AgentId>(rng.uniform_int(0, 7))};
    case 2: {
      msg::GameStart m;
      m.config.seed = rng.next();
      m.config.time_scale = rng.bernoulli(0.5) ? 0.0 : 0.25;
      m.agent_id = static_cast<AgentId>(rng.uniform_int(0, 7));
      for (int i = 0; i < 8; ++i) m.preferences.push_back(testgen::random_preference(rng));
      for (int i = 0; i < 12; ++i) m.endowment.add(GoodId::from_index(16 + static_cast<int>(rng.uniform_int(0, 11))));
      return m;
    }
    case 3:
      return msg::QuoteUpdate{Quote{random_good(rng), maybe_price(rng), maybe_price(rng),
                                    static_cast<GameTime>(rng.uniform_int(0, 540)), rng.bernoulli(0.2)}};
    case 4: {
      msg::Submit m{rng.uniform_int(1, 1 << 20), random_good(rng), rng.bernoulli(0.5) ? Side::Buy : Side::Sell, {}};
      const int n = static_cast<int>(rng.uniform_int(1, 3));
      for (int i = 0; i < n; ++i) m.points.push_back(BidPoint{static_cast<int>(rng.uniform_int(1, 5)), rng.uniform_int(0, 500)});
      return m;
    }
    case 5: {
      std::optional<OrderId> id;
      if (rng.bernoulli(0.5)) id = rng.next() >> 12;
      return msg::Accepted{rng.uniform_int(0, 1000), id};
    }
    case 6:
      return msg::Rejected{rng.uniform_int(0, 1000), rng.bernoulli(0.5) ? "BID_TOO_LOW" : "CLOSED", maybe_price(rng)};
    case 7:
      return msg::Replace{rng.uniform_int(0, 1000), rng.next() >> 12, rng.uniform_int(0, 400)};
    case 8:
      return msg::Cancel{rng.uniform_int(0, 1000), rng.next() >> 12};
    case 9: {
      std::optional<OrderId> id;
      if (rng.bernoulli(0.5)) id = rng.next() >> 12;
      return msg::TransactionNotice{random_good(rng), rng.bernoulli(0.5) ? Side::Buy : Side::Sell,
                                    static_cast<int>(rng.uniform_int(1, 4)), rng.uniform_int(0, 600),
                                    static_cast<GameTime>(rng.uniform_int(0, 540)), id};
    }
    case 10:
      return msg::AuctionClosed{random_good(rng), static_cast<GameTime>(rng.uniform_int(0, 540))};
    case 11:
      return msg::Tick{static_cast<GameTime>(rng.uniform_int(0, 54) * 10), rng.bernoulli(0.1)};
    case 12:
      return msg::Ready{static_cast<GameTime>(rng.uniform_int(0, 54) * 10)};
    case 13: {
      msg::AllocationReport m;
      for (int i = 0; i < 8; ++i) {
        if (rng.bernoulli(0.7)) {
          m.allocation.packages.push_back(testgen::random_package(rng));
        } else {
          m.allocation.packages.push_back(std::nullopt);
        }
      }
      return m;
    }
    default: {
      msg::GameEnd m;
      for (int a = 0; a < 3; ++a) {
        AgentScore s;
        s.agent = a;
        s.name = a == 0 ? "tota" : "random";
        s.utility = rng.uniform_int(0, 9000);
        s.spend = rng.uniform_int(0, 5000);
        s.revenue = rng.uniform_int(0, 500);
        s.score = s.utility - s.spend + s.revenue;
        s.reported = rng.bernoulli(0.5);
        s.packages = {testgen::random_package(rng), std::nullopt};
        m.scores.push_back(s);
      }
      return m;
    }
  }
}

}  // namespace

TEST_CASE("every message kind survives encode/decode") {
  Rng rng(2024);
  for (int round = 0; round < 200; ++round) {
    for (int kind = 0; kind < 15; ++kind) {
      const Message m = random_message(rng, kind);
      const std::string line = encode_message(m);
      CHECK(line.find('\n') == std::string::npos);
      const Message back = decode_message(line);
      REQUIRE(back.index() == m.index());
      CHECK(back == m);
    }
  }
}

TEST_CASE("encoding is a single line with a type field") {
  const std::string line = encode_message(msg::Tick{120, false});
  const Json j = Json::parse(line);
  CHECK(j.at("type") == "tick");
  CHECK(message_type(msg::Tick{}) == "tick");
  CHECK(message_type(msg::QuoteUpdate{}) == "quote");
  CHECK(message_type(msg::TransactionNotice{}) == "transaction");
  CHECK(message_type(msg::AllocationReport{}) == "allocation");
}

TEST_CASE("decode rejects malformed lines") {
  auto malformed = [](std::string_view line) {
    try {
      decode_message(line);
    } catch (const ProtocolError& e) {
      return std::string(e.what()).rfind("MALFORMED", 0) == 0;
    }
    return false;
  };
  CHECK(malformed("not json"));
  CHECK(malformed("[1,2,3]"));
  CHECK(malformed(R"({"agent_name":"x"})"));
  CHECK(malformed(R"({"type":"teleport"})"));
  CHECK(malformed(R"({"type":"submit","auction":"in9","side":"buy","points":[]})"));
  CHECK(malformed(R"({"type":"tick"})"));
}

TEST_CASE("decode ignores unknown fields") {
  const Message m = decode_message(R"({"type":"join","agent_name":"tota","colour":"blue","v":2})");
  REQUIRE(std::holds_alternative<msg::Join>(m));
  CHECK(std::get<msg::Join>(m).agent_name == "tota");

  const Message q = decode_message(
      R"({"type":"quote","auction":"better3","ask":42,"bid":null,"time":60,"closed":false,"extra":{"x":1}})");
  REQUIRE(std::holds_alternative<msg::QuoteUpdate>(q));
  CHECK(std::get<msg::QuoteUpdate>(q).quote.ask == 42);
  CHECK(std::get<msg::QuoteUpdate>(q).quote.auction == GoodId::hotel(HotelKind::Better, 3));
}
