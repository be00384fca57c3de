#include "tac/game.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tac {

void validate(const GameConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(c.flight_tick > 0, "flight_tick must be positive");
  require(c.game_length >= 480, "game_length must be at least 480 s");
  require(c.game_length % c.flight_tick == 0, "game_length must be a multiple of flight_tick");
  require(c.hotel_quote_interval > 0 && c.hotel_quote_interval % c.flight_tick == 0,
          "hotel_quote_interval must be a positive multiple of flight_tick");
  require(60 % c.flight_tick == 0, "flight_tick must divide a minute");
  require(c.agents >= 1, "at least one agent is required");
  require(c.clients_per_agent >= 1, "at least one client per agent is required");
  require(c.endowment_per_agent >= 0, "endowment must be non-negative");
  require(c.hotel_capacity >= 1, "hotel capacity must be positive");
  require(c.time_scale >= 0.0, "time_scale must be non-negative");
  require(c.flight.min_increment >= 1 && c.flight.max_increment >= c.flight.min_increment,
          "flight increments must satisfy 1 <= min <= max");
  if (c.hotel_close_minutes) {
    auto sorted = *c.hotel_close_minutes;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < kHotelAuctions; ++i) {
      require(sorted[i] == i + 1, "hotel_close_minutes must be a permutation of 1..8");
    }
  }
}

std::array<int, kHotelAuctions> hotel_close_schedule(const GameConfig& config) {
  if (config.hotel_close_minutes) return *config.hotel_close_minutes;
  std::vector<int> minutes(kHotelAuctions);
  std::iota(minutes.begin(), minutes.end(), 1);
  Rng rng = Rng(config.seed).substream("hotel-close");
  rng.shuffle(minutes);
  std::array<int, kHotelAuctions> out{};
  std::copy(minutes.begin(), minutes.end(), out.begin());
  return out;
}

Scenario generate_scenario(const GameConfig& config, const Rng& rng) {
  Scenario s;
  for (int a = 0; a < config.agents; ++a) {
    Rng prefs = rng.substream("preferences", static_cast<std::uint64_t>(a));
    std::vector<ClientPreference> clients;
    for (int c = 0; c < config.clients_per_agent; ++c) {
      ClientPreference p;
      p.preferred_arrival = static_cast<int>(prefs.uniform_int(1, 4));
      p.preferred_departure = static_cast<int>(prefs.uniform_int(p.preferred_arrival + 1, 5));
      p.hotel_premium = prefs.uniform_int(50, 150);
      for (auto& e : p.event_premium) e = prefs.uniform_int(0, 200);
      clients.push_back(p);
    }
    s.preferences.push_back(std::move(clients));

    Rng tickets = rng.substream("endowment", static_cast<std::uint64_t>(a));
    Holdings h;
    for (int i = 0; i < config.endowment_per_agent; ++i) {
      h.add(GoodId::from_index(16 + static_cast<int>(tickets.uniform_int(0, 11))));
    }
    s.endowments.push_back(h);
  }
  return s;
}

Allocation revalidate(std::span<const ClientPreference> prefs, const Allocation& alloc,
                      const Holdings& holdings) {
  Allocation out;
  out.packages.resize(prefs.size());
  Holdings remaining = holdings;
  for (std::size_t i = 0; i < prefs.size() && i < alloc.packages.size(); ++i) {
    const auto& pkg = alloc.packages[i];
    if (!pkg || !is_valid(*pkg)) continue;
    if (!is_feasible(prefs[i], *pkg, remaining)) continue;
    remaining = remaining.minus(required_goods(*pkg));
    out.packages[i] = pkg;
  }
  return out;
}

GameResult score_game(const Scenario& scenario, std::span<const Holdings> holdings,
                      std::span<const std::optional<Allocation>> reported,
                      std::span<const Transaction> ledger) {
  const std::size_t n = scenario.preferences.size();
  if (holdings.size() != n || reported.size() != n) {
    throw std::invalid_argument("score_game: per-agent inputs disagree in size");
  }
  GameResult result;
  for (std::size_t a = 0; a < n; ++a) {
    const auto& prefs = scenario.preferences[a];
    AgentScore score;
    score.agent = static_cast<AgentId>(a);
    Allocation alloc;
    if (reported[a]) {
      score.reported = true;
      alloc = revalidate(prefs, *reported[a], holdings[a]);
    } else {
      alloc = optimize_greedy(prefs, holdings[a], PriceVector{}).allocation;
    }
    for (std::size_t c = 0; c < prefs.size(); ++c) score.utility += client_utility(prefs[c], alloc.packages[c]);
    for (const Transaction& t : ledger) {
      if (t.buyer == score.agent) score.spend += t.price * t.qty;
      if (t.seller == score.agent) score.revenue += t.price * t.qty;
    }
    score.score = score.utility - score.spend + score.revenue;
    score.packages = std::move(alloc.packages);
    result.agents.push_back(std::move(score));
  }
  return result;
}

}  // namespace tac
