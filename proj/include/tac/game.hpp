#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tac/allocator.hpp"
#include "tac/auction.hpp"
#include "tac/market.hpp"
#include "tac/rng.hpp"

namespace tac {

inline constexpr int kHotelAuctions = 8;

struct GameConfig {
  GameTime game_length = 540;
  GameTime flight_tick = 10;
  GameTime hotel_quote_interval = 60;
  /// Minute (1..8) at which each hotel auction closes, indexed by hotel auction
  /// (BETTER nights 1..4, then ALT nights 1..4). Drawn from the seed when unset.
  std::optional<std::array<int, kHotelAuctions>> hotel_close_minutes;
  int clients_per_agent = 8;
  int agents = 8;
  int endowment_per_agent = 12;
  std::uint64_t seed = 0;
  /// Real seconds per game-second; 0 runs as fast as possible.
  double time_scale = 0.0;
  FlightParams flight{};
  int hotel_capacity = HotelAuction::kDefaultCapacity;
  /// Real-time grace for a socket agent to answer one step.
  int agent_grace_ms = 5000;

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

/// Throws std::invalid_argument.
void validate(const GameConfig& config);

/// Seeded hotel close order; a permutation of minutes 1..8.
std::array<int, kHotelAuctions> hotel_close_schedule(const GameConfig& config);

inline GoodId hotel_auction_good(int hotel_index) {
  return GoodId::hotel(hotel_index < 4 ? HotelKind::Better : HotelKind::Alt, hotel_index % 4 + 1);
}

struct Scenario {
  std::vector<std::vector<ClientPreference>> preferences;  // per agent
  std::vector<Holdings> endowments;                        // per agent

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario generate_scenario(const GameConfig& config, const Rng& rng);

struct AgentScore {
  AgentId agent = 0;
  std::string name;
  Points utility = 0;
  Money spend = 0;
  Money revenue = 0;
  Money score = 0;
  /// Whether the agent reported its own allocation (otherwise the server allocated).
  bool reported = false;
  std::vector<std::optional<TravelPackage>> packages;

  friend bool operator==(const AgentScore&, const AgentScore&) = default;
};

struct AuctionClose {
  GoodId auction;
  GameTime time;

  friend bool operator==(const AuctionClose&, const AuctionClose&) = default;
};

struct GameResult {
  std::uint64_t seed = 0;
  std::vector<AgentScore> agents;
  std::vector<AuctionClose> closings;
};

/// Scores every agent. Reported allocations are re-validated against final
/// holdings client by client; packages the holdings cannot cover score as absent.
/// Agents without a report are allocated greedily over what they own.
GameResult score_game(const Scenario& scenario, std::span<const Holdings> holdings,
                      std::span<const std::optional<Allocation>> reported,
                      std::span<const Transaction> ledger);

/// Keeps the covered packages of `alloc`, in client order.
Allocation revalidate(std::span<const ClientPreference> prefs, const Allocation& alloc,
                      const Holdings& holdings);

}  // namespace tac
