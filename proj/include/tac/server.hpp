#pragma once

#include <memory>
#include <vector>

#include "tac/game.hpp"
#include "tac/session.hpp"

namespace tac {

struct GameRun {
  Scenario scenario;
  GameResult result;
  /// Every transaction in execution order.
  std::vector<Transaction> log;
  /// Rejections per reason, summed over agents.
  std::vector<std::pair<std::string, int>> rejections;
};

/// Plays one game to completion. Requires exactly `config.agents` sessions.
///
/// The clock advances in steps of `flight_tick`. At each step the server first
/// applies market events (flight ticks, the scheduled hotel close, end-of-game
/// closes), then sends every seat the same batch of news ending in a tick, then
/// applies the seats' commands. Commands are applied seat by seat, starting from
/// a seat that rotates each step, so the log is a pure function of config and
/// agent behaviour.
GameRun run_game(const GameConfig& config, std::vector<std::unique_ptr<AgentSession>>& sessions);

}  // namespace tac
