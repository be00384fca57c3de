#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tac/json_io.hpp"
#include "tac/net.hpp"
#include "tac/server.hpp"

namespace tac {

/// One seat of a game: a built-in agent kind, an agent the server dials
/// ("external:HOST:PORT"), or an agent that connects to the server ("remote").
struct SeatSpec {
  std::string kind;
  std::string host;
  int port = 0;

  bool is_external() const { return kind == "external"; }
  bool is_remote() const { return kind == "remote"; }
  bool in_process() const { return !is_external() && !is_remote(); }

  friend bool operator==(const SeatSpec&, const SeatSpec&) = default;
};

/// Comma-separated seats; "kind*N" or "kind×N" repeats a kind. Throws
/// std::invalid_argument on unknown kinds or malformed entries.
std::vector<SeatSpec> parse_agent_mix(const std::string& text);

struct SeatOptions {
  /// Accepts "remote" seats; must be set when the mix contains one.
  net::Listener* listener = nullptr;
  std::chrono::milliseconds connect_wait{30000};
};

/// Builds one session per seat. Socket failures surface as net::NetError.
std::vector<std::unique_ptr<AgentSession>> open_sessions(const std::vector<SeatSpec>& seats,
                                                         const GameConfig& config, const SeatOptions& options = {});

/// Runs one game with fresh sessions for the given seats.
GameRun play(const GameConfig& config, const std::vector<SeatSpec>& seats, const SeatOptions& options = {});

/// transactions.jsonl contents: one transaction per line, then a result record.
std::string transaction_log_text(const GameRun& run);
/// result.json contents; each agent entry also carries its seat kind.
Json result_json(const GameRun& run, const std::vector<SeatSpec>& seats);
std::string score_table(const GameRun& run, const std::vector<SeatSpec>& seats);

/// FNV-1a 64-bit, as 16 hex digits.
std::string digest(std::string_view bytes);

/// Writes transactions.jsonl, result.json and scores.txt into `dir`.
void write_game_artifacts(const std::filesystem::path& dir, const GameRun& run, const std::vector<SeatSpec>& seats);

struct KindSummary {
  std::string kind;
  int samples = 0;
  double mean = 0;
  Money min = 0;
  Money max = 0;
};

struct TournamentSummary {
  int games = 0;
  std::uint64_t base_seed = 0;
  std::vector<KindSummary> kinds;
};

/// Plays `games` games with seeds base, base+1, ... Each game's artifacts go to
/// out/game-NNN; summary.csv and summary.json go to out.
TournamentSummary run_tournament(const GameConfig& base, int games, const std::vector<SeatSpec>& seats,
                                 const std::filesystem::path& out, const SeatOptions& options = {});

/// Aggregates one score per seat per game, by seat kind, in first-seen order.
TournamentSummary summarize(const std::vector<GameRun>& runs, const std::vector<SeatSpec>& seats,
                            std::uint64_t base_seed);
void write_summary(const std::filesystem::path& out, const TournamentSummary& summary);

struct ReplayOutcome {
  bool match = false;
  std::string expected_digest;
  std::string actual_digest;
};

/// Re-runs the game in-process and compares the log digest with the file's.
/// Throws std::invalid_argument for seats that cannot be replayed.
ReplayOutcome replay_verify(const std::filesystem::path& log, const GameConfig& config,
                            const std::vector<SeatSpec>& seats);

}  // namespace tac
