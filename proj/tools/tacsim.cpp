// tacsim: run travel-market games, tournaments and allocation instances.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tac/agents.hpp"
#include "tac/json_io.hpp"
#include "tac/net.hpp"
#include "tac/tournament.hpp"

namespace {

using namespace tac;

struct GameFlags {
  std::uint64_t seed = 42;
  std::string agents = "tota,random*7";
  double time_scale = 0.0;
  int port = -1;
  int grace_ms = 5000;
  std::string out = ".";
};

void add_game_flags(CLI::App* cmd, GameFlags& f, bool with_out) {
  cmd->add_option("--seed", f.seed, "Game seed (tournaments: base seed)")->capture_default_str();
  cmd->add_option("--agents", f.agents, "Seats, e.g. tota,random*7 or external:HOST:PORT")->capture_default_str();
  cmd->add_option("--time-scale", f.time_scale, "Real seconds per game second; 0 runs flat out")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--port", f.port, "Port for remote seats to connect to")->check(CLI::Range(0, 65535));
  cmd->add_option("--grace-ms", f.grace_ms, "Per-step reply deadline for socket agents")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  if (with_out) cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
}

GameConfig config_from(const GameFlags& f) {
  GameConfig c;
  c.seed = f.seed;
  c.time_scale = f.time_scale;
  c.agent_grace_ms = f.grace_ms;
  return c;
}

std::optional<net::Listener> listener_for(const std::vector<SeatSpec>& seats, const GameFlags& f) {
  bool remote = false;
  for (const SeatSpec& s : seats) remote = remote || s.is_remote();
  if (!remote) return std::nullopt;
  if (f.port < 0) throw std::invalid_argument("remote seats need --port");
  net::Listener l = net::Listener::bind(f.port, "0.0.0.0");
  std::cerr << "waiting for remote agents on port " << l.port() << "\n";
  return l;
}

int run_game_cmd(const GameFlags& f) {
  const auto seats = parse_agent_mix(f.agents);
  const GameConfig config = config_from(f);
  auto listener = listener_for(seats, f);
  SeatOptions options;
  if (listener) options.listener = &*listener;
  const GameRun run = play(config, seats, options);
  write_game_artifacts(f.out, run, seats);
  std::cout << score_table(run, seats);
  std::cout << "transactions: " << run.log.size() << "  digest: " << digest(transaction_log_text(run)) << "\n";
  return 0;
}

int run_tournament_cmd(const GameFlags& f, int games) {
  const auto seats = parse_agent_mix(f.agents);
  auto listener = listener_for(seats, f);
  SeatOptions options;
  if (listener) options.listener = &*listener;
  const TournamentSummary summary = run_tournament(config_from(f), games, seats, f.out, options);
  if (games == 0) {
    std::printf("0 games\n");
  } else {
    std::printf("%d games, seeds %llu..%llu\n", summary.games, static_cast<unsigned long long>(summary.base_seed),
                static_cast<unsigned long long>(summary.base_seed + games - 1));
  }
  std::printf("%-9s %7s %10s %8s %8s\n", "kind", "samples", "mean", "min", "max");
  for (const KindSummary& k : summary.kinds) {
    std::printf("%-9s %7d %10.2f %8lld %8lld\n", k.kind.c_str(), k.samples, k.mean, static_cast<long long>(k.min),
                static_cast<long long>(k.max));
  }
  return 0;
}

int replay_cmd(const GameFlags& f, const std::string& log) {
  const ReplayOutcome r = replay_verify(log, config_from(f), parse_agent_mix(f.agents));
  std::cout << "expected " << r.expected_digest << "\nactual   " << r.actual_digest << "\n"
            << (r.match ? "replay OK" : "REPLAY MISMATCH") << "\n";
  return r.match ? 0 : 2;
}

int solve_cmd(const std::string& in, std::string method) {
  Json j;
  if (in == "-") {
    j = Json::parse(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(in);
    if (!f) throw std::runtime_error("cannot read " + in);
    j = Json::parse(f);
  }
  const auto prefs = j.at("preferences").get<std::vector<ClientPreference>>();
  const Holdings holdings = j.value("holdings", Json::object()).get<Holdings>();
  const PriceVector prices = j.value("prices", Json::object()).get<PriceVector>();
  if (method.empty()) method = j.value("method", std::string("greedy"));

  Json out;
  if (method == "exact") {
    const AllocationResult r = optimize_exact(prefs, holdings, prices);
    out = Json{{"allocation", r.allocation}, {"objective", r.objective}};
  } else if (method == "greedy") {
    const GreedyResult r = optimize_greedy(prefs, holdings, prices);
    out = Json{{"allocation", r.allocation}, {"objective", r.objective}};
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int agent_cmd(const std::string& kind, const std::string& connect, int listen, int games) {
  if (connect.empty() == (listen < 0)) throw std::invalid_argument("give exactly one of --connect or --listen");
  std::optional<net::Listener> listener;
  if (listen >= 0) {
    listener = net::Listener::bind(listen, "0.0.0.0");
    std::cerr << "agent listening on port " << listener->port() << "\n";
  }
  for (int g = 0; g < games; ++g) {
    auto agent = make_agent(kind);
    net::Socket socket;
    if (listener) {
      socket = listener->accept(std::chrono::hours(24));
    } else {
      const auto colon = connect.rfind(':');
      if (colon == std::string::npos) throw std::invalid_argument("--connect expects HOST:PORT");
      socket = net::Socket::connect(connect.substr(0, colon), std::stoi(connect.substr(colon + 1)));
    }
    const msg::GameEnd end = serve_agent(*agent, socket);
    for (const AgentScore& s : end.scores) {
      std::printf("%d %s %lld\n", s.agent, s.name.c_str(), static_cast<long long>(s.score));
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Travel-market trading game simulator"};
  app.require_subcommand(1);

  GameFlags game_flags;
  auto* run_game = app.add_subcommand("run-game", "Play one game and write its log and scores");
  add_game_flags(run_game, game_flags, true);

  GameFlags tour_flags;
  tour_flags.seed = 0;
  int games = 5;
  auto* tour = app.add_subcommand("run-tournament", "Play seeded games and summarize scores per agent kind");
  add_game_flags(tour, tour_flags, true);
  tour->add_option("--games", games, "Number of games")->check(CLI::NonNegativeNumber)->capture_default_str();

  GameFlags replay_flags;
  std::string log_path;
  auto* replay = app.add_subcommand("replay-verify", "Re-simulate a game and compare its transaction log");
  add_game_flags(replay, replay_flags, false);
  replay->add_option("--log", log_path, "transactions.jsonl to check")->required();

  std::string solve_in = "-";
  std::string method;
  auto* solve = app.add_subcommand("solve", "Allocate goods to clients for a JSON instance");
  solve->add_option("--in", solve_in, "Instance file, - for stdin")->capture_default_str();
  solve->add_option("--method", method, "greedy or exact")->check(CLI::IsMember({"greedy", "exact"}));

  std::string kind = "tota";
  std::string connect;
  int listen = -1;
  int agent_games = 1;
  auto* agent = app.add_subcommand("agent", "Run a built-in agent over a socket");
  agent->add_option("--kind", kind, "tota, random or greedy")
      ->check(CLI::IsMember({"tota", "random", "greedy"}))
      ->capture_default_str();
  agent->add_option("--connect", connect, "Server HOST:PORT to join");
  agent->add_option("--listen", listen, "Port to wait on for the server")->check(CLI::Range(0, 65535));
  agent->add_option("--games", agent_games, "Games to play before exiting")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*run_game) return run_game_cmd(game_flags);
    if (*tour) return run_tournament_cmd(tour_flags, games);
    if (*replay) return replay_cmd(replay_flags, log_path);
    if (*solve) return solve_cmd(solve_in, method);
    if (*agent) return agent_cmd(kind, connect, listen, agent_games);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
