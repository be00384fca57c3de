#include "tac/tournament.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tac/agents.hpp"

namespace tac {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

int parse_count(const std::string& text, const std::string& entry) {
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || n < 1) throw std::invalid_argument("bad repeat count in '" + entry + "'");
  return n;
}

SeatSpec parse_external(const std::string& entry) {
  const std::string rest = entry.substr(std::string("external:").size());
  const auto colon = rest.rfind(':');
  if (colon == std::string::npos || colon == 0) throw std::invalid_argument("expected external:HOST:PORT, got '" + entry + "'");
  SeatSpec seat{"external", rest.substr(0, colon), 0};
  seat.port = parse_count(rest.substr(colon + 1), entry);
  if (seat.port > 65535) throw std::invalid_argument("port out of range in '" + entry + "'");
  return seat;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("error writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

std::vector<SeatSpec> parse_agent_mix(const std::string& text) {
  std::vector<SeatSpec> seats;
  std::stringstream in(text);
  std::string entry;
  while (std::getline(in, entry, ',')) {
    entry = trim(entry);
    if (entry.empty()) throw std::invalid_argument("empty entry in agent mix '" + text + "'");
    if (entry.rfind("external:", 0) == 0) {
      seats.push_back(parse_external(entry));
      continue;
    }
    std::string kind = entry;
    int count = 1;
    static const std::string kTimes = "\xC3\x97";
    std::size_t pos = entry.find(kTimes);
    std::size_t width = kTimes.size();
    if (pos == std::string::npos) {
      pos = entry.find('*');
      width = 1;
    }
    if (pos != std::string::npos) {
      kind = trim(entry.substr(0, pos));
      count = parse_count(trim(entry.substr(pos + width)), entry);
    }
    if (!is_builtin_agent(kind) && kind != "remote") throw std::invalid_argument("unknown agent kind '" + kind + "'");
    for (int i = 0; i < count; ++i) seats.push_back(SeatSpec{kind, "", 0});
  }
  if (seats.empty()) throw std::invalid_argument("agent mix is empty");
  return seats;
}

std::vector<std::unique_ptr<AgentSession>> open_sessions(const std::vector<SeatSpec>& seats,
                                                         const GameConfig& config, const SeatOptions& options) {
  const std::chrono::milliseconds grace(config.agent_grace_ms);
  std::vector<std::unique_ptr<AgentSession>> sessions;
  for (const SeatSpec& seat : seats) {
    if (seat.is_external()) {
      sessions.push_back(SocketSession::dial(seat.host, seat.port, grace));
    } else if (seat.is_remote()) {
      if (options.listener == nullptr) throw std::invalid_argument("remote seats need a listening port (--port)");
      sessions.push_back(SocketSession::accept(*options.listener, options.connect_wait, grace));
    } else {
      sessions.push_back(std::make_unique<InProcessSession>(make_agent(seat.kind)));
    }
  }
  return sessions;
}

GameRun play(const GameConfig& config, const std::vector<SeatSpec>& seats, const SeatOptions& options) {
  if (static_cast<int>(seats.size()) != config.agents) {
    throw std::invalid_argument("agent mix has " + std::to_string(seats.size()) + " seats, game needs " +
                                std::to_string(config.agents));
  }
  auto sessions = open_sessions(seats, config, options);
  return run_game(config, sessions);
}

std::string transaction_log_text(const GameRun& run) {
  std::string text;
  for (const Transaction& tx : run.log) {
    text += dump_line(Json(tx));
    text += '\n';
  }
  Json record = run.result;
  record["type"] = "result";
  text += dump_line(record);
  text += '\n';
  return text;
}

Json result_json(const GameRun& run, const std::vector<SeatSpec>& seats) {
  Json j = run.result;
  for (std::size_t i = 0; i < seats.size() && i < j["agents"].size(); ++i) j["agents"][i]["kind"] = seats[i].kind;
  return j;
}

std::string score_table(const GameRun& run, const std::vector<SeatSpec>& seats) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-4s %-9s %-12s %8s %8s %8s %8s %6s\n", "seat", "kind", "name", "utility", "spend",
                "revenue", "score", "served");
  out += line;
  for (const AgentScore& a : run.result.agents) {
    int served = 0;
    for (const auto& p : a.packages) served += p.has_value();
    const std::string kind = a.agent < static_cast<int>(seats.size()) ? seats[a.agent].kind : "?";
    std::snprintf(line, sizeof line, "%-4d %-9s %-12s %8lld %8lld %8lld %8lld %6d\n", a.agent, kind.c_str(),
                  a.name.substr(0, 12).c_str(), static_cast<long long>(a.utility), static_cast<long long>(a.spend),
                  static_cast<long long>(a.revenue), static_cast<long long>(a.score), served);
    out += line;
  }
  return out;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

void write_game_artifacts(const std::filesystem::path& dir, const GameRun& run, const std::vector<SeatSpec>& seats) {
  std::filesystem::create_directories(dir);
  write_file(dir / "transactions.jsonl", transaction_log_text(run));
  write_file(dir / "result.json", result_json(run, seats).dump(2) + "\n");
  write_file(dir / "scores.txt", score_table(run, seats));
}

TournamentSummary summarize(const std::vector<GameRun>& runs, const std::vector<SeatSpec>& seats,
                            std::uint64_t base_seed) {
  TournamentSummary summary;
  summary.games = static_cast<int>(runs.size());
  summary.base_seed = base_seed;
  std::map<std::string, std::size_t> index;
  std::vector<double> totals;
  for (const GameRun& run : runs) {
    for (const AgentScore& a : run.result.agents) {
      const std::string& kind = seats.at(static_cast<std::size_t>(a.agent)).kind;
      auto [it, fresh] = index.emplace(kind, summary.kinds.size());
      if (fresh) {
        summary.kinds.push_back(KindSummary{kind, 0, 0, std::numeric_limits<Money>::max(),
                                            std::numeric_limits<Money>::min()});
        totals.push_back(0);
      }
      KindSummary& k = summary.kinds[it->second];
      ++k.samples;
      totals[it->second] += static_cast<double>(a.score);
      k.min = std::min(k.min, a.score);
      k.max = std::max(k.max, a.score);
    }
  }
  for (std::size_t i = 0; i < summary.kinds.size(); ++i) summary.kinds[i].mean = totals[i] / summary.kinds[i].samples;
  return summary;
}

void write_summary(const std::filesystem::path& out, const TournamentSummary& summary) {
  std::filesystem::create_directories(out);
  std::string csv = "kind,samples,mean,min,max\n";
  Json kinds = Json::array();
  for (const KindSummary& k : summary.kinds) {
    char row[128];
    std::snprintf(row, sizeof row, "%s,%d,%.4f,%lld,%lld\n", k.kind.c_str(), k.samples, k.mean,
                  static_cast<long long>(k.min), static_cast<long long>(k.max));
    csv += row;
    kinds.push_back(Json{{"kind", k.kind}, {"samples", k.samples}, {"mean", k.mean}, {"min", k.min}, {"max", k.max}});
  }
  write_file(out / "summary.csv", csv);
  Json j{{"games", summary.games}, {"base_seed", summary.base_seed}, {"kinds", kinds}};
  write_file(out / "summary.json", j.dump(2) + "\n");
}

TournamentSummary run_tournament(const GameConfig& base, int games, const std::vector<SeatSpec>& seats,
                                 const std::filesystem::path& out, const SeatOptions& options) {
  if (games < 0) throw std::invalid_argument("game count must be non-negative");
  std::vector<GameRun> runs;
  for (int i = 0; i < games; ++i) {
    GameConfig config = base;
    config.seed = base.seed + static_cast<std::uint64_t>(i);
    GameRun run = play(config, seats, options);
    char name[32];
    std::snprintf(name, sizeof name, "game-%03d", i);
    write_game_artifacts(out / name, run, seats);
    run.log.clear();
    runs.push_back(std::move(run));
  }
  TournamentSummary summary = summarize(runs, seats, base.seed);
  write_summary(out, summary);
  return summary;
}

ReplayOutcome replay_verify(const std::filesystem::path& log, const GameConfig& config,
                            const std::vector<SeatSpec>& seats) {
  for (const SeatSpec& seat : seats) {
    if (!seat.in_process()) throw std::invalid_argument("only built-in agents can be replayed, got " + seat.kind);
  }
  ReplayOutcome outcome;
  outcome.expected_digest = digest(read_file(log));
  outcome.actual_digest = digest(transaction_log_text(play(config, seats)));
  outcome.match = outcome.expected_digest == outcome.actual_digest;
  return outcome;
}

}  // namespace tac
