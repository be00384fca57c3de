#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "tac/tournament.hpp"

using namespace tac;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tacsim-test-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int tacsim(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(TACSIM_PATH) + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int unused_port() {
  net::Listener l = net::Listener::bind(0);
  return l.port();
}

}  // namespace

TEST_CASE("parse_agent_mix") {
  auto seats = parse_agent_mix("tota,random*7");
  REQUIRE(seats.size() == 8);
  CHECK(seats[0].kind == "tota");
  CHECK(seats[7].kind == "random");
  CHECK(parse_agent_mix("tota,random\xC3\x97" "7").size() == 8);
  CHECK(parse_agent_mix(" greedy * 2 , tota").size() == 3);

  seats = parse_agent_mix("external:127.0.0.1:9000,remote");
  REQUIRE(seats.size() == 2);
  CHECK(seats[0].is_external());
  CHECK(seats[0].host == "127.0.0.1");
  CHECK(seats[0].port == 9000);
  CHECK(seats[1].is_remote());

  CHECK_THROWS_AS(parse_agent_mix("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(parse_agent_mix("random*0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_agent_mix(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_agent_mix("tota,,random"), std::invalid_argument);
  CHECK_THROWS_AS(parse_agent_mix("external:nohost"), std::invalid_argument);
}

TEST_CASE("digest is FNV-1a 64") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") == "af63dc4c8601ec8c");
}

TEST_CASE("run-game writes its artifacts and replays deterministically") {
  const fs::path dir = scratch("run-game");
  const std::string agents = " --agents tota,random*7 --time-scale 0";
  REQUIRE(tacsim("run-game --seed 42" + agents + " --out " + (dir / "a").string(), dir / "a.out") == 0);
  REQUIRE(tacsim("run-game --seed 42" + agents + " --out " + (dir / "b").string(), dir / "b.out") == 0);
  for (const char* f : {"transactions.jsonl", "result.json", "scores.txt"}) CHECK(fs::exists(dir / "a" / f));

  const std::string log = slurp(dir / "a" / "transactions.jsonl");
  CHECK(digest(log) == digest(slurp(dir / "b" / "transactions.jsonl")));
  CHECK(slurp(dir / "a.out").find(digest(log)) != std::string::npos);

  // Every line is JSON; the last one is the result record.
  std::istringstream lines(log);
  std::string line, last;
  while (std::getline(lines, line)) {
    Json parsed;
    CHECK_NOTHROW(parsed = Json::parse(line));
    last = line;
  }
  CHECK(Json::parse(last).at("type") == "result");

  const std::string logfile = (dir / "a" / "transactions.jsonl").string();
  CHECK(tacsim("replay-verify --seed 42" + agents + " --log " + logfile, dir / "r1.out") == 0);
  CHECK(tacsim("replay-verify --seed 43" + agents + " --log " + logfile, dir / "r2.out") != 0);
  CHECK(slurp(dir / "r2.out").find("MISMATCH") != std::string::npos);

  // Alter one price in the first transaction.
  std::string altered = log;
  const auto pos = altered.find("\"price\":");
  REQUIRE(pos != std::string::npos);
  altered.insert(pos + 8, "1");
  std::ofstream(dir / "altered.jsonl", std::ios::binary) << altered;
  CHECK(tacsim("replay-verify --seed 42" + agents + " --log " + (dir / "altered.jsonl").string(), dir / "r3.out") != 0);
}

TEST_CASE("run-game fails cleanly when an external seat has no listener") {
  const fs::path dir = scratch("external");
  const std::string mix = "tota,external:127.0.0.1:" + std::to_string(unused_port()) + ",random*6";
  CHECK(tacsim("run-game --agents " + mix + " --out " + dir.string(), dir / "out.txt") == 2);
  CHECK_FALSE(fs::exists(dir / "result.json"));
}

TEST_CASE("usage errors exit with 1") {
  const fs::path dir = scratch("usage");
  CHECK(tacsim("run-game --no-such-flag", dir / "1.txt") == 1);
  CHECK(tacsim("run-game --agents bogus*8 --out " + dir.string(), dir / "2.txt") == 1);
  CHECK(tacsim("run-game --agents tota,random --out " + dir.string(), dir / "3.txt") == 1);
  CHECK(tacsim("", dir / "4.txt") == 1);
  CHECK(tacsim("--help", dir / "5.txt") == 0);
}

TEST_CASE("run-tournament summary matches the per-game results") {
  const fs::path dir = scratch("tournament");
  REQUIRE(tacsim("run-tournament --games 3 --seed 100 --agents tota,random*6,greedy --out " + dir.string(),
                 dir / "out.txt") == 0);
  std::map<std::string, std::vector<Money>> scores;
  for (int g = 0; g < 3; ++g) {
    char name[16];
    std::snprintf(name, sizeof name, "game-%03d", g);
    const Json result = Json::parse(slurp(dir / name / "result.json"));
    CHECK(result.at("seed") == 100 + g);
    for (const Json& a : result.at("agents")) scores[a.at("kind")].push_back(a.at("score").get<Money>());
  }
  const Json summary = Json::parse(slurp(dir / "summary.json"));
  CHECK(summary.at("games") == 3);
  REQUIRE(summary.at("kinds").size() == scores.size());
  for (const Json& k : summary.at("kinds")) {
    const auto& s = scores.at(k.at("kind").get<std::string>());
    double mean = 0;
    for (Money v : s) mean += static_cast<double>(v);
    mean /= static_cast<double>(s.size());
    CHECK(k.at("samples") == s.size());
    CHECK(k.at("mean").get<double>() == doctest::Approx(mean));
    CHECK(k.at("min") == *std::min_element(s.begin(), s.end()));
    CHECK(k.at("max") == *std::max_element(s.begin(), s.end()));
  }

  std::istringstream csv(slurp(dir / "summary.csv"));
  std::string row;
  int rows = 0;
  while (std::getline(csv, row)) ++rows;
  CHECK(rows == 1 + static_cast<int>(scores.size()));
}

TEST_CASE("run-tournament with zero games writes an empty summary") {
  const fs::path dir = scratch("empty");
  REQUIRE(tacsim("run-tournament --games 0 --out " + dir.string(), dir / "out.txt") == 0);
  CHECK(Json::parse(slurp(dir / "summary.json")).at("kinds").empty());
  CHECK(slurp(dir / "summary.csv") == "kind,samples,mean,min,max\n");
}

TEST_CASE("solve allocates a JSON instance") {
  const fs::path dir = scratch("solve");
  const Json instance = {
      {"preferences", {{{"preferred_arrival", 2},
                        {"preferred_departure", 3},
                        {"hotel_premium", 100},
                        {"event_premium", {{"E1", 0}, {"E2", 0}, {"E3", 0}}}}}},
      {"prices", {{"in2", 300}, {"out3", 300}, {"better2", 100}, {"alt2", 50}}}};
  std::ofstream(dir / "instance.json") << instance.dump();
  for (const char* method : {"exact", "greedy"}) {
    REQUIRE(tacsim(std::string("solve --method ") + method + " --in " + (dir / "instance.json").string(),
                   dir / "out.json") == 0);
    const Json out = Json::parse(slurp(dir / "out.json"));
    CHECK(out.at("objective") == 400);
    CHECK(out.at("allocation").at(0).at("hotel") == "BETTER");
  }
}
