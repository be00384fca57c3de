// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "oracle.hpp"
#include "tac/agents.hpp"
#include "tac/tournament.hpp"

using namespace tac;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

// Hand-written scoring, independent of the library's.
Points expected_penalty(const ClientPreference& p, const TravelPackage& k) {
  return 100 * (std::abs(k.arrival - p.preferred_arrival) + std::abs(k.departure - p.preferred_departure));
}
Points expected_hotel(const ClientPreference& p, const TravelPackage& k) {
  return k.hotel == HotelKind::Better ? p.hotel_premium : 0;
}
Points expected_fun(const ClientPreference& p, const TravelPackage& k) {
  Points sum = 0;
  for (int e = 0; e < 3; ++e) {
    if (k.events[e]) sum += p.event_premium[e];
  }
  return sum;
}

Verdict criterion_ranges() {
  Verdict v;
  const auto start = Clock::now();
  Rng rng(1001);
  for (int i = 0; i < 20000; ++i) {
    const ClientPreference p = testgen::random_preference(rng);
    const TravelPackage k = testgen::random_package(rng);
    const Points pen = travel_penalty(p, k), hb = hotel_bonus(p, k), fb = fun_bonus(p, k);
    const Points u = client_utility(p, k);
    v.require(pen >= 0 && pen <= 600 && pen % 100 == 0, "travel_penalty out of range");
    v.require(hb >= 0 && hb <= 150, "hotel_bonus out of range");
    v.require(fb >= 0 && fb <= 600, "fun_bonus out of range");
    v.require(u >= 400 && u <= 1750, "client_utility out of range");
  }
  const ClientPreference early{1, 2, 150, {200, 200, 200}};
  const TravelPackage late{4, 5, HotelKind::Alt, {}};
  const ClientPreference long_stay{1, 4, 150, {200, 200, 200}};
  const TravelPackage full{1, 4, HotelKind::Better, {1, 2, 3}};
  v.require(travel_penalty(early, late) == 600, "penalty witness 600");
  v.require(hotel_bonus(long_stay, full) == 150, "hotel witness 150");
  v.require(fun_bonus(long_stay, full) == 600, "fun witness 600");
  v.require(client_utility(early, late) == 400, "utility witness 400");
  v.require(client_utility(long_stay, full) == 1750, "utility witness 1750");
  const double t = seconds_since(start);
  v.require(t < 5.0, "took longer than 5 s");
  v.detail = v.pass ? "20000 pairs, witnesses 600/150/600/400/1750, " + std::to_string(t) + " s" : v.detail;
  return v;
}

Verdict criterion_decomposition() {
  Verdict v;
  Rng rng(1002);
  for (int i = 0; i < 20000; ++i) {
    const ClientPreference p = testgen::random_preference(rng);
    const TravelPackage k = testgen::random_package(rng);
    v.require(travel_penalty(p, k) == expected_penalty(p, k), "penalty differs from hand formula");
    v.require(hotel_bonus(p, k) == expected_hotel(p, k), "hotel bonus differs from hand formula");
    v.require(fun_bonus(p, k) == expected_fun(p, k), "fun bonus differs from hand formula");
    v.require(client_utility(p, k) == 1000 - expected_penalty(p, k) + expected_hotel(p, k) + expected_fun(p, k),
              "utility != 1000 - penalty + hotel + fun");
  }
  if (v.pass) v.detail = "20000 pairs, exact";
  return v;
}

Verdict criterion_hotel_bid() {
  Verdict v;
  Rng rng(1003);
  for (int i = 0; i < 1000; ++i) {
    const Money a1 = rng.uniform_int(0, 500), a2 = rng.uniform_int(0, 500), ask = rng.uniform_int(0, 500);
    const Money momentum = (a1 - a2) + ask;
    const Money expected = momentum > ask ? momentum : ask + 1;
    v.require(hotel_bid_price(a1, a2, ask) == expected, "hotel_bid_price mismatch");
  }
  if (v.pass) v.detail = "1000 triples, exact";
  return v;
}

Verdict criterion_sell_price() {
  Verdict v;
  const double total = 540;
  v.require(std::abs(sell_price(0, total) - 200.0) < 1e-9, "p(0) != 200");
  v.require(std::abs(sell_price(total, total)) < 1e-9, "p(T) != 0");
  double previous = sell_price(0, total);
  for (int i = 1; i <= 1000; ++i) {
    const double p = sell_price(total * i / 1000.0, total);
    v.require(p < previous, "not strictly decreasing");
    previous = p;
  }
  const long double half = 200.0L * (1.0L - std::log1p((std::exp(1.0L) - 1.0L) * 0.5L));
  const double mid = sell_price(total / 2, total);
  v.require(std::abs(mid - 75.98) <= 0.01, "p(T/2) not 75.98 +- 0.01");
  v.require(std::abs(mid - static_cast<double>(half)) < 1e-9, "p(T/2) disagrees with re-evaluation");
  if (v.pass) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "p(0)=200 p(T)=0 p(T/2)=%.4f, 1000 grid points decreasing", mid);
    v.detail = buf;
  }
  return v;
}

// Sort-based clearing: top `capacity` unit bids by price, earlier first on ties.
struct UnitOracleBid {
  AgentId agent;
  Money price;
  int order;
};

Money oracle_ask(std::vector<UnitOracleBid> bids, int capacity) {
  if (static_cast<int>(bids.size()) < capacity) return 0;
  std::sort(bids.begin(), bids.end(), [](const auto& a, const auto& b) { return a.price > b.price; });
  return bids[static_cast<std::size_t>(capacity - 1)].price;
}

struct StreamStats {
  int rejected_bids = 0;
  int fills = 0;
};

void check_hotel_round(Rng& rng, Verdict& v, StreamStats& stats) {
  const int capacity = 16;
  HotelAuction auction(GoodId::hotel(HotelKind::Alt, 3), capacity);
  std::vector<UnitOracleBid> bids;
  const int submissions = static_cast<int>(rng.uniform_int(1, 40));
  for (int s = 0; s < submissions; ++s) {
    const AgentId agent = static_cast<AgentId>(rng.uniform_int(0, 7));
    std::vector<BidPoint> points;
    const int n = static_cast<int>(rng.uniform_int(1, 3));
    for (int i = 0; i < n; ++i) points.push_back(BidPoint{static_cast<int>(rng.uniform_int(1, 4)), rng.uniform_int(0, 300)});
    const Money ask = oracle_ask(bids, capacity);
    bool ok = true;
    for (const BidPoint& p : points) ok = ok && p.price >= ask + 1;
    bool accepted = true;
    try {
      auction.submit(agent, points, s);
    } catch (const AuctionError&) {
      accepted = false;
    }
    v.require(accepted == ok, "beat-the-quote decision differs from oracle");
    stats.rejected_bids += !accepted;
    if (!accepted) continue;
    for (const BidPoint& p : points) {
      for (int u = 0; u < p.qty; ++u) bids.push_back(UnitOracleBid{agent, p.price, static_cast<int>(bids.size())});
    }
    v.require(auction.ask() == oracle_ask(bids, capacity), "ask differs from oracle");
  }
  std::stable_sort(bids.begin(), bids.end(), [](const auto& a, const auto& b) { return a.price > b.price; });
  const Money price = static_cast<int>(bids.size()) < capacity ? 0 : bids[capacity - 1].price;
  std::map<AgentId, int> expected, actual;
  for (std::size_t i = 0; i < bids.size() && i < static_cast<std::size_t>(capacity); ++i) ++expected[bids[i].agent];
  for (const Transaction& t : auction.close(540)) {
    v.require(t.price == price, "clearing price differs from oracle");
    v.require(t.seller == kMarket, "hotel seller is not the market");
    actual[t.buyer] += t.qty;
  }
  v.require(actual == expected, "winners differ from oracle");
}

void check_cda_round(Rng& rng, Verdict& v, StreamStats& stats) {
  const int agents = 4;
  OrderBook book(GoodId::event(EventKind::E1, 2));
  std::vector<int> owned(agents);
  int total = 0;
  for (int& o : owned) {
    o = static_cast<int>(rng.uniform_int(0, 4));
    total += o;
  }
  struct Resting {
    AgentId agent;
    Side side;
    Money price;
    int qty;
  };
  std::map<OrderId, Resting> mirror;
  auto best = [&](Side side) {
    std::optional<Money> b;
    for (const auto& [id, r] : mirror) {
      if (r.side != side) continue;
      if (!b || (side == Side::Buy ? r.price > *b : r.price < *b)) b = r.price;
    }
    return b;
  };
  auto apply_fills = [&](const OrderResult& res, OrderId incoming, Side side, Money limit) {
    stats.fills += static_cast<int>(res.fills.size());
    for (const Transaction& t : res.fills) {
      const OrderId resting_id = side == Side::Buy ? *t.sell_order : *t.buy_order;
      v.require(resting_id != incoming, "incoming order filled as resting side");
      auto it = mirror.find(resting_id);
      if (it == mirror.end()) {
        v.require(false, "fill against an order not in the book");
        continue;
      }
      v.require(t.price == it->second.price, "trade not at the resting price");
      v.require(best(it->second.side) == it->second.price, "trade skipped a better resting price");
      v.require(side == Side::Buy ? limit >= t.price : limit <= t.price, "trade outside the incoming limit");
      owned[t.buyer] += t.qty;
      owned[t.seller] -= t.qty;
      it->second.qty -= t.qty;
      if (it->second.qty == 0) mirror.erase(it);
    }
  };
  std::vector<OrderId> ids;
  const int ops = static_cast<int>(rng.uniform_int(5, 60));
  for (int op = 0; op < ops; ++op) {
    const AgentId agent = static_cast<AgentId>(rng.uniform_int(0, agents - 1));
    const int kind = static_cast<int>(rng.uniform_int(0, 9));
    try {
      if (kind < 7) {
        const Side side = rng.bernoulli(0.5) ? Side::Buy : Side::Sell;
        const Money limit = rng.uniform_int(0, 200);
        const int qty = static_cast<int>(rng.uniform_int(1, 3));
        int resting_sells = 0;
        for (const auto& [id, r] : mirror) {
          if (r.agent == agent && r.side == Side::Sell) resting_sells += r.qty;
        }
        const bool allowed = side == Side::Buy || owned[agent] - resting_sells >= qty;
        OrderResult res;
        try {
          res = book.submit(agent, side, limit, qty, owned[agent], op);
        } catch (const AuctionError& e) {
          v.require(!allowed && e.code() == AuctionErrorCode::InsufficientTickets, "unexpected submit rejection");
          continue;
        }
        v.require(allowed, "short sale accepted");
        apply_fills(res, res.order_id, side, limit);
        int filled = 0;
        for (const Transaction& t : res.fills) filled += t.qty;
        if (filled < qty) mirror[res.order_id] = Resting{agent, side, limit, qty - filled};
        ids.push_back(res.order_id);
      } else if (kind < 9 && !ids.empty()) {
        const OrderId id = ids[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(ids.size()) - 1))];
        auto it = mirror.find(id);
        if (it == mirror.end()) continue;
        const Money limit = rng.uniform_int(0, 200);
        Resting r = it->second;
        mirror.erase(it);
        const OrderResult res = book.replace(r.agent, id, limit, op);
        apply_fills(res, id, r.side, limit);
        int filled = 0;
        for (const Transaction& t : res.fills) filled += t.qty;
        if (filled < r.qty) mirror[id] = Resting{r.agent, r.side, limit, r.qty - filled};
      } else if (!ids.empty()) {
        const OrderId id = ids.back();
        auto it = mirror.find(id);
        if (it == mirror.end()) continue;
        book.cancel(it->second.agent, id);
        mirror.erase(it);
      }
    } catch (const AuctionError& e) {
      v.require(false, std::string("unexpected error ") + e.what());
    }
    int sum = 0;
    for (int o : owned) {
      v.require(o >= 0, "negative ticket holding");
      sum += o;
    }
    v.require(sum == total, "tickets not conserved");
    v.require(book.best_ask() == best(Side::Sell) && book.best_bid() == best(Side::Buy), "book quote differs from mirror");
    if (auto bid = book.best_bid(), ask = book.best_ask(); bid && ask) v.require(*bid < *ask, "crossed book at rest");
  }
}

Verdict criterion_auction_oracles() {
  Verdict v;
  Rng rng(1005);
  StreamStats stats;
  for (int i = 0; i < 1000; ++i) check_hotel_round(rng, v, stats);
  for (int i = 0; i < 1000; ++i) check_cda_round(rng, v, stats);
  v.require(stats.rejected_bids > 0 && stats.fills > 0, "streams exercised no rejections or no fills");
  if (v.pass) {
    v.detail = "1000 hotel bid sets (" + std::to_string(stats.rejected_bids) + " low bids rejected), 1000 CDA streams (" +
               std::to_string(stats.fills) + " fills)";
  }
  return v;
}

Verdict criterion_allocator() {
  Verdict v;
  const auto start = Clock::now();
  Rng rng(1006);
  double ratio_sum = 0;
  int single = 0;
  for (int i = 0; i < 50; ++i) {
    const int clients = 1 + i % 3;
    const testgen::Instance inst = testgen::random_instance(rng, clients);
    const Money exact = optimize_exact(inst.prefs, inst.holdings, inst.prices).objective;
    const Money oracle = oracle::best_objective(inst.prefs, inst.holdings, inst.prices);
    v.require(exact == oracle, "optimize_exact differs from brute-force oracle");
    const Money greedy = optimize_greedy(inst.prefs, inst.holdings, inst.prices).objective;
    ratio_sum += exact > 0 ? static_cast<double>(greedy) / static_cast<double>(exact) : (greedy >= exact ? 1.0 : 0.0);
    if (clients == 1) {
      ++single;
      v.require(greedy == exact, "greedy below exact on a single-client instance");
    }
  }
  const double ratio = ratio_sum / 50;
  const double t = seconds_since(start);
  v.require(ratio >= 0.9, "greedy averages below 90% of exact");
  v.require(t < 60, "took longer than 60 s");
  if (v.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "50 instances exact==oracle, greedy/exact %.4f, %d single-client exact, %.2f s", ratio,
                  single, t);
    v.detail = buf;
  }
  return v;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tacsim-acceptance-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int tacsim(const std::string& args) {
  const std::string cmd = std::string(TACSIM_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Verdict criterion_determinism() {
  Verdict v;
  const fs::path dir = scratch("determinism");
  const std::string agents = " --agents tota,random*7";
  double slowest = 0;
  for (const char* run : {"a", "b"}) {
    const auto start = Clock::now();
    const int rc = tacsim("run-game --seed 42 --time-scale 0" + agents + " --out " + (dir / run).string());
    slowest = std::max(slowest, seconds_since(start));
    v.require(rc == 0, "run-game failed");
  }
  const std::string a = slurp(dir / "a" / "transactions.jsonl");
  v.require(!a.empty(), "no transaction log written");
  v.require(a == slurp(dir / "b" / "transactions.jsonl"), "transaction logs differ");
  v.require(tacsim("replay-verify --seed 42" + agents + " --log " + (dir / "a" / "transactions.jsonl").string()) == 0,
            "replay-verify failed");
  v.require(slowest < 10, "a game took 10 s or more");
  if (v.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "identical logs (digest %s), replay OK, slowest game %.3f s", digest(a).c_str(),
                  slowest);
    v.detail = buf;
  }
  return v;
}

Verdict criterion_game_structure() {
  Verdict v;
  const std::vector<SeatSpec> seats = parse_agent_mix("tota,random*7");
  int games = 0;
  for (std::uint64_t seed = 42; seed < 52; ++seed, ++games) {
    GameConfig c;
    c.seed = seed;
    const GameRun run = play(c, seats);
    v.require(run.result.closings.size() == 28, "game did not close exactly 28 auctions");
    std::map<int, int> per_minute;
    for (const AuctionClose& close : run.result.closings) {
      if (!close.auction.is_hotel()) continue;
      v.require(close.time % 60 == 0, "hotel closed off a minute boundary");
      ++per_minute[close.time / 60];
    }
    for (int m = 1; m <= 8; ++m) v.require(per_minute[m] == 1, "not exactly one hotel close in some minute");
    v.require(per_minute.size() == 8, "hotel closed outside minutes 1..8");
    Money market = 0;
    std::optional<GameTime> first_flight;
    for (const Transaction& t : run.log) {
      if (t.seller == kMarket) market += t.price * t.qty;
      if (t.buyer == 0 && t.auction.is_flight() && !first_flight) first_flight = t.time;
    }
    v.require(first_flight && *first_flight >= 480, "TOTA bought a flight before 480 s");
    Money net = 0;
    for (const AgentScore& a : run.result.agents) net += a.spend - a.revenue;
    v.require(net == market, "money conservation violated");
  }
  if (v.pass) v.detail = std::to_string(games) + " games: 28 closings, one hotel per minute, TOTA flights >= 480 s, money conserved";
  return v;
}

Verdict criterion_tournament() {
  Verdict v;
  GameConfig base;
  base.seed = 1000;
  const TournamentSummary s = run_tournament(base, 20, parse_agent_mix("tota,random*7"), scratch("tournament"));
  std::map<std::string, KindSummary> by_kind;
  for (const KindSummary& k : s.kinds) by_kind[k.kind] = k;
  v.require(by_kind.count("tota") && by_kind.count("random"), "summary lacks a kind");
  v.require(by_kind["tota"].samples == 20 && by_kind["random"].samples == 140, "wrong sample counts");
  v.require(by_kind["tota"].mean > by_kind["random"].mean, "TOTA mean does not exceed random mean");
  if (v.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "20 games: tota mean %.2f vs random mean %.2f", by_kind["tota"].mean,
                  by_kind["random"].mean);
    v.detail = buf;
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"utility ranges and extreme witnesses", criterion_ranges},
      {"utility decomposition", criterion_decomposition},
      {"hotel bid formula", criterion_hotel_bid},
      {"sell price curve", criterion_sell_price},
      {"hotel and CDA oracles", criterion_auction_oracles},
      {"allocator vs brute force", criterion_allocator},
      {"deterministic replay", criterion_determinism},
      {"game structure", criterion_game_structure},
      {"TOTA beats random", criterion_tournament},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
  }
  fs::remove_all(fs::temp_directory_path() / ("tacsim-acceptance-" + std::to_string(::getpid())));
  return failed == 0 ? 0 : 1;
}
