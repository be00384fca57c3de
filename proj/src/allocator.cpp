#include "tac/allocator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace tac {

PriceVector PriceVector::uniform(Money price) {
  PriceVector v;
  for (GoodId g : GoodId::all()) v.set(g, price);
  return v;
}

void PriceVector::set(GoodId good, Money price) {
  if (price < 0) throw std::invalid_argument("price must be non-negative");
  prices_[good.index()] = price;
}

Holdings Allocation::demand() const {
  Holdings total;
  for (const auto& pkg : packages) {
    if (pkg) total += required_goods(*pkg);
  }
  return total;
}

int Allocation::served() const {
  return static_cast<int>(std::count_if(packages.begin(), packages.end(),
                                        [](const auto& p) { return p.has_value(); }));
}

namespace {

using EventNights = std::array<std::optional<int>, 3>;

/// Injective partial maps EventKind -> night in [arrival, departure), nested
/// E1/E2/E3 with "unassigned" first.
std::vector<EventNights> event_assignments(int arrival, int departure) {
  std::vector<std::optional<int>> options{std::nullopt};
  for (int n = arrival; n < departure; ++n) options.push_back(n);
  std::vector<EventNights> out;
  for (const auto& a : options) {
    for (const auto& b : options) {
      if (a && b && *a == *b) continue;
      for (const auto& c : options) {
        if (c && ((a && *a == *c) || (b && *b == *c))) continue;
        out.push_back(EventNights{a, b, c});
      }
    }
  }
  return out;
}

bool obtainable(GoodId good, const Holdings& available, const PriceVector& prices) {
  return available.count(good) > 0 || prices.obtainable(good);
}

std::optional<Money> unit_cost(GoodId good, const Holdings& available, const PriceVector& prices) {
  if (available.count(good) > 0) return 0;
  return prices.price(good);
}

bool base_obtainable(int arrival, int departure, HotelKind hotel, const Holdings& available,
                     const PriceVector& prices) {
  if (!obtainable(GoodId::flight_in(arrival), available, prices)) return false;
  if (!obtainable(GoodId::flight_out(departure), available, prices)) return false;
  for (int n = arrival; n < departure; ++n) {
    if (!obtainable(GoodId::hotel(hotel, n), available, prices)) return false;
  }
  return true;
}

/// Premium-net-of-cost maximizing event assignment within the stay.
EventNights best_events(const ClientPreference& pref, int arrival, int departure,
                        const Holdings& available, const PriceVector& prices) {
  EventNights best{};
  Money best_value = 0;
  for (const EventNights& nights : event_assignments(arrival, departure)) {
    Money value = 0;
    bool ok = true;
    for (EventKind kind : kEventKinds) {
      const auto& night = nights[static_cast<int>(kind)];
      if (!night) continue;
      auto cost = unit_cost(GoodId::event(kind, *night), available, prices);
      if (!cost) {
        ok = false;
        break;
      }
      value += pref.premium(kind) - *cost;
    }
    if (ok && value > best_value) {
      best_value = value;
      best = nights;
    }
  }
  return best;
}

struct Candidate {
  TravelPackage package;
  Money net;
};

std::optional<Candidate> best_candidate(const ClientPreference& pref, const Holdings& available,
                                        const PriceVector& prices) {
  std::optional<Candidate> best;
  for (const TravelPackage& pkg : enumerate_packages(pref, available, prices)) {
    auto cost = marginal_cost(pkg, available, prices);
    if (!cost) continue;
    const Money net = client_utility(pref, pkg) - *cost;
    if (net > 0 && (!best || net > best->net)) best = Candidate{pkg, net};
  }
  return best;
}

bool package_obtainable(const TravelPackage& pkg, const Holdings& available,
                        const PriceVector& prices) {
  const Holdings goods = required_goods(pkg);
  for (GoodId g : GoodId::all()) {
    if (goods.count(g) > 0 && !obtainable(g, available, prices)) return false;
  }
  return true;
}

void drop_events_outside_stay(TravelPackage& pkg) {
  for (auto& night : pkg.events) {
    if (night && (*night < pkg.arrival || *night >= pkg.departure)) night.reset();
  }
}

std::vector<TravelPackage> date_and_hotel_neighbours(const TravelPackage& pkg) {
  std::vector<TravelPackage> out;
  TravelPackage switched = pkg;
  switched.hotel = pkg.hotel == HotelKind::Better ? HotelKind::Alt : HotelKind::Better;
  out.push_back(switched);
  const std::array<std::pair<int, int>, 4> shifts{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
  for (auto [da, dd] : shifts) {
    TravelPackage moved = pkg;
    moved.arrival += da;
    moved.departure += dd;
    if (moved.arrival < 1 || moved.arrival > 4 || moved.departure < 2 || moved.departure > 5 ||
        moved.arrival >= moved.departure) {
      continue;
    }
    drop_events_outside_stay(moved);
    out.push_back(moved);
  }
  return out;
}

std::vector<TravelPackage> event_neighbours(const TravelPackage& pkg) {
  std::vector<TravelPackage> out;
  for (EventKind kind : kEventKinds) {
    const int k = static_cast<int>(kind);
    if (pkg.events[k]) {
      TravelPackage dropped = pkg;
      dropped.events[k].reset();
      out.push_back(dropped);
    }
    for (int n = pkg.arrival; n < pkg.departure; ++n) {
      if (pkg.events[k] == n) continue;
      const bool taken = std::any_of(pkg.events.begin(), pkg.events.end(),
                                     [&](const auto& other) { return other == n; });
      if (taken) continue;
      TravelPackage placed = pkg;
      placed.events[k] = n;
      out.push_back(placed);
    }
  }
  return out;
}

/// Patch a stale package so that every good it needs can still be had.
std::optional<TravelPackage> repair(const TravelPackage& pkg, const Holdings& holdings,
                                    const PriceVector& prices) {
  auto strip_events = [&](TravelPackage p) {
    for (EventKind kind : kEventKinds) {
      auto& night = p.events[static_cast<int>(kind)];
      if (night && !obtainable(GoodId::event(kind, *night), holdings, prices)) night.reset();
    }
    return p;
  };
  if (package_obtainable(pkg, holdings, prices)) return pkg;
  for (const TravelPackage& next : date_and_hotel_neighbours(pkg)) {
    TravelPackage p = strip_events(next);
    if (package_obtainable(p, holdings, prices)) return p;
  }
  TravelPackage stripped = strip_events(pkg);
  if (package_obtainable(stripped, holdings, prices)) return stripped;
  return std::nullopt;
}

}  // namespace

std::optional<Money> marginal_cost(const TravelPackage& pkg, const Holdings& available,
                                   const PriceVector& prices) {
  const Holdings goods = required_goods(pkg);
  Money cost = 0;
  for (GoodId g : GoodId::all()) {
    const int uncovered = goods.count(g) - available.count(g);
    if (uncovered <= 0) continue;
    auto price = prices.price(g);
    if (!price) return std::nullopt;
    cost += *price * uncovered;
  }
  return cost;
}

std::optional<Money> allocation_objective(std::span<const ClientPreference> prefs,
                                          const Allocation& alloc, const Holdings& holdings,
                                          const PriceVector& prices) {
  if (alloc.packages.size() != prefs.size()) {
    throw std::invalid_argument("allocation size does not match client count");
  }
  Money utility = 0;
  for (std::size_t i = 0; i < prefs.size(); ++i) utility += client_utility(prefs[i], alloc.packages[i]);
  const Holdings demand = alloc.demand();
  Money cost = 0;
  for (GoodId g : GoodId::all()) {
    const int uncovered = demand.count(g) - holdings.count(g);
    if (uncovered <= 0) continue;
    auto price = prices.price(g);
    if (!price) return std::nullopt;
    cost += *price * uncovered;
  }
  return utility - cost;
}

std::vector<TravelPackage> enumerate_packages(const ClientPreference& pref, const Holdings& available,
                                              const PriceVector& prices) {
  std::vector<TravelPackage> out;
  for (int arrival = 1; arrival <= 4; ++arrival) {
    for (int departure = arrival + 1; departure <= 5; ++departure) {
      for (HotelKind hotel : kHotelKinds) {
        if (!base_obtainable(arrival, departure, hotel, available, prices)) continue;
        TravelPackage pkg{arrival, departure, hotel, {}};
        pkg.events = best_events(pref, arrival, departure, available, prices);
        out.push_back(pkg);
      }
    }
  }
  return out;
}

std::vector<TravelPackage> enumerate_all_packages(const ClientPreference& /*pref*/,
                                                  const Holdings& available,
                                                  const PriceVector& prices) {
  std::vector<TravelPackage> out;
  for (int arrival = 1; arrival <= 4; ++arrival) {
    for (int departure = arrival + 1; departure <= 5; ++departure) {
      for (HotelKind hotel : kHotelKinds) {
        if (!base_obtainable(arrival, departure, hotel, available, prices)) continue;
        for (const EventNights& nights : event_assignments(arrival, departure)) {
          TravelPackage pkg{arrival, departure, hotel, nights};
          if (package_obtainable(pkg, available, prices)) out.push_back(pkg);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive search

namespace {

struct Sparse {
  std::vector<std::pair<int, int>> goods;  // (index, count)
  Points utility;
};

class ExactSearch {
 public:
  ExactSearch(std::span<const ClientPreference> prefs, const Holdings& holdings,
              const PriceVector& prices)
      : prefs_(prefs), holdings_(holdings), prices_(prices) {
    const std::size_t n = prefs.size();
    candidates_.resize(n);
    sparse_.resize(n);
    bound_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      candidates_[i] = enumerate_all_packages(prefs[i], holdings, prices);
      Money standalone = 0;
      for (const TravelPackage& pkg : candidates_[i]) {
        Sparse s{{}, client_utility(prefs[i], pkg)};
        const Holdings goods = required_goods(pkg);
        for (GoodId g : GoodId::all()) {
          if (goods.count(g) > 0) s.goods.emplace_back(g.index(), goods.count(g));
        }
        sparse_[i].push_back(std::move(s));
        if (auto cost = marginal_cost(pkg, holdings, prices)) {
          standalone = std::max(standalone, client_utility(prefs[i], pkg) - *cost);
        }
      }
      bound_[i] = standalone;
    }
    for (std::size_t i = n; i-- > 0;) bound_[i] += bound_[i + 1];
    demand_.fill(0);
    choice_.assign(n, -1);
    best_choice_ = choice_;
  }

  AllocationResult run() {
    search(0, 0);
    AllocationResult out;
    out.objective = best_;
    out.allocation.packages.resize(prefs_.size());
    for (std::size_t i = 0; i < prefs_.size(); ++i) {
      if (best_choice_[i] >= 0) out.allocation.packages[i] = candidates_[i][best_choice_[i]];
    }
    return out;
  }

 private:
  void search(std::size_t client, Money value) {
    if (client == prefs_.size()) {
      if (value > best_) {
        best_ = value;
        best_choice_ = choice_;
      }
      return;
    }
    if (value + bound_[client] <= best_) return;
    for (std::size_t c = 0; c < candidates_[client].size(); ++c) {
      const Sparse& s = sparse_[client][c];
      Money delta = 0;
      bool ok = true;
      for (auto [g, count] : s.goods) {
        const int before = std::max(0, demand_[g] - holdings_.count(GoodId::from_index(g)));
        const int after = std::max(0, demand_[g] + count - holdings_.count(GoodId::from_index(g)));
        if (after == before) continue;
        auto price = prices_.price(GoodId::from_index(g));
        if (!price) {
          ok = false;
          break;
        }
        delta += *price * (after - before);
      }
      if (!ok) continue;
      for (auto [g, count] : s.goods) demand_[g] += count;
      choice_[client] = static_cast<int>(c);
      search(client + 1, value + s.utility - delta);
      for (auto [g, count] : s.goods) demand_[g] -= count;
    }
    choice_[client] = -1;
    search(client + 1, value);
  }

  std::span<const ClientPreference> prefs_;
  const Holdings& holdings_;
  const PriceVector& prices_;
  std::vector<std::vector<TravelPackage>> candidates_;
  std::vector<std::vector<Sparse>> sparse_;
  std::vector<Money> bound_;
  std::array<int, kNumGoods> demand_{};
  std::vector<int> choice_;
  std::vector<int> best_choice_;
  Money best_ = 0;
};

}  // namespace

AllocationResult optimize_exact(std::span<const ClientPreference> prefs, const Holdings& holdings,
                                const PriceVector& prices, std::size_t max_clients) {
  if (prefs.size() > max_clients) throw InstanceTooLarge();
  return ExactSearch(prefs, holdings, prices).run();
}

// ---------------------------------------------------------------------------
// Greedy + local search

GreedyResult optimize_greedy(std::span<const ClientPreference> prefs, const Holdings& holdings,
                             const PriceVector& prices, const Allocation* previous) {
  const std::size_t n = prefs.size();

  std::vector<Money> standalone(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = best_candidate(prefs[i], holdings, prices)) standalone[i] = c->net;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return standalone[a] > standalone[b]; });

  Allocation current;
  current.packages.resize(n);
  Holdings remaining = holdings;
  for (std::size_t i : order) {
    if (auto c = best_candidate(prefs[i], remaining, prices)) {
      current.packages[i] = c->package;
      remaining = remaining.minus(required_goods(c->package));
    }
  }
  Money objective = allocation_objective(prefs, current, holdings, prices).value_or(0);

  if (previous != nullptr && previous->packages.size() == n) {
    Allocation repaired;
    repaired.packages.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (previous->packages[i]) repaired.packages[i] = repair(*previous->packages[i], holdings, prices);
    }
    auto value = allocation_objective(prefs, repaired, holdings, prices);
    if (value && *value >= objective) {
      current = std::move(repaired);
      objective = *value;
    }
  }

  GreedyResult result;
  result.seed_objective = objective;
  result.trace.push_back(objective);

  for (;;) {
    std::optional<Allocation> best_move;
    Money best_value = objective;
    auto consider = [&](std::size_t client, std::optional<TravelPackage> pkg) {
      Allocation trial = current;
      trial.packages[client] = std::move(pkg);
      auto value = allocation_objective(prefs, trial, holdings, prices);
      if (value && *value > best_value) {
        best_value = *value;
        best_move = std::move(trial);
      }
    };

    for (std::size_t i = 0; i < n; ++i) {
      if (const auto& pkg = current.packages[i]) {
        for (TravelPackage next : date_and_hotel_neighbours(*pkg)) consider(i, next);
        for (TravelPackage next : event_neighbours(*pkg)) consider(i, next);
        consider(i, std::nullopt);
      } else {
        Allocation others = current;
        others.packages[i].reset();
        const Holdings available = holdings.minus(others.demand());
        if (auto c = best_candidate(prefs[i], available, prices)) consider(i, c->package);
      }
    }

    if (!best_move) break;
    current = std::move(*best_move);
    objective = best_value;
    result.trace.push_back(objective);
  }

  result.allocation = std::move(current);
  result.objective = objective;
  return result;
}

}  // namespace tac
