#pragma once

// Brute-force allocation oracle. Shares nothing with the optimizer beyond the
// market-core scoring functions: its own package enumeration, its own joint cost
// accounting, no pruning.

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "tac/allocator.hpp"
#include "tac/market.hpp"

namespace tac::oracle {

inline std::vector<TravelPackage> all_packages() {
  std::vector<TravelPackage> out;
  for (int a = 1; a <= 4; ++a) {
    for (int d = a + 1; d <= 5; ++d) {
      for (HotelKind h : kHotelKinds) {
        // Each event kind: unassigned (0) or a night in [a, d).
        for (int e1 = 0; e1 <= 4; ++e1) {
          for (int e2 = 0; e2 <= 4; ++e2) {
            for (int e3 = 0; e3 <= 4; ++e3) {
              TravelPackage p{a, d, h, {}};
              if (e1) p.events[0] = e1;
              if (e2) p.events[1] = e2;
              if (e3) p.events[2] = e3;
              if (is_valid(p)) out.push_back(p);
            }
          }
        }
      }
    }
  }
  return out;
}

/// Joint objective: utilities minus price of every unit not covered by holdings.
inline std::optional<Money> objective(const std::vector<ClientPreference>& prefs,
                                      const std::vector<std::optional<TravelPackage>>& choice,
                                      const Holdings& holdings, const PriceVector& prices) {
  std::array<int, kNumGoods> need{};
  Money total = 0;
  for (std::size_t i = 0; i < prefs.size(); ++i) {
    if (!choice[i]) continue;
    total += client_utility(prefs[i], choice[i]);
    const auto& p = *choice[i];
    need[GoodId::flight_in(p.arrival).index()] += 1;
    need[GoodId::flight_out(p.departure).index()] += 1;
    for (int n = p.arrival; n < p.departure; ++n) need[GoodId::hotel(p.hotel, n).index()] += 1;
    for (EventKind k : kEventKinds) {
      if (p.event_night(k)) need[GoodId::event(k, *p.event_night(k)).index()] += 1;
    }
  }
  for (int g = 0; g < kNumGoods; ++g) {
    const int missing = need[g] - holdings.counts()[g];
    if (missing <= 0) continue;
    auto price = prices.price(GoodId::from_index(g));
    if (!price) return std::nullopt;
    total -= *price * missing;
  }
  return total;
}

inline Money best_objective(const std::vector<ClientPreference>& prefs, const Holdings& holdings,
                            const PriceVector& prices) {
  // Packages that need a good which is neither held nor priced can never be part
  // of a finite objective.
  std::vector<TravelPackage> packages;
  for (const auto& p : all_packages()) {
    const Holdings goods = required_goods(p);
    bool usable = true;
    for (GoodId g : GoodId::all()) {
      if (goods.count(g) > 0 && holdings.count(g) == 0 && !prices.obtainable(g)) usable = false;
    }
    if (usable) packages.push_back(p);
  }
  std::vector<std::optional<TravelPackage>> choice(prefs.size());
  Money best = std::numeric_limits<Money>::min();
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == prefs.size()) {
      if (auto v = objective(prefs, choice, holdings, prices)) best = std::max(best, *v);
      return;
    }
    choice[i].reset();
    rec(i + 1);
    for (const auto& p : packages) {
      choice[i] = p;
      rec(i + 1);
    }
    choice[i].reset();
  };
  rec(0);
  return best;
}

}  // namespace tac::oracle
