#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tac/market.hpp"

namespace tac {

/// Current acquisition price per good; nullopt marks a good that cannot be bought
/// (closed auction, or no seller in the CDA).
class PriceVector {
 public:
  /// Every good unobtainable.
  PriceVector() = default;

  static PriceVector uniform(Money price);

  void set(GoodId good, Money price);
  void set_unobtainable(GoodId good) { prices_[good.index()].reset(); }
  std::optional<Money> price(GoodId good) const { return prices_[good.index()]; }
  bool obtainable(GoodId good) const { return prices_[good.index()].has_value(); }

 private:
  std::array<std::optional<Money>, kNumGoods> prices_{};
};

struct Allocation {
  std::vector<std::optional<TravelPackage>> packages;

  /// Sum of required goods over served clients.
  Holdings demand() const;
  int served() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Cost of buying whatever part of `pkg` the `available` holdings do not cover.
/// nullopt when an uncovered good is unobtainable.
std::optional<Money> marginal_cost(const TravelPackage& pkg, const Holdings& available,
                                   const PriceVector& prices);

/// Sum of client utilities minus the cost of the uncovered part of the joint
/// demand; nullopt if the allocation needs an unobtainable good.
std::optional<Money> allocation_objective(std::span<const ClientPreference> prefs,
                                          const Allocation& alloc, const Holdings& holdings,
                                          const PriceVector& prices);

/// One candidate per (arrival, departure, hotel) whose flights and rooms are
/// obtainable, carrying the event assignment with the highest premium net of ticket
/// cost. Order: earlier arrival, shorter stay, BETTER before ALT.
std::vector<TravelPackage> enumerate_packages(const ClientPreference& pref, const Holdings& available,
                                              const PriceVector& prices);

/// Every valid package (all event assignments) whose goods are obtainable.
std::vector<TravelPackage> enumerate_all_packages(const ClientPreference& pref,
                                                  const Holdings& available,
                                                  const PriceVector& prices);

class InstanceTooLarge : public std::invalid_argument {
 public:
  InstanceTooLarge() : std::invalid_argument("INSTANCE_TOO_LARGE") {}
};

struct AllocationResult {
  Allocation allocation;
  Money objective = 0;
};

inline constexpr std::size_t kExactClientLimit = 3;

/// Exhaustive branch-and-bound over joint package choices. Throws InstanceTooLarge
/// above `max_clients`.
AllocationResult optimize_exact(std::span<const ClientPreference> prefs, const Holdings& holdings,
                                const PriceVector& prices,
                                std::size_t max_clients = kExactClientLimit);

struct GreedyResult {
  Allocation allocation;
  Money objective = 0;
  Money seed_objective = 0;
  /// Objective after the seed and after every accepted move.
  std::vector<Money> trace;
};

/// Greedy seed followed by best-improvement hill climbing over package-level
/// moves: hotel switch, arrival/departure shift, event add/drop/move, package
/// drop, and serving an unserved client.
///
/// With `previous`, the earlier plan is repaired (hotel switch, then date shifts,
/// then drop for packages needing unobtainable goods) and used as the seed when it
/// beats the fresh greedy seed.
GreedyResult optimize_greedy(std::span<const ClientPreference> prefs, const Holdings& holdings,
                             const PriceVector& prices, const Allocation* previous = nullptr);

}  // namespace tac
