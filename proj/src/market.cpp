#include "tac/market.hpp"

#include <cstdlib>
#include <stdexcept>

namespace tac {

std::string_view to_string(HotelKind kind) {
  return kind == HotelKind::Better ? "BETTER" : "ALT";
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::E1: return "E1";
    case EventKind::E2: return "E2";
    case EventKind::E3: return "E3";
  }
  return "?";
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

GoodId GoodId::flight_in(int day) {
  require(day >= 1 && day <= 4, "inbound flight day must be 1..4");
  return GoodId(day - 1);
}

GoodId GoodId::flight_out(int day) {
  require(day >= 2 && day <= 5, "outbound flight day must be 2..5");
  return GoodId(4 + day - 2);
}

GoodId GoodId::hotel(HotelKind kind, int night) {
  require(night >= 1 && night <= kNights, "hotel night must be 1..4");
  return GoodId(8 + static_cast<int>(kind) * 4 + night - 1);
}

GoodId GoodId::event(EventKind kind, int night) {
  require(night >= 1 && night <= kNights, "event night must be 1..4");
  return GoodId(16 + static_cast<int>(kind) * 4 + night - 1);
}

GoodId GoodId::from_index(int index) {
  require(index >= 0 && index < kNumGoods, "good index must be 0..27");
  return GoodId(index);
}

std::array<GoodId, kNumGoods> GoodId::all() {
  std::array<GoodId, kNumGoods> goods;
  for (int i = 0; i < kNumGoods; ++i) goods[i] = GoodId(i);
  return goods;
}

GoodClass GoodId::good_class() const {
  if (index_ < 4) return GoodClass::FlightIn;
  if (index_ < 8) return GoodClass::FlightOut;
  if (index_ < 16) return GoodClass::Hotel;
  return GoodClass::Event;
}

int GoodId::day() const {
  if (index_ < 4) return index_ + 1;
  if (index_ < 8) return index_ - 4 + 2;
  return (index_ - 8) % 4 + 1;
}

HotelKind GoodId::hotel_kind() const {
  if (!is_hotel()) throw std::logic_error("not a hotel good");
  return static_cast<HotelKind>((index_ - 8) / 4);
}

EventKind GoodId::event_kind() const {
  if (!is_event()) throw std::logic_error("not an event good");
  return static_cast<EventKind>((index_ - 16) / 4);
}

std::string GoodId::name() const {
  const std::string d = std::to_string(day());
  switch (good_class()) {
    case GoodClass::FlightIn: return "in" + d;
    case GoodClass::FlightOut: return "out" + d;
    case GoodClass::Hotel: return (hotel_kind() == HotelKind::Better ? "better" : "alt") + d;
    case GoodClass::Event: return "e" + std::to_string(static_cast<int>(event_kind()) + 1) + "n" + d;
  }
  return {};
}

std::optional<GoodId> GoodId::parse(std::string_view name) {
  for (GoodId good : all()) {
    if (good.name() == name) return good;
  }
  return std::nullopt;
}

bool is_valid(const ClientPreference& pref) {
  if (pref.preferred_arrival < 1 || pref.preferred_arrival > 4) return false;
  if (pref.preferred_departure < 2 || pref.preferred_departure > 5) return false;
  if (pref.preferred_arrival >= pref.preferred_departure) return false;
  if (pref.hotel_premium < 50 || pref.hotel_premium > 150) return false;
  for (Points p : pref.event_premium) {
    if (p < 0 || p > 200) return false;
  }
  return true;
}

bool is_valid(const TravelPackage& pkg) {
  if (pkg.arrival < 1 || pkg.arrival > 4) return false;
  if (pkg.departure < 2 || pkg.departure > 5) return false;
  if (pkg.arrival >= pkg.departure) return false;
  std::array<bool, kNights + 1> used{};
  for (const auto& night : pkg.events) {
    if (!night) continue;
    if (*night < pkg.arrival || *night >= pkg.departure) return false;
    if (used[*night]) return false;
    used[*night] = true;
  }
  return true;
}

void validate(const ClientPreference& pref) {
  require(is_valid(pref), "invalid client preference");
}

void validate(const TravelPackage& pkg) {
  require(is_valid(pkg), "invalid travel package");
}

void Holdings::add(GoodId good, int qty) {
  require(qty >= 0, "cannot add a negative quantity");
  counts_[good.index()] += qty;
}

void Holdings::remove(GoodId good, int qty) {
  require(qty >= 0 && counts_[good.index()] >= qty, "insufficient holdings");
  counts_[good.index()] -= qty;
}

bool Holdings::contains(const Holdings& other) const {
  for (int i = 0; i < kNumGoods; ++i) {
    if (counts_[i] < other.counts_[i]) return false;
  }
  return true;
}

int Holdings::total() const {
  int sum = 0;
  for (int c : counts_) sum += c;
  return sum;
}

Holdings& Holdings::operator+=(const Holdings& other) {
  for (int i = 0; i < kNumGoods; ++i) counts_[i] += other.counts_[i];
  return *this;
}

Holdings Holdings::minus(const Holdings& other) const {
  Holdings out;
  for (int i = 0; i < kNumGoods; ++i) {
    out.counts_[i] = counts_[i] > other.counts_[i] ? counts_[i] - other.counts_[i] : 0;
  }
  return out;
}

Points travel_penalty(const ClientPreference& pref, const TravelPackage& pkg) {
  return 100 * (std::abs(pkg.arrival - pref.preferred_arrival) +
                std::abs(pkg.departure - pref.preferred_departure));
}

// Whole-stay premium: a package carries a single hotel kind.
Points hotel_bonus(const ClientPreference& pref, const TravelPackage& pkg) {
  return pkg.hotel == HotelKind::Better ? pref.hotel_premium : 0;
}

Points fun_bonus(const ClientPreference& pref, const TravelPackage& pkg) {
  Points sum = 0;
  for (EventKind kind : kEventKinds) {
    if (pkg.event_night(kind)) sum += pref.premium(kind);
  }
  return sum;
}

Points client_utility(const ClientPreference& pref, const std::optional<TravelPackage>& pkg) {
  if (!pkg) return 0;
  return 1000 - travel_penalty(pref, *pkg) + hotel_bonus(pref, *pkg) + fun_bonus(pref, *pkg);
}

Holdings required_goods(const TravelPackage& pkg) {
  Holdings goods;
  goods.add(GoodId::flight_in(pkg.arrival));
  goods.add(GoodId::flight_out(pkg.departure));
  for (int night = pkg.arrival; night < pkg.departure; ++night) {
    goods.add(GoodId::hotel(pkg.hotel, night));
  }
  for (EventKind kind : kEventKinds) {
    if (auto night = pkg.event_night(kind)) goods.add(GoodId::event(kind, *night));
  }
  return goods;
}

bool is_feasible(const ClientPreference& pref, const TravelPackage& pkg, const Holdings& holdings) {
  return holdings.contains(required_goods(pkg)) && client_utility(pref, pkg) > 0;
}

}  // namespace tac
