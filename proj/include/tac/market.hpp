#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tac {

using Money = std::int64_t;
using Points = std::int64_t;

inline constexpr int kFirstDay = 1;
inline constexpr int kLastDay = 5;
inline constexpr int kNights = 4;
inline constexpr int kNumGoods = 28;

enum class HotelKind : std::uint8_t { Better = 0, Alt = 1 };
enum class EventKind : std::uint8_t { E1 = 0, E2 = 1, E3 = 2 };

inline constexpr std::array<HotelKind, 2> kHotelKinds{HotelKind::Better, HotelKind::Alt};
inline constexpr std::array<EventKind, 3> kEventKinds{EventKind::E1, EventKind::E2, EventKind::E3};

std::string_view to_string(HotelKind kind);
std::string_view to_string(EventKind kind);

enum class GoodClass : std::uint8_t { FlightIn, FlightOut, Hotel, Event };

/// One of the 28 tradable goods; each has its own auction.
///
/// Dense index layout: FlightIn days 1..4 -> 0..3, FlightOut days 2..5 -> 4..7,
/// hotel nights (BETTER 1..4, ALT 1..4) -> 8..15, event nights (E1, E2, E3 x 1..4) -> 16..27.
class GoodId {
 public:
  GoodId() = default;

  static GoodId flight_in(int day);
  static GoodId flight_out(int day);
  static GoodId hotel(HotelKind kind, int night);
  static GoodId event(EventKind kind, int night);
  static GoodId from_index(int index);
  static std::optional<GoodId> parse(std::string_view name);

  static std::array<GoodId, kNumGoods> all();

  int index() const { return index_; }
  GoodClass good_class() const;
  /// Day for flights, night for hotels and events.
  int day() const;
  HotelKind hotel_kind() const;
  EventKind event_kind() const;

  bool is_flight() const { return index_ < 8; }
  bool is_hotel() const { return index_ >= 8 && index_ < 16; }
  bool is_event() const { return index_ >= 16; }

  /// Stable wire name, e.g. "in1", "out5", "better2", "alt3", "e1n4".
  std::string name() const;

  friend bool operator==(GoodId, GoodId) = default;
  friend auto operator<=>(GoodId, GoodId) = default;

 private:
  explicit GoodId(int index) : index_(index) {}
  int index_ = 0;
};

struct ClientPreference {
  int preferred_arrival = 1;
  int preferred_departure = 2;
  Points hotel_premium = 50;
  std::array<Points, 3> event_premium{};

  Points premium(EventKind kind) const { return event_premium[static_cast<int>(kind)]; }

  friend bool operator==(const ClientPreference&, const ClientPreference&) = default;
};

struct TravelPackage {
  int arrival = 1;
  int departure = 2;
  HotelKind hotel = HotelKind::Alt;
  std::array<std::optional<int>, 3> events{};

  std::optional<int> event_night(EventKind kind) const { return events[static_cast<int>(kind)]; }
  int nights() const { return departure - arrival; }

  friend bool operator==(const TravelPackage&, const TravelPackage&) = default;
};

/// Throws std::invalid_argument when a value is outside the domain ranges.
void validate(const ClientPreference& pref);
void validate(const TravelPackage& pkg);
bool is_valid(const ClientPreference& pref);
bool is_valid(const TravelPackage& pkg);

/// Multiset of goods.
class Holdings {
 public:
  Holdings() { counts_.fill(0); }

  int count(GoodId good) const { return counts_[good.index()]; }
  void add(GoodId good, int qty = 1);
  /// Throws std::invalid_argument if fewer than `qty` units are held.
  void remove(GoodId good, int qty = 1);

  bool contains(const Holdings& other) const;
  int total() const;
  bool empty() const { return total() == 0; }

  Holdings& operator+=(const Holdings& other);
  /// Saturating difference (never negative).
  Holdings minus(const Holdings& other) const;

  const std::array<int, kNumGoods>& counts() const { return counts_; }

  friend bool operator==(const Holdings&, const Holdings&) = default;

 private:
  std::array<int, kNumGoods> counts_;
};

Points travel_penalty(const ClientPreference& pref, const TravelPackage& pkg);
Points hotel_bonus(const ClientPreference& pref, const TravelPackage& pkg);
Points fun_bonus(const ClientPreference& pref, const TravelPackage& pkg);
/// 0 for an unserved client.
Points client_utility(const ClientPreference& pref, const std::optional<TravelPackage>& pkg);

Holdings required_goods(const TravelPackage& pkg);

/// All required goods held and utility strictly positive.
bool is_feasible(const ClientPreference& pref, const TravelPackage& pkg, const Holdings& holdings);

}  // namespace tac
