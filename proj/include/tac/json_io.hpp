#pragma once

// JSON mappings for the domain types, shared by the wire protocol, the
// transaction log and the CLI.

#include "json.hpp"
#include "tac/allocator.hpp"
#include "tac/auction.hpp"
#include "tac/game.hpp"
#include "tac/market.hpp"

namespace tac {

using Json = nlohmann::json;

void to_json(Json& j, GoodId good);
void from_json(const Json& j, GoodId& good);
void to_json(Json& j, const ClientPreference& p);
void from_json(const Json& j, ClientPreference& p);
void to_json(Json& j, const TravelPackage& p);
void from_json(const Json& j, TravelPackage& p);
void to_json(Json& j, const Holdings& h);
void from_json(const Json& j, Holdings& h);
void to_json(Json& j, const Allocation& a);
void from_json(const Json& j, Allocation& a);
void to_json(Json& j, const PriceVector& p);
void from_json(const Json& j, PriceVector& p);
void to_json(Json& j, const Quote& q);
void from_json(const Json& j, Quote& q);
void to_json(Json& j, const Transaction& t);
void from_json(const Json& j, Transaction& t);
void to_json(Json& j, const GameConfig& c);
void from_json(const Json& j, GameConfig& c);
void to_json(Json& j, const AgentScore& s);
void from_json(const Json& j, AgentScore& s);
void to_json(Json& j, const GameResult& r);
void from_json(const Json& j, GameResult& r);

/// Compact single-line dump; key order is fixed, so equal values give equal bytes.
inline std::string dump_line(const Json& j) { return j.dump(); }

}  // namespace tac
