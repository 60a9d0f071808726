// Copyright 2026 The Agora Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AGORA_SERIALIZATION_HPP_
#define AGORA_SERIALIZATION_HPP_

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "agora/auction.hpp"
#include "agora/equilibrium.hpp"
#include "agora/prior.hpp"
#include "agora/valuation.hpp"

namespace agora {

// JSON schemas are documented in docs/formats.md. Parsers throw InputError
// with the offending field in the message.

nlohmann::json to_json(const Valuation& v);
Valuation valuation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ValuationProfile& p);
ValuationProfile profile_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Prior& p);
Prior prior_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AuctionFormat& f);
AuctionFormat format_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Strategy& s);
Strategy strategy_from_json(const nlohmann::json& j);

// Bid profiles round-trip through CSV rows "player,item,bid".
void write_bid_profile_csv(std::ostream& out, const BidProfile& b);
BidProfile read_bid_profile_csv(std::istream& in);

// Numbers formatted with enough digits to round-trip doubles.
std::string csv_number(double x);

}  // namespace agora

#endif  // AGORA_SERIALIZATION_HPP_
