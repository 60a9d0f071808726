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

#ifndef AGORA_COMPOSITION_HPP_
#define AGORA_COMPOSITION_HPP_

#include <vector>

#include "agora/auction.hpp"
#include "agora/smoothness.hpp"
#include "agora/welfare.hpp"

namespace agora {

// Simultaneous composition of single-good item auctions: every player picks
// one action per constituent, each constituent resolves on its own column.
// Items follow the simultaneous-sale convention (zero bid = not
// participating).
struct ComposedFormat {
  std::vector<AuctionFormat> constituents;

  int items() const { return static_cast<int>(constituents.size()); }
};

// Validates that every constituent is a single-good item format
// (first-price, second-price, or all-pay). Public-good constituents are
// rejected: their non-excludable outcome space does not embed in the
// item-assignment welfare machinery.
ComposedFormat compose(std::vector<AuctionFormat> formats);

Outcome outcome(const ComposedFormat& f, const BidProfile& b);
double utility(const ComposedFormat& f, const BidProfile& b, int i,
               const Valuation& v);
double revenue(const ComposedFormat& f, const BidProfile& b);
double social_welfare(const ComposedFormat& f, const BidProfile& b,
                      const ValuationProfile& values);
double winning_bid_sum(const ComposedFormat& f, const BidProfile& b);

GameView game_view(const ComposedFormat& f);

// Per-player additive proxy: the clause attaining the player's XOS value on
// her bundle in a welfare-optimal allocation (all-zero when the bundle is
// empty).
struct ProxyProfile {
  std::vector<AdditiveValuation> per_player;
};

ProxyProfile proxy_profile(const std::vector<XosValuation>& values,
                           const Allocation& opt_allocation);

// Full-profile deviation for a composed auction: computes a welfare-optimal
// allocation, extracts the proxy clause per player, and deviates
// independently per constituent with the proxy item value as the scalar
// type. Constituent rules see only scalar item values, never the XOS
// object. Valuations are taken to XOS via to_xos (tables must be
// submodular; single-minded profiles are rejected).
DeviationRule composed_deviation(std::vector<DeviationRule> constituent_rules);

SmoothnessReport verify_composed_smoothness(
    const ComposedFormat& f, const DeviationRule& rule,
    const SmoothnessParams& params, const std::vector<SmoothnessCase>& cases,
    const VerifyOptions& opts);

}  // namespace agora

#endif  // AGORA_COMPOSITION_HPP_
