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

#ifndef AGORA_AUCTION_HPP_
#define AGORA_AUCTION_HPP_

#include <variant>
#include <vector>

#include "agora/valuation.hpp"

namespace agora {

// ---------------------------------------------------------------------------
// Formats
// ---------------------------------------------------------------------------

// Highest bid wins, winner pays her bid.
struct FirstPriceSingleItem {};

// Highest bid wins, winner pays the second-highest bid.
struct SecondPriceSingleItem {};

// Highest bid wins, every player pays her bid.
struct AllPaySingleItem {};

// The project is undertaken iff the bids cover its cost; contributors then
// pay their bids, otherwise nothing is collected.
struct PublicGood {
  double cost = 0.0;
};

enum class ItemRule { kFirstPrice, kSecondPrice };

// Sells m items simultaneously and independently with a per-item rule. A
// zero bid on an item means not participating in that item's auction; an
// item nobody bids on stays unallocated.
struct SimultaneousItems {
  int items = 1;
  ItemRule rule = ItemRule::kFirstPrice;
};

using AuctionFormat =
    std::variant<FirstPriceSingleItem, SecondPriceSingleItem,
                 AllPaySingleItem, PublicGood, SimultaneousItems>;

int num_items(const AuctionFormat& f);
bool is_single_good(const AuctionFormat& f);
void validate(const AuctionFormat& f);

// ---------------------------------------------------------------------------
// Actions and outcomes
// ---------------------------------------------------------------------------

// One bid vector per player; single-good games use vectors of length 1.
struct BidProfile {
  std::vector<std::vector<double>> bids;

  // Convenience for single-good games: one scalar bid per player.
  static BidProfile scalars(const std::vector<double>& bs);

  int num_players() const { return static_cast<int>(bids.size()); }
  int num_items() const {
    return bids.empty() ? 0 : static_cast<int>(bids.front().size());
  }
};

// Allocation plus per-player per-item payments. Public-good outcomes use
// the funded flag instead of item winners.
struct Outcome {
  std::vector<int> item_winner;             // size m; -1 = unallocated
  bool funded = false;                      // public good only
  std::vector<std::vector<double>> payments;  // n x m

  double total_payment(int i) const {
    double p = 0.0;
    for (double x : payments[i]) p += x;
    return p;
  }
  ItemSet won_items(int i) const {
    ItemSet s;
    for (int j = 0; j < static_cast<int>(item_winner.size()); ++j) {
      if (item_winner[j] == i) s = s.with(j);
    }
    return s;
  }
};

// Applies the format's allocation and payment rule. Ties go to the lowest
// player index. In standalone single-good formats the item is always
// awarded, even on an all-zero profile (player 0 wins at price 0).
Outcome outcome(const AuctionFormat& f, const BidProfile& b);

// Winner of item j under the simultaneous-sale convention: lowest-index
// maximum bidder among players with a positive bid on j, -1 when nobody
// bids on it.
int simultaneous_item_winner(const BidProfile& b, int j);

// Value of player i's allocation under valuation v (win indicator times
// scalar value for single-good formats, value of the won set otherwise).
double allocation_value(const AuctionFormat& f, const Outcome& o, int i,
                        const Valuation& v);

// Quasi-linear utility: allocation value minus total payment.
double utility(const AuctionFormat& f, const BidProfile& b, int i,
               const Valuation& v);
double utility(const AuctionFormat& f, const Outcome& o, int i,
               const Valuation& v);

// Sum of all payments.
double revenue(const AuctionFormat& f, const BidProfile& b);
double revenue(const Outcome& o);

// Sum of utilities plus revenue. For the quasi-linear formats this equals
// the total allocation value; for PublicGood it equals the gross value of
// funding and is reported without debiting the cost (see
// social_welfare_net).
double social_welfare(const AuctionFormat& f, const BidProfile& b,
                      const ValuationProfile& values);

// PublicGood only: welfare net of the project cost when funded. Equal to
// social_welfare for every other format.
double social_welfare_net(const AuctionFormat& f, const BidProfile& b,
                          const ValuationProfile& values);

// Sum over allocated items of the winner's bid on that item. Equals revenue
// for first-price rules; for second-price rules it upper-bounds revenue.
double winning_bid_sum(const AuctionFormat& f, const BidProfile& b);

}  // namespace agora

#endif  // AGORA_AUCTION_HPP_
