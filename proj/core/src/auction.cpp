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

#include "agora/auction.hpp"

#include <algorithm>

namespace agora {

namespace {

void check_profile(const AuctionFormat& f, const BidProfile& b) {
  if (b.bids.empty()) throw InputError("bid profile: no players");
  const int m = num_items(f);
  for (const auto& row : b.bids) {
    if (static_cast<int>(row.size()) != m) {
      throw InputError("bid profile: wrong number of per-item bids");
    }
    for (double x : row) {
      if (!(x >= 0.0)) throw InputError("bid profile: negative bid");
    }
  }
}

// Winner of a standalone single-good auction: lowest-index maximum bidder,
// zero bids included.
int single_good_winner(const BidProfile& b) {
  int winner = 0;
  for (int i = 1; i < b.num_players(); ++i) {
    if (b.bids[i][0] > b.bids[winner][0]) winner = i;
  }
  return winner;
}

double second_highest(const BidProfile& b, int winner) {
  double best = 0.0;
  for (int i = 0; i < b.num_players(); ++i) {
    if (i != winner) best = std::max(best, b.bids[i][0]);
  }
  return best;
}

}  // namespace

int num_items(const AuctionFormat& f) {
  if (const auto* sim = std::get_if<SimultaneousItems>(&f)) return sim->items;
  return 1;
}

bool is_single_good(const AuctionFormat& f) {
  return !std::holds_alternative<SimultaneousItems>(f);
}

void validate(const AuctionFormat& f) {
  if (const auto* pg = std::get_if<PublicGood>(&f)) {
    if (!(pg->cost >= 0.0)) throw InputError("public good: negative cost");
  } else if (const auto* sim = std::get_if<SimultaneousItems>(&f)) {
    if (sim->items < 1) throw InputError("simultaneous: needs at least one item");
    if (sim->items > kMaxItems) throw InputError("simultaneous: too many items");
  }
}

BidProfile BidProfile::scalars(const std::vector<double>& bs) {
  BidProfile out;
  out.bids.reserve(bs.size());
  for (double x : bs) out.bids.push_back({x});
  return out;
}

// Allocates item j among players with a positive bid on it; lowest-index
// maximum bidder wins, nobody wins an all-zero column.
int simultaneous_item_winner(const BidProfile& b, int j) {
  int winner = -1;
  double best = 0.0;
  for (int i = 0; i < b.num_players(); ++i) {
    if (b.bids[i][j] > best) {
      best = b.bids[i][j];
      winner = i;
    }
  }
  return winner;
}

Outcome outcome(const AuctionFormat& f, const BidProfile& b) {
  check_profile(f, b);
  const int n = b.num_players();
  Outcome o;
  o.payments.assign(n, std::vector<double>(num_items(f), 0.0));

  if (const auto* sim = std::get_if<SimultaneousItems>(&f)) {
    o.item_winner.assign(sim->items, -1);
    for (int j = 0; j < sim->items; ++j) {
      const int w = simultaneous_item_winner(b, j);
      o.item_winner[j] = w;
      if (w < 0) continue;
      if (sim->rule == ItemRule::kFirstPrice) {
        o.payments[w][j] = b.bids[w][j];
      } else {
        double second = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i != w) second = std::max(second, b.bids[i][j]);
        }
        o.payments[w][j] = second;
      }
    }
    return o;
  }

  if (const auto* pg = std::get_if<PublicGood>(&f)) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += b.bids[i][0];
    o.funded = total >= pg->cost;
    if (o.funded) {
      for (int i = 0; i < n; ++i) o.payments[i][0] = b.bids[i][0];
    }
    return o;
  }

  const int w = single_good_winner(b);
  o.item_winner = {w};
  if (std::holds_alternative<FirstPriceSingleItem>(f)) {
    o.payments[w][0] = b.bids[w][0];
  } else if (std::holds_alternative<SecondPriceSingleItem>(f)) {
    o.payments[w][0] = second_highest(b, w);
  } else {
    for (int i = 0; i < n; ++i) o.payments[i][0] = b.bids[i][0];
  }
  return o;
}

double allocation_value(const AuctionFormat& f, const Outcome& o, int i,
                        const Valuation& v) {
  if (std::holds_alternative<PublicGood>(f)) {
    return o.funded ? scalar_value(v) : 0.0;
  }
  return value(v, o.won_items(i));
}

double utility(const AuctionFormat& f, const Outcome& o, int i,
               const Valuation& v) {
  return allocation_value(f, o, i, v) - o.total_payment(i);
}

double utility(const AuctionFormat& f, const BidProfile& b, int i,
               const Valuation& v) {
  return utility(f, outcome(f, b), i, v);
}

double revenue(const Outcome& o) {
  double total = 0.0;
  for (int i = 0; i < static_cast<int>(o.payments.size()); ++i) {
    total += o.total_payment(i);
  }
  return total;
}

double revenue(const AuctionFormat& f, const BidProfile& b) {
  return revenue(outcome(f, b));
}

double social_welfare(const AuctionFormat& f, const BidProfile& b,
                      const ValuationProfile& values) {
  if (values.num_players() != b.num_players()) {
    throw InputError("social_welfare: profile arity mismatch");
  }
  const Outcome o = outcome(f, b);
  double total = 0.0;
  for (int i = 0; i < b.num_players(); ++i) {
    total += utility(f, o, i, values.players[i]);
  }
  return total + revenue(o);
}

double social_welfare_net(const AuctionFormat& f, const BidProfile& b,
                          const ValuationProfile& values) {
  double sw = social_welfare(f, b, values);
  if (const auto* pg = std::get_if<PublicGood>(&f)) {
    if (outcome(f, b).funded) sw -= pg->cost;
  }
  return sw;
}

double winning_bid_sum(const AuctionFormat& f, const BidProfile& b) {
  check_profile(f, b);
  if (std::holds_alternative<PublicGood>(f)) {
    // All contributors pay their bids when funded, so the winning-bid sum
    // coincides with revenue.
    return revenue(f, b);
  }
  const Outcome o = outcome(f, b);
  double total = 0.0;
  for (int j = 0; j < static_cast<int>(o.item_winner.size()); ++j) {
    if (o.item_winner[j] >= 0) total += b.bids[o.item_winner[j]][j];
  }
  return total;
}

}  // namespace agora
