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

#ifndef AGORA_WELFARE_HPP_
#define AGORA_WELFARE_HPP_

#include <vector>

#include "agora/auction.hpp"
#include "agora/valuation.hpp"

namespace agora {

// Disjoint bundles, one per player. Items may stay unassigned.
struct Allocation {
  std::vector<ItemSet> per_player;

  int winner_single_item() const {
    for (int i = 0; i < static_cast<int>(per_player.size()); ++i) {
      if (!per_player[i].empty()) return i;
    }
    return -1;
  }
};

struct OptResult {
  double welfare = 0.0;
  Allocation allocation;
};

// Highest value wins; lowest-index argmax on ties.
OptResult opt_single_item(const std::vector<double>& values);

// Exact maximum-weight bipartite matching (each player at most one item),
// solved with a potentials-based augmenting-path assignment routine.
OptResult opt_matching(const std::vector<UnitDemandValuation>& players,
                       int items);

// Exhaustive maximum of total value over all assignments of each item to a
// player or to nobody. Requires (n+1)^m <= 10^7; ties resolve to the
// lexicographically smallest owner vector (players in index order before
// "unassigned").
OptResult opt_brute_force(const ValuationProfile& values, int items);

// Optimal welfare for a format instance: max value for single-good formats,
// gross total value for PublicGood, brute force over assignments for
// simultaneous sales.
OptResult opt_welfare(const AuctionFormat& f, const ValuationProfile& values);

}  // namespace agora

#endif  // AGORA_WELFARE_HPP_
