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

#ifndef AGORA_LEARNING_HPP_
#define AGORA_LEARNING_HPP_

#include <cstdint>
#include <vector>

#include "agora/auction.hpp"
#include "agora/smoothness.hpp"

namespace agora {

enum class LearnerAlgorithm { kMultiplicativeWeights, kRegretMatching };

struct LearnerConfig {
  LearnerAlgorithm algorithm = LearnerAlgorithm::kMultiplicativeWeights;
  // Multiplicative-weights rate; 0 selects the default sqrt(ln K / T).
  double eta = 0.0;
  std::uint64_t seed = 1;
};

// Record of a repeated complete-information play: fixed valuations, one
// action grid per player, per-round action indices and realized utilities.
struct PlaySequence {
  AuctionFormat format;
  ValuationProfile values;
  std::vector<std::vector<std::vector<double>>> grids;
  std::vector<std::vector<int>> actions;      // horizon x players
  std::vector<std::vector<double>> utilities;  // horizon x players

  int horizon() const { return static_cast<int>(actions.size()); }
  int num_players() const { return values.num_players(); }
  const std::vector<double>& action_of(int t, int i) const {
    return grids[i][actions[t][i]];
  }
};

// Runs the repeated game for `horizon` rounds under full-information
// feedback: each learner updates on the exact counterfactual utility of
// every action on her own grid. Deterministic given the configured seeds;
// grids are capped at 10^4 actions per player.
PlaySequence run_repeated(
    const AuctionFormat& f, const ValuationProfile& values,
    const std::vector<std::vector<std::vector<double>>>& grids,
    const std::vector<LearnerConfig>& configs, int horizon);

// max over grid actions of the average counterfactual gain
//   (1/T) sum_t (u_i(a', a^t_{-i}) - u_i(a^t)),
// recomputed exactly from the recorded sequence.
double external_regret(const PlaySequence& seq, int player);

// Time-averaged social welfare of the recorded profile sequence.
double average_welfare(const PlaySequence& seq);

struct WelfareBoundReport {
  double average_welfare = 0.0;
  double opt = 0.0;
  double smooth_bound = 0.0;        // (lambda/mu) * OPT
  std::vector<double> regrets;      // per player external regret
  double regret_correction = 0.0;   // sum of positive parts
  bool pass = false;                // avg >= bound - correction
};

// Checks the regret-corrected welfare bound implied by a smoothness
// certificate: average welfare >= (lambda/mu) OPT - sum_i regret_i^+.
WelfareBoundReport welfare_vs_bound(const PlaySequence& seq,
                                    const SmoothnessParams& params);

// Exact per-candidate utilities of `player` against fixed opponent bids;
// the workhorse behind learner feedback and regret recomputation.
std::vector<double> counterfactual_utilities(
    const AuctionFormat& f, const ValuationProfile& values, int player,
    const std::vector<std::vector<double>>& candidates,
    const BidProfile& opponent_bids);

}  // namespace agora

#endif  // AGORA_LEARNING_HPP_
