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

#ifndef AGORA_SMOOTHNESS_HPP_
#define AGORA_SMOOTHNESS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "agora/auction.hpp"
#include "agora/prior.hpp"
#include "agora/welfare.hpp"

namespace agora {

// Strong mode charges the revenue of the action profile; weak mode charges
// the winning-bid sum instead and requires no-overbidding action cases.
enum class SmoothnessMode { kStrong, kWeak };

struct SmoothnessParams {
  double lambda = 0.0;
  double mu = 1.0;
  SmoothnessMode mode = SmoothnessMode::kStrong;
};

// A hypothetical deviation: per player, a distribution over actions that may
// depend on the whole valuation profile (full-profile rules) or only on the
// player's own valuation (private rules).
enum class DeviationKind { kFullProfile, kPrivate };

struct DeviationRule {
  DeviationKind kind = DeviationKind::kFullProfile;
  std::string name;
  bool deterministic = false;  // point mass given (values, player)
  std::function<std::vector<double>(const ValuationProfile&, int, Rng&)> sample;
};

// Catalog of the deviations used by the single-item and simultaneous-sale
// analyses:
//   halfValueFpa        private, bid v/2
//   optimizedFpa        private, random bid with density 1/(v-b) on
//                       [0, (1-1/e) v]
//   allPayTop           full-profile, highest-value player bids U[0, vmax]
//   simFpaOptItem       full-profile, half value on the player's item in an
//                       optimal matching, 0 elsewhere
//   simFpaOptimizedItem full-profile, the optimized random bid on that item
// Throws InputError for unknown names.
DeviationRule builtin_deviation(const std::string& name);

// Wraps a full-profile rule into a private one by sampling the other
// players' valuations from their independent marginals and applying the
// rule at the imagined profile. Rejects correlated priors.
DeviationRule bayesian_sampled_deviation(const DeviationRule& rule,
                                         const Prior& prior);

// One tested hypothesis: a valuation profile paired with an action profile.
struct SmoothnessCase {
  ValuationProfile values;
  BidProfile actions;
};

// Every combination of a valuation case with an action case.
std::vector<SmoothnessCase> cross_cases(
    const std::vector<ValuationProfile>& values,
    const std::vector<BidProfile>& actions);

struct SmoothnessCaseRow {
  int case_id = 0;
  std::uint64_t values_hash = 0;
  std::uint64_t actions_hash = 0;
  double lhs = 0.0;      // sum of expected deviation utilities
  double opt = 0.0;
  double charge = 0.0;   // revenue (strong) or winning-bid sum (weak)
  double margin = 0.0;   // lhs - lambda * opt + mu * charge
  double std_error = 0.0;
};

struct SmoothnessReport {
  double min_margin = 0.0;
  int worst_case = -1;
  double worst_std_error = 0.0;
  bool pass = false;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<SmoothnessCaseRow> rows;
};

struct VerifyOptions {
  int samples = 10000;     // per case, for randomized rules
  std::uint64_t seed = 1;
  // Exact checks pass at margin >= exact_floor; Monte-Carlo checks pass at
  // margin >= -stderr_floor_multiplier * stderr, per case.
  double exact_floor = -1e-9;
  double stderr_floor_multiplier = 3.0;
};

// Game hooks, so that the same verification loop serves both the core
// formats and simultaneous compositions.
struct GameView {
  int items = 1;
  std::function<double(const BidProfile&, int, const Valuation&)> utility;
  std::function<double(const BidProfile&)> revenue;
  std::function<double(const BidProfile&)> winning_bid_sum;
  std::function<OptResult(const ValuationProfile&)> opt;
};

GameView game_view(const AuctionFormat& f);

// Empirically checks the smoothness inequality
//   sum_i E[u_i(a*_i, a_{-i}; v_i)] >= lambda OPT(v) - mu R(a)
// on the supplied cases, where R is revenue (strong) or the winning-bid sum
// (weak). Weak mode rejects action cases that overbid the per-item value
// cap. The certificate is empirical: it speaks only for the tested cases.
SmoothnessReport verify_smoothness(const GameView& game,
                                   const DeviationRule& rule,
                                   const SmoothnessParams& params,
                                   const std::vector<SmoothnessCase>& cases,
                                   const VerifyOptions& opts);

SmoothnessReport verify_smoothness(const AuctionFormat& f,
                                   const DeviationRule& rule,
                                   const SmoothnessParams& params,
                                   const std::vector<SmoothnessCase>& cases,
                                   const VerifyOptions& opts);

// Welfare guarantee implied by a certificate: lambda/mu for strong
// smoothness, lambda/(1+mu) for the weak second-price-type variant.
double poa_bound(const SmoothnessParams& params);

// FNV-1a over the raw doubles; used to identify case profiles in reports.
std::uint64_t hash_profile(const ValuationProfile& values);
std::uint64_t hash_profile(const BidProfile& actions);

}  // namespace agora

#endif  // AGORA_SMOOTHNESS_HPP_
