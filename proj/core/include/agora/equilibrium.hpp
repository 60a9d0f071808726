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

#ifndef AGORA_EQUILIBRIUM_HPP_
#define AGORA_EQUILIBRIUM_HPP_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "agora/auction.hpp"
#include "agora/prior.hpp"

namespace agora {

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

enum class ClosedFormId {
  kLinearShade,    // s(v) = param * v
  kConstant,       // s(v) = param
  kTruthful,       // s(v) = v
  kVickreyWeak,    // uniform [0,1] bidder of the two-bidder uniform[0,1] x
                   // uniform[0,2] first-price instance
  kVickreyStrong,  // uniform [0,2] bidder of the same instance
};

// Deterministic scalar bid as a function of the scalar type.
struct ClosedFormStrategy {
  ClosedFormId id = ClosedFormId::kLinearShade;
  double param = 0.0;
};

enum class MixedFormId {
  // Two-item game: pick one of the two items uniformly at random and bid x
  // on it, where x has CDF x/(1-x) with support [0, 1/2].
  kUniformItemReciprocal,
};

struct MixedClosedFormStrategy {
  MixedFormId id = MixedFormId::kUniformItemReciprocal;
};

// Finite type grid, finite action set, one mixing row per type value.
struct GridStrategy {
  std::vector<double> value_grid;
  std::vector<std::vector<double>> actions;  // candidate bid vectors
  std::vector<std::vector<double>> probs;    // value x action, rows sum to 1
};

using Strategy =
    std::variant<ClosedFormStrategy, MixedClosedFormStrategy, GridStrategy>;

// Evaluates the deterministic closed forms; the removable singularity of the
// two-bidder forms at v = 0 evaluates to the analytic limit 0.
double closed_form_bid(const ClosedFormStrategy& s, double value);

// Draws a bid vector for a player of the given type in an m-item game.
std::vector<double> sample_action(const Strategy& s, const Valuation& type,
                                  int items, Rng& rng);

// Finite support (action, probability) when the strategy is discrete;
// nullopt for continuous mixed strategies.
std::optional<std::vector<std::pair<std::vector<double>, double>>>
action_support(const Strategy& s, const Valuation& type, int items);

// Symmetric Bayes-Nash equilibrium of the n-bidder uniform[0,1] first-price
// auction: s(v) = (n-1)/n * v.
ClosedFormStrategy symmetric_uniform_fpa_bne(int players);

// Closed-form equilibrium of the uniform[0,1] x uniform[0,2] two-bidder
// first-price instance: (weak bidder, strong bidder).
std::pair<ClosedFormStrategy, ClosedFormStrategy> vickrey_asymmetric_bne();

// Symmetric mixed equilibrium of the 2x2 simultaneous first-price game with
// unit value for every item and one bid per player.
MixedClosedFormStrategy bad_example_mixed_strategy();

// ---------------------------------------------------------------------------
// Numerical verification
// ---------------------------------------------------------------------------

// Scalar bid grid {0, step, 2*step, ..., <= cap}.
struct BidGrid {
  double step = 0.01;
  double cap = 1.0;

  std::vector<double> points() const;
};

struct EvalOptions {
  int samples = 20000;       // Monte-Carlo budget per expectation
  std::uint64_t seed = 1;
  int value_points = 101;    // quadrature grid for uniform marginals
  // Exact enumeration is used whenever the opponent type x action support
  // stays within this bound; Monte-Carlo otherwise.
  std::int64_t max_exact_atoms = 1000000;
};

struct BestResponse {
  std::vector<double> action;
  double utility = 0.0;
  double std_error = 0.0;
};

// Grid-search best response of `player` with the given type against the
// opponents' strategies under the prior (conditioned on the player's type
// for correlated priors). Ties go to the lowest candidate index.
BestResponse best_response(const AuctionFormat& f, int player,
                           const Valuation& type,
                           const std::vector<Strategy>& strategies,
                           const Prior& prior,
                           const std::vector<std::vector<double>>& candidates,
                           const EvalOptions& opts);

struct RegretRow {
  int player = 0;
  double value = 0.0;
  std::vector<double> best_deviation;
  double eq_utility = 0.0;
  double regret = 0.0;   // max(0, deviation gain)
  double std_error = 0.0;
};

struct BneCheckReport {
  double max_regret = 0.0;
  std::vector<RegretRow> rows;
};

// Interim regret of every (player, type value) pair against grid deviations:
// type values come from discrete supports or the discretized uniform grid.
BneCheckReport epsilon_bne_check(
    const AuctionFormat& f, const std::vector<Strategy>& strategies,
    const Prior& prior,
    const std::vector<std::vector<std::vector<double>>>& candidates_per_player,
    const EvalOptions& opts);

// Weighted type atoms of one marginal: the discrete support, or the
// value_points-point equal-weight discretization of a uniform marginal.
std::vector<std::pair<Valuation, double>> marginal_atoms(const Marginal& m,
                                                         int value_points);

// Weighted joint type profiles: the correlated atom list, or the product of
// the per-player marginal atoms (throws ResourceError above max_atoms).
std::vector<std::pair<ValuationProfile, double>> prior_atoms(
    const Prior& p, int value_points, std::int64_t max_atoms);

// Full per-item product grid (grid^items vectors, capped at 10^7) and the
// restricted bid-on-one-item action set used by single-bid games.
std::vector<std::vector<double>> product_candidates(int items,
                                                    const BidGrid& grid);
std::vector<std::vector<double>> one_item_candidates(int items,
                                                     const BidGrid& grid);

// Single-good convenience: candidates are the scalar grid points for every
// player.
BneCheckReport epsilon_bne_check(const AuctionFormat& f,
                                 const std::vector<Strategy>& strategies,
                                 const Prior& prior, const BidGrid& grid,
                                 const EvalOptions& opts);

// All pure action profiles (over the given candidate sets) at which no
// player has a strictly improving candidate deviation. Complete
// information: the valuation profile is fixed.
std::vector<BidProfile> pure_ne_enumerate(
    const AuctionFormat& f, const ValuationProfile& values,
    const std::vector<std::vector<std::vector<double>>>& candidates_per_player);

std::vector<BidProfile> pure_ne_enumerate(const AuctionFormat& f,
                                          const ValuationProfile& values,
                                          const BidGrid& grid);

// Bayesian pure strategy profile on a finite grid, with its exact interim
// regret and expected welfare under a finite joint prior.
struct EnumeratedBne {
  std::vector<GridStrategy> strategies;
  double max_regret = 0.0;
  double expected_welfare = 0.0;
};

// Exhaustively enumerates pure grid strategy profiles of a single-good game
// under a finite (possibly correlated) joint prior over scalar types and
// returns those whose interim regret is at most epsilon. Exact expectations
// throughout.
std::vector<EnumeratedBne> enumerate_epsilon_bne(const AuctionFormat& f,
                                                 const CorrelatedJoint& prior,
                                                 const BidGrid& grid,
                                                 double epsilon);

}  // namespace agora

#endif  // AGORA_EQUILIBRIUM_HPP_
