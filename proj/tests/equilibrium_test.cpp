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

#include "agora/equilibrium.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace agora {
namespace {

Prior uniform_square() {
  return IndependentProduct{
      {UniformMarginal{0.0, 1.0}, UniformMarginal{0.0, 1.0}}};
}

TEST(ClosedForms, SymmetricUniformShadesByOneOverN) {
  EXPECT_DOUBLE_EQ(closed_form_bid(symmetric_uniform_fpa_bne(2), 0.8), 0.4);
  EXPECT_DOUBLE_EQ(closed_form_bid(symmetric_uniform_fpa_bne(4), 1.0), 0.75);
  EXPECT_DOUBLE_EQ(closed_form_bid(symmetric_uniform_fpa_bne(2), 0.0), 0.0);
  EXPECT_THROW(symmetric_uniform_fpa_bne(1), InputError);
}

TEST(ClosedForms, AsymmetricPairHitsTheSupportTop) {
  const auto [weak, strong] = vickrey_asymmetric_bne();
  EXPECT_NEAR(closed_form_bid(weak, 1.0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(closed_form_bid(strong, 2.0), 2.0 / 3.0, 1e-15);
  // Frozen against a 30-digit evaluation of the printed formulas.
  EXPECT_NEAR(closed_form_bid(weak, 0.5), 0.26296581635734047, 1e-15);
  EXPECT_NEAR(closed_form_bid(strong, 0.5), 0.23926596236044903, 1e-15);
}

TEST(ClosedForms, WeakBidderIsMoreAggressive) {
  const auto [weak, strong] = vickrey_asymmetric_bne();
  for (double v = 0.1; v < 0.95; v += 0.1) {
    EXPECT_GT(closed_form_bid(weak, v), closed_form_bid(strong, v));
  }
}

TEST(ClosedForms, AsymmetricBidsStayInTheGuaranteedRange) {
  const auto [weak, strong] = vickrey_asymmetric_bne();
  for (int k = 0; k <= 1000; ++k) {
    const double v1 = k / 1000.0;
    const double v2 = 2.0 * k / 1000.0;
    EXPECT_GE(closed_form_bid(weak, v1), 0.0);
    EXPECT_LE(closed_form_bid(weak, v1), 2.0 / 3.0 + 1e-12);
    EXPECT_GE(closed_form_bid(strong, v2), 0.0);
    EXPECT_LE(closed_form_bid(strong, v2), 2.0 / 3.0 + 1e-12);
  }
}

TEST(ClosedForms, PureStrategiesAreNondecreasingInValue) {
  const auto [weak, strong] = vickrey_asymmetric_bne();
  const std::vector<std::pair<ClosedFormStrategy, double>> cases = {
      {symmetric_uniform_fpa_bne(3), 1.0}, {weak, 1.0}, {strong, 2.0}};
  for (const auto& [s, hi] : cases) {
    double prev = -1.0;
    for (int k = 0; k <= 500; ++k) {
      const double bid = closed_form_bid(s, hi * k / 500.0);
      EXPECT_GE(bid, prev - 1e-12);
      prev = bid;
    }
  }
}

TEST(MixedStrategy, ReciprocalCdfSamplesStayOnTheSupport) {
  Rng rng(3);
  const Strategy s = bad_example_mixed_strategy();
  const Valuation unit = UnitDemandValuation{{1.0, 1.0}};
  int below_third = 0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const std::vector<double> bid = sample_action(s, unit, 2, rng);
    const double x = bid[0] + bid[1];  // exactly one coordinate is nonzero
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 0.5 + 1e-12);
    if (x <= 1.0 / 3.0) ++below_third;
  }
  // F(1/3) = 1/2 and F(1/2) = 1 for F(x) = x/(1-x).
  EXPECT_NEAR(static_cast<double>(below_third) / n, 0.5, 0.01);
}

TEST(MixedStrategy, PureBidUtilityIsFlatAtOneHalf) {
  // Against the mixed opponent a bid of x on either item wins with
  // probability 1/2 + F(x)/2, so (1 - x) P[win] = 1/2 on the whole support;
  // strictly lower above it.
  const AuctionFormat f = SimultaneousItems{2, ItemRule::kFirstPrice};
  const Prior prior = CorrelatedJoint{
      {ValuationProfile{
          {UnitDemandValuation{{1.0, 1.0}}, UnitDemandValuation{{1.0, 1.0}}}}},
      {1.0}};
  const std::vector<Strategy> strategies(2, bad_example_mixed_strategy());
  EvalOptions opts;
  opts.samples = 400000;
  opts.seed = 12;

  for (double x : {0.05, 0.1, 0.25, 0.4, 0.5}) {
    const BestResponse r =
        best_response(f, 0, UnitDemandValuation{{1.0, 1.0}}, strategies, prior,
                      {{x, 0.0}}, opts);
    EXPECT_NEAR(r.utility, 0.5, 0.01) << "bid " << x;
  }
  const BestResponse above =
      best_response(f, 0, UnitDemandValuation{{1.0, 1.0}}, strategies, prior,
                    {{0.55, 0.0}}, opts);
  EXPECT_NEAR(above.utility, 0.45, 0.01);

  // A zero bid is non-participation in simultaneous sales, so the
  // indifference band is the half-open support (0, 1/2].
  const BestResponse at_zero =
      best_response(f, 0, UnitDemandValuation{{1.0, 1.0}}, strategies, prior,
                    {{0.0, 0.0}}, opts);
  EXPECT_DOUBLE_EQ(at_zero.utility, 0.0);
}

TEST(BidGridPoints, CoverZeroThroughCapInclusive) {
  const BidGrid grid{0.25, 1.0};
  const std::vector<double> pts = grid.points();
  ASSERT_EQ(pts.size(), 5u);
  EXPECT_DOUBLE_EQ(pts.front(), 0.0);
  EXPECT_DOUBLE_EQ(pts.back(), 1.0);
  EXPECT_THROW((BidGrid{0.0, 1.0}.points()), InputError);
}

TEST(BestResponse, BeatsAConstantOpponentByOneStep) {
  // Player 1 loses ties, so the best grid reply to a constant 0.3 is 0.31.
  const AuctionFormat f = FirstPriceSingleItem{};
  const Prior prior = CorrelatedJoint{
      {ValuationProfile{{make_scalar(1.0), make_scalar(1.0)}}}, {1.0}};
  const std::vector<Strategy> strategies = {
      ClosedFormStrategy{ClosedFormId::kConstant, 0.3},
      ClosedFormStrategy{ClosedFormId::kConstant, 0.0}};
  std::vector<std::vector<double>> candidates;
  for (double b : BidGrid{0.01, 1.0}.points()) candidates.push_back({b});
  const BestResponse r = best_response(f, 1, make_scalar(1.0), strategies,
                                       prior, candidates, EvalOptions{});
  ASSERT_EQ(r.action.size(), 1u);
  EXPECT_NEAR(r.action[0], 0.31, 1e-12);
  EXPECT_NEAR(r.utility, 0.69, 1e-12);
}

TEST(BestResponse, TruthfulIsAmongSecondPriceMaximizers) {
  const AuctionFormat f = SecondPriceSingleItem{};
  const Prior prior = IndependentProduct{
      {UniformMarginal{0.0, 1.0},
       DiscreteMarginal::over_scalars({0.2, 0.6, 0.9}, {0.3, 0.4, 0.3})}};
  const std::vector<Strategy> strategies(
      2, Strategy{ClosedFormStrategy{ClosedFormId::kTruthful, 0.0}});
  std::vector<std::vector<double>> candidates;
  for (double b : BidGrid{0.1, 1.0}.points()) candidates.push_back({b});
  for (double v : {0.3, 0.5, 1.0}) {
    const BestResponse best = best_response(f, 0, make_scalar(v), strategies,
                                            prior, candidates, EvalOptions{});
    const BestResponse truthful = best_response(
        f, 0, make_scalar(v), strategies, prior, {{v}}, EvalOptions{});
    EXPECT_NEAR(truthful.utility, best.utility, 1e-12) << "value " << v;
  }
}

TEST(BestResponse, RecoversTheEquilibriumFixedPoint) {
  // Against s(w) = w/2 under uniform values, the best reply at v = 0.8 is
  // half the value, up to one grid step.
  const AuctionFormat f = FirstPriceSingleItem{};
  const std::vector<Strategy> strategies(2,
                                         Strategy{symmetric_uniform_fpa_bne(2)});
  std::vector<std::vector<double>> candidates;
  for (double b : BidGrid{0.01, 1.0}.points()) candidates.push_back({b});
  const BestResponse r =
      best_response(f, 0, make_scalar(0.8), strategies, uniform_square(),
                    candidates, EvalOptions{});
  EXPECT_NEAR(r.action[0], 0.4, 0.011);
}

TEST(BestResponse, GridMaximizerPropertyHoldsUnderMonteCarlo) {
  // Monte-Carlo path (mixed opponent): no grid point may beat the reported
  // maximizer by more than twice the combined standard error.
  const AuctionFormat f = SimultaneousItems{2, ItemRule::kFirstPrice};
  const Prior prior = CorrelatedJoint{
      {ValuationProfile{
          {UnitDemandValuation{{1.0, 1.0}}, UnitDemandValuation{{1.0, 1.0}}}}},
      {1.0}};
  const std::vector<Strategy> strategies(2, bad_example_mixed_strategy());
  const std::vector<std::vector<double>> candidates =
      one_item_candidates(2, BidGrid{0.1, 0.5});
  EvalOptions opts;
  opts.samples = 50000;
  const BestResponse best =
      best_response(f, 1, UnitDemandValuation{{1.0, 1.0}}, strategies, prior,
                    candidates, opts);
  for (const auto& c : candidates) {
    const BestResponse r = best_response(
        f, 1, UnitDemandValuation{{1.0, 1.0}}, strategies, prior, {c}, opts);
    EXPECT_LE(r.utility,
              best.utility + 2.0 * (r.std_error + best.std_error) + 1e-9);
  }
}

TEST(EpsilonBne, SymmetricHalfValueShadingIsAGridEquilibrium) {
  const AuctionFormat f = FirstPriceSingleItem{};
  const std::vector<Strategy> strategies(2,
                                         Strategy{symmetric_uniform_fpa_bne(2)});
  EvalOptions opts;
  opts.value_points = 101;
  const BneCheckReport report = epsilon_bne_check(
      f, strategies, uniform_square(), BidGrid{0.005, 1.0}, opts);
  EXPECT_LE(report.max_regret, 0.01);
  EXPECT_EQ(report.rows.size(), 202u);
}

TEST(EpsilonBne, RegretShrinksWithTheGridStep) {
  const AuctionFormat f = FirstPriceSingleItem{};
  const std::vector<Strategy> strategies(2,
                                         Strategy{symmetric_uniform_fpa_bne(2)});
  EvalOptions opts;
  opts.value_points = 51;
  const double coarse = epsilon_bne_check(f, strategies, uniform_square(),
                                          BidGrid{0.04, 1.0}, opts)
                            .max_regret;
  const double fine = epsilon_bne_check(f, strategies, uniform_square(),
                                        BidGrid{0.02, 1.0}, opts)
                          .max_regret;
  EXPECT_LE(fine, coarse + 1e-9);
  EXPECT_LE(fine, 0.03);
}

TEST(EpsilonBne, AsymmetricClosedFormsPassAtTwoPercent) {
  const AuctionFormat f = FirstPriceSingleItem{};
  const auto [weak, strong] = vickrey_asymmetric_bne();
  const std::vector<Strategy> strategies = {weak, strong};
  const Prior prior =
      IndependentProduct{{UniformMarginal{0.0, 1.0}, UniformMarginal{0.0, 2.0}}};
  EvalOptions opts;
  opts.value_points = 101;
  const BneCheckReport report =
      epsilon_bne_check(f, strategies, prior, BidGrid{0.005, 2.0}, opts);
  EXPECT_LE(report.max_regret, 0.02);
}

TEST(PureNe, FirstPriceGridEquilibriaAwardTheHighValuePlayer) {
  const AuctionFormat f = FirstPriceSingleItem{};
  ValuationProfile v;
  v.players = {make_scalar(1.0), make_scalar(0.5)};
  const std::vector<BidProfile> equilibria =
      pure_ne_enumerate(f, v, BidGrid{0.25, 1.0});
  ASSERT_FALSE(equilibria.empty());
  for (const auto& b : equilibria) {
    EXPECT_EQ(outcome(f, b).item_winner[0], 0);
  }
}

TEST(PureNe, SecondPriceOverbiddingEquilibriumIsFound) {
  const AuctionFormat f = SecondPriceSingleItem{};
  ValuationProfile v;
  v.players = {make_scalar(0.01), make_scalar(1.0)};
  const std::vector<BidProfile> equilibria =
      pure_ne_enumerate(f, v, BidGrid{0.25, 1.0});
  const bool has_pathology =
      std::any_of(equilibria.begin(), equilibria.end(), [](const BidProfile& b) {
        return b.bids[0][0] == 1.0 && b.bids[1][0] == 0.0;
      });
  EXPECT_TRUE(has_pathology);
}

TEST(EnumerateEpsilonBne, PointMassPriorReducesToPureNash) {
  const AuctionFormat f = FirstPriceSingleItem{};
  ValuationProfile atom;
  atom.players = {make_scalar(1.0), make_scalar(0.5)};
  const CorrelatedJoint prior{{atom}, {1.0}};
  const std::vector<EnumeratedBne> found =
      enumerate_epsilon_bne(f, prior, BidGrid{0.25, 1.0}, 1e-9);
  const std::vector<BidProfile> pure =
      pure_ne_enumerate(f, atom, BidGrid{0.25, 1.0});
  EXPECT_EQ(found.size(), pure.size());
  for (const auto& bne : found) {
    EXPECT_GE(bne.expected_welfare, 1.0 - 1e-12);
  }
}

TEST(EnumerateEpsilonBne, WelfareIsExactOverTheAtoms) {
  const AuctionFormat f = FirstPriceSingleItem{};
  ValuationProfile a1, a2;
  a1.players = {make_scalar(1.0), make_scalar(0.5)};
  a2.players = {make_scalar(0.2), make_scalar(0.5)};
  const CorrelatedJoint prior{{a1, a2}, {0.5, 0.5}};
  const std::vector<EnumeratedBne> found =
      enumerate_epsilon_bne(f, prior, BidGrid{0.1, 1.0}, 0.05);
  ASSERT_FALSE(found.empty());
  for (const auto& bne : found) {
    EXPECT_LE(bne.max_regret, 0.05);
    // E[OPT] = 0.5 * 1.0 + 0.5 * 0.5 bounds every equilibrium's welfare.
    EXPECT_LE(bne.expected_welfare, 0.75 + 1e-12);
  }
}

}  // namespace
}  // namespace agora
