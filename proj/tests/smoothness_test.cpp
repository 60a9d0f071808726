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

#include "agora/smoothness.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace agora {
namespace {

constexpr double kOneMinusInvE = 0.63212055882855768;

ValuationProfile scalars(const std::vector<double>& vs) {
  ValuationProfile p;
  for (double v : vs) p.players.push_back(make_scalar(v));
  return p;
}

std::vector<ValuationProfile> scalar_profile_grid(
    const std::vector<double>& points, int players) {
  std::vector<ValuationProfile> out;
  std::vector<std::size_t> idx(players, 0);
  while (true) {
    std::vector<double> vs(players);
    for (int i = 0; i < players; ++i) vs[i] = points[idx[i]];
    out.push_back(scalars(vs));
    int i = players - 1;
    while (i >= 0 && ++idx[i] == points.size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

std::vector<BidProfile> scalar_bid_grid(const std::vector<double>& points,
                                        int players) {
  std::vector<BidProfile> out;
  std::vector<std::size_t> idx(players, 0);
  while (true) {
    std::vector<double> bs(players);
    for (int i = 0; i < players; ++i) bs[i] = points[idx[i]];
    out.push_back(BidProfile::scalars(bs));
    int i = players - 1;
    while (i >= 0 && ++idx[i] == points.size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

std::vector<double> eleven_grid() {
  std::vector<double> pts;
  for (int k = 0; k <= 10; ++k) pts.push_back(k / 10.0);
  return pts;
}

TEST(BuiltinDeviation, HalfValueIsAPointMassAtHalfTheValue) {
  const DeviationRule rule = builtin_deviation("halfValueFpa");
  EXPECT_EQ(rule.kind, DeviationKind::kPrivate);
  EXPECT_TRUE(rule.deterministic);
  Rng rng(0);
  const std::vector<double> bid = rule.sample(scalars({0.8, 0.2}), 0, rng);
  ASSERT_EQ(bid.size(), 1u);
  EXPECT_DOUBLE_EQ(bid[0], 0.4);
}

TEST(BuiltinDeviation, OptimizedSupportTopIsOneMinusInvE) {
  const DeviationRule rule = builtin_deviation("optimizedFpa");
  Rng rng(1);
  double top = 0.0;
  for (int s = 0; s < 100000; ++s) {
    const double b = rule.sample(scalars({1.0, 0.0}), 0, rng)[0];
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, kOneMinusInvE + 1e-12);
    top = std::max(top, b);
  }
  EXPECT_NEAR(top, kOneMinusInvE, 1e-3);
}

TEST(BuiltinDeviation, OptimizedExpectedUtilityMatchesTheClosedForm) {
  // Monte-Carlo integration of (v - b) 1{b > p} against the 1/(v - b)
  // density must give (1 - 1/e) v - p; the chosen density stands on this
  // identity.
  const DeviationRule rule = builtin_deviation("optimizedFpa");
  const AuctionFormat f = FirstPriceSingleItem{};
  Rng rng(2);
  const double p = 0.3;
  double sum = 0.0;
  const int n = 200000;
  for (int s = 0; s < n; ++s) {
    const double b = rule.sample(scalars({1.0, 0.0}), 0, rng)[0];
    sum += utility(f, BidProfile::scalars({b, p}), 0, make_scalar(1.0));
  }
  EXPECT_NEAR(sum / n, kOneMinusInvE - 0.3, 0.005);
}

TEST(BuiltinDeviation, AllPayTopOnlyTheHighestValuePlayerBids) {
  const DeviationRule rule = builtin_deviation("allPayTop");
  Rng rng(3);
  const ValuationProfile v = scalars({0.4, 0.9, 0.2});
  for (int s = 0; s < 1000; ++s) {
    EXPECT_DOUBLE_EQ(rule.sample(v, 0, rng)[0], 0.0);
    EXPECT_DOUBLE_EQ(rule.sample(v, 2, rng)[0], 0.0);
    const double top = rule.sample(v, 1, rng)[0];
    EXPECT_GE(top, 0.0);
    EXPECT_LE(top, 0.9);
  }
}

TEST(BuiltinDeviation, SimOptItemBidsHalfTheValueOnTheMatchedItem) {
  const DeviationRule rule = builtin_deviation("simFpaOptItem");
  ValuationProfile v;
  v.players = {UnitDemandValuation{{1.0, 0.3}}, UnitDemandValuation{{0.8, 0.6}}};
  Rng rng(4);
  // The optimal matching sends item 0 to player 0 and item 1 to player 1.
  EXPECT_EQ(rule.sample(v, 0, rng), (std::vector<double>{0.5, 0.0}));
  EXPECT_EQ(rule.sample(v, 1, rng), (std::vector<double>{0.0, 0.3}));
}

TEST(BuiltinDeviation, UnknownNameIsAnInputError) {
  EXPECT_THROW(builtin_deviation("halfValue"), InputError);
}

TEST(VerifySmoothness, FirstPriceHalfValueIsExactlyHalfOneSmooth) {
  const SmoothnessReport report = verify_smoothness(
      AuctionFormat{FirstPriceSingleItem{}}, builtin_deviation("halfValueFpa"),
      SmoothnessParams{0.5, 1.0, SmoothnessMode::kStrong},
      cross_cases(scalar_profile_grid(eleven_grid(), 2),
                  scalar_bid_grid(eleven_grid(), 2)),
      VerifyOptions{});
  EXPECT_TRUE(report.pass);
  EXPECT_GE(report.min_margin, -1e-9);
  EXPECT_EQ(report.rows.size(), 121u * 121u);
}

TEST(VerifySmoothness, PointwiseHalfValueBoundHoldsOnTheGrid) {
  // u_i(v_i/2, b_-i) >= v_i/2 - p(b) for every grid pair.
  const AuctionFormat f = FirstPriceSingleItem{};
  for (double v : eleven_grid()) {
    for (double b0 : eleven_grid()) {
      for (double b1 : eleven_grid()) {
        const double price = std::max(b0, b1);
        const double dev0 =
            utility(f, BidProfile::scalars({v / 2.0, b1}), 0, make_scalar(v));
        EXPECT_GE(dev0, v / 2.0 - price - 1e-12);
        const double dev1 =
            utility(f, BidProfile::scalars({b0, v / 2.0}), 1, make_scalar(v));
        EXPECT_GE(dev1, v / 2.0 - price - 1e-12);
      }
    }
  }
}

TEST(VerifySmoothness, FirstPriceOptimizedIsOneMinusInvESmooth) {
  VerifyOptions opts;
  opts.samples = 10000;
  opts.seed = 5;
  const SmoothnessReport report = verify_smoothness(
      AuctionFormat{FirstPriceSingleItem{}}, builtin_deviation("optimizedFpa"),
      SmoothnessParams{kOneMinusInvE, 1.0, SmoothnessMode::kStrong},
      cross_cases(scalar_profile_grid({0.0, 0.5, 1.0}, 2),
                  scalar_bid_grid({0.0, 0.25, 0.5, 0.75, 1.0}, 2)),
      opts);
  EXPECT_TRUE(report.pass);
}

TEST(VerifySmoothness, AllPayTopIsHalfOneSmooth) {
  VerifyOptions opts;
  opts.samples = 10000;
  opts.seed = 6;
  const SmoothnessReport report = verify_smoothness(
      AuctionFormat{AllPaySingleItem{}}, builtin_deviation("allPayTop"),
      SmoothnessParams{0.5, 1.0, SmoothnessMode::kStrong},
      cross_cases(scalar_profile_grid({0.0, 0.4, 1.0}, 2),
                  scalar_bid_grid({0.0, 0.3, 0.6, 1.0}, 2)),
      opts);
  EXPECT_TRUE(report.pass);
}

TEST(VerifySmoothness, RaisingLambdaShrinksTheMargin) {
  const auto cases = cross_cases(scalar_profile_grid(eleven_grid(), 2),
                                 scalar_bid_grid({0.0, 0.5, 1.0}, 2));
  const DeviationRule rule = builtin_deviation("halfValueFpa");
  const SmoothnessReport at_half =
      verify_smoothness(AuctionFormat{FirstPriceSingleItem{}}, rule,
                        SmoothnessParams{0.5, 1.0, SmoothnessMode::kStrong},
                        cases, VerifyOptions{});
  const SmoothnessReport at_more =
      verify_smoothness(AuctionFormat{FirstPriceSingleItem{}}, rule,
                        SmoothnessParams{0.6, 1.0, SmoothnessMode::kStrong},
                        cases, VerifyOptions{});
  EXPECT_LT(at_more.min_margin, at_half.min_margin);
  EXPECT_FALSE(at_more.pass);  // (0.6, 1) over-claims for half-value bidding
}

TEST(VerifySmoothness, WeakModeRejectsOverbiddingActionCases) {
  const std::vector<SmoothnessCase> cases = {
      {scalars({0.5, 0.5}), BidProfile::scalars({0.6, 0.1})}};
  EXPECT_THROW(
      verify_smoothness(AuctionFormat{SecondPriceSingleItem{}},
                        builtin_deviation("halfValueFpa"),
                        SmoothnessParams{0.5, 1.0, SmoothnessMode::kWeak},
                        cases, VerifyOptions{}),
      InputError);
}

TEST(VerifySmoothness, SecondPriceTruthfulIsOneOneWeaklySmooth) {
  // u_i(v_i, b_-i) >= v_i - winning-bid-sum whenever nobody overbids.
  DeviationRule truthful;
  truthful.kind = DeviationKind::kPrivate;
  truthful.name = "truthful";
  truthful.deterministic = true;
  truthful.sample = [](const ValuationProfile& values, int i, Rng&) {
    return std::vector<double>{scalar_value(values.players[i])};
  };
  std::vector<SmoothnessCase> cases;
  for (const auto& v : scalar_profile_grid(eleven_grid(), 2)) {
    // Action grids capped at the per-player value keep no-overbidding.
    for (double frac0 : {0.0, 0.5, 1.0}) {
      for (double frac1 : {0.0, 0.5, 1.0}) {
        cases.push_back(
            {v, BidProfile::scalars({frac0 * scalar_value(v.players[0]),
                                     frac1 * scalar_value(v.players[1])})});
      }
    }
  }
  const SmoothnessReport report = verify_smoothness(
      AuctionFormat{SecondPriceSingleItem{}}, truthful,
      SmoothnessParams{1.0, 1.0, SmoothnessMode::kWeak}, cases, VerifyOptions{});
  EXPECT_TRUE(report.pass);
  EXPECT_GE(report.min_margin, -1e-9);
}

TEST(PoaBound, StrongIsLambdaOverMuWeakDividesByOnePlusMu) {
  EXPECT_NEAR(poa_bound({kOneMinusInvE, 1.0, SmoothnessMode::kStrong}),
              kOneMinusInvE, 1e-15);
  EXPECT_DOUBLE_EQ(poa_bound({0.5, 1.0, SmoothnessMode::kStrong}), 0.5);
  EXPECT_DOUBLE_EQ(poa_bound({0.5, 1.0, SmoothnessMode::kWeak}), 0.25);
  EXPECT_THROW(poa_bound({1.5, 1.0, SmoothnessMode::kStrong}), InputError);
  EXPECT_THROW(poa_bound({0.5, 0.5, SmoothnessMode::kStrong}), InputError);
}

TEST(BayesianSampledDeviation, PointMassPriorReproducesTheFullRule) {
  const Prior prior =
      IndependentProduct{{DiscreteMarginal::point(make_scalar(0.9)),
                          DiscreteMarginal::point(make_scalar(0.4))}};
  const DeviationRule rule =
      bayesian_sampled_deviation(builtin_deviation("halfValueFpa"), prior);
  EXPECT_EQ(rule.kind, DeviationKind::kPrivate);
  Rng rng(7);
  EXPECT_DOUBLE_EQ(rule.sample(scalars({0.9, 0.4}), 0, rng)[0], 0.45);
}

TEST(BayesianSampledDeviation, TwoAtomPriorMixesThePerAtomDeviations) {
  // Player 0 has values (1.0, 0.9). Against opponent type (2.0, 0.1) the
  // optimal matching hands her item 1 (bid (0, 0.45)); against (0.1, 2.0)
  // she gets item 0 (bid (0.5, 0)). The sampled private deviation must mix
  // the two with the atom weights 0.25 / 0.75.
  IndependentProduct prior;
  prior.players = {DiscreteMarginal::point(UnitDemandValuation{{1.0, 0.9}}),
                   DiscreteMarginal{{UnitDemandValuation{{2.0, 0.1}},
                                     UnitDemandValuation{{0.1, 2.0}}},
                                    {0.25, 0.75}}};
  const DeviationRule rule =
      bayesian_sampled_deviation(builtin_deviation("simFpaOptItem"), prior);
  ValuationProfile actual;
  actual.players = {UnitDemandValuation{{1.0, 0.9}},
                    UnitDemandValuation{{0.1, 2.0}}};
  Rng rng(8);
  int item1 = 0;
  const int n = 100000;
  for (int s = 0; s < n; ++s) {
    const std::vector<double> bid = rule.sample(actual, 0, rng);
    if (bid[1] > 0.0) {
      ++item1;
      EXPECT_DOUBLE_EQ(bid[1], 0.45);
    } else {
      EXPECT_DOUBLE_EQ(bid[0], 0.5);
    }
  }
  EXPECT_NEAR(static_cast<double>(item1) / n, 0.25, 0.01);
}

TEST(BayesianSampledDeviation, CorrelatedPriorIsRejected) {
  const CorrelatedJoint prior{{scalars({1.0, 1.0})}, {1.0}};
  EXPECT_THROW(
      bayesian_sampled_deviation(builtin_deviation("halfValueFpa"), prior),
      InputError);
}

TEST(PrivateRules, ActionDistributionIgnoresOthersValuations) {
  for (const char* name : {"halfValueFpa", "optimizedFpa"}) {
    const DeviationRule rule = builtin_deviation(name);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rng rng_a(seed), rng_b(seed);
      const double a = rule.sample(scalars({0.7, 0.1}), 0, rng_a)[0];
      const double b = rule.sample(scalars({0.7, 0.9}), 0, rng_b)[0];
      EXPECT_DOUBLE_EQ(a, b) << name;
    }
  }
}

TEST(Hashing, ProfileHashesSeparateDistinctCases) {
  EXPECT_NE(hash_profile(scalars({0.1, 0.2})), hash_profile(scalars({0.2, 0.1})));
  EXPECT_EQ(hash_profile(scalars({0.1, 0.2})), hash_profile(scalars({0.1, 0.2})));
  EXPECT_NE(hash_profile(BidProfile::scalars({1.0, 0.0})),
            hash_profile(BidProfile::scalars({0.0, 1.0})));
}

}  // namespace
}  // namespace agora
