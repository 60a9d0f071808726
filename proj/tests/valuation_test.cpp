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

#include "agora/valuation.hpp"

#include <gtest/gtest.h>

#include "agora/prior.hpp"
#include "agora/random.hpp"

namespace agora {
namespace {

XosValuation random_xos(int items, int clauses, Rng& rng) {
  XosValuation v;
  for (int l = 0; l < clauses; ++l) {
    AdditiveValuation clause;
    for (int j = 0; j < items; ++j) {
      clause.weights.push_back(uniform_in(rng, 0.0, 2.0));
    }
    v.clauses.push_back(std::move(clause));
  }
  return v;
}

TEST(Value, UnitDemandTakesTheBestItem) {
  const Valuation v = UnitDemandValuation{{3.0, 5.0}};
  EXPECT_DOUBLE_EQ(value(v, ItemSet::of({0, 1})), 5.0);
  EXPECT_DOUBLE_EQ(value(v, ItemSet::of({0})), 3.0);
}

TEST(Value, EmptySetIsWorthZeroForEveryClass) {
  const std::vector<Valuation> all = {
      AdditiveValuation{{1.0, 2.0}},
      UnitDemandValuation{{3.0, 5.0}},
      XosValuation{{AdditiveValuation{{1.0, 0.0}}}},
      SingleMindedValuation{2, ItemSet::of({0, 1}), 4.0},
      TableValuation{2, {0.0, 1.0, 1.0, 1.5}},
  };
  for (const auto& v : all) {
    EXPECT_DOUBLE_EQ(value(v, ItemSet{}), 0.0);
  }
}

TEST(Value, SingletonClausesReproduceUnitDemandEverywhere) {
  const UnitDemandValuation ud{{0.5, 2.0, 1.0, 0.25}};
  const XosValuation xos = to_xos(Valuation{ud});
  for (std::uint32_t mask = 0; mask < num_subsets(4); ++mask) {
    EXPECT_DOUBLE_EQ(value(Valuation{xos}, ItemSet(mask)),
                     value(Valuation{ud}, ItemSet(mask)))
        << "subset " << mask;
  }
}

TEST(Value, OutOfRangeItemIsAnInputError) {
  const Valuation v = AdditiveValuation{{1.0}};
  EXPECT_THROW(value(v, ItemSet::of({1})), InputError);
}

TEST(Value, MonotoneOnAllSubsetPairs) {
  Rng rng(99);
  std::vector<Valuation> cases = {
      AdditiveValuation{{0.3, 0.0, 1.1}},
      UnitDemandValuation{{0.9, 0.1, 0.4}},
      random_xos(3, 4, rng),
      SingleMindedValuation{3, ItemSet::of({1, 2}), 2.0},
  };
  for (const auto& v : cases) {
    for (std::uint32_t s = 0; s < num_subsets(3); ++s) {
      for (int j = 0; j < 3; ++j) {
        const ItemSet base(s);
        EXPECT_LE(value(v, base), value(v, base.with(j)) + 1e-15);
      }
    }
  }
}

TEST(MaximizingClause, PicksTheClauseAttainingTheValue) {
  const XosValuation xos = to_xos(Valuation{UnitDemandValuation{{3.0, 5.0}}});
  EXPECT_EQ(maximizing_clause(xos, ItemSet::of({0, 1})), 1);
  EXPECT_EQ(maximizing_clause(xos, ItemSet{}), 0);  // tie, lowest index
}

TEST(MaximizingClause, AgreesWithValueOnRandomInstances) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const XosValuation xos = random_xos(4, 3, rng);
    const ItemSet s(static_cast<std::uint32_t>(rng() % 16));
    const int l = maximizing_clause(xos, s);
    double clause_sum = 0.0;
    for (int j = 0; j < 4; ++j) {
      if (s.contains(j)) clause_sum += xos.clauses[l].weights[j];
    }
    EXPECT_DOUBLE_EQ(clause_sum, value(Valuation{xos}, s));
  }
}

TEST(XosEnvelope, EveryClauseIsALowerBoundWithEqualityAtTheMax) {
  Rng rng(21);
  const XosValuation xos = random_xos(4, 5, rng);
  for (std::uint32_t mask = 0; mask < num_subsets(4); ++mask) {
    const ItemSet s(mask);
    const double v = value(Valuation{xos}, s);
    for (const auto& clause : xos.clauses) {
      double sum = 0.0;
      for (int j = 0; j < 4; ++j) {
        if (s.contains(j)) sum += clause.weights[j];
      }
      EXPECT_LE(sum, v + 1e-15);
    }
  }
}

TEST(IsSubmodular, AdditiveTablesPass) {
  const TableValuation t = to_table(AdditiveValuation{{1.0, 2.0, 0.5}});
  EXPECT_TRUE(is_submodular(t).submodular);
}

TEST(IsSubmodular, UnitDemandTablesPass) {
  const TableValuation t = to_table(UnitDemandValuation{{1.0, 0.7, 0.4}});
  EXPECT_TRUE(is_submodular(t).submodular);
}

TEST(IsSubmodular, SingleMindedBundleFailsWithWitness) {
  const TableValuation t =
      to_table(SingleMindedValuation{2, ItemSet::of({0, 1}), 1.0});
  const SubmodularityCheck check = is_submodular(t);
  ASSERT_FALSE(check.submodular);
  ASSERT_TRUE(check.witness.has_value());
  // The witness is a genuine violation of decreasing marginals.
  const auto& w = *check.witness;
  const auto val = [&](ItemSet s) { return value(Valuation{t}, s); };
  EXPECT_GT(val(w.t.with(w.item)) - val(w.t), val(w.s.with(w.item)) - val(w.s));
  EXPECT_TRUE(w.s.subset_of(w.t));
}

TEST(SubmodularToXos, AdditiveIsItsOwnClause) {
  const TableValuation t = to_table(AdditiveValuation{{1.0, 2.0}});
  const XosValuation xos = submodular_to_xos(t);
  for (std::uint32_t mask = 0; mask < 4; ++mask) {
    EXPECT_DOUBLE_EQ(value(Valuation{xos}, ItemSet(mask)), t.values[mask]);
  }
}

TEST(SubmodularToXos, CoverageFunctionMatchesOnAllSubsets) {
  // f = weighted coverage: items cover {a}, {a,b}, {b,c} with weights
  // a=1, b=2, c=0.5.
  TableValuation t;
  t.num_items = 3;
  t.values.assign(8, 0.0);
  const auto cover = [](std::uint32_t mask) {
    double total = 0.0;
    bool a = mask & 3, b = (mask & 2) || (mask & 4), c = mask & 4;
    if (a) total += 1.0;
    if (b) total += 2.0;
    if (c) total += 0.5;
    return total;
  };
  for (std::uint32_t mask = 0; mask < 8; ++mask) t.values[mask] = cover(mask);
  ASSERT_TRUE(is_submodular(t).submodular);
  const XosValuation xos = submodular_to_xos(t);
  EXPECT_EQ(xos.clauses.size(), 6u);  // 3! orderings
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    EXPECT_NEAR(value(Valuation{xos}, ItemSet(mask)), t.values[mask], 1e-12);
  }
}

TEST(SubmodularToXos, RejectsComplementsWithWitnessMessage) {
  const TableValuation t =
      to_table(SingleMindedValuation{2, ItemSet::of({0, 1}), 1.0});
  try {
    submodular_to_xos(t);
    FAIL() << "expected rejection";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("witness"), std::string::npos);
  }
}

TEST(TableValidation, RejectsNonMonotoneAndNonZeroEmpty) {
  EXPECT_THROW(validate(Valuation{TableValuation{1, {0.5, 1.0}}}), InputError);
  EXPECT_THROW(validate(Valuation{TableValuation{2, {0.0, 1.0, 1.0, 0.5}}}),
               InputError);
}

TEST(SampleProfile, SingleAtomJointAlwaysReturnsTheAtom) {
  ValuationProfile atom;
  atom.players = {make_scalar(0.3), make_scalar(0.9)};
  const Prior p = CorrelatedJoint{{atom}, {1.0}};
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const ValuationProfile drawn = sample_profile(p, seed);
    EXPECT_DOUBLE_EQ(scalar_value(drawn.players[0]), 0.3);
    EXPECT_DOUBLE_EQ(scalar_value(drawn.players[1]), 0.9);
  }
}

TEST(SampleProfile, PointMassProductIsDeterministic) {
  IndependentProduct p;
  p.players = {DiscreteMarginal::point(make_scalar(0.25)),
               DiscreteMarginal::point(make_scalar(1.5))};
  const ValuationProfile drawn = sample_profile(Prior{p}, 42);
  EXPECT_DOUBLE_EQ(scalar_value(drawn.players[0]), 0.25);
  EXPECT_DOUBLE_EQ(scalar_value(drawn.players[1]), 1.5);
}

TEST(SampleProfile, UniformSquareHasTheRightMean) {
  IndependentProduct p;
  p.players = {UniformMarginal{0.0, 1.0}, UniformMarginal{0.0, 1.0}};
  const Prior prior{p};
  Rng rng(2026);
  double sum0 = 0.0, sum1 = 0.0;
  const int n = 100000;
  for (int s = 0; s < n; ++s) {
    const ValuationProfile v = sample_profile(prior, rng);
    sum0 += scalar_value(v.players[0]);
    sum1 += scalar_value(v.players[1]);
  }
  EXPECT_NEAR(sum0 / n, 0.5, 0.005);
  EXPECT_NEAR(sum1 / n, 0.5, 0.005);
}

TEST(SampleProfile, SameSeedSameProfile) {
  IndependentProduct p;
  p.players = {UniformMarginal{0.0, 2.0},
               DiscreteMarginal::over_scalars({0.1, 0.7}, {0.5, 0.5})};
  const Prior prior{p};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ValuationProfile a = sample_profile(prior, seed);
    const ValuationProfile b = sample_profile(prior, seed);
    EXPECT_DOUBLE_EQ(scalar_value(a.players[0]), scalar_value(b.players[0]));
    EXPECT_DOUBLE_EQ(scalar_value(a.players[1]), scalar_value(b.players[1]));
  }
}

TEST(PriorValidation, CatchesBadProbabilitiesAndBounds) {
  EXPECT_THROW(
      validate(Prior{IndependentProduct{{UniformMarginal{1.0, 1.0}}}}),
      InputError);
  EXPECT_THROW(
      validate(Prior{IndependentProduct{
          {DiscreteMarginal::over_scalars({1.0}, {0.7})}}}),
      InputError);
  ValuationProfile atom;
  atom.players = {make_scalar(1.0)};
  EXPECT_THROW(validate(Prior{CorrelatedJoint{{atom}, {0.99}}}), InputError);
}

}  // namespace
}  // namespace agora
