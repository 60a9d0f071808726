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

#include <cmath>
#include <cstring>

namespace agora {

namespace {

constexpr double kOneMinusInvE = 1.0 - 0.36787944117144233;  // 1 - 1/e

double scalar_of(const ValuationProfile& values, int i) {
  return scalar_value(values.players[i]);
}

int highest_value_player(const ValuationProfile& values) {
  int top = 0;
  for (int i = 1; i < values.num_players(); ++i) {
    if (scalar_of(values, i) > scalar_of(values, top)) top = i;
  }
  return top;
}

// Random bid with density 1/(v - b) on [0, (1 - 1/e) v]: the density
// integrates to exactly 1 and gives E[(v - b) 1{b > p}] = (1 - 1/e) v - p
// for every price p below the support top.
double optimized_fpa_bid(double v, Rng& rng) {
  if (v <= 0.0) return 0.0;
  return v * (1.0 - std::exp(-uniform_unit(rng)));
}

// Player's item in an optimal matching of a unit-demand profile, -1 if
// unmatched.
std::vector<int> opt_matching_items(const ValuationProfile& values) {
  std::vector<UnitDemandValuation> players;
  players.reserve(values.players.size());
  for (const auto& v : values.players) {
    const auto* ud = std::get_if<UnitDemandValuation>(&v);
    if (ud == nullptr) {
      throw InputError("deviation rule: needs unit-demand valuations");
    }
    players.push_back(*ud);
  }
  const int m = players.empty() ? 0 : static_cast<int>(players.front().item_values.size());
  const OptResult opt = opt_matching(players, m);
  std::vector<int> item(players.size(), -1);
  for (std::size_t i = 0; i < players.size(); ++i) {
    const auto items = opt.allocation.per_player[i].items();
    if (!items.empty()) item[i] = items.front();
  }
  return item;
}

}  // namespace

DeviationRule builtin_deviation(const std::string& name) {
  DeviationRule rule;
  rule.name = name;
  if (name == "halfValueFpa") {
    rule.kind = DeviationKind::kPrivate;
    rule.deterministic = true;
    rule.sample = [](const ValuationProfile& values, int i, Rng&) {
      return std::vector<double>{scalar_of(values, i) / 2.0};
    };
  } else if (name == "optimizedFpa") {
    rule.kind = DeviationKind::kPrivate;
    rule.deterministic = false;
    rule.sample = [](const ValuationProfile& values, int i, Rng& rng) {
      return std::vector<double>{optimized_fpa_bid(scalar_of(values, i), rng)};
    };
  } else if (name == "allPayTop") {
    rule.kind = DeviationKind::kFullProfile;
    rule.deterministic = false;
    rule.sample = [](const ValuationProfile& values, int i, Rng& rng) {
      const int top = highest_value_player(values);
      if (i != top) return std::vector<double>{0.0};
      return std::vector<double>{uniform_in(rng, 0.0, scalar_of(values, top))};
    };
  } else if (name == "simFpaOptItem") {
    rule.kind = DeviationKind::kFullProfile;
    rule.deterministic = true;
    rule.sample = [](const ValuationProfile& values, int i, Rng&) {
      const std::vector<int> item = opt_matching_items(values);
      const auto& ud = std::get<UnitDemandValuation>(values.players[i]);
      std::vector<double> bid(ud.item_values.size(), 0.0);
      if (item[i] >= 0) bid[item[i]] = ud.item_values[item[i]] / 2.0;
      return bid;
    };
  } else if (name == "simFpaOptimizedItem") {
    rule.kind = DeviationKind::kFullProfile;
    rule.deterministic = false;
    rule.sample = [](const ValuationProfile& values, int i, Rng& rng) {
      const std::vector<int> item = opt_matching_items(values);
      const auto& ud = std::get<UnitDemandValuation>(values.players[i]);
      std::vector<double> bid(ud.item_values.size(), 0.0);
      if (item[i] >= 0) {
        bid[item[i]] = optimized_fpa_bid(ud.item_values[item[i]], rng);
      }
      return bid;
    };
  } else {
    throw InputError("builtin_deviation: unknown name '" + name + "'");
  }
  return rule;
}

DeviationRule bayesian_sampled_deviation(const DeviationRule& rule,
                                         const Prior& prior) {
  const auto* ind = std::get_if<IndependentProduct>(&prior);
  if (ind == nullptr) {
    throw InputError(
        "bayesian_sampled_deviation: requires independent valuations; the "
        "construction is invalid for correlated priors");
  }
  validate(prior);
  DeviationRule out;
  out.kind = DeviationKind::kPrivate;
  out.name = rule.name + "+bayesSampled";
  out.deterministic = false;
  const IndependentProduct marginals = *ind;
  const DeviationRule inner = rule;
  out.sample = [marginals, inner](const ValuationProfile& values, int i,
                                  Rng& rng) {
    ValuationProfile imagined;
    imagined.players.resize(marginals.players.size());
    for (std::size_t k = 0; k < marginals.players.size(); ++k) {
      if (static_cast<int>(k) == i) {
        imagined.players[k] = values.players[i];
      } else if (const auto* d =
                     std::get_if<DiscreteMarginal>(&marginals.players[k])) {
        imagined.players[k] = d->support[sample_index(rng, d->probs)];
      } else {
        const auto& u = std::get<UniformMarginal>(marginals.players[k]);
        imagined.players[k] = make_scalar(uniform_in(rng, u.lo, u.hi));
      }
    }
    return inner.sample(imagined, i, rng);
  };
  return out;
}

std::vector<SmoothnessCase> cross_cases(
    const std::vector<ValuationProfile>& values,
    const std::vector<BidProfile>& actions) {
  std::vector<SmoothnessCase> out;
  out.reserve(values.size() * actions.size());
  for (const auto& v : values) {
    for (const auto& a : actions) out.push_back({v, a});
  }
  return out;
}

GameView game_view(const AuctionFormat& f) {
  GameView view;
  view.items = num_items(f);
  view.utility = [f](const BidProfile& b, int i, const Valuation& v) {
    return utility(f, b, i, v);
  };
  view.revenue = [f](const BidProfile& b) { return revenue(f, b); };
  view.winning_bid_sum = [f](const BidProfile& b) {
    return winning_bid_sum(f, b);
  };
  view.opt = [f](const ValuationProfile& values) {
    return opt_welfare(f, values);
  };
  return view;
}

namespace {

void check_params(const SmoothnessParams& params) {
  if (!(params.lambda >= 0.0)) throw InputError("smoothness: lambda < 0");
  if (!(params.mu >= 1.0)) throw InputError("smoothness: mu must be >= 1");
}

void check_no_overbidding(const SmoothnessCase& c) {
  for (int i = 0; i < c.actions.num_players(); ++i) {
    for (int j = 0; j < c.actions.num_items(); ++j) {
      const double cap = value(c.values.players[i], ItemSet::of({j}));
      if (c.actions.bids[i][j] > cap + 1e-12) {
        throw InputError(
            "weak-mode smoothness: action case overbids the per-item value");
      }
    }
  }
}

}  // namespace

SmoothnessReport verify_smoothness(const GameView& game,
                                   const DeviationRule& rule,
                                   const SmoothnessParams& params,
                                   const std::vector<SmoothnessCase>& cases,
                                   const VerifyOptions& opts) {
  check_params(params);
  if (cases.empty()) throw InputError("verify_smoothness: no cases");

  SmoothnessReport report;
  report.samples = rule.deterministic ? 1 : opts.samples;
  report.seed = opts.seed;
  report.pass = true;

  for (std::size_t c = 0; c < cases.size(); ++c) {
    const SmoothnessCase& cs = cases[c];
    if (cs.values.num_players() != cs.actions.num_players()) {
      throw InputError("verify_smoothness: case arity mismatch");
    }
    if (params.mode == SmoothnessMode::kWeak) check_no_overbidding(cs);

    const double opt = game.opt(cs.values).welfare;
    const double charge = params.mode == SmoothnessMode::kStrong
                              ? game.revenue(cs.actions)
                              : game.winning_bid_sum(cs.actions);

    double lhs = 0.0;
    double variance = 0.0;
    BidProfile scratch = cs.actions;
    for (int i = 0; i < cs.values.num_players(); ++i) {
      Rng rng(derive_seed(opts.seed, {static_cast<std::uint64_t>(c),
                                      static_cast<std::uint64_t>(i)}));
      if (rule.deterministic) {
        scratch.bids[i] = rule.sample(cs.values, i, rng);
        lhs += game.utility(scratch, i, cs.values.players[i]);
      } else {
        double sum = 0.0, sum_sq = 0.0;
        for (int s = 0; s < opts.samples; ++s) {
          scratch.bids[i] = rule.sample(cs.values, i, rng);
          const double u = game.utility(scratch, i, cs.values.players[i]);
          sum += u;
          sum_sq += u * u;
        }
        const double mean = sum / opts.samples;
        lhs += mean;
        variance +=
            std::max(0.0, sum_sq / opts.samples - mean * mean) / opts.samples;
      }
      scratch.bids[i] = cs.actions.bids[i];
    }

    SmoothnessCaseRow row;
    row.case_id = static_cast<int>(c);
    row.values_hash = hash_profile(cs.values);
    row.actions_hash = hash_profile(cs.actions);
    row.lhs = lhs;
    row.opt = opt;
    row.charge = charge;
    row.margin = lhs - params.lambda * opt + params.mu * charge;
    row.std_error = std::sqrt(variance);

    const double floor = rule.deterministic
                             ? opts.exact_floor
                             : -opts.stderr_floor_multiplier * row.std_error;
    if (row.margin < floor) report.pass = false;
    if (report.worst_case < 0 || row.margin < report.min_margin) {
      report.min_margin = row.margin;
      report.worst_case = row.case_id;
      report.worst_std_error = row.std_error;
    }
    report.rows.push_back(row);
  }
  return report;
}

SmoothnessReport verify_smoothness(const AuctionFormat& f,
                                   const DeviationRule& rule,
                                   const SmoothnessParams& params,
                                   const std::vector<SmoothnessCase>& cases,
                                   const VerifyOptions& opts) {
  return verify_smoothness(game_view(f), rule, params, cases, opts);
}

double poa_bound(const SmoothnessParams& params) {
  check_params(params);
  if (params.mode == SmoothnessMode::kStrong) {
    if (params.lambda > params.mu) {
      throw InputError("poa_bound: lambda must not exceed mu");
    }
    return params.lambda / params.mu;
  }
  return params.lambda / (1.0 + params.mu);
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof(bits));
  for (int k = 0; k < 8; ++k) {
    h ^= (bits >> (8 * k)) & 0xffu;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

}  // namespace

std::uint64_t hash_profile(const ValuationProfile& values) {
  std::uint64_t h = kFnvOffset;
  for (const auto& v : values.players) {
    const int m = num_items(v);
    h = fnv1a(h, static_cast<double>(m));
    if (m <= TableValuation::kMaxTableItems) {
      for (std::uint32_t mask = 0; mask < num_subsets(m); ++mask) {
        h = fnv1a(h, value(v, ItemSet(mask)));
      }
    }
  }
  return h;
}

std::uint64_t hash_profile(const BidProfile& actions) {
  std::uint64_t h = kFnvOffset;
  for (const auto& row : actions.bids) {
    h = fnv1a(h, static_cast<double>(row.size()));
    for (double b : row) h = fnv1a(h, b);
  }
  return h;
}

}  // namespace agora
