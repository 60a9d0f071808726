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

#include "agora/learning.hpp"

#include <algorithm>
#include <cmath>

#include "agora/random.hpp"
#include "agora/welfare.hpp"

namespace agora {

namespace {

constexpr int kMaxGridActions = 10000;

// Top opposing bid on one item and the lowest opponent index attaining it.
struct ColumnTop {
  double bid = 0.0;
  int index = -1;
};

// player i beats (top, idx) with bid c under lowest-index tie-breaking.
bool wins_against(double c, int i, const ColumnTop& top) {
  if (c > top.bid) return true;
  return c == top.bid && (top.index < 0 || i < top.index);
}

double max_value(const ValuationProfile& values) {
  double best = 0.0;
  for (const auto& v : values.players) {
    const int m = num_items(v);
    best = std::max(best, value(v, ItemSet::all(m)));
  }
  return best;
}

}  // namespace

std::vector<double> counterfactual_utilities(
    const AuctionFormat& f, const ValuationProfile& values, int player,
    const std::vector<std::vector<double>>& candidates,
    const BidProfile& opponent_bids) {
  const int n = values.num_players();
  const int m = num_items(f);
  const Valuation& type = values.players[player];
  std::vector<double> out(candidates.size(), 0.0);

  if (const auto* pg = std::get_if<PublicGood>(&f)) {
    double others = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k != player) others += opponent_bids.bids[k][0];
    }
    const double v = scalar_value(type);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const double bid = candidates[c][0];
      const bool funded = others + bid >= pg->cost;
      out[c] = funded ? v - bid : 0.0;
    }
    return out;
  }

  // Per-item top opposing bid. Standalone single-good formats count zero
  // bids as participating; simultaneous sales do not.
  const bool zero_participates = is_single_good(f);
  std::vector<ColumnTop> top(m);
  for (int j = 0; j < m; ++j) {
    ColumnTop t;
    if (zero_participates) t = {0.0, -1};
    for (int k = 0; k < n; ++k) {
      if (k == player) continue;
      const double b = opponent_bids.bids[k][j];
      if (!zero_participates && b <= 0.0) continue;
      if (b > t.bid || (b == t.bid && (t.index < 0 || k < t.index))) {
        if (b > t.bid) {
          t.bid = b;
          t.index = k;
        } else if (t.index < 0 || k < t.index) {
          t.index = k;
        }
      }
    }
    // No opponents (n == 1): the player wins every tie.
    if (zero_participates && t.index < 0) t.index = player + 1;
    top[j] = t;
  }

  const ItemRule rule =
      std::holds_alternative<SecondPriceSingleItem>(f) ||
              (std::holds_alternative<SimultaneousItems>(f) &&
               std::get<SimultaneousItems>(f).rule == ItemRule::kSecondPrice)
          ? ItemRule::kSecondPrice
          : ItemRule::kFirstPrice;
  const bool all_pay = std::holds_alternative<AllPaySingleItem>(f);

  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const std::vector<double>& bid = candidates[c];
    ItemSet won;
    double payment = 0.0;
    for (int j = 0; j < m; ++j) {
      const bool participates = zero_participates || bid[j] > 0.0;
      if (participates && wins_against(bid[j], player, top[j])) {
        won = won.with(j);
        if (!all_pay) {
          payment += rule == ItemRule::kFirstPrice ? bid[j] : top[j].bid;
        }
      }
      if (all_pay) payment += bid[j];
    }
    out[c] = value(type, won) - payment;
  }
  return out;
}

namespace {

class Learner {
 public:
  Learner(const LearnerConfig& config, int num_actions, int horizon, int player)
      : config_(config),
        num_actions_(num_actions),
        rng_(derive_seed(config.seed, {static_cast<std::uint64_t>(player)})),
        weights_(num_actions, 1.0 / num_actions),
        cumulative_regret_(num_actions, 0.0) {
    eta_ = config.eta > 0.0
               ? config.eta
               : std::sqrt(std::log(static_cast<double>(num_actions)) /
                           std::max(1, horizon));
  }

  int act() {
    if (config_.algorithm == LearnerAlgorithm::kRegretMatching) {
      double positive = 0.0;
      for (double r : cumulative_regret_) positive += std::max(r, 0.0);
      if (positive > 0.0) {
        for (int c = 0; c < num_actions_; ++c) {
          weights_[c] = std::max(cumulative_regret_[c], 0.0) / positive;
        }
      } else {
        std::fill(weights_.begin(), weights_.end(), 1.0 / num_actions_);
      }
    }
    return sample_index(rng_, weights_);
  }

  // Full-information update from the exact counterfactual utility vector,
  // scaled into [0, 1] by the caller-provided bound.
  void observe(const std::vector<double>& utilities, int played,
               double utility_bound) {
    if (config_.algorithm == LearnerAlgorithm::kMultiplicativeWeights) {
      double total = 0.0;
      for (int c = 0; c < num_actions_; ++c) {
        const double scaled =
            (utilities[c] + utility_bound) / (2.0 * utility_bound);
        weights_[c] *= std::exp(eta_ * scaled);
        total += weights_[c];
      }
      for (double& w : weights_) w /= total;
    } else {
      const double realized = utilities[played];
      for (int c = 0; c < num_actions_; ++c) {
        cumulative_regret_[c] += utilities[c] - realized;
      }
    }
  }

  const std::vector<double>& mixed_strategy() const { return weights_; }

 private:
  LearnerConfig config_;
  int num_actions_;
  Rng rng_;
  double eta_;
  std::vector<double> weights_;
  std::vector<double> cumulative_regret_;
};

}  // namespace

PlaySequence run_repeated(
    const AuctionFormat& f, const ValuationProfile& values,
    const std::vector<std::vector<std::vector<double>>>& grids,
    const std::vector<LearnerConfig>& configs, int horizon) {
  const int n = values.num_players();
  if (static_cast<int>(grids.size()) != n ||
      static_cast<int>(configs.size()) != n) {
    throw InputError("run_repeated: arity mismatch");
  }
  if (horizon < 1) throw InputError("run_repeated: horizon must be >= 1");
  for (const auto& grid : grids) {
    if (grid.empty()) throw InputError("run_repeated: empty action grid");
    if (static_cast<int>(grid.size()) > kMaxGridActions) {
      throw ResourceError("run_repeated: more than 10^4 actions per player");
    }
    for (const auto& a : grid) {
      if (static_cast<int>(a.size()) != num_items(f)) {
        throw InputError("run_repeated: action arity mismatch");
      }
    }
  }

  const double utility_bound = std::max(1e-12, max_value(values));
  std::vector<Learner> learners;
  learners.reserve(n);
  for (int i = 0; i < n; ++i) {
    learners.emplace_back(configs[i], static_cast<int>(grids[i].size()),
                          horizon, i);
  }

  PlaySequence seq;
  seq.format = f;
  seq.values = values;
  seq.grids = grids;
  seq.actions.assign(horizon, std::vector<int>(n, 0));
  seq.utilities.assign(horizon, std::vector<double>(n, 0.0));

  BidProfile round_bids;
  round_bids.bids.assign(n, std::vector<double>(num_items(f), 0.0));
  for (int t = 0; t < horizon; ++t) {
    for (int i = 0; i < n; ++i) {
      const int a = learners[i].act();
      seq.actions[t][i] = a;
      round_bids.bids[i] = grids[i][a];
    }
    for (int i = 0; i < n; ++i) {
      const std::vector<double> cf =
          counterfactual_utilities(f, values, i, grids[i], round_bids);
      seq.utilities[t][i] = cf[seq.actions[t][i]];
      learners[i].observe(cf, seq.actions[t][i], utility_bound);
    }
  }
  return seq;
}

double external_regret(const PlaySequence& seq, int player) {
  const int horizon = seq.horizon();
  if (horizon == 0) return 0.0;
  const auto& grid = seq.grids[player];
  std::vector<double> cumulative(grid.size(), 0.0);
  double realized = 0.0;
  BidProfile round_bids;
  const int n = seq.num_players();
  round_bids.bids.assign(n, std::vector<double>(num_items(seq.format), 0.0));
  for (int t = 0; t < horizon; ++t) {
    for (int i = 0; i < n; ++i) round_bids.bids[i] = seq.action_of(t, i);
    const std::vector<double> cf = counterfactual_utilities(
        seq.format, seq.values, player, grid, round_bids);
    for (std::size_t c = 0; c < grid.size(); ++c) cumulative[c] += cf[c];
    realized += cf[seq.actions[t][player]];
  }
  const double best = *std::max_element(cumulative.begin(), cumulative.end());
  return (best - realized) / horizon;
}

double average_welfare(const PlaySequence& seq) {
  const int horizon = seq.horizon();
  if (horizon == 0) return 0.0;
  const int n = seq.num_players();
  BidProfile round_bids;
  round_bids.bids.assign(n, std::vector<double>(num_items(seq.format), 0.0));
  double total = 0.0;
  for (int t = 0; t < horizon; ++t) {
    for (int i = 0; i < n; ++i) round_bids.bids[i] = seq.action_of(t, i);
    total += social_welfare(seq.format, round_bids, seq.values);
  }
  return total / horizon;
}

WelfareBoundReport welfare_vs_bound(const PlaySequence& seq,
                                    const SmoothnessParams& params) {
  WelfareBoundReport report;
  report.average_welfare = average_welfare(seq);
  report.opt = opt_welfare(seq.format, seq.values).welfare;
  report.smooth_bound = poa_bound(params) * report.opt;
  for (int i = 0; i < seq.num_players(); ++i) {
    report.regrets.push_back(external_regret(seq, i));
    report.regret_correction += std::max(report.regrets.back(), 0.0);
  }
  report.pass = report.average_welfare >=
                report.smooth_bound - report.regret_correction - 1e-9;
  return report;
}

}  // namespace agora
