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

#include "agora/composition.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

namespace agora {

namespace {

void check_composed_profile(const ComposedFormat& f, const BidProfile& b) {
  if (b.bids.empty()) throw InputError("composed: no players");
  for (const auto& row : b.bids) {
    if (static_cast<int>(row.size()) != f.items()) {
      throw InputError("composed: wrong number of per-constituent actions");
    }
    for (double x : row) {
      if (!(x >= 0.0)) throw InputError("composed: negative bid");
    }
  }
}

}  // namespace

ComposedFormat compose(std::vector<AuctionFormat> formats) {
  if (formats.empty()) throw InputError("compose: no constituents");
  for (const auto& f : formats) {
    const bool item_format = std::holds_alternative<FirstPriceSingleItem>(f) ||
                             std::holds_alternative<SecondPriceSingleItem>(f) ||
                             std::holds_alternative<AllPaySingleItem>(f);
    if (!item_format) {
      throw InputError("compose: constituents must be single-good item formats");
    }
  }
  return ComposedFormat{std::move(formats)};
}

Outcome outcome(const ComposedFormat& f, const BidProfile& b) {
  check_composed_profile(f, b);
  const int n = b.num_players();
  const int m = f.items();
  Outcome o;
  o.item_winner.assign(m, -1);
  o.payments.assign(n, std::vector<double>(m, 0.0));
  for (int j = 0; j < m; ++j) {
    const int w = simultaneous_item_winner(b, j);
    o.item_winner[j] = w;
    if (std::holds_alternative<AllPaySingleItem>(f.constituents[j])) {
      for (int i = 0; i < n; ++i) o.payments[i][j] = b.bids[i][j];
    } else if (w >= 0) {
      if (std::holds_alternative<FirstPriceSingleItem>(f.constituents[j])) {
        o.payments[w][j] = b.bids[w][j];
      } else {
        double second = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i != w) second = std::max(second, b.bids[i][j]);
        }
        o.payments[w][j] = second;
      }
    }
  }
  return o;
}

double utility(const ComposedFormat& f, const BidProfile& b, int i,
               const Valuation& v) {
  const Outcome o = outcome(f, b);
  return value(v, o.won_items(i)) - o.total_payment(i);
}

double revenue(const ComposedFormat& f, const BidProfile& b) {
  return revenue(outcome(f, b));
}

double social_welfare(const ComposedFormat& f, const BidProfile& b,
                      const ValuationProfile& values) {
  if (values.num_players() != b.num_players()) {
    throw InputError("composed social_welfare: arity mismatch");
  }
  const Outcome o = outcome(f, b);
  double total = revenue(o);
  for (int i = 0; i < b.num_players(); ++i) {
    total += value(values.players[i], o.won_items(i)) - o.total_payment(i);
  }
  return total;
}

double winning_bid_sum(const ComposedFormat& f, const BidProfile& b) {
  const Outcome o = outcome(f, b);
  double total = 0.0;
  for (int j = 0; j < f.items(); ++j) {
    if (o.item_winner[j] >= 0) total += b.bids[o.item_winner[j]][j];
  }
  return total;
}

GameView game_view(const ComposedFormat& f) {
  GameView view;
  view.items = f.items();
  view.utility = [f](const BidProfile& b, int i, const Valuation& v) {
    return utility(f, b, i, v);
  };
  view.revenue = [f](const BidProfile& b) { return revenue(f, b); };
  view.winning_bid_sum = [f](const BidProfile& b) {
    return winning_bid_sum(f, b);
  };
  view.opt = [f](const ValuationProfile& values) {
    return opt_brute_force(values, f.items());
  };
  return view;
}

ProxyProfile proxy_profile(const std::vector<XosValuation>& values,
                           const Allocation& opt_allocation) {
  if (values.size() != opt_allocation.per_player.size()) {
    throw InputError("proxy_profile: arity mismatch");
  }
  ProxyProfile out;
  out.per_player.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int m = num_items(Valuation{values[i]});
    const ItemSet bundle = opt_allocation.per_player[i];
    if (bundle.empty()) {
      AdditiveValuation zero;
      zero.weights.assign(m, 0.0);
      out.per_player.push_back(std::move(zero));
    } else {
      out.per_player.push_back(
          values[i].clauses[maximizing_clause(values[i], bundle)]);
    }
  }
  return out;
}

DeviationRule composed_deviation(std::vector<DeviationRule> constituent_rules) {
  if (constituent_rules.empty()) {
    throw InputError("composed_deviation: no constituent rules");
  }
  const int m = static_cast<int>(constituent_rules.size());
  bool deterministic = true;
  for (const auto& r : constituent_rules) deterministic &= r.deterministic;

  // The optimal allocation and proxy clauses depend only on the valuation
  // profile; memoize them across samples.
  struct ProxyCache {
    std::unordered_map<std::uint64_t, ProxyProfile> by_hash;
  };
  auto cache = std::make_shared<ProxyCache>();
  auto rules = std::make_shared<std::vector<DeviationRule>>(
      std::move(constituent_rules));

  DeviationRule out;
  out.kind = DeviationKind::kFullProfile;
  out.name = "composed";
  out.deterministic = deterministic;
  out.sample = [m, cache, rules](const ValuationProfile& values, int i,
                                 Rng& rng) {
    const std::uint64_t key = hash_profile(values);
    auto it = cache->by_hash.find(key);
    if (it == cache->by_hash.end()) {
      std::vector<XosValuation> xos;
      xos.reserve(values.players.size());
      for (const auto& v : values.players) xos.push_back(to_xos(v));
      const OptResult opt = opt_brute_force(values, m);
      it = cache->by_hash
               .emplace(key, proxy_profile(xos, opt.allocation))
               .first;
    }
    const ProxyProfile& proxy = it->second;

    std::vector<double> bid(m, 0.0);
    ValuationProfile column;
    column.players.resize(values.players.size());
    for (int j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < values.players.size(); ++k) {
        column.players[k] = make_scalar(proxy.per_player[k].weights[j]);
      }
      bid[j] = (*rules)[j].sample(column, i, rng).at(0);
    }
    return bid;
  };
  return out;
}

SmoothnessReport verify_composed_smoothness(
    const ComposedFormat& f, const DeviationRule& rule,
    const SmoothnessParams& params, const std::vector<SmoothnessCase>& cases,
    const VerifyOptions& opts) {
  return verify_smoothness(game_view(f), rule, params, cases, opts);
}

}  // namespace agora
