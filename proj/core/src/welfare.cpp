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

#include "agora/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace agora {

OptResult opt_single_item(const std::vector<double>& values) {
  if (values.empty()) throw InputError("opt_single_item: empty profile");
  int winner = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] > values[winner]) winner = i;
  }
  OptResult out;
  out.welfare = values[winner];
  out.allocation.per_player.assign(values.size(), ItemSet{});
  out.allocation.per_player[winner] = ItemSet::of({0});
  return out;
}

namespace {

// Potentials-based assignment (Jonker-Volgenant style augmentation) on a
// square cost matrix; minimizes total cost. Returns row -> column.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

OptResult opt_matching(const std::vector<UnitDemandValuation>& players,
                       int items) {
  const int n = static_cast<int>(players.size());
  if (n < 1 || items < 1) throw InputError("opt_matching: empty instance");
  for (const auto& p : players) {
    if (static_cast<int>(p.item_values.size()) != items) {
      throw InputError("opt_matching: item count mismatch");
    }
  }
  // Pad to a square matrix with zero-value dummies so that unmatched
  // players and unsold items are expressible.
  const int dim = std::max(n, items);
  std::vector<std::vector<double>> cost(dim, std::vector<double>(dim, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < items; ++j) cost[i][j] = -players[i].item_values[j];
  }
  const std::vector<int> assign = solve_assignment(cost);

  OptResult out;
  out.allocation.per_player.assign(n, ItemSet{});
  for (int i = 0; i < n; ++i) {
    const int j = assign[i];
    if (j >= 0 && j < items && players[i].item_values[j] > 0.0) {
      out.allocation.per_player[i] = ItemSet::of({j});
      out.welfare += players[i].item_values[j];
    }
  }
  return out;
}

OptResult opt_brute_force(const ValuationProfile& values, int items) {
  const int n = values.num_players();
  if (n < 1 || items < 1) throw InputError("opt_brute_force: empty instance");
  for (const auto& v : values.players) {
    if (num_items(v) != items) {
      throw InputError("opt_brute_force: item count mismatch");
    }
  }
  double combos = 1.0;
  for (int j = 0; j < items; ++j) {
    combos *= n + 1;
    if (combos > 1e7) {
      throw ResourceError("opt_brute_force: more than 10^7 assignments");
    }
  }

  // Owner of each item: 0..n-1, or n for "unassigned". Iterating owners in
  // that order with strict improvement keeps the lexicographically smallest
  // maximizer.
  std::vector<int> owner(items, 0), best_owner(items, 0);
  double best = -1.0;
  std::vector<ItemSet> bundles(n);
  while (true) {
    std::fill(bundles.begin(), bundles.end(), ItemSet{});
    for (int j = 0; j < items; ++j) {
      if (owner[j] < n) bundles[owner[j]] = bundles[owner[j]].with(j);
    }
    double welfare = 0.0;
    for (int i = 0; i < n; ++i) welfare += value(values.players[i], bundles[i]);
    if (welfare > best) {
      best = welfare;
      best_owner = owner;
    }
    int j = items - 1;
    while (j >= 0 && owner[j] == n) owner[j--] = 0;
    if (j < 0) break;
    ++owner[j];
  }

  OptResult out;
  out.welfare = best;
  out.allocation.per_player.assign(n, ItemSet{});
  for (int j = 0; j < items; ++j) {
    if (best_owner[j] < n) {
      out.allocation.per_player[best_owner[j]] =
          out.allocation.per_player[best_owner[j]].with(j);
    }
  }
  return out;
}

OptResult opt_welfare(const AuctionFormat& f, const ValuationProfile& values) {
  if (const auto* sim = std::get_if<SimultaneousItems>(&f)) {
    return opt_brute_force(values, sim->items);
  }
  if (std::holds_alternative<PublicGood>(f)) {
    // Gross welfare of funding; the cost side is reported separately (see
    // social_welfare_net).
    OptResult out;
    out.allocation.per_player.assign(values.num_players(), ItemSet{});
    for (const auto& v : values.players) out.welfare += scalar_value(v);
    return out;
  }
  std::vector<double> scalars;
  scalars.reserve(values.players.size());
  for (const auto& v : values.players) scalars.push_back(scalar_value(v));
  return opt_single_item(scalars);
}

}  // namespace agora
