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

#include <algorithm>
#include <cmath>
#include <map>

namespace agora {

namespace {

constexpr double kValueMatchTol = 1e-12;

// Stable forms of 1 - sqrt(1 - x) and sqrt(1 + x) - 1.
double one_minus_sqrt_one_minus(double x) {
  return x / (1.0 + std::sqrt(1.0 - x));
}
double sqrt_one_plus_minus_one(double x) {
  return x / (std::sqrt(1.0 + x) + 1.0);
}

bool valuations_close(const Valuation& a, const Valuation& b) {
  const int m = num_items(a);
  if (m != num_items(b)) return false;
  if (m > TableValuation::kMaxTableItems) return false;
  for (std::uint32_t mask = 0; mask < num_subsets(m); ++mask) {
    if (std::abs(value(a, ItemSet(mask)) - value(b, ItemSet(mask))) >
        kValueMatchTol) {
      return false;
    }
  }
  return true;
}

}  // namespace

double closed_form_bid(const ClosedFormStrategy& s, double value) {
  if (!(value >= 0.0)) throw InputError("closed_form_bid: negative value");
  switch (s.id) {
    case ClosedFormId::kLinearShade:
      return s.param * value;
    case ClosedFormId::kConstant:
      return s.param;
    case ClosedFormId::kTruthful:
      return value;
    case ClosedFormId::kVickreyWeak: {
      if (value == 0.0) return 0.0;
      double radicand = 0.75 * value * value;
      if (radicand > 1.0 && radicand <= 1.0 + 1e-12) radicand = 1.0;
      if (radicand > 1.0) throw InputError("vickrey weak bidder: value > 1");
      return 4.0 / (3.0 * value) * one_minus_sqrt_one_minus(radicand);
    }
    case ClosedFormId::kVickreyStrong: {
      if (value == 0.0) return 0.0;
      return 4.0 / (3.0 * value) *
             sqrt_one_plus_minus_one(0.75 * value * value);
    }
  }
  throw InputError("closed_form_bid: unknown id");
}

std::vector<double> sample_action(const Strategy& s, const Valuation& type,
                                  int items, Rng& rng) {
  if (const auto* cf = std::get_if<ClosedFormStrategy>(&s)) {
    if (items != 1) throw InputError("closed-form strategies are single-good");
    return {closed_form_bid(*cf, scalar_value(type))};
  }
  if (std::holds_alternative<MixedClosedFormStrategy>(s)) {
    if (items != 2) {
      throw InputError("mixed item strategy is defined for two items");
    }
    const int item = uniform_unit(rng) < 0.5 ? 0 : 1;
    const double u = uniform_unit(rng);
    std::vector<double> bid(2, 0.0);
    bid[item] = u / (1.0 + u);  // inverse of F(x) = x / (1 - x)
    return bid;
  }
  const auto& grid = std::get<GridStrategy>(s);
  const double v = scalar_value(type);
  for (std::size_t t = 0; t < grid.value_grid.size(); ++t) {
    if (std::abs(grid.value_grid[t] - v) <= 1e-9) {
      return grid.actions[sample_index(rng, grid.probs[t])];
    }
  }
  throw InputError("grid strategy: undefined at sampled value");
}

std::optional<std::vector<std::pair<std::vector<double>, double>>>
action_support(const Strategy& s, const Valuation& type, int items) {
  if (const auto* cf = std::get_if<ClosedFormStrategy>(&s)) {
    if (items != 1) throw InputError("closed-form strategies are single-good");
    return {{{{closed_form_bid(*cf, scalar_value(type))}, 1.0}}};
  }
  if (std::holds_alternative<MixedClosedFormStrategy>(s)) return std::nullopt;
  const auto& grid = std::get<GridStrategy>(s);
  const double v = scalar_value(type);
  for (std::size_t t = 0; t < grid.value_grid.size(); ++t) {
    if (std::abs(grid.value_grid[t] - v) <= 1e-9) {
      std::vector<std::pair<std::vector<double>, double>> out;
      for (std::size_t a = 0; a < grid.actions.size(); ++a) {
        if (grid.probs[t][a] > 0.0) out.emplace_back(grid.actions[a], grid.probs[t][a]);
      }
      return out;
    }
  }
  throw InputError("grid strategy: undefined at sampled value");
}

ClosedFormStrategy symmetric_uniform_fpa_bne(int players) {
  if (players < 2) throw InputError("symmetric_uniform_fpa_bne: needs n >= 2");
  return {ClosedFormId::kLinearShade,
          static_cast<double>(players - 1) / players};
}

std::pair<ClosedFormStrategy, ClosedFormStrategy> vickrey_asymmetric_bne() {
  return {{ClosedFormId::kVickreyWeak, 0.0}, {ClosedFormId::kVickreyStrong, 0.0}};
}

MixedClosedFormStrategy bad_example_mixed_strategy() {
  return {MixedFormId::kUniformItemReciprocal};
}

std::vector<double> BidGrid::points() const {
  if (!(step > 0.0)) throw InputError("bid grid: step must be positive");
  if (!(cap >= 0.0)) throw InputError("bid grid: negative cap");
  const auto rounded = static_cast<long long>(std::llround(cap / step));
  long long count =
      (std::abs(rounded * step - cap) <= 1e-9 * std::max(1.0, cap))
          ? rounded
          : static_cast<long long>(std::floor(cap / step + 1e-12));
  std::vector<double> out;
  out.reserve(count + 1);
  for (long long i = 0; i <= count; ++i) out.push_back(i * step);
  return out;
}

// ---------------------------------------------------------------------------
// Interim expectation engine
// ---------------------------------------------------------------------------

std::vector<std::pair<Valuation, double>> marginal_atoms(const Marginal& m,
                                                         int value_points) {
  std::vector<std::pair<Valuation, double>> out;
  if (const auto* d = std::get_if<DiscreteMarginal>(&m)) {
    for (std::size_t k = 0; k < d->support.size(); ++k) {
      out.emplace_back(d->support[k], d->probs[k]);
    }
    return out;
  }
  const auto& u = std::get<UniformMarginal>(m);
  if (value_points < 2) throw InputError("marginal_atoms: needs >= 2 points");
  const double w = 1.0 / value_points;
  for (int k = 0; k < value_points; ++k) {
    const double v = u.lo + (u.hi - u.lo) * k / (value_points - 1);
    out.emplace_back(make_scalar(v), w);
  }
  return out;
}

std::vector<std::pair<ValuationProfile, double>> prior_atoms(
    const Prior& p, int value_points, std::int64_t max_atoms) {
  std::vector<std::pair<ValuationProfile, double>> out;
  if (const auto* joint = std::get_if<CorrelatedJoint>(&p)) {
    for (std::size_t a = 0; a < joint->atoms.size(); ++a) {
      out.emplace_back(joint->atoms[a], joint->probs[a]);
    }
    return out;
  }
  const auto& ind = std::get<IndependentProduct>(p);
  std::vector<std::vector<std::pair<Valuation, double>>> per_player;
  std::int64_t total = 1;
  for (const auto& m : ind.players) {
    per_player.push_back(marginal_atoms(m, value_points));
    total *= static_cast<std::int64_t>(per_player.back().size());
    if (total > max_atoms) throw ResourceError("prior_atoms: too many atoms");
  }
  const int n = static_cast<int>(per_player.size());
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    ValuationProfile profile;
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      profile.players.push_back(per_player[i][idx[i]].first);
      w *= per_player[i][idx[i]].second;
    }
    out.emplace_back(std::move(profile), w);
    int i = n - 1;
    while (i >= 0 && ++idx[i] == per_player[i].size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

namespace {

struct ExpectationResult {
  double mean = 0.0;
  double std_error = 0.0;
};

// Conditional expectation of one player's utility given her type, with the
// opponents drawing types from the prior and actions from their strategies.
// Uses exact enumeration when every opponent strategy has finite support and
// the atom budget allows, Monte-Carlo otherwise.
class InterimEvaluator {
 public:
  InterimEvaluator(const AuctionFormat& f, const std::vector<Strategy>& strategies,
                   const Prior& prior, int player, const Valuation& type,
                   const EvalOptions& opts, std::uint64_t eval_seed)
      : f_(f),
        strategies_(strategies),
        prior_(prior),
        player_(player),
        type_(type),
        opts_(opts),
        items_(num_items(f)),
        eval_seed_(eval_seed) {
    build_conditioned_types();
    exact_ = try_build_exact_atoms();
  }

  bool exact() const { return exact_; }

  ExpectationResult eval_fixed(const std::vector<double>& action) {
    return evaluate(&action);
  }

  ExpectationResult eval_own() { return evaluate(nullptr); }

 private:
  void build_conditioned_types() {
    if (const auto* joint = std::get_if<CorrelatedJoint>(&prior_)) {
      double total = 0.0;
      for (std::size_t a = 0; a < joint->atoms.size(); ++a) {
        if (joint->probs[a] <= 0.0) continue;
        if (!valuations_close(joint->atoms[a].players[player_], type_)) continue;
        cond_weights_.push_back(joint->probs[a]);
        cond_atoms_.push_back(&joint->atoms[a]);
        total += joint->probs[a];
      }
      if (cond_weights_.empty()) {
        throw InputError("interim evaluation: type not in the prior's support");
      }
      for (double& w : cond_weights_) w /= total;
    }
  }

  // Weighted opponent type profiles (own slot = type_).
  std::vector<std::pair<ValuationProfile, double>> type_atoms() const {
    std::vector<std::pair<ValuationProfile, double>> out;
    if (std::holds_alternative<CorrelatedJoint>(prior_)) {
      for (std::size_t k = 0; k < cond_atoms_.size(); ++k) {
        out.emplace_back(*cond_atoms_[k], cond_weights_[k]);
      }
      return out;
    }
    const auto& ind = std::get<IndependentProduct>(prior_);
    const int n = static_cast<int>(ind.players.size());
    std::vector<std::vector<std::pair<Valuation, double>>> per_player(n);
    for (int k = 0; k < n; ++k) {
      if (k == player_) {
        per_player[k] = {{type_, 1.0}};
      } else {
        per_player[k] = marginal_atoms(ind.players[k], opts_.value_points);
      }
    }
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      ValuationProfile profile;
      double w = 1.0;
      for (int k = 0; k < n; ++k) {
        profile.players.push_back(per_player[k][idx[k]].first);
        w *= per_player[k][idx[k]].second;
      }
      out.emplace_back(std::move(profile), w);
      int k = n - 1;
      while (k >= 0 && ++idx[k] == per_player[k].size()) idx[k--] = 0;
      if (k < 0) break;
    }
    return out;
  }

  bool try_build_exact_atoms() {
    std::vector<std::pair<ValuationProfile, double>> types;
    try {
      types = type_atoms();
    } catch (const ResourceError&) {
      return false;
    }
    const int n = num_players(prior_);
    std::int64_t count = 0;
    for (const auto& [profile, type_weight] : types) {
      // Per-opponent finite action supports at this type profile.
      std::vector<std::vector<std::pair<std::vector<double>, double>>> supports(n);
      for (int k = 0; k < n; ++k) {
        if (k == player_) continue;
        auto support = action_support(strategies_[k], profile.players[k], items_);
        if (!support.has_value()) return false;
        supports[k] = std::move(*support);
      }
      std::int64_t combos = 1;
      for (int k = 0; k < n; ++k) {
        if (k != player_) combos *= static_cast<std::int64_t>(supports[k].size());
      }
      count += combos;
      if (count > opts_.max_exact_atoms) return false;

      std::vector<std::size_t> idx(n, 0);
      while (true) {
        BidProfile bids;
        bids.bids.assign(n, std::vector<double>(items_, 0.0));
        double w = type_weight;
        for (int k = 0; k < n; ++k) {
          if (k == player_) continue;
          bids.bids[k] = supports[k][idx[k]].first;
          w *= supports[k][idx[k]].second;
        }
        weights_.push_back(w);
        profiles_.push_back(std::move(bids));
        int k = n - 1;
        while (k >= 0) {
          if (k == player_ || supports[k].empty()) {
            --k;
            continue;
          }
          if (++idx[k] < supports[k].size()) break;
          idx[k--] = 0;
        }
        if (k < 0) break;
      }
    }
    return true;
  }

  ExpectationResult evaluate(const std::vector<double>* fixed_action) {
    if (exact_) return evaluate_exact(fixed_action);
    return evaluate_monte_carlo(fixed_action);
  }

  ExpectationResult evaluate_exact(const std::vector<double>* fixed_action) {
    // Own action support: the fixed candidate, or the own-strategy support.
    std::vector<std::pair<std::vector<double>, double>> own;
    if (fixed_action != nullptr) {
      own = {{*fixed_action, 1.0}};
    } else {
      auto support = action_support(strategies_[player_], type_, items_);
      if (!support.has_value()) return evaluate_monte_carlo(nullptr);
      own = std::move(*support);
    }
    double mean = 0.0;
    for (std::size_t k = 0; k < profiles_.size(); ++k) {
      for (const auto& [action, p] : own) {
        profiles_[k].bids[player_] = action;
        mean += weights_[k] * p * utility(f_, profiles_[k], player_, type_);
      }
    }
    return {mean, 0.0};
  }

  ExpectationResult evaluate_monte_carlo(const std::vector<double>* fixed_action) {
    Rng rng(eval_seed_);
    const int n = num_players(prior_);
    double sum = 0.0, sum_sq = 0.0;
    BidProfile bids;
    bids.bids.assign(n, std::vector<double>(items_, 0.0));
    for (int s = 0; s < opts_.samples; ++s) {
      const ValuationProfile* types = nullptr;
      ValuationProfile drawn;
      if (std::holds_alternative<CorrelatedJoint>(prior_)) {
        types = cond_atoms_[sample_index(rng, cond_weights_)];
      } else {
        const auto& ind = std::get<IndependentProduct>(prior_);
        drawn.players.resize(n);
        for (int k = 0; k < n; ++k) {
          if (k == player_) {
            drawn.players[k] = type_;
          } else if (const auto* d = std::get_if<DiscreteMarginal>(&ind.players[k])) {
            drawn.players[k] = d->support[sample_index(rng, d->probs)];
          } else {
            const auto& u = std::get<UniformMarginal>(ind.players[k]);
            drawn.players[k] = make_scalar(uniform_in(rng, u.lo, u.hi));
          }
        }
        types = &drawn;
      }
      for (int k = 0; k < n; ++k) {
        if (k == player_) continue;
        bids.bids[k] = sample_action(strategies_[k], types->players[k], items_, rng);
      }
      bids.bids[player_] =
          fixed_action != nullptr
              ? *fixed_action
              : sample_action(strategies_[player_], type_, items_, rng);
      const double u = utility(f_, bids, player_, type_);
      sum += u;
      sum_sq += u * u;
    }
    const double mean = sum / opts_.samples;
    const double var =
        std::max(0.0, sum_sq / opts_.samples - mean * mean);
    return {mean, std::sqrt(var / opts_.samples)};
  }

  const AuctionFormat& f_;
  const std::vector<Strategy>& strategies_;
  const Prior& prior_;
  int player_;
  const Valuation& type_;
  EvalOptions opts_;
  int items_;
  std::uint64_t eval_seed_;
  bool exact_ = false;
  std::vector<double> weights_;
  std::vector<BidProfile> profiles_;
  std::vector<double> cond_weights_;
  std::vector<const ValuationProfile*> cond_atoms_;
};

}  // namespace

BestResponse best_response(const AuctionFormat& f, int player,
                           const Valuation& type,
                           const std::vector<Strategy>& strategies,
                           const Prior& prior,
                           const std::vector<std::vector<double>>& candidates,
                           const EvalOptions& opts) {
  if (candidates.empty()) throw InputError("best_response: no candidates");
  if (candidates.size() > 10000000) {
    throw ResourceError("best_response: more than 10^7 candidates");
  }
  InterimEvaluator eval(f, strategies, prior, player, type, opts,
                        derive_seed(opts.seed, {static_cast<std::uint64_t>(player)}));
  BestResponse best;
  bool first = true;
  for (const auto& action : candidates) {
    const ExpectationResult r = eval.eval_fixed(action);
    if (first || r.mean > best.utility) {
      best = {action, r.mean, r.std_error};
      first = false;
    }
  }
  return best;
}

namespace {

// Type atoms per player for regret sweeps.
std::vector<Valuation> player_type_values(const Prior& prior, int player,
                                          int value_points) {
  std::vector<Valuation> out;
  if (const auto* ind = std::get_if<IndependentProduct>(&prior)) {
    for (const auto& [v, w] : marginal_atoms(ind->players[player], value_points)) {
      if (w > 0.0) out.push_back(v);
    }
    return out;
  }
  const auto& joint = std::get<CorrelatedJoint>(prior);
  for (std::size_t a = 0; a < joint.atoms.size(); ++a) {
    if (joint.probs[a] <= 0.0) continue;
    const Valuation& v = joint.atoms[a].players[player];
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Valuation& w) {
      return valuations_close(v, w);
    });
    if (!seen) out.push_back(v);
  }
  return out;
}

double type_label(const Valuation& v) {
  const int m = num_items(v);
  return m == 1 ? scalar_value(v) : value(v, ItemSet::all(m));
}

}  // namespace

BneCheckReport epsilon_bne_check(
    const AuctionFormat& f, const std::vector<Strategy>& strategies,
    const Prior& prior,
    const std::vector<std::vector<std::vector<double>>>& candidates_per_player,
    const EvalOptions& opts) {
  const int n = num_players(prior);
  if (static_cast<int>(strategies.size()) != n ||
      static_cast<int>(candidates_per_player.size()) != n) {
    throw InputError("epsilon_bne_check: arity mismatch");
  }
  BneCheckReport report;
  for (int i = 0; i < n; ++i) {
    const std::vector<Valuation> types = player_type_values(prior, i, opts.value_points);
    for (std::size_t t = 0; t < types.size(); ++t) {
      InterimEvaluator eval(
          f, strategies, prior, i, types[t], opts,
          derive_seed(opts.seed, {static_cast<std::uint64_t>(i), t}));
      const ExpectationResult eq = eval.eval_own();
      ExpectationResult best{};
      const std::vector<double>* best_action = nullptr;
      for (const auto& action : candidates_per_player[i]) {
        const ExpectationResult r = eval.eval_fixed(action);
        if (best_action == nullptr || r.mean > best.mean) {
          best = r;
          best_action = &action;
        }
      }
      RegretRow row;
      row.player = i;
      row.value = type_label(types[t]);
      row.best_deviation = best_action != nullptr ? *best_action : std::vector<double>{};
      row.eq_utility = eq.mean;
      row.regret = std::max(0.0, best.mean - eq.mean);
      row.std_error = std::sqrt(best.std_error * best.std_error + eq.std_error * eq.std_error);
      report.max_regret = std::max(report.max_regret, row.regret);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

BneCheckReport epsilon_bne_check(const AuctionFormat& f,
                                 const std::vector<Strategy>& strategies,
                                 const Prior& prior, const BidGrid& grid,
                                 const EvalOptions& opts) {
  if (num_items(f) != 1) {
    throw InputError("scalar-grid eq check is for single-good formats");
  }
  std::vector<std::vector<double>> candidates;
  for (double b : grid.points()) candidates.push_back({b});
  return epsilon_bne_check(
      f, strategies, prior,
      std::vector<std::vector<std::vector<double>>>(num_players(prior), candidates),
      opts);
}

std::vector<BidProfile> pure_ne_enumerate(
    const AuctionFormat& f, const ValuationProfile& values,
    const std::vector<std::vector<std::vector<double>>>& candidates_per_player) {
  const int n = values.num_players();
  if (static_cast<int>(candidates_per_player.size()) != n) {
    throw InputError("pure_ne_enumerate: arity mismatch");
  }
  double combos = 1.0;
  for (const auto& c : candidates_per_player) {
    if (c.empty()) throw InputError("pure_ne_enumerate: empty candidate set");
    combos *= static_cast<double>(c.size());
    if (combos > 1e7) {
      throw ResourceError("pure_ne_enumerate: more than 10^7 joint profiles");
    }
  }

  std::vector<BidProfile> equilibria;
  std::vector<std::size_t> idx(n, 0);
  BidProfile bids;
  bids.bids.resize(n);
  while (true) {
    for (int i = 0; i < n; ++i) bids.bids[i] = candidates_per_player[i][idx[i]];
    bool is_ne = true;
    for (int i = 0; i < n && is_ne; ++i) {
      const double current = utility(f, bids, i, values.players[i]);
      const std::vector<double> original = bids.bids[i];
      for (const auto& dev : candidates_per_player[i]) {
        bids.bids[i] = dev;
        if (utility(f, bids, i, values.players[i]) > current) {
          is_ne = false;
          break;
        }
      }
      bids.bids[i] = original;
    }
    if (is_ne) equilibria.push_back(bids);
    int i = n - 1;
    while (i >= 0 && ++idx[i] == candidates_per_player[i].size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return equilibria;
}

std::vector<BidProfile> pure_ne_enumerate(const AuctionFormat& f,
                                          const ValuationProfile& values,
                                          const BidGrid& grid) {
  std::vector<std::vector<double>> scalar_candidates;
  for (double b : grid.points()) scalar_candidates.push_back({b});
  std::vector<std::vector<std::vector<double>>> candidates;
  if (num_items(f) == 1) {
    candidates.assign(values.num_players(), scalar_candidates);
  } else {
    candidates.assign(values.num_players(),
                      product_candidates(num_items(f), grid));
  }
  return pure_ne_enumerate(f, values, candidates);
}

std::vector<std::vector<double>> product_candidates(int items,
                                                    const BidGrid& grid) {
  const std::vector<double> pts = grid.points();
  double combos = 1.0;
  for (int j = 0; j < items; ++j) {
    combos *= static_cast<double>(pts.size());
    if (combos > 1e7) {
      throw ResourceError("product_candidates: more than 10^7 vectors");
    }
  }
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> idx(items, 0);
  while (true) {
    std::vector<double> bid(items);
    for (int j = 0; j < items; ++j) bid[j] = pts[idx[j]];
    out.push_back(std::move(bid));
    int j = items - 1;
    while (j >= 0 && ++idx[j] == pts.size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

std::vector<std::vector<double>> one_item_candidates(int items,
                                                     const BidGrid& grid) {
  std::vector<std::vector<double>> out;
  out.push_back(std::vector<double>(items, 0.0));
  for (int j = 0; j < items; ++j) {
    for (double b : grid.points()) {
      if (b == 0.0) continue;
      std::vector<double> bid(items, 0.0);
      bid[j] = b;
      out.push_back(std::move(bid));
    }
  }
  return out;
}

std::vector<EnumeratedBne> enumerate_epsilon_bne(const AuctionFormat& f,
                                                 const CorrelatedJoint& prior,
                                                 const BidGrid& grid,
                                                 double epsilon) {
  if (num_items(f) != 1) {
    throw InputError("enumerate_epsilon_bne: single-good formats only");
  }
  validate(Prior{prior});
  const int n = prior.atoms.front().num_players();
  const std::vector<double> bids = grid.points();
  const int num_bids = static_cast<int>(bids.size());

  // Distinct scalar type values per player, and each atom's value index.
  std::vector<std::vector<double>> values(n);
  std::vector<std::vector<int>> atom_value_index(prior.atoms.size(),
                                                 std::vector<int>(n, -1));
  for (std::size_t a = 0; a < prior.atoms.size(); ++a) {
    for (int i = 0; i < n; ++i) {
      const double v = scalar_value(prior.atoms[a].players[i]);
      int idx = -1;
      for (std::size_t t = 0; t < values[i].size(); ++t) {
        if (std::abs(values[i][t] - v) <= kValueMatchTol) {
          idx = static_cast<int>(t);
          break;
        }
      }
      if (idx < 0) {
        values[i].push_back(v);
        idx = static_cast<int>(values[i].size()) - 1;
      }
      atom_value_index[a][i] = idx;
    }
  }

  int total_slots = 0;
  for (int i = 0; i < n; ++i) total_slots += static_cast<int>(values[i].size());
  if (total_slots * std::log(static_cast<double>(num_bids)) > std::log(1e7)) {
    throw ResourceError("enumerate_epsilon_bne: strategy space exceeds 10^7");
  }

  // Conditional atom weights per (player, value index).
  std::vector<std::vector<double>> type_prob(n);
  for (int i = 0; i < n; ++i) type_prob[i].assign(values[i].size(), 0.0);
  for (std::size_t a = 0; a < prior.atoms.size(); ++a) {
    for (int i = 0; i < n; ++i) {
      type_prob[i][atom_value_index[a][i]] += prior.probs[a];
    }
  }

  // slot -> (player, value index)
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < values[i].size(); ++t) {
      slots.emplace_back(i, static_cast<int>(t));
    }
  }

  std::vector<EnumeratedBne> found;
  std::vector<int> choice(total_slots, 0);  // bid index per slot
  std::vector<std::vector<int>> strategy(n);
  for (int i = 0; i < n; ++i) strategy[i].assign(values[i].size(), 0);

  BidProfile scratch;
  scratch.bids.assign(n, {0.0});
  while (true) {
    for (int s = 0; s < total_slots; ++s) {
      strategy[slots[s].first][slots[s].second] = choice[s];
    }
    // Interim regret, exact over the conditioned atoms.
    double max_regret = 0.0;
    for (int i = 0; i < n && max_regret <= epsilon; ++i) {
      for (std::size_t t = 0; t < values[i].size() && max_regret <= epsilon; ++t) {
        double eq_util = 0.0;
        std::vector<double> dev_util(num_bids, 0.0);
        for (std::size_t a = 0; a < prior.atoms.size(); ++a) {
          if (atom_value_index[a][i] != static_cast<int>(t) ||
              prior.probs[a] <= 0.0) {
            continue;
          }
          for (int k = 0; k < n; ++k) {
            scratch.bids[k][0] = bids[strategy[k][atom_value_index[a][k]]];
          }
          const Valuation& type = prior.atoms[a].players[i];
          eq_util += prior.probs[a] * utility(f, scratch, i, type);
          for (int c = 0; c < num_bids; ++c) {
            scratch.bids[i][0] = bids[c];
            dev_util[c] += prior.probs[a] * utility(f, scratch, i, type);
          }
        }
        for (int c = 0; c < num_bids; ++c) {
          max_regret = std::max(max_regret,
                                (dev_util[c] - eq_util) / type_prob[i][t]);
        }
      }
    }

    if (max_regret <= epsilon) {
      EnumeratedBne bne;
      bne.max_regret = std::max(0.0, max_regret);
      for (std::size_t a = 0; a < prior.atoms.size(); ++a) {
        for (int k = 0; k < n; ++k) {
          scratch.bids[k][0] = bids[strategy[k][atom_value_index[a][k]]];
        }
        bne.expected_welfare +=
            prior.probs[a] * social_welfare(f, scratch, prior.atoms[a]);
      }
      for (int i = 0; i < n; ++i) {
        GridStrategy gs;
        gs.value_grid = values[i];
        for (double b : bids) gs.actions.push_back({b});
        gs.probs.assign(values[i].size(), std::vector<double>(num_bids, 0.0));
        for (std::size_t t = 0; t < values[i].size(); ++t) {
          gs.probs[t][strategy[i][t]] = 1.0;
        }
        bne.strategies.push_back(std::move(gs));
      }
      found.push_back(std::move(bne));
    }

    int s = total_slots - 1;
    while (s >= 0 && ++choice[s] == num_bids) choice[s--] = 0;
    if (s < 0) break;
  }
  return found;
}

}  // namespace agora
