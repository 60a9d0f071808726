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

#ifndef AGORA_PRIOR_HPP_
#define AGORA_PRIOR_HPP_

#include <cstdint>
#include <variant>
#include <vector>

#include "agora/random.hpp"
#include "agora/valuation.hpp"

namespace agora {

inline constexpr double kProbabilityTolerance = 1e-12;

// Finite per-player marginal over valuations. Scalar supports are one-item
// valuations (make_scalar).
struct DiscreteMarginal {
  std::vector<Valuation> support;
  std::vector<double> probs;

  static DiscreteMarginal over_scalars(const std::vector<double>& values,
                                       const std::vector<double>& probs);
  static DiscreteMarginal point(Valuation v);
};

// Uniform[lo, hi] over scalar values; the only continuous marginal.
struct UniformMarginal {
  double lo = 0.0;
  double hi = 1.0;
};

using Marginal = std::variant<DiscreteMarginal, UniformMarginal>;

// Independent per-player marginals.
struct IndependentProduct {
  std::vector<Marginal> players;
};

// Finite joint distribution over full valuation profiles; the atoms may be
// arbitrarily correlated across players.
struct CorrelatedJoint {
  std::vector<ValuationProfile> atoms;
  std::vector<double> probs;
};

using Prior = std::variant<IndependentProduct, CorrelatedJoint>;

int num_players(const Prior& p);

// Checks probability normalization (1 +- 1e-12), lo < hi, shape agreement.
void validate(const Prior& p);

// Draws a profile; independent per-player draws under IndependentProduct,
// one joint atom under CorrelatedJoint. Deterministic for a fixed seed.
ValuationProfile sample_profile(const Prior& p, Rng& rng);
ValuationProfile sample_profile(const Prior& p, std::uint64_t seed);

}  // namespace agora

#endif  // AGORA_PRIOR_HPP_
