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

#include "agora/prior.hpp"

#include <cmath>

namespace agora {

namespace {

void check_probs(const std::vector<double>& probs, std::size_t n,
                 const char* what) {
  if (probs.size() != n) {
    throw InputError(std::string(what) + ": support/probability size mismatch");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw InputError(std::string(what) + ": negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw InputError(std::string(what) + ": probabilities must sum to 1");
  }
}

}  // namespace

DiscreteMarginal DiscreteMarginal::over_scalars(
    const std::vector<double>& values, const std::vector<double>& probs) {
  DiscreteMarginal out;
  out.support.reserve(values.size());
  for (double v : values) out.support.push_back(make_scalar(v));
  out.probs = probs;
  return out;
}

DiscreteMarginal DiscreteMarginal::point(Valuation v) {
  return DiscreteMarginal{{std::move(v)}, {1.0}};
}

int num_players(const Prior& p) {
  if (const auto* ind = std::get_if<IndependentProduct>(&p)) {
    return static_cast<int>(ind->players.size());
  }
  const auto& joint = std::get<CorrelatedJoint>(p);
  return joint.atoms.empty() ? 0 : joint.atoms.front().num_players();
}

void validate(const Prior& p) {
  if (const auto* ind = std::get_if<IndependentProduct>(&p)) {
    if (ind->players.empty()) throw InputError("prior: no players");
    for (const auto& marginal : ind->players) {
      if (const auto* d = std::get_if<DiscreteMarginal>(&marginal)) {
        if (d->support.empty()) throw InputError("prior: empty support");
        check_probs(d->probs, d->support.size(), "prior marginal");
        for (const auto& v : d->support) validate(v);
      } else {
        const auto& u = std::get<UniformMarginal>(marginal);
        if (!(u.lo < u.hi)) throw InputError("prior: uniform requires lo < hi");
        if (!(u.lo >= 0.0)) throw InputError("prior: negative uniform support");
      }
    }
    return;
  }
  const auto& joint = std::get<CorrelatedJoint>(p);
  if (joint.atoms.empty()) throw InputError("prior: no atoms");
  check_probs(joint.probs, joint.atoms.size(), "joint prior");
  const int n = joint.atoms.front().num_players();
  for (const auto& atom : joint.atoms) {
    if (atom.num_players() != n) throw InputError("prior: atom arity mismatch");
    for (const auto& v : atom.players) validate(v);
  }
}

ValuationProfile sample_profile(const Prior& p, Rng& rng) {
  if (const auto* ind = std::get_if<IndependentProduct>(&p)) {
    ValuationProfile out;
    out.players.reserve(ind->players.size());
    for (const auto& marginal : ind->players) {
      if (const auto* d = std::get_if<DiscreteMarginal>(&marginal)) {
        out.players.push_back(d->support[sample_index(rng, d->probs)]);
      } else {
        const auto& u = std::get<UniformMarginal>(marginal);
        out.players.push_back(make_scalar(uniform_in(rng, u.lo, u.hi)));
      }
    }
    return out;
  }
  const auto& joint = std::get<CorrelatedJoint>(p);
  return joint.atoms[sample_index(rng, joint.probs)];
}

ValuationProfile sample_profile(const Prior& p, std::uint64_t seed) {
  Rng rng(seed);
  return sample_profile(p, rng);
}

}  // namespace agora
