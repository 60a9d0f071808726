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

#ifndef AGORA_HARNESS_HPP_
#define AGORA_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "agora/equilibrium.hpp"
#include "agora/smoothness.hpp"

namespace agora {

// Instance price-of-anarchy estimate: ratio of mean equilibrium welfare to
// mean optimal welfare (a ratio of means, matching the definition), for one
// prior and one strategy profile. The format-level infimum is never claimed.
struct PoaEstimate {
  double welfare_mean = 0.0;
  double opt_mean = 0.0;
  double ratio = 0.0;
  double welfare_std_error = 0.0;
  double opt_std_error = 0.0;
  double ratio_std_error = 0.0;
  long samples = 0;
  bool exhaustive = false;
};

struct PoaOptions {
  int samples = 100000;
  std::uint64_t seed = 1;
  bool force_sampling = false;
  // Exhaustive (exact-expectation) mode triggers automatically when the
  // prior and strategies are finite and their joint support stays within
  // this budget.
  std::int64_t exhaustive_atom_limit = 1000000;
};

PoaEstimate poa_estimate(const AuctionFormat& f, const Prior& prior,
                         const std::vector<Strategy>& strategies,
                         const PoaOptions& opts);

// One configured check; `body` carries the kind-specific fields (see
// docs/formats.md).
struct Experiment {
  std::string id;
  std::string kind;  // poa | eq_check | smooth_check | compose_check | learn
  nlohmann::json body;
  int samples = 10000;
  std::uint64_t seed = 1;
  double bound = 0.0;
  double tolerance = 0.0;
  std::string check = "ge";  // ge | le | abs | pass
};

struct ExperimentResult {
  std::string id;
  std::uint64_t seed = 0;
  long samples = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Experiment experiment_from_json(const nlohmann::json& j);

// Runs one experiment; deterministic given its seed.
ExperimentResult run_experiment(const Experiment& e);

// Runs {"experiments": [...]} and returns rows sorted by experiment id.
std::vector<ExperimentResult> run_suite(const nlohmann::json& config);

// CSV with header: experiment,seed,samples,estimate,stderr,bound,tolerance,pass
void write_results_csv(std::ostream& out,
                       const std::vector<ExperimentResult>& rows);

// Case-set builders shared by the CLI and the suite runner.
std::vector<ValuationProfile> valuation_cases_from_json(const nlohmann::json& j);
std::vector<SmoothnessCase> smoothness_cases_from_json(
    const nlohmann::json& values_spec, const nlohmann::json& actions_spec,
    std::uint64_t seed);

// Random monotone submodular table (weighted-coverage construction).
TableValuation random_submodular_table(int items, Rng& rng);

// Config-driven runners behind the CLI subcommands. `body` fields are
// documented in docs/formats.md; samples and seed override the config.
DeviationRule rule_from_json(const nlohmann::json& j);
SmoothnessParams smoothness_params_from_json(const nlohmann::json& j);

PoaEstimate run_poa_config(const nlohmann::json& body, int samples,
                           std::uint64_t seed);
BneCheckReport run_eq_check_config(const nlohmann::json& body, int samples,
                                   std::uint64_t seed);
SmoothnessReport run_smooth_check_config(const nlohmann::json& body,
                                         int samples, std::uint64_t seed,
                                         bool composed);

struct LearnRunSummary {
  std::uint64_t seed = 0;
  int horizon = 0;
  double average_welfare = 0.0;
  double opt = 0.0;
  double smooth_bound = 0.0;
  std::vector<double> regrets;
  bool pass = true;
};

// Runs the configured repeated game for each seed; writes per-round logs
// (round,player,action,utility) to round_log when provided.
std::vector<LearnRunSummary> run_learn_config(const nlohmann::json& body,
                                              std::uint64_t seed,
                                              std::ostream* round_log = nullptr);

// Detailed report CSVs.
void write_bne_report_csv(std::ostream& out, const BneCheckReport& report);
void write_smoothness_report_csv(std::ostream& out,
                                 const SmoothnessReport& report);
void write_learn_summaries_csv(std::ostream& out,
                               const std::vector<LearnRunSummary>& runs);

}  // namespace agora

#endif  // AGORA_HARNESS_HPP_
