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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "agora/harness.hpp"
#include "agora/serialization.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
  std::string config;
  std::uint64_t seed = 0;
  int samples = 0;
  std::string out;
  bool exhaustive = false;
  bool seed_set = false;
  bool samples_set = false;
};

void add_common(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config, "JSON experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", flags->seed, "override the config seed");
  cmd->add_option("--samples", flags->samples, "override the sample budget");
  cmd->add_option("--out", flags->out, "write the result CSV to this path");
  cmd->add_flag("--exhaustive", flags->exhaustive,
                "require exact-expectation mode (poa only)");
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw agora::InputError("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw agora::InputError("config parse error in " + path + ": " + ex.what());
  }
}

agora::Experiment make_experiment(const CommonFlags& flags,
                                  const std::string& kind) {
  json body = load_config(flags.config);
  if (!body.contains("id")) body["id"] = kind;
  body["kind"] = kind;
  if (flags.seed_set) body["seed"] = flags.seed;
  if (flags.samples_set) body["samples"] = flags.samples;
  if (flags.exhaustive) body["require_exhaustive"] = true;
  return agora::experiment_from_json(body);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw agora::InputError("cannot write: " + path);
  out << content;
}

int finish(const CommonFlags& flags,
           const std::vector<agora::ExperimentResult>& rows,
           const std::string& detail_csv = "") {
  std::ostringstream csv;
  agora::write_results_csv(csv, rows);
  std::cout << csv.str();
  if (!flags.out.empty()) {
    write_file(flags.out, detail_csv.empty() ? csv.str() : detail_csv);
  }
  bool all_pass = true;
  for (const auto& r : rows) all_pass = all_pass && r.pass;
  std::cout << (all_pass ? "PASS" : "FAIL") << '\n';
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "agora: price-of-anarchy laboratory for non-truthful auctions"};
  app.require_subcommand(1);

  CommonFlags poa_flags, eq_flags, smooth_flags, learn_flags, compose_flags,
      suite_flags;
  std::string learn_log;

  CLI::App* poa = app.add_subcommand(
      "poa", "estimate equilibrium welfare over optimal welfare");
  add_common(poa, &poa_flags);
  CLI::App* eq = app.add_subcommand(
      "eq-check", "max interim regret of a strategy profile");
  add_common(eq, &eq_flags);
  CLI::App* smooth = app.add_subcommand(
      "smooth-check", "verify a smoothness certificate on case grids");
  add_common(smooth, &smooth_flags);
  CLI::App* learn = app.add_subcommand(
      "learn", "no-regret dynamics and the smooth welfare bound");
  add_common(learn, &learn_flags);
  learn->add_option("--log", learn_log, "write per-round play CSV here");
  CLI::App* composec = app.add_subcommand(
      "compose-check", "verify smoothness of a simultaneous composition");
  add_common(composec, &compose_flags);
  CLI::App* suite = app.add_subcommand(
      "suite", "run a list of experiments and emit one CSV row each");
  add_common(suite, &suite_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (poa->parsed()) {
      poa_flags.seed_set = poa->count("--seed") > 0;
      poa_flags.samples_set = poa->count("--samples") > 0;
      const agora::Experiment e = make_experiment(poa_flags, "poa");
      return finish(poa_flags, {agora::run_experiment(e)});
    }
    if (eq->parsed()) {
      eq_flags.seed_set = eq->count("--seed") > 0;
      eq_flags.samples_set = eq->count("--samples") > 0;
      const agora::Experiment e = make_experiment(eq_flags, "eq_check");
      const agora::BneCheckReport report =
          agora::run_eq_check_config(e.body, e.samples, e.seed);
      std::ostringstream detail;
      agora::write_bne_report_csv(detail, report);
      return finish(eq_flags, {agora::run_experiment(e)}, detail.str());
    }
    if (smooth->parsed() || composec->parsed()) {
      CommonFlags& flags = smooth->parsed() ? smooth_flags : compose_flags;
      CLI::App* cmd = smooth->parsed() ? smooth : composec;
      flags.seed_set = cmd->count("--seed") > 0;
      flags.samples_set = cmd->count("--samples") > 0;
      const std::string kind =
          smooth->parsed() ? "smooth_check" : "compose_check";
      const agora::Experiment e = make_experiment(flags, kind);
      const agora::SmoothnessReport report = agora::run_smooth_check_config(
          e.body, e.samples, e.seed, kind == "compose_check");
      std::ostringstream detail;
      agora::write_smoothness_report_csv(detail, report);
      return finish(flags, {agora::run_experiment(e)}, detail.str());
    }
    if (learn->parsed()) {
      learn_flags.seed_set = learn->count("--seed") > 0;
      learn_flags.samples_set = learn->count("--samples") > 0;
      const agora::Experiment e = make_experiment(learn_flags, "learn");
      std::ofstream log_stream;
      std::ostream* log = nullptr;
      if (!learn_log.empty()) {
        log_stream.open(learn_log);
        if (!log_stream) {
          throw agora::InputError("cannot write: " + learn_log);
        }
        log_stream << "round,player,action,utility\n";
        log = &log_stream;
      }
      const std::vector<agora::LearnRunSummary> runs =
          agora::run_learn_config(e.body, e.seed, log);
      std::ostringstream detail;
      agora::write_learn_summaries_csv(detail, runs);
      return finish(learn_flags, {agora::run_experiment(e)}, detail.str());
    }
    // suite
    suite_flags.seed_set = suite->count("--seed") > 0;
    suite_flags.samples_set = suite->count("--samples") > 0;
    json config = load_config(suite_flags.config);
    if (config.contains("experiments")) {
      for (auto& ej : config["experiments"]) {
        if (suite_flags.seed_set) ej["seed"] = suite_flags.seed;
        if (suite_flags.samples_set) ej["samples"] = suite_flags.samples;
      }
    }
    return finish(suite_flags, agora::run_suite(config));
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
}
