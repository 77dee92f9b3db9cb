// Copyright 2026 LDTL Lab Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// One seed of the full comparison: sample cases, split, fit the diagnoser,
// train planners, evaluate every method on the test split.

#include <string>
#include <utility>
#include <vector>

#include "ldtl/diagnoser.hpp"
#include "ldtl/episode.hpp"
#include "ldtl/eval.hpp"
#include "ldtl/planner.hpp"
#include "ldtl/world.hpp"

namespace ldtl {

struct BenchmarkConfig {
  std::size_t n_cases = 2400;
  SplitRatios ratios{};
  double alpha = kDefaultSmoothing;
  EpisodeLimits limits{};
  TrainConfig train{};
  /// Also train on exact trajectory marginals (slower; off by default).
  bool include_exact_marginal = false;
};

struct BenchmarkResult {
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, MetricsReport>> reports;

  const MetricsReport &at(const std::string &name) const {
    for (const auto &[n, r] : reports)
      if (n == name) return r;
    throw ValidationError("no report named " + name);
  }
};

inline BenchmarkResult run_benchmark_seed(const World &world, std::uint64_t seed, const BenchmarkConfig &cfg) {
  const auto cases = sample_cases(world, cfg.n_cases, seed);
  const auto split = split_cases(cases, cfg.ratios, seed);
  const auto model = fit_full_info(world, split.train, cfg.alpha);
  const std::size_t k = world.num_diseases();

  BenchmarkResult out;
  out.seed = seed;
  auto evaluate = [&](const std::string &name, const PolicySpec &spec) {
    out.reports.emplace_back(name, compute_metrics(run_benchmark(spec, split.test, model, cfg.limits), k));
  };
  auto trained = [&](TargetSource source) {
    TrainConfig tc = cfg.train;
    tc.target_source = source;
    tc.seed = seed;
    tc.theta_stop = cfg.limits.theta_stop;
    tc.t_max = cfg.limits.t_max;
    PolicySpec spec{PolicyKind::trained, train_planner(split.train, model, tc), {}, seed};
    return spec;
  };

  evaluate("ldtl", trained(TargetSource::stepwise_ig));
  evaluate("wo_lp", trained(TargetSource::greedy_label));
  if (cfg.include_exact_marginal) evaluate("ldtl_exact", trained(TargetSource::exact_marginal));
  evaluate("random", PolicySpec{PolicyKind::random, std::nullopt, {}, seed});
  evaluate("greedy_ig", PolicySpec{PolicyKind::greedy_ig_oracle, std::nullopt, {}, seed});

  std::vector<std::size_t> fixed;
  evaluate("fixed_history", PolicySpec{PolicyKind::fixed_info, std::nullopt, fixed, seed});
  if (auto lab = world.find_action("lab")) {
    fixed.push_back(*lab);
    evaluate("fixed_history_lab", PolicySpec{PolicyKind::fixed_info, std::nullopt, fixed, seed});
    if (auto img = world.find_action("img")) {
      fixed.push_back(*img);
      evaluate("fixed_history_lab_img", PolicySpec{PolicyKind::fixed_info, std::nullopt, fixed, seed});
    }
  }
  evaluate("all_info", PolicySpec{PolicyKind::all_info, std::nullopt, {}, seed});
  return out;
}

}  // namespace ldtl
