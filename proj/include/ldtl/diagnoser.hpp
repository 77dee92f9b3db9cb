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

// The diagnostic agent: a factorized categorical classifier over diseases,
// fitted once on complete case evidence and then frozen.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ldtl/error.hpp"
#include "ldtl/world.hpp"

namespace ldtl {

inline constexpr double kDefaultSmoothing = 1.0;
inline constexpr double kDefaultLogFloor = 1e-12;

using Table = std::vector<std::vector<double>>;

class DiagnoserModel {
 public:
  DiagnoserModel() = default;

  /// `cond_tables[a][disease][outcome]`. Rows are validated; log tables are
  /// precomputed with every probability clamped below by `log_floor`.
  DiagnoserModel(WorldShape shape, std::string world_hash, std::vector<double> priors, Table init_table,
                 std::vector<Table> cond_tables, double alpha, double log_floor = kDefaultLogFloor)
      : shape_(std::move(shape)),
        world_hash_(std::move(world_hash)),
        priors_(std::move(priors)),
        init_table_(std::move(init_table)),
        cond_tables_(std::move(cond_tables)),
        alpha_(alpha),
        log_floor_(log_floor) {
    if (!(alpha_ >= 0.0)) throw ValidationError("smoothing alpha must be >= 0");
    if (!(log_floor_ > 0.0 && log_floor_ <= 1e-6)) throw ValidationError("log_floor must lie in (0, 1e-6]");
    const std::size_t k = shape_.num_diseases();
    detail::check_row(priors_, k, "priors_hat");
    detail::check_table(init_table_, k, shape_.init_alphabet.size(), "init_table_hat");
    if (cond_tables_.size() != shape_.num_actions()) throw ShapeMismatch("one conditional table per action");
    for (std::size_t a = 0; a < cond_tables_.size(); ++a)
      detail::check_table(cond_tables_[a], k, shape_.outcome_alphabets[a].size(),
                          "cond_table_hat " + shape_.action_names[a]);

    const double lf = std::log(log_floor_);
    auto clamp_log = [lf](double p) { return std::max(p > 0.0 ? std::log(p) : lf, lf); };
    log_priors_.resize(k);
    for (std::size_t y = 0; y < k; ++y) log_priors_[y] = clamp_log(priors_[y]);
    log_init_ = init_table_;
    for (auto &row : log_init_)
      for (auto &p : row) p = clamp_log(p);
    log_cond_ = cond_tables_;
    for (auto &t : log_cond_)
      for (auto &row : t)
        for (auto &p : row) p = clamp_log(p);
  }

  const WorldShape &shape() const { return shape_; }
  const std::string &world_hash() const { return world_hash_; }
  const std::vector<double> &priors() const { return priors_; }
  const Table &init_table() const { return init_table_; }
  const std::vector<Table> &cond_tables() const { return cond_tables_; }
  double alpha() const { return alpha_; }
  double log_floor() const { return log_floor_; }
  std::size_t num_diseases() const { return shape_.num_diseases(); }
  std::size_t num_actions() const { return shape_.num_actions(); }

  double log_prior(std::size_t y) const { return log_priors_[y]; }
  double log_init(std::size_t y, std::size_t obs) const { return log_init_[y][obs]; }
  double log_cond(std::size_t a, std::size_t y, std::size_t o) const { return log_cond_[a][y][o]; }

 private:
  WorldShape shape_;
  std::string world_hash_;
  std::vector<double> priors_;
  Table init_table_;
  std::vector<Table> cond_tables_;
  double alpha_ = kDefaultSmoothing;
  double log_floor_ = kDefaultLogFloor;
  std::vector<double> log_priors_;
  Table log_init_;
  std::vector<Table> log_cond_;
};

struct DiseasePosterior {
  std::vector<double> probs;
  std::vector<double> log_probs;
  std::size_t argmax_label = 0;
  double confidence = 0.0;
};

/// Laplace-smoothed maximum likelihood on complete evidence (initial
/// observation plus every available outcome). With alpha = 0 a disease or
/// action that never appears gets a uniform row instead of 0/0.
inline DiagnoserModel fit_full_info(const World &world, const CaseSet &train, double alpha = kDefaultSmoothing,
                                    double log_floor = kDefaultLogFloor) {
  if (train.empty()) throw EmptyTrainingSet("cannot fit the diagnoser on zero cases");
  if (!(alpha >= 0.0)) throw ValidationError("smoothing alpha must be >= 0");
  const std::size_t k = world.num_diseases();
  const std::size_t n_actions = world.num_actions();

  std::vector<double> label_counts(k, 0.0);
  Table init_counts(k, std::vector<double>(world.num_init_symbols(), 0.0));
  std::vector<Table> cond_counts(n_actions);
  for (std::size_t a = 0; a < n_actions; ++a) cond_counts[a].assign(k, std::vector<double>(world.num_outcomes(a), 0.0));

  for (const auto &c : train) {
    if (c.label >= k || c.init_obs >= world.num_init_symbols() || c.outcomes.size() != n_actions)
      throw SchemaError("case " + c.id + " does not match the world shape");
    label_counts[c.label] += 1.0;
    init_counts[c.label][c.init_obs] += 1.0;
    for (std::size_t a = 0; a < n_actions; ++a)
      if (c.outcomes[a]) cond_counts[a][c.label][*c.outcomes[a]] += 1.0;
  }

  auto normalize = [alpha](const std::vector<double> &counts) {
    double total = 0.0;
    for (double x : counts) total += x + alpha;
    std::vector<double> row(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
      row[i] = total > 0.0 ? (counts[i] + alpha) / total : 1.0 / static_cast<double>(counts.size());
    return row;
  };

  std::vector<double> priors = normalize(label_counts);
  Table init_table;
  for (const auto &row : init_counts) init_table.push_back(normalize(row));
  std::vector<Table> cond_tables(n_actions);
  for (std::size_t a = 0; a < n_actions; ++a)
    for (const auto &row : cond_counts[a]) cond_tables[a].push_back(normalize(row));

  return DiagnoserModel(world.shape(), world.hash(), std::move(priors), std::move(init_table),
                        std::move(cond_tables), alpha, log_floor);
}

/// Model carrying the world's true tables, unsmoothed.
inline DiagnoserModel oracle_model(const World &world, double log_floor = kDefaultLogFloor) {
  const auto &cfg = world.config();
  std::vector<Table> cond;
  for (const auto &spec : cfg.actions) cond.push_back(spec.cond_table);
  return DiagnoserModel(world.shape(), world.hash(), cfg.priors, cfg.init_obs_table, std::move(cond), 0.0,
                        log_floor);
}

/// p(y | h) for the factorized model. Evidence factors are accumulated in
/// action-index order so that the result is bitwise independent of reveal
/// order. Tests that were never revealed contribute no factor.
inline DiseasePosterior posterior(const DiagnoserModel &model, const PatientState &state) {
  const std::size_t k = model.num_diseases();
  const auto &shape = model.shape();
  if (state.init_obs() >= shape.init_alphabet.size())
    throw UnknownSymbol("initial observation index " + std::to_string(state.init_obs()));

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> outcome_of(model.num_actions(), kNone);
  for (const auto &ev : state.revealed()) {
    if (ev.action >= model.num_actions()) throw UnknownSymbol("action index " + std::to_string(ev.action));
    if (ev.outcome >= shape.outcome_alphabets[ev.action].size())
      throw UnknownSymbol("outcome index " + std::to_string(ev.outcome) + " for action " +
                          shape.action_names[ev.action]);
    outcome_of[ev.action] = ev.outcome;
  }

  std::vector<double> scores(k);
  for (std::size_t y = 0; y < k; ++y) {
    double s = model.log_prior(y) + model.log_init(y, state.init_obs());
    for (std::size_t a = 0; a < outcome_of.size(); ++a)
      if (outcome_of[a] != kNone) s += model.log_cond(a, y, outcome_of[a]);
    scores[y] = s;
  }

  const double max_score = *std::max_element(scores.begin(), scores.end());
  double z = 0.0;
  for (double s : scores) z += std::exp(s - max_score);
  const double log_z = max_score + std::log(z);

  DiseasePosterior out;
  out.probs.resize(k);
  out.log_probs.resize(k);
  for (std::size_t y = 0; y < k; ++y) {
    out.log_probs[y] = scores[y] - log_z;
    out.probs[y] = std::exp(out.log_probs[y]);
    if (out.probs[y] > out.confidence) {
      out.confidence = out.probs[y];
      out.argmax_label = y;
    }
  }
  return out;
}

inline DiseasePosterior oracle_posterior(const World &world, const PatientState &state) {
  return posterior(oracle_model(world), state);
}

enum class StopReason { none, threshold, horizon, exhausted };

inline const char *to_string(StopReason r) {
  switch (r) {
    case StopReason::threshold: return "threshold";
    case StopReason::horizon: return "horizon";
    case StopReason::exhausted: return "exhausted";
    case StopReason::none: break;
  }
  return "none";
}

struct StopDecision {
  bool stop = false;
  std::size_t predicted = 0;
  bool confident = false;
  StopReason reason = StopReason::none;
};

inline constexpr double kDefaultThetaStop = 0.9;
inline constexpr std::size_t kDefaultTMax = 3;

/// Termination rule. Confidence only counts once at least one test has been
/// taken; threshold wins over horizon, which wins over exhaustion.
inline StopDecision decide(const DiseasePosterior &post, std::size_t step, double theta_stop, std::size_t t_max,
                           std::size_t remaining_actions) {
  if (!(theta_stop > 0.0 && theta_stop <= 1.0)) throw ValidationError("theta_stop must lie in (0, 1]");
  if (t_max < 1) throw ValidationError("t_max must be >= 1");
  StopDecision d;
  d.predicted = post.argmax_label;
  d.confident = post.confidence >= theta_stop && step >= 1;
  if (d.confident) d.reason = StopReason::threshold;
  else if (step >= t_max) d.reason = StopReason::horizon;
  else if (remaining_actions == 0) d.reason = StopReason::exhausted;
  d.stop = d.reason != StopReason::none;
  return d;
}

}  // namespace ldtl
