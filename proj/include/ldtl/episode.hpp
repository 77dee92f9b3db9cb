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

// Inference-time interaction loop: plan, reveal, diagnose, stop? Covers the
// trained planner and every baseline policy.

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ldtl/diagnoser.hpp"
#include "ldtl/error.hpp"
#include "ldtl/planner.hpp"
#include "ldtl/rng.hpp"
#include "ldtl/trajectory.hpp"
#include "ldtl/world.hpp"

namespace ldtl {

enum class PolicyKind { trained, random, greedy_ig_oracle, fixed_info, all_info };

inline const char *to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::trained: return "trained";
    case PolicyKind::random: return "random";
    case PolicyKind::greedy_ig_oracle: return "greedy_ig_oracle";
    case PolicyKind::fixed_info: return "fixed_info";
    case PolicyKind::all_info: return "all_info";
  }
  return "?";
}

struct PolicySpec {
  PolicyKind kind = PolicyKind::random;
  std::optional<PolicyParams> params;
  /// Designated tests for fixed_info (world action indices).
  std::vector<std::size_t> fixed_set;
  /// Global seed; per-case streams are derived from (seed, case id).
  std::uint64_t seed = 0;
  /// Sample from the trained policy instead of taking its argmax.
  bool sample = false;

  bool sequential() const { return kind != PolicyKind::fixed_info && kind != PolicyKind::all_info; }
};

struct EpisodeLimits {
  double theta_stop = kDefaultThetaStop;
  std::size_t t_max = kDefaultTMax;
};

struct EpisodeRecord {
  std::string case_id;
  std::size_t true_label = 0;
  std::size_t predicted = 0;
  std::size_t steps_taken = 0;
  Trajectory actions;
  StopReason stop_reason = StopReason::none;
  double confidence_at_stop = 0.0;
  /// Disease posterior after each reveal.
  std::vector<std::vector<double>> per_step_posteriors;
};

namespace detail {

inline void validate_policy(const PolicySpec &policy, const DiagnoserModel &model) {
  if (policy.kind == PolicyKind::trained) {
    if (!policy.params) throw InvalidPolicy("trained policy requires parameters");
    if (policy.params->layout != FeatureLayout::of(model.shape()))
      throw InvalidPolicy("policy parameters do not match the diagnoser's world shape");
  }
  if (policy.kind == PolicyKind::fixed_info)
    for (std::size_t a : policy.fixed_set)
      if (a >= model.num_actions()) throw InvalidPolicy("fixed_set names an unknown action");
}

// Label-free selectors: they see the state and the feasible set, never the case.
inline std::size_t select_trained(const PolicySpec &policy, const DiagnoserModel &model, const PatientState &state,
                                  const std::vector<std::size_t> &feasible, Rng &rng) {
  const auto pi = policy_distribution(*policy.params, featurize(state, model), feasible);
  if (policy.sample) return pi.support[rng.categorical(pi.probs)];
  return argmax_action(pi);
}

inline std::size_t select_random(const std::vector<std::size_t> &feasible, Rng &rng) {
  return feasible[static_cast<std::size_t>(rng.below(feasible.size()))];
}

// Label-aware upper reference: maximal immediate information gain.
inline std::size_t select_greedy_ig(const DiagnoserModel &model, const PatientState &state,
                                    const std::vector<std::size_t> &feasible, const PatientCase &c) {
  const auto gains = info_gains(model, state, feasible, c);
  std::size_t best = 0;
  for (std::size_t i = 1; i < gains.size(); ++i)
    if (gains[i] > gains[best]) best = i;
  return feasible[best];
}

}  // namespace detail

inline EpisodeRecord run_episode(const PolicySpec &policy, const PatientCase &c, const DiagnoserModel &model,
                                 const EpisodeLimits &limits) {
  detail::validate_policy(policy, model);
  EpisodeRecord rec;
  rec.case_id = c.id;
  rec.true_label = c.label;
  PatientState state = PatientState::initial(c);

  if (!policy.sequential()) {
    std::vector<std::size_t> designated;
    if (policy.kind == PolicyKind::all_info) {
      for (std::size_t a = 0; a < model.num_actions(); ++a) designated.push_back(a);
    } else {
      designated = policy.fixed_set;
      std::sort(designated.begin(), designated.end());
      designated.erase(std::unique(designated.begin(), designated.end()), designated.end());
    }
    for (std::size_t a : designated) {
      if (!c.available(a)) continue;
      state = update_state(state, a, c);
      rec.actions.actions.push_back(a);
      rec.per_step_posteriors.push_back(posterior(model, state).probs);
    }
    const auto post = posterior(model, state);
    rec.predicted = post.argmax_label;
    rec.confidence_at_stop = post.confidence;
    rec.stop_reason = StopReason::exhausted;
    rec.steps_taken = rec.actions.length();
    return rec;
  }

  Rng rng = Rng::derive(policy.seed, c.id);
  for (;;) {
    const auto feasible = feasible_actions(state, c);
    const auto post = posterior(model, state);
    const auto d = decide(post, state.step(), limits.theta_stop, limits.t_max, feasible.size());
    if (d.stop) {
      rec.predicted = d.predicted;
      rec.confidence_at_stop = post.confidence;
      rec.stop_reason = d.reason;
      break;
    }
    std::size_t action = 0;
    switch (policy.kind) {
      case PolicyKind::trained: action = detail::select_trained(policy, model, state, feasible, rng); break;
      case PolicyKind::random: action = detail::select_random(feasible, rng); break;
      case PolicyKind::greedy_ig_oracle: action = detail::select_greedy_ig(model, state, feasible, c); break;
      default: throw InvalidPolicy("unexpected policy kind");
    }
    state = update_state(state, action, c);
    rec.actions.actions.push_back(action);
    rec.per_step_posteriors.push_back(posterior(model, state).probs);
  }
  rec.steps_taken = rec.actions.length();
  return rec;
}

inline Json record_to_json(const EpisodeRecord &r, const WorldShape &shape) {
  std::vector<std::string> actions;
  for (std::size_t a : r.actions.actions) actions.push_back(shape.action_names[a]);
  return Json{{"case_id", r.case_id},
              {"true_label", r.true_label},
              {"predicted", r.predicted},
              {"steps_taken", r.steps_taken},
              {"actions", actions},
              {"stop_reason", to_string(r.stop_reason)},
              {"confidence_at_stop", r.confidence_at_stop},
              {"per_step_posteriors", r.per_step_posteriors}};
}

/// One record per case, in input order. When `log` is given every record is
/// streamed to it as a JSON line.
inline std::vector<EpisodeRecord> run_benchmark(const PolicySpec &policy, const CaseSet &cases,
                                                const DiagnoserModel &model, const EpisodeLimits &limits,
                                                std::ostream *log = nullptr) {
  if (cases.empty()) throw ValidationError("benchmark needs at least one case");
  std::vector<EpisodeRecord> out;
  out.reserve(cases.size());
  for (const auto &c : cases) {
    out.push_back(run_episode(policy, c, model, limits));
    if (log) *log << record_to_json(out.back(), model.shape()).dump() << '\n';
  }
  return out;
}

}  // namespace ldtl
