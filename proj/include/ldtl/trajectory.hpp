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

// Information gain, the energy-based trajectory posterior and the action-level
// posteriors derived from it.
//
// The trajectory score is S(z) = log p(y | h_T) - log p(y | h_0), so the
// step-wise information gain is exactly the per-step increment of S.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ldtl/diagnoser.hpp"
#include "ldtl/error.hpp"
#include "ldtl/world.hpp"

namespace ldtl {

inline constexpr double kDefaultTau = 1.0;
inline constexpr double kDefaultBeta = 1.0;

struct ActionDistribution {
  /// Feasible action indices, ascending.
  std::vector<std::size_t> support;
  std::vector<double> probs;
  /// Set when the distribution came from the step-wise IG softmax.
  std::optional<double> temperature;

  double prob_of(std::size_t action) const {
    for (std::size_t i = 0; i < support.size(); ++i)
      if (support[i] == action) return probs[i];
    return 0.0;
  }
};

/// Max-subtracted softmax of `scale * values`.
inline std::vector<double> softmax(std::span<const double> values, double scale = 1.0) {
  std::vector<double> out(values.size());
  if (values.empty()) return out;
  double max_v = scale * values[0];
  for (double v : values) max_v = std::max(max_v, scale * v);
  double z = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = std::exp(scale * values[i] - max_v);
    z += out[i];
  }
  for (double &p : out) p /= z;
  return out;
}

/// IG(h_t, a) = log p(y | h_{t+1}) - log p(y | h_t) with y = case.label.
inline double info_gain(const DiagnoserModel &model, const PatientState &state, std::size_t action,
                        const PatientCase &c) {
  if (state.is_done(action) || !c.available(action))
    throw InfeasibleAction("action " + std::to_string(action) + " is not feasible for case " + c.id);
  const auto before = posterior(model, state);
  const auto after = posterior(model, update_state(state, action, c));
  return after.log_probs[c.label] - before.log_probs[c.label];
}

/// Information gains for every feasible action (ascending index), sharing the
/// h_t posterior.
inline std::vector<double> info_gains(const DiagnoserModel &model, const PatientState &state,
                                      std::span<const std::size_t> feasible, const PatientCase &c) {
  const double base = posterior(model, state).log_probs[c.label];
  std::vector<double> out;
  out.reserve(feasible.size());
  for (std::size_t a : feasible) out.push_back(posterior(model, update_state(state, a, c)).log_probs[c.label] - base);
  return out;
}

/// q(a | h_t, y) proportional to exp(IG(h_t, a) / tau) over feasible actions.
inline ActionDistribution action_posterior(const DiagnoserModel &model, const PatientState &state,
                                           const PatientCase &c, double tau = kDefaultTau) {
  if (!(tau > 0.0)) throw ValidationError("tau must be > 0");
  ActionDistribution out;
  out.support = feasible_actions(state, c);
  if (out.support.empty()) throw NoFeasibleAction("no feasible action for case " + c.id);
  const auto gains = info_gains(model, state, out.support, c);
  out.probs = softmax(gains, 1.0 / tau);
  out.temperature = tau;
  return out;
}

struct Trajectory {
  std::vector<std::size_t> actions;

  std::size_t length() const { return actions.size(); }
  bool operator==(const Trajectory &) const = default;
};

/// All ordered sequences of distinct available actions. Ordered by length,
/// then lexicographically by action index. With `fixed_length`, only
/// sequences of length min(t_max, #available) are produced.
inline std::vector<Trajectory> enumerate_trajectories(const PatientCase &c, std::size_t t_max,
                                                      bool fixed_length = false) {
  if (t_max < 1) throw ValidationError("t_max must be >= 1");
  std::vector<std::size_t> avail;
  for (std::size_t a = 0; a < c.outcomes.size(); ++a)
    if (c.available(a)) avail.push_back(a);
  const std::size_t longest = std::min(t_max, avail.size());
  const std::size_t shortest = fixed_length ? longest : std::min<std::size_t>(1, longest);

  std::vector<Trajectory> out;
  std::vector<std::size_t> current;
  std::vector<bool> used(avail.size(), false);
  auto extend = [&](auto &&self, std::size_t target_len) -> void {
    if (current.size() == target_len) {
      out.push_back({current});
      return;
    }
    for (std::size_t i = 0; i < avail.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      current.push_back(avail[i]);
      self(self, target_len);
      current.pop_back();
      used[i] = false;
    }
  };
  for (std::size_t len = std::max<std::size_t>(shortest, 1); len <= longest; ++len) extend(extend, len);
  return out;
}

/// Replays a trajectory on a case, returning h_T.
inline PatientState replay(const Trajectory &z, const PatientCase &c) {
  PatientState state = PatientState::initial(c);
  for (std::size_t a : z.actions) state = update_state(state, a, c);
  return state;
}

struct TrajectoryDistribution {
  std::vector<Trajectory> support;
  std::vector<double> scores;
  std::vector<double> probs;
  double beta = kDefaultBeta;
};

/// q(z | h_0, y) proportional to exp(beta * S(z)) over the enumerated support.
inline TrajectoryDistribution trajectory_posterior(const DiagnoserModel &model, const PatientCase &c,
                                                   double beta = kDefaultBeta, std::size_t t_max = kDefaultTMax,
                                                   bool fixed_length = false) {
  if (!(beta >= 0.0)) throw ValidationError("beta must be >= 0");
  TrajectoryDistribution dist;
  dist.beta = beta;
  dist.support = enumerate_trajectories(c, t_max, fixed_length);
  if (dist.support.empty()) throw NoFeasibleAction("case " + c.id + " has no available tests");
  const double base = posterior(model, PatientState::initial(c)).log_probs[c.label];
  dist.scores.reserve(dist.support.size());
  for (const auto &z : dist.support)
    dist.scores.push_back(posterior(model, replay(z, c)).log_probs[c.label] - base);
  dist.probs = softmax(dist.scores, beta);
  return dist;
}

/// q(a_t | prefix): mass of trajectories extending `prefix` with a_t = a,
/// renormalized over trajectories that extend `prefix` to length >= t.
inline ActionDistribution marginal_action_posterior(const TrajectoryDistribution &dist, std::size_t t,
                                                    std::span<const std::size_t> prefix) {
  if (t < 1) throw ValidationError("step index t must be >= 1");
  if (prefix.size() != t - 1) throw ValidationError("prefix must have length t - 1");
  std::vector<std::pair<std::size_t, double>> mass;
  double denom = 0.0;
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    const auto &z = dist.support[i].actions;
    if (z.size() < t || !std::equal(prefix.begin(), prefix.end(), z.begin())) continue;
    denom += dist.probs[i];
    const std::size_t a = z[t - 1];
    auto it = std::find_if(mass.begin(), mass.end(), [a](const auto &m) { return m.first == a; });
    if (it == mass.end()) mass.emplace_back(a, dist.probs[i]);
    else it->second += dist.probs[i];
  }
  if (mass.empty() || !(denom > 0.0)) throw EmptyPrefixSet("no trajectory extends the given prefix");
  std::sort(mass.begin(), mass.end());
  ActionDistribution out;
  for (const auto &[a, m] : mass) {
    out.support.push_back(a);
    out.probs.push_back(m / denom);
  }
  return out;
}

}  // namespace ldtl
