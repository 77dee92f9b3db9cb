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

// The planning agent: a linear masked-softmax policy over test categories,
// trained by minimizing KL(q || pi) against per-state action posteriors.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ldtl/diagnoser.hpp"
#include "ldtl/error.hpp"
#include "ldtl/rng.hpp"
#include "ldtl/trajectory.hpp"
#include "ldtl/world.hpp"

namespace ldtl {

/// Feature layout: [bias] [done one-hot, one per action] [posterior, one per
/// disease] [last revealed (action, outcome) one-hot].
struct FeatureLayout {
  std::size_t num_actions = 0;
  std::size_t num_diseases = 0;
  std::vector<std::size_t> outcome_counts;

  static FeatureLayout of(const WorldShape &shape) {
    FeatureLayout l;
    l.num_actions = shape.num_actions();
    l.num_diseases = shape.num_diseases();
    for (const auto &alphabet : shape.outcome_alphabets) l.outcome_counts.push_back(alphabet.size());
    return l;
  }

  std::size_t done_offset() const { return 1; }
  std::size_t posterior_offset() const { return 1 + num_actions; }
  std::size_t outcome_offset(std::size_t action) const {
    std::size_t off = posterior_offset() + num_diseases;
    for (std::size_t a = 0; a < action; ++a) off += outcome_counts[a];
    return off;
  }
  std::size_t dim() const { return outcome_offset(num_actions); }

  bool operator==(const FeatureLayout &) const = default;
};

using FeatureVector = Eigen::VectorXd;

inline FeatureVector featurize(const PatientState &state, const DiagnoserModel &model) {
  const auto layout = FeatureLayout::of(model.shape());
  FeatureVector f = FeatureVector::Zero(static_cast<Eigen::Index>(layout.dim()));
  f[0] = 1.0;
  for (const auto &ev : state.revealed()) f[static_cast<Eigen::Index>(layout.done_offset() + ev.action)] = 1.0;
  const auto post = posterior(model, state);
  for (std::size_t y = 0; y < post.probs.size(); ++y)
    f[static_cast<Eigen::Index>(layout.posterior_offset() + y)] = post.probs[y];
  if (!state.revealed().empty()) {
    const auto &last = state.revealed().back();
    f[static_cast<Eigen::Index>(layout.outcome_offset(last.action) + last.outcome)] = 1.0;
  }
  return f;
}

enum class TargetSource { stepwise_ig, exact_marginal, greedy_label };

inline const char *to_string(TargetSource s) {
  switch (s) {
    case TargetSource::stepwise_ig: return "stepwise_ig";
    case TargetSource::exact_marginal: return "exact_marginal";
    case TargetSource::greedy_label: return "greedy_label";
  }
  return "?";
}

inline TargetSource parse_target_source(const std::string &s) {
  if (s == "stepwise_ig") return TargetSource::stepwise_ig;
  if (s == "exact_marginal") return TargetSource::exact_marginal;
  if (s == "greedy_label") return TargetSource::greedy_label;
  throw ValidationError("unknown target source '" + s + "'");
}

struct PolicyParams {
  Eigen::MatrixXd weights;  // num_actions x feature dim
  FeatureLayout layout;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  std::vector<double> loss_history;

  static PolicyParams zeros(const WorldShape &shape, std::string hash, std::uint64_t seed = 0) {
    PolicyParams p;
    p.layout = FeatureLayout::of(shape);
    p.weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p.layout.num_actions),
                                      static_cast<Eigen::Index>(p.layout.dim()));
    p.config_hash = std::move(hash);
    p.seed = seed;
    return p;
  }
};

/// Softmax over the feasible rows of `weights * features`; infeasible actions
/// are left out of the support (probability exactly 0).
inline ActionDistribution policy_distribution(const PolicyParams &params, const FeatureVector &features,
                                              std::span<const std::size_t> feasible) {
  if (feasible.empty()) throw NoFeasibleAction("policy has no feasible action");
  if (features.size() != params.weights.cols()) throw ShapeMismatch("feature dimension does not match weights");
  ActionDistribution out;
  out.support.assign(feasible.begin(), feasible.end());
  std::vector<double> logits;
  logits.reserve(feasible.size());
  for (std::size_t a : feasible) {
    if (a >= static_cast<std::size_t>(params.weights.rows())) throw ShapeMismatch("action index outside weights");
    logits.push_back(params.weights.row(static_cast<Eigen::Index>(a)).dot(features));
  }
  out.probs = softmax(logits);
  return out;
}

/// KL(q || pi) in nats; terms with q(a) = 0 contribute nothing.
inline double kl_step_loss(const ActionDistribution &target, const ActionDistribution &policy) {
  if (target.support != policy.support) throw SupportMismatch("target and policy supports differ");
  double kl = 0.0;
  for (std::size_t i = 0; i < target.probs.size(); ++i) {
    const double q = target.probs[i];
    if (q > 0.0) kl += q * (std::log(q) - std::log(policy.probs[i]));
  }
  return kl;
}

struct SupervisionTarget {
  PatientState state;
  ActionDistribution target;
  TargetSource source = TargetSource::stepwise_ig;
};

namespace detail {

inline void accumulate_gradient(Eigen::MatrixXd &grad, const PolicyParams &params, const FeatureVector &f,
                                const ActionDistribution &target, double weight) {
  const auto pi = policy_distribution(params, f, target.support);
  for (std::size_t i = 0; i < target.support.size(); ++i)
    grad.row(static_cast<Eigen::Index>(target.support[i])) += weight * (pi.probs[i] - target.probs[i]) * f.transpose();
}

}  // namespace detail

/// Gradient of the batch-mean KL with respect to the weights:
/// mean of outer(pi - q, features) over the feasible rows.
inline Eigen::MatrixXd loss_gradient(const PolicyParams &params, const std::vector<SupervisionTarget> &batch,
                                     const DiagnoserModel &model) {
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(params.weights.rows(), params.weights.cols());
  if (batch.empty()) return grad;
  const double w = 1.0 / static_cast<double>(batch.size());
  for (const auto &t : batch) detail::accumulate_gradient(grad, params, featurize(t.state, model), t.target, w);
  return grad;
}

/// Batch-mean KL at the given parameters.
inline double batch_loss(const PolicyParams &params, const std::vector<SupervisionTarget> &batch,
                         const DiagnoserModel &model) {
  if (batch.empty()) return 0.0;
  double sum = 0.0;
  for (const auto &t : batch)
    sum += kl_step_loss(t.target, policy_distribution(params, featurize(t.state, model), t.target.support));
  return sum / static_cast<double>(batch.size());
}

/// Target posterior for one state. Uses the true label; only training code
/// and the label-aware oracle baseline may call this.
inline ActionDistribution build_target(TargetSource source, const DiagnoserModel &model, const PatientState &state,
                                       const PatientCase &c, double tau, const TrajectoryDistribution *traj = nullptr) {
  switch (source) {
    case TargetSource::stepwise_ig:
      return action_posterior(model, state, c, tau);
    case TargetSource::exact_marginal: {
      if (traj == nullptr) throw ValidationError("exact_marginal targets need a trajectory distribution");
      std::vector<std::size_t> prefix;
      for (const auto &ev : state.revealed()) prefix.push_back(ev.action);
      return marginal_action_posterior(*traj, state.step() + 1, prefix);
    }
    case TargetSource::greedy_label: {
      if (!(tau > 0.0)) throw ValidationError("tau must be > 0");
      ActionDistribution out;
      out.support = feasible_actions(state, c);
      if (out.support.empty()) throw NoFeasibleAction("no feasible action for case " + c.id);
      const double before = posterior(model, state).argmax_label == c.label ? 1.0 : 0.0;
      std::vector<double> delta;
      for (std::size_t a : out.support) {
        const double after = posterior(model, update_state(state, a, c)).argmax_label == c.label ? 1.0 : 0.0;
        delta.push_back(after - before);
      }
      out.probs = softmax(delta, 1.0 / tau);
      out.temperature = tau;
      return out;
    }
  }
  throw ValidationError("unknown target source");
}

struct TrainConfig {
  double lr = 0.1;
  std::size_t epochs = 20;
  TargetSource target_source = TargetSource::stepwise_ig;
  double tau = kDefaultTau;
  double beta = kDefaultBeta;
  double theta_stop = kDefaultThetaStop;
  std::size_t t_max = kDefaultTMax;
  std::uint64_t seed = 0;
  /// Roll out supervision states with the current policy instead of the target.
  bool on_policy = false;
  /// Fixed-horizon trajectory support for exact_marginal targets.
  bool fixed_length = false;
};

/// Supervision states for one case: roll out from h_0, sampling actions from
/// the target posterior (or from the policy when `on_policy`), until the
/// diagnoser's stop rule fires.
inline std::vector<SupervisionTarget> collect_targets(const PatientCase &c, const DiagnoserModel &model,
                                                      const PolicyParams &params, const TrainConfig &cfg, Rng &rng,
                                                      const TrajectoryDistribution *traj) {
  std::vector<SupervisionTarget> out;
  PatientState state = PatientState::initial(c);
  for (;;) {
    const auto feasible = feasible_actions(state, c);
    const auto d = decide(posterior(model, state), state.step(), cfg.theta_stop, cfg.t_max, feasible.size());
    if (d.stop) break;
    SupervisionTarget t{state, build_target(cfg.target_source, model, state, c, cfg.tau, traj), cfg.target_source};
    std::size_t pick;
    if (cfg.on_policy) {
      const auto pi = policy_distribution(params, featurize(state, model), t.target.support);
      pick = t.target.support[rng.categorical(pi.probs)];
    } else {
      pick = t.target.support[rng.categorical(t.target.probs)];
    }
    out.push_back(std::move(t));
    state = update_state(state, pick, c);
  }
  return out;
}

/// Stage-2 planner training: plain gradient descent, one step per case (batch
/// = that case's supervision targets), cases reshuffled every epoch. The
/// diagnoser is read-only throughout.
inline PolicyParams train_planner(const CaseSet &train, const DiagnoserModel &model, const TrainConfig &cfg) {
  if (!(cfg.lr > 0.0)) throw ValidationError("learning rate must be > 0");
  PolicyParams params = PolicyParams::zeros(model.shape(), model.world_hash(), cfg.seed);

  std::vector<std::optional<TrajectoryDistribution>> traj_cache(train.size());
  std::vector<std::size_t> order(train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng order_rng(splitmix64(cfg.seed) + epoch);
    order_rng.shuffle(order);
    double loss_sum = 0.0;
    std::size_t loss_count = 0;
    for (std::size_t idx : order) {
      const auto &c = train[idx];
      if (c.num_available() == 0) continue;
      const TrajectoryDistribution *traj = nullptr;
      if (cfg.target_source == TargetSource::exact_marginal) {
        if (!traj_cache[idx]) traj_cache[idx] = trajectory_posterior(model, c, cfg.beta, cfg.t_max, cfg.fixed_length);
        traj = &*traj_cache[idx];
      }
      Rng rng = Rng::derive(splitmix64(cfg.seed) ^ (epoch + 1), c.id);
      const auto batch = collect_targets(c, model, params, cfg, rng, traj);
      if (batch.empty()) continue;

      Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(params.weights.rows(), params.weights.cols());
      const double w = 1.0 / static_cast<double>(batch.size());
      for (const auto &t : batch) {
        const auto f = featurize(t.state, model);
        const double kl = kl_step_loss(t.target, policy_distribution(params, f, t.target.support));
        if (!std::isfinite(kl)) throw DivergedLoss("non-finite KL at epoch " + std::to_string(epoch));
        loss_sum += kl;
        ++loss_count;
        detail::accumulate_gradient(grad, params, f, t.target, w);
      }
      params.weights -= cfg.lr * grad;
      ++params.steps;
    }
    const double mean = loss_count ? loss_sum / static_cast<double>(loss_count) : 0.0;
    if (!std::isfinite(mean) || !params.weights.allFinite())
      throw DivergedLoss("training diverged at epoch " + std::to_string(epoch));
    params.loss_history.push_back(mean);
  }
  return params;
}

/// Highest-probability action, ties to the lowest index.
inline std::size_t argmax_action(const ActionDistribution &dist) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < dist.probs.size(); ++i)
    if (dist.probs[i] > dist.probs[best]) best = i;
  return dist.support[best];
}

}  // namespace ldtl
