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

// The synthetic clinical world: diseases, test categories with categorical
// outcomes, case sampling, and the evidence-revealing state update.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ldtl/error.hpp"
#include "ldtl/rng.hpp"

namespace ldtl {

using Json = nlohmann::json;

inline constexpr double kRowTolerance = 1e-9;
inline constexpr std::size_t kMaxActions = 64;

struct ActionSpec {
  std::string name;
  std::vector<std::string> outcome_alphabet;
  /// cond_table[disease][outcome] = P(outcome | disease).
  std::vector<std::vector<double>> cond_table;
};

struct WorldConfig {
  std::vector<std::string> disease_names;
  std::vector<double> priors;
  std::vector<std::string> init_alphabet;
  /// init_obs_table[disease][symbol] = P(symbol | disease).
  std::vector<std::vector<double>> init_obs_table;
  std::vector<ActionSpec> actions;
  /// Per-action probability that a sampled case has the test. Empty means 1.0
  /// for every action.
  std::vector<double> availability_prob;
  std::uint64_t seed = 0;
};

inline void to_json(Json &j, const ActionSpec &a) {
  j = Json{{"name", a.name}, {"outcome_alphabet", a.outcome_alphabet}, {"cond_table", a.cond_table}};
}

inline void from_json(const Json &j, ActionSpec &a) {
  j.at("name").get_to(a.name);
  j.at("outcome_alphabet").get_to(a.outcome_alphabet);
  j.at("cond_table").get_to(a.cond_table);
}

inline void to_json(Json &j, const WorldConfig &c) {
  j = Json{{"disease_names", c.disease_names},
           {"priors", c.priors},
           {"init_alphabet", c.init_alphabet},
           {"init_obs_table", c.init_obs_table},
           {"actions", c.actions},
           {"availability_prob", c.availability_prob},
           {"seed", c.seed}};
}

inline void from_json(const Json &j, WorldConfig &c) {
  j.at("disease_names").get_to(c.disease_names);
  j.at("priors").get_to(c.priors);
  j.at("init_alphabet").get_to(c.init_alphabet);
  j.at("init_obs_table").get_to(c.init_obs_table);
  j.at("actions").get_to(c.actions);
  c.availability_prob.clear();
  if (j.contains("availability_prob")) j.at("availability_prob").get_to(c.availability_prob);
  c.seed = j.value("seed", std::uint64_t{0});
}

/// Hex digest of the canonical (sorted-key, compact) JSON form of a config.
inline std::string config_hash(const WorldConfig &config) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(Json(config).dump());
  return os.str();
}

namespace detail {

inline void check_row(const std::vector<double> &row, std::size_t expected_len, const std::string &what) {
  if (row.size() != expected_len) {
    throw InvalidDistribution(what + ": expected " + std::to_string(expected_len) + " entries, got " +
                              std::to_string(row.size()));
  }
  double sum = 0.0;
  for (double p : row) {
    if (!std::isfinite(p) || p < 0.0) throw InvalidDistribution(what + ": negative or non-finite entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kRowTolerance) {
    std::ostringstream os;
    os << what << ": sums to " << std::setprecision(17) << sum;
    throw InvalidDistribution(os.str());
  }
}

inline void check_table(const std::vector<std::vector<double>> &table, std::size_t rows, std::size_t cols,
                        const std::string &what) {
  if (table.size() != rows) throw InvalidDistribution(what + ": wrong number of disease rows");
  for (std::size_t k = 0; k < rows; ++k) check_row(table[k], cols, what + " row " + std::to_string(k));
}

}  // namespace detail

/// Names only: enough to interpret case files and checkpoints without the
/// generative tables.
struct WorldShape {
  std::vector<std::string> disease_names;
  std::vector<std::string> init_alphabet;
  std::vector<std::string> action_names;
  std::vector<std::vector<std::string>> outcome_alphabets;

  std::size_t num_diseases() const { return disease_names.size(); }
  std::size_t num_actions() const { return action_names.size(); }

  std::optional<std::size_t> find_action(const std::string &name) const {
    for (std::size_t a = 0; a < action_names.size(); ++a)
      if (action_names[a] == name) return a;
    return std::nullopt;
  }

  bool operator==(const WorldShape &) const = default;
};

inline void to_json(Json &j, const WorldShape &s) {
  j = Json{{"disease_names", s.disease_names},
           {"init_alphabet", s.init_alphabet},
           {"action_names", s.action_names},
           {"outcome_alphabets", s.outcome_alphabets}};
}

inline void from_json(const Json &j, WorldShape &s) {
  j.at("disease_names").get_to(s.disease_names);
  j.at("init_alphabet").get_to(s.init_alphabet);
  j.at("action_names").get_to(s.action_names);
  j.at("outcome_alphabets").get_to(s.outcome_alphabets);
  if (s.outcome_alphabets.size() != s.action_names.size())
    throw SchemaError("outcome_alphabets must have one entry per action");
}

/// Validated, immutable world.
class World {
 public:
  explicit World(WorldConfig config) : config_(std::move(config)) {
    const auto &c = config_;
    if (c.disease_names.size() < 2) throw EmptyWorld("at least 2 diseases are required");
    if (c.actions.empty()) throw EmptyWorld("at least 1 action is required");
    if (c.actions.size() > kMaxActions) throw EmptyWorld("too many actions");
    if (c.init_alphabet.empty()) throw EmptyWorld("initial-observation alphabet is empty");
    const std::size_t k = c.disease_names.size();
    detail::check_row(c.priors, k, "priors");
    detail::check_table(c.init_obs_table, k, c.init_alphabet.size(), "init_obs_table");
    for (std::size_t a = 0; a < c.actions.size(); ++a) {
      const auto &spec = c.actions[a];
      if (spec.outcome_alphabet.empty()) throw InvalidDistribution("action " + spec.name + ": empty alphabet");
      detail::check_table(spec.cond_table, k, spec.outcome_alphabet.size(), "action " + spec.name);
      if (action_index_.contains(spec.name)) throw InvalidDistribution("duplicate action name " + spec.name);
      action_index_[spec.name] = a;
    }
    if (!c.availability_prob.empty()) {
      if (c.availability_prob.size() != c.actions.size())
        throw InvalidDistribution("availability_prob must have one entry per action");
      for (double p : c.availability_prob)
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidDistribution("availability_prob outside [0,1]");
    }
    hash_ = ldtl::config_hash(config_);
    shape_.disease_names = c.disease_names;
    shape_.init_alphabet = c.init_alphabet;
    for (const auto &spec : c.actions) {
      shape_.action_names.push_back(spec.name);
      shape_.outcome_alphabets.push_back(spec.outcome_alphabet);
    }
  }

  const WorldConfig &config() const { return config_; }
  const std::string &hash() const { return hash_; }
  const WorldShape &shape() const { return shape_; }
  std::size_t num_diseases() const { return config_.disease_names.size(); }
  std::size_t num_actions() const { return config_.actions.size(); }
  std::size_t num_init_symbols() const { return config_.init_alphabet.size(); }
  std::size_t num_outcomes(std::size_t action) const { return config_.actions[action].outcome_alphabet.size(); }
  const ActionSpec &action(std::size_t a) const { return config_.actions[a]; }
  double availability(std::size_t a) const {
    return config_.availability_prob.empty() ? 1.0 : config_.availability_prob[a];
  }

  std::optional<std::size_t> find_action(const std::string &name) const {
    auto it = action_index_.find(name);
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t action_index(const std::string &name) const {
    auto idx = find_action(name);
    if (!idx) throw UnknownSymbol("unknown action '" + name + "'");
    return *idx;
  }

 private:
  WorldConfig config_;
  std::string hash_;
  WorldShape shape_;
  std::map<std::string, std::size_t> action_index_;
};

inline World build_world(const WorldConfig &config) { return World(config); }

struct PatientCase {
  std::string id;
  std::size_t label = 0;
  std::size_t init_obs = 0;
  /// One slot per world action; empty when the test is unavailable for this case.
  std::vector<std::optional<std::size_t>> outcomes;

  bool available(std::size_t action) const { return action < outcomes.size() && outcomes[action].has_value(); }
  std::size_t num_available() const {
    std::size_t n = 0;
    for (const auto &o : outcomes) n += o.has_value();
    return n;
  }
  bool operator==(const PatientCase &) const = default;
};

using CaseSet = std::vector<PatientCase>;

struct RevealedEvidence {
  std::size_t action = 0;
  std::size_t outcome = 0;
  bool operator==(const RevealedEvidence &) const = default;
};

/// h_t: the initial observation plus every revealed (action, outcome) pair in
/// reveal order.
class PatientState {
 public:
  PatientState() = default;
  explicit PatientState(std::size_t init_obs) : init_obs_(init_obs) {}

  static PatientState initial(const PatientCase &c) { return PatientState(c.init_obs); }

  std::size_t init_obs() const { return init_obs_; }
  const std::vector<RevealedEvidence> &revealed() const { return revealed_; }
  std::size_t step() const { return revealed_.size(); }
  std::uint64_t done_mask() const { return done_; }
  bool is_done(std::size_t action) const { return action < kMaxActions && ((done_ >> action) & 1U); }

  /// Returns a copy extended by one revealed pair.
  PatientState with(std::size_t action, std::size_t outcome) const {
    if (action >= kMaxActions) throw UnknownSymbol("action index out of range");
    if (is_done(action)) throw DuplicateAction("action " + std::to_string(action) + " already taken");
    PatientState next = *this;
    next.revealed_.push_back({action, outcome});
    next.done_ |= std::uint64_t{1} << action;
    return next;
  }

  bool operator==(const PatientState &) const = default;

 private:
  std::size_t init_obs_ = 0;
  std::vector<RevealedEvidence> revealed_;
  std::uint64_t done_ = 0;
};

/// Actions that are available for the case and not yet taken, in world order.
inline std::vector<std::size_t> feasible_actions(const PatientState &state, const PatientCase &c) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < c.outcomes.size(); ++a)
    if (c.available(a) && !state.is_done(a)) out.push_back(a);
  return out;
}

inline PatientState update_state(const PatientState &state, std::size_t action, const PatientCase &c) {
  if (state.is_done(action)) throw DuplicateAction("action " + std::to_string(action) + " already revealed");
  if (!c.available(action))
    throw UnavailableAction("action " + std::to_string(action) + " unavailable for case " + c.id);
  return state.with(action, *c.outcomes[action]);
}

inline CaseSet sample_cases(const World &world, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("sample_cases requires n >= 1");
  const auto &cfg = world.config();
  Rng rng(seed);
  CaseSet cases;
  cases.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PatientCase c;
    c.id = "c" + std::to_string(i);
    c.label = rng.categorical(cfg.priors);
    c.init_obs = rng.categorical(cfg.init_obs_table[c.label]);
    c.outcomes.resize(world.num_actions());
    for (std::size_t a = 0; a < world.num_actions(); ++a) {
      const bool has_test = rng.bernoulli(world.availability(a));
      const std::size_t outcome = rng.categorical(cfg.actions[a].cond_table[c.label]);
      if (has_test) c.outcomes[a] = outcome;
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

struct SplitRatios {
  double train = 0.7;
  double val = 0.1;
  double test = 0.2;
};

struct CaseSplit {
  CaseSet train;
  CaseSet val;
  CaseSet test;
};

/// Shuffled disjoint partition. Validation and test receive floor(n * ratio)
/// cases; train receives everything else.
inline CaseSplit split_cases(const CaseSet &cases, SplitRatios ratios, std::uint64_t seed) {
  const double sum = ratios.train + ratios.val + ratios.test;
  if (ratios.train < 0 || ratios.val < 0 || ratios.test < 0 || std::abs(sum - 1.0) > kRowTolerance)
    throw BadRatios("ratios must be nonnegative and sum to 1");
  const std::size_t n = cases.size();
  // A tiny epsilon keeps exact products such as 2400 * 0.1 from flooring to 239.
  auto alloc = [n](double r) { return static_cast<std::size_t>(std::floor(static_cast<double>(n) * r + 1e-9)); };
  const std::size_t n_val = alloc(ratios.val);
  const std::size_t n_test = alloc(ratios.test);
  const std::size_t n_train = n - n_val - n_test;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  CaseSplit out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto &c = cases[order[i]];
    if (i < n_train) out.train.push_back(c);
    else if (i < n_train + n_val) out.val.push_back(c);
    else out.test.push_back(c);
  }
  return out;
}

}  // namespace ldtl
