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

// JSON persistence for world configs, case files (JSON lines), fitted
// diagnosers and planner checkpoints.

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ldtl/diagnoser.hpp"
#include "ldtl/error.hpp"
#include "ldtl/planner.hpp"
#include "ldtl/world.hpp"

namespace ldtl {

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::filesystem::path &path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("write failed for " + path.string());
}

inline Json parse_json(const std::string &text, const std::string &what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ParseError(what + ": " + e.what());
  }
}

inline WorldConfig load_world_config(const std::filesystem::path &path) {
  const Json j = parse_json(read_file(path), path.string());
  try {
    return j.get<WorldConfig>();
  } catch (const Json::exception &e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

inline void save_world_config(const WorldConfig &config, const std::filesystem::path &path) {
  write_file(path, Json(config).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Cases: one JSON object per line with exactly the keys
// {available, id, init_obs, label, outcomes}; keys are emitted sorted.

inline Json case_to_json(const PatientCase &c, const WorldShape &shape) {
  Json outcomes = Json::object();
  std::vector<std::string> available;
  for (std::size_t a = 0; a < c.outcomes.size(); ++a) {
    if (!c.outcomes[a]) continue;
    available.push_back(shape.action_names[a]);
    outcomes[shape.action_names[a]] = shape.outcome_alphabets[a][*c.outcomes[a]];
  }
  return Json{{"id", c.id},
              {"label", c.label},
              {"init_obs", shape.init_alphabet[c.init_obs]},
              {"outcomes", outcomes},
              {"available", available}};
}

inline std::string format_cases(const CaseSet &cases, const WorldShape &shape) {
  std::string out;
  for (const auto &c : cases) out += case_to_json(c, shape).dump() + "\n";
  return out;
}

inline PatientCase case_from_json(const Json &j, const WorldShape &shape) {
  static const std::set<std::string> kKeys = {"available", "id", "init_obs", "label", "outcomes"};
  if (!j.is_object()) throw SchemaError("case must be a JSON object");
  for (const auto &[key, _] : j.items())
    if (!kKeys.contains(key)) throw SchemaError("unknown field '" + key + "'");
  for (const auto &key : kKeys)
    if (!j.contains(key)) throw SchemaError("missing field '" + key + "'");

  auto index_of = [](const std::vector<std::string> &alphabet, const std::string &sym, const std::string &what) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == sym) return i;
    throw SchemaError("unknown " + what + " '" + sym + "'");
  };

  PatientCase c;
  try {
    c.id = j.at("id").get<std::string>();
    const auto label = j.at("label").get<std::int64_t>();
    if (label < 0 || static_cast<std::size_t>(label) >= shape.num_diseases())
      throw SchemaError("label " + std::to_string(label) + " out of range");
    c.label = static_cast<std::size_t>(label);
    c.init_obs = index_of(shape.init_alphabet, j.at("init_obs").get<std::string>(), "initial observation");
    c.outcomes.assign(shape.num_actions(), std::nullopt);

    std::vector<bool> listed(shape.num_actions(), false);
    for (const auto &name : j.at("available").get<std::vector<std::string>>()) {
      const auto a = shape.find_action(name);
      if (!a) throw SchemaError("unknown action '" + name + "' in available");
      if (listed[*a]) throw SchemaError("action '" + name + "' listed twice in available");
      listed[*a] = true;
    }
    const auto &outcomes = j.at("outcomes");
    if (!outcomes.is_object()) throw SchemaError("outcomes must be an object");
    for (const auto &[name, sym] : outcomes.items()) {
      const auto a = shape.find_action(name);
      if (!a) throw SchemaError("unknown action '" + name + "' in outcomes");
      if (!listed[*a]) throw SchemaError("outcome given for unavailable action '" + name + "'");
      c.outcomes[*a] = index_of(shape.outcome_alphabets[*a], sym.get<std::string>(), "outcome for " + name);
    }
    for (std::size_t a = 0; a < shape.num_actions(); ++a)
      if (listed[a] && !c.outcomes[a]) throw SchemaError("available action '" + shape.action_names[a] + "' has no outcome");
  } catch (const Json::exception &e) {
    throw SchemaError(e.what());
  }
  return c;
}

inline CaseSet parse_cases(const std::string &text, const WorldShape &shape) {
  CaseSet cases;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error &e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      cases.push_back(case_from_json(j, shape));
    } catch (const SchemaError &e) {
      throw SchemaError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cases;
}

inline void save_cases(const CaseSet &cases, const WorldShape &shape, const std::filesystem::path &path) {
  write_file(path, format_cases(cases, shape));
}

inline CaseSet load_cases(const std::filesystem::path &path, const WorldShape &shape) {
  return parse_cases(read_file(path), shape);
}

// ---------------------------------------------------------------------------
// Diagnoser

inline Json model_to_json(const DiagnoserModel &m) {
  return Json{{"shape", m.shape()},
              {"config_hash", m.world_hash()},
              {"alpha", m.alpha()},
              {"log_floor", m.log_floor()},
              {"priors_hat", m.priors()},
              {"init_table_hat", m.init_table()},
              {"cond_tables_hat", m.cond_tables()}};
}

inline DiagnoserModel model_from_json(const Json &j) {
  try {
    return DiagnoserModel(j.at("shape").get<WorldShape>(), j.at("config_hash").get<std::string>(),
                          j.at("priors_hat").get<std::vector<double>>(), j.at("init_table_hat").get<Table>(),
                          j.at("cond_tables_hat").get<std::vector<Table>>(), j.at("alpha").get<double>(),
                          j.at("log_floor").get<double>());
  } catch (const Json::exception &e) {
    throw SchemaError(std::string("diagnoser model: ") + e.what());
  }
}

inline void save_model(const DiagnoserModel &m, const std::filesystem::path &path) {
  write_file(path, model_to_json(m).dump(2) + "\n");
}

inline DiagnoserModel load_model(const std::filesystem::path &path) {
  return model_from_json(parse_json(read_file(path), path.string()));
}

// ---------------------------------------------------------------------------
// Planner checkpoints

inline Json train_config_to_json(const TrainConfig &c) {
  return Json{{"lr", c.lr},       {"epochs", c.epochs},         {"target_source", to_string(c.target_source)},
              {"tau", c.tau},     {"beta", c.beta},             {"theta_stop", c.theta_stop},
              {"t_max", c.t_max}, {"seed", c.seed},             {"on_policy", c.on_policy},
              {"fixed_length", c.fixed_length}};
}

inline Json layout_to_json(const FeatureLayout &l) {
  return Json{{"num_actions", l.num_actions},
              {"num_diseases", l.num_diseases},
              {"outcome_counts", l.outcome_counts},
              {"dim", l.dim()},
              {"blocks", {"bias", "done_onehot", "posterior", "last_outcome_onehot"}}};
}

inline Json checkpoint_to_json(const PolicyParams &p, const TrainConfig &hyper) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < p.weights.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(p.weights.cols()));
    for (Eigen::Index c = 0; c < p.weights.cols(); ++c) row[static_cast<std::size_t>(c)] = p.weights(r, c);
    rows.push_back(row);
  }
  return Json{{"weights", rows},
              {"layout", layout_to_json(p.layout)},
              {"hyper", train_config_to_json(hyper)},
              {"config_hash", p.config_hash},
              {"seed", p.seed},
              {"steps", p.steps},
              {"loss_history", p.loss_history}};
}

/// Parses a checkpoint and checks it against the active world: layout first
/// (ShapeMismatch), then the config hash (HashMismatch).
inline PolicyParams checkpoint_from_json(const Json &j, const WorldShape &shape, const std::string &world_hash) {
  PolicyParams p;
  try {
    const auto &l = j.at("layout");
    p.layout.num_actions = l.at("num_actions").get<std::size_t>();
    p.layout.num_diseases = l.at("num_diseases").get<std::size_t>();
    l.at("outcome_counts").get_to(p.layout.outcome_counts);
    if (p.layout.outcome_counts.size() != p.layout.num_actions || l.at("dim").get<std::size_t>() != p.layout.dim())
      throw SchemaError("inconsistent layout descriptor");
    if (p.layout != FeatureLayout::of(shape)) throw ShapeMismatch("checkpoint layout does not match the world shape");
    p.config_hash = j.at("config_hash").get<std::string>();
    if (p.config_hash != world_hash)
      throw HashMismatch("checkpoint hash " + p.config_hash + " != world hash " + world_hash);
    p.seed = j.at("seed").get<std::uint64_t>();
    p.steps = j.at("steps").get<std::size_t>();
    j.at("loss_history").get_to(p.loss_history);
    const auto rows = j.at("weights").get<std::vector<std::vector<double>>>();
    if (rows.size() != p.layout.num_actions) throw ShapeMismatch("weight rows do not match action count");
    p.weights.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p.layout.dim()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != p.layout.dim()) throw ShapeMismatch("weight row length does not match feature dim");
      for (std::size_t c = 0; c < rows[r].size(); ++c)
        p.weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    if (!p.weights.allFinite()) throw SchemaError("non-finite weight");
  } catch (const Json::exception &e) {
    throw SchemaError(std::string("checkpoint: ") + e.what());
  }
  return p;
}

inline void save_checkpoint(const PolicyParams &p, const TrainConfig &hyper, const std::filesystem::path &path) {
  write_file(path, checkpoint_to_json(p, hyper).dump(2) + "\n");
}

inline PolicyParams load_checkpoint(const std::filesystem::path &path, const WorldShape &shape,
                                    const std::string &world_hash) {
  return checkpoint_from_json(parse_json(read_file(path), path.string()), shape, world_hash);
}

}  // namespace ldtl
