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

// Command dispatch for the `ldtl` tool. Every pipeline stage is a subcommand;
// all state flows through flags, JSON files and an optional run-config file.
//
// Exit status: 0 success, 1 validation error, 2 I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldtl/benchmark.hpp"
#include "ldtl/diagnoser.hpp"
#include "ldtl/episode.hpp"
#include "ldtl/eval.hpp"
#include "ldtl/io.hpp"
#include "ldtl/planner.hpp"
#include "ldtl/presets.hpp"
#include "ldtl/trajectory.hpp"
#include "ldtl/world.hpp"

namespace ldtl::cli {

/// Run-level settings. Every field is optional; a value may come from a flag
/// or from the run-config file, and giving both with different values is an
/// error.
struct RunConfig {
  std::optional<std::string> world;
  std::optional<double> tau;
  std::optional<double> beta;
  std::optional<double> theta_stop;
  std::optional<std::size_t> t_max;
  std::optional<double> lr;
  std::optional<std::size_t> epochs;
  std::optional<std::string> target_source;
  std::optional<std::vector<double>> split;
  std::optional<std::uint64_t> seed;
};

inline RunConfig run_config_from_json(const Json &j) {
  static const std::set<std::string> kTop = {"world", "tau", "beta", "theta_stop", "t_max", "train", "split", "seed"};
  static const std::set<std::string> kTrain = {"lr", "epochs", "target_source"};
  if (!j.is_object()) throw SchemaError("run config must be a JSON object");
  RunConfig rc;
  try {
    for (const auto &[key, v] : j.items()) {
      if (!kTop.contains(key)) throw SchemaError("unknown run-config field '" + key + "'");
      if (key == "world") rc.world = v.get<std::string>();
      if (key == "tau") rc.tau = v.get<double>();
      if (key == "beta") rc.beta = v.get<double>();
      if (key == "theta_stop") rc.theta_stop = v.get<double>();
      if (key == "t_max") rc.t_max = v.get<std::size_t>();
      if (key == "split") rc.split = v.get<std::vector<double>>();
      if (key == "seed") rc.seed = v.get<std::uint64_t>();
      if (key == "train") {
        for (const auto &[tk, tv] : v.items()) {
          if (!kTrain.contains(tk)) throw SchemaError("unknown run-config field 'train." + tk + "'");
          if (tk == "lr") rc.lr = tv.get<double>();
          if (tk == "epochs") rc.epochs = tv.get<std::size_t>();
          if (tk == "target_source") rc.target_source = tv.get<std::string>();
        }
      }
    }
  } catch (const Json::exception &e) {
    throw SchemaError(std::string("run config: ") + e.what());
  }
  return rc;
}

template <typename T>
T resolve(const std::string &name, const std::optional<T> &flag, const std::optional<T> &file, T fallback) {
  if (flag && file && !(*flag == *file)) throw ConfigConflict("--" + name + " disagrees with the run-config file");
  if (flag) return *flag;
  if (file) return *file;
  return fallback;
}

struct ResolvedRun {
  double tau = kDefaultTau;
  double beta = kDefaultBeta;
  double theta_stop = kDefaultThetaStop;
  std::size_t t_max = kDefaultTMax;
  double lr = 0.1;
  std::size_t epochs = 20;
  std::string target_source = "stepwise_ig";
  std::vector<double> split = {0.7, 0.1, 0.2};
  std::uint64_t seed = 0;
};

inline ResolvedRun resolve_run(const RunConfig &flags, const RunConfig &file) {
  ResolvedRun r;
  r.tau = resolve("tau", flags.tau, file.tau, r.tau);
  r.beta = resolve("beta", flags.beta, file.beta, r.beta);
  r.theta_stop = resolve("theta-stop", flags.theta_stop, file.theta_stop, r.theta_stop);
  r.t_max = resolve("t-max", flags.t_max, file.t_max, r.t_max);
  r.lr = resolve("lr", flags.lr, file.lr, r.lr);
  r.epochs = resolve("epochs", flags.epochs, file.epochs, r.epochs);
  r.target_source = resolve("target-source", flags.target_source, file.target_source, r.target_source);
  r.split = resolve("ratios", flags.split, file.split, r.split);
  r.seed = resolve("seed", flags.seed, file.seed, r.seed);
  if (!(r.tau > 0.0)) throw ValidationError("tau must be > 0");
  if (!(r.beta >= 0.0)) throw ValidationError("beta must be >= 0");
  if (!(r.theta_stop > 0.0 && r.theta_stop <= 1.0)) throw ValidationError("theta_stop must lie in (0, 1]");
  if (r.t_max < 1) throw ValidationError("t_max must be >= 1");
  if (r.split.size() != 3) throw BadRatios("split needs three ratios");
  return r;
}

/// Parses `ldtl|random|greedy-ig|all|fixed:history[+action...]`.
inline PolicySpec parse_policy(const std::string &text, const WorldShape &shape) {
  PolicySpec spec;
  if (text == "ldtl") spec.kind = PolicyKind::trained;
  else if (text == "random") spec.kind = PolicyKind::random;
  else if (text == "greedy-ig") spec.kind = PolicyKind::greedy_ig_oracle;
  else if (text == "all") spec.kind = PolicyKind::all_info;
  else if (text.rfind("fixed:history", 0) == 0) {
    spec.kind = PolicyKind::fixed_info;
    std::string rest = text.substr(std::string("fixed:history").size());
    std::istringstream in(rest);
    std::string part;
    if (!rest.empty() && rest.front() != '+') throw ValidationError("malformed policy '" + text + "'");
    while (std::getline(in, part, '+')) {
      if (part.empty()) continue;
      const auto a = shape.find_action(part);
      if (!a) throw ValidationError("policy '" + text + "' names unknown action '" + part + "'");
      spec.fixed_set.push_back(*a);
    }
  } else {
    throw ValidationError("unknown policy '" + text + "'");
  }
  return spec;
}

namespace detail {

inline void log_hash(std::ostream &err, const std::string &command, const std::string &hash) {
  err << "[ldtl] " << command << " config_hash=" << hash << '\n';
}

inline void require_matching_hash(const std::string &expected, const std::string &actual, const std::string &what) {
  if (expected != actual) throw HashMismatch(what + " was built for world " + actual + ", expected " + expected);
}

inline World load_world(const std::string &path) { return World(load_world_config(path)); }

inline void emit(const std::optional<std::string> &path, std::ostream &out, const std::string &text) {
  if (path) write_file(*path, text);
  else out << text;
}

}  // namespace detail

inline int run_command(const std::vector<std::string> &args, std::ostream &out = std::cout,
                       std::ostream &err = std::cerr) {
  CLI::App app{"Latent diagnostic trajectory learning laboratory", "ldtl"};
  app.require_subcommand(1);

  RunConfig flags;
  std::optional<std::string> run_config_path;
  auto add_run_config = [&](CLI::App *sub) {
    sub->add_option("--run-config", run_config_path, "JSON run configuration");
  };
  auto add_limits = [&](CLI::App *sub) {
    sub->add_option("--theta-stop", flags.theta_stop, "confidence threshold for stopping");
    sub->add_option("--t-max", flags.t_max, "maximum number of tests per case");
  };

  // gen-world
  std::string preset = "w4-benchmark";
  std::optional<double> availability;
  std::optional<std::string> out_path;
  auto *gen_world = app.add_subcommand("gen-world", "write a built-in world config");
  gen_world->add_option("--preset", preset, "w2 | w4 | w4-benchmark")->capture_default_str();
  gen_world->add_option("--availability", availability, "per-test availability probability");
  gen_world->add_option("--out", out_path, "output path (stdout when omitted)");

  // gen-cases
  std::string config_path;
  std::size_t n_cases = 0;
  auto *gen_cases = app.add_subcommand("gen-cases", "sample a case set");
  gen_cases->add_option("--config", config_path, "world config")->required();
  gen_cases->add_option("--n", n_cases, "number of cases")->required();
  gen_cases->add_option("--seed", flags.seed, "sampling seed");
  gen_cases->add_option("--out", out_path, "output JSON-lines file")->required();
  add_run_config(gen_cases);

  // split
  std::string cases_path;
  std::string out_prefix;
  auto *split = app.add_subcommand("split", "train/val/test split");
  split->add_option("--config", config_path, "world config")->required();
  split->add_option("--cases", cases_path, "case file")->required();
  split->add_option("--ratios", flags.split, "train,val,test ratios")->delimiter(',')->expected(3);
  split->add_option("--seed", flags.seed, "shuffle seed");
  split->add_option("--out-prefix", out_prefix, "writes PREFIX.{train,val,test}.jsonl")->required();
  add_run_config(split);

  // fit-diagnoser
  double alpha = kDefaultSmoothing;
  double log_floor = kDefaultLogFloor;
  auto *fit = app.add_subcommand("fit-diagnoser", "fit the diagnoser on full-information cases");
  fit->add_option("--config", config_path, "world config")->required();
  fit->add_option("--cases", cases_path, "training cases")->required();
  fit->add_option("--alpha", alpha, "additive smoothing")->capture_default_str();
  fit->add_option("--log-floor", log_floor, "probability floor inside logs")->capture_default_str();
  fit->add_option("--out", out_path, "model JSON")->required();

  // train-planner
  std::string model_path;
  std::optional<std::string> optional_config;
  bool on_policy = false;
  bool fixed_length = false;
  auto *train = app.add_subcommand("train-planner", "train the planner against action posteriors");
  train->add_option("--config", optional_config, "world config (hash must match the model)");
  train->add_option("--cases", cases_path, "training cases")->required();
  train->add_option("--model", model_path, "fitted diagnoser")->required();
  train->add_option("--lr", flags.lr, "learning rate");
  train->add_option("--epochs", flags.epochs, "epochs");
  train->add_option("--target-source", flags.target_source, "stepwise_ig | exact_marginal | greedy_label");
  train->add_option("--tau", flags.tau, "step-wise posterior temperature");
  train->add_option("--beta", flags.beta, "trajectory posterior inverse temperature");
  train->add_option("--seed", flags.seed, "training seed");
  train->add_flag("--on-policy", on_policy, "collect supervision states with the current policy");
  train->add_flag("--fixed-length", fixed_length, "fixed-horizon trajectory support");
  train->add_option("--out", out_path, "checkpoint JSON")->required();
  add_limits(train);
  add_run_config(train);

  // eval
  std::string policy_text;
  std::optional<std::string> checkpoint_path;
  std::optional<std::string> log_path;
  std::optional<std::string> report_path;
  bool sample = false;
  auto *eval = app.add_subcommand("eval", "run a policy over a case set");
  eval->add_option("--policy", policy_text,
                   "ldtl | random | greedy-ig | all | fixed:history[+ACTION...]")->required();
  eval->add_option("--cases", cases_path, "case file")->required();
  eval->add_option("--model", model_path, "fitted diagnoser")->required();
  eval->add_option("--checkpoint", checkpoint_path, "planner checkpoint (policy ldtl)");
  eval->add_option("--config", optional_config, "world config (hash must match the model)");
  eval->add_option("--seed", flags.seed, "seed for per-case random streams");
  eval->add_option("--log", log_path, "episode log (JSON lines)");
  eval->add_option("--report", report_path, "metrics report JSON (stdout when omitted)");
  eval->add_flag("--sample", sample, "sample from the trained policy instead of argmax");
  add_limits(eval);
  add_run_config(eval);

  // oracle
  std::optional<std::string> optional_model;
  std::string case_id;
  std::optional<std::string> oracle_prefix;
  auto *oracle = app.add_subcommand("oracle", "exact trajectory posterior for one case");
  oracle->add_option("--config", optional_config, "world config (true tables)");
  oracle->add_option("--model", optional_model, "fitted diagnoser (takes precedence over --config tables)");
  oracle->add_option("--cases", cases_path, "case file")->required();
  oracle->add_option("--case-id", case_id, "case id")->required();
  oracle->add_option("--beta", flags.beta, "inverse temperature");
  oracle->add_option("--t-max", flags.t_max, "maximum trajectory length");
  oracle->add_flag("--fixed-length", fixed_length, "fixed-horizon trajectory support");
  oracle->add_option("--out-prefix", oracle_prefix, "writes PREFIX.trajectories.csv and PREFIX.marginals.csv");
  add_run_config(oracle);

  // report
  std::vector<std::string> report_specs;
  std::optional<std::string> report_prefix;
  auto *report = app.add_subcommand("report", "compare metrics reports");
  report->add_option("--report", report_specs, "NAME=PATH, repeatable, in row order")->required();
  report->add_option("--out-prefix", report_prefix,
                     "writes PREFIX.comparison.csv, PREFIX.comparison.txt, PREFIX.histogram.csv");

  // bench
  std::size_t n_seeds = 5;
  std::optional<std::string> bench_prefix;
  auto *bench = app.add_subcommand("bench", "multi-seed comparison of every method on one world");
  bench->add_option("--config", config_path, "world config")->required();
  bench->add_option("--seeds", n_seeds, "number of seeds (0..N-1)")->capture_default_str();
  bench->add_option("--n", n_cases, "cases per seed (default 2400)");
  bench->add_option("--out-prefix", bench_prefix, "writes PREFIX.seed<S>.report.json files");
  add_limits(bench);
  add_run_config(bench);

  std::vector<std::string> argv_store = {"ldtl"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (auto &s : argv_store) argv.push_back(s.data());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp &) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::RequiredError &e) {
      if (app.get_subcommands().empty()) throw UnknownCommand("expected one of gen-world, gen-cases, split, "
                                                              "fit-diagnoser, train-planner, eval, oracle, report, bench");
      throw ValidationError(e.what());
    } catch (const CLI::ExtrasError &e) {
      if (app.get_subcommands().empty()) throw UnknownCommand(e.what());
      throw ValidationError(e.what());
    } catch (const CLI::ParseError &e) {
      throw ValidationError(e.what());
    }

    RunConfig file;
    if (run_config_path) file = run_config_from_json(parse_json(read_file(*run_config_path), *run_config_path));
    if (file.world && optional_config && *file.world != *optional_config)
      throw ConfigConflict("--config disagrees with the run-config world path");
    if (file.world && !optional_config) optional_config = file.world;
    if (file.world && config_path.empty()) config_path = *file.world;
    const ResolvedRun run = resolve_run(flags, file);

    if (gen_world->parsed()) {
      WorldConfig cfg;
      if (preset == "w2") cfg = presets::w2();
      else if (preset == "w4") cfg = presets::w4();
      else if (preset == "w4-benchmark") cfg = presets::w4_benchmark();
      else throw ValidationError("unknown preset '" + preset + "'");
      if (availability) cfg.availability_prob.assign(cfg.actions.size(), *availability);
      const World world(cfg);
      detail::log_hash(err, "gen-world", world.hash());
      detail::emit(out_path, out, Json(world.config()).dump(2) + "\n");
      return 0;
    }

    if (gen_cases->parsed()) {
      const World world = detail::load_world(config_path);
      detail::log_hash(err, "gen-cases", world.hash());
      save_cases(sample_cases(world, n_cases, run.seed), world.shape(), *out_path);
      return 0;
    }

    if (split->parsed()) {
      const World world = detail::load_world(config_path);
      detail::log_hash(err, "split", world.hash());
      const auto cases = load_cases(cases_path, world.shape());
      const auto parts = split_cases(cases, {run.split[0], run.split[1], run.split[2]}, run.seed);
      save_cases(parts.train, world.shape(), out_prefix + ".train.jsonl");
      save_cases(parts.val, world.shape(), out_prefix + ".val.jsonl");
      save_cases(parts.test, world.shape(), out_prefix + ".test.jsonl");
      return 0;
    }

    if (fit->parsed()) {
      const World world = detail::load_world(config_path);
      detail::log_hash(err, "fit-diagnoser", world.hash());
      const auto cases = load_cases(cases_path, world.shape());
      save_model(fit_full_info(world, cases, alpha, log_floor), *out_path);
      return 0;
    }

    if (train->parsed()) {
      const auto model = load_model(model_path);
      if (optional_config) detail::require_matching_hash(detail::load_world(*optional_config).hash(), model.world_hash(), "model");
      detail::log_hash(err, "train-planner", model.world_hash());
      const auto cases = load_cases(cases_path, model.shape());
      TrainConfig tc;
      tc.lr = run.lr;
      tc.epochs = run.epochs;
      tc.target_source = parse_target_source(run.target_source);
      tc.tau = run.tau;
      tc.beta = run.beta;
      tc.theta_stop = run.theta_stop;
      tc.t_max = run.t_max;
      tc.seed = run.seed;
      tc.on_policy = on_policy;
      tc.fixed_length = fixed_length;
      const auto params = train_planner(cases, model, tc);
      save_checkpoint(params, tc, *out_path);
      return 0;
    }

    if (eval->parsed()) {
      const auto model = load_model(model_path);
      if (optional_config) detail::require_matching_hash(detail::load_world(*optional_config).hash(), model.world_hash(), "model");
      detail::log_hash(err, "eval", model.world_hash());
      PolicySpec policy = parse_policy(policy_text, model.shape());
      policy.seed = run.seed;
      policy.sample = sample;
      if (policy.kind == PolicyKind::trained) {
        if (!checkpoint_path) throw ValidationError("--checkpoint is required for --policy ldtl");
        policy.params = load_checkpoint(*checkpoint_path, model.shape(), model.world_hash());
      }
      const auto cases = load_cases(cases_path, model.shape());
      const EpisodeLimits limits{run.theta_stop, run.t_max};
      std::ostringstream log;
      const auto records = run_benchmark(policy, cases, model, limits, &log);
      if (log_path) write_file(*log_path, log.str());
      const Json report_json{{"config_hash", model.world_hash()},
                             {"policy", policy_text},
                             {"seed", run.seed},
                             {"theta_stop", run.theta_stop},
                             {"t_max", run.t_max},
                             {"class_names", model.shape().disease_names},
                             {"metrics", report_to_json(compute_metrics(records, model.num_diseases()))}};
      detail::emit(report_path, out, report_json.dump(2) + "\n");
      return 0;
    }

    if (oracle->parsed()) {
      std::optional<DiagnoserModel> model;
      if (optional_model) model = load_model(*optional_model);
      if (optional_config) {
        const World world = detail::load_world(*optional_config);
        if (model) detail::require_matching_hash(world.hash(), model->world_hash(), "model");
        else model = oracle_model(world);
      }
      if (!model) throw ValidationError("oracle needs --config or --model");
      detail::log_hash(err, "oracle", model->world_hash());
      const auto cases = load_cases(cases_path, model->shape());
      const auto it = std::find_if(cases.begin(), cases.end(), [&](const PatientCase &c) { return c.id == case_id; });
      if (it == cases.end()) throw ValidationError("no case with id '" + case_id + "'");
      const auto dist = trajectory_posterior(*model, *it, run.beta, run.t_max, fixed_length);
      const auto &names = model->shape().action_names;
      auto join = [&names](std::span<const std::size_t> actions) {
        std::string s;
        for (std::size_t a : actions) s += (s.empty() ? "" : ">") + names[a];
        return s;
      };
      std::ostringstream traj_csv;
      traj_csv << std::setprecision(17) << "trajectory,score,probability\n";
      for (std::size_t i = 0; i < dist.support.size(); ++i)
        traj_csv << join(dist.support[i].actions) << ',' << dist.scores[i] << ',' << dist.probs[i] << '\n';

      // One marginal table row per (step, realized prefix, action).
      std::ostringstream marg_csv;
      marg_csv << std::setprecision(17) << "step,prefix,action,probability\n";
      std::set<std::vector<std::size_t>> prefixes;
      for (const auto &z : dist.support)
        for (std::size_t len = 0; len < z.length(); ++len)
          prefixes.insert(std::vector<std::size_t>(z.actions.begin(), z.actions.begin() + static_cast<long>(len)));
      std::vector<std::vector<std::size_t>> ordered(prefixes.begin(), prefixes.end());
      std::stable_sort(ordered.begin(), ordered.end(),
                       [](const auto &a, const auto &b) { return a.size() < b.size(); });
      for (const auto &prefix : ordered) {
        const auto m = marginal_action_posterior(dist, prefix.size() + 1, prefix);
        for (std::size_t i = 0; i < m.support.size(); ++i)
          marg_csv << prefix.size() + 1 << ',' << join(prefix) << ',' << names[m.support[i]] << ',' << m.probs[i]
                   << '\n';
      }
      if (oracle_prefix) {
        write_file(*oracle_prefix + ".trajectories.csv", traj_csv.str());
        write_file(*oracle_prefix + ".marginals.csv", marg_csv.str());
      } else {
        out << traj_csv.str() << '\n' << marg_csv.str();
      }
      return 0;
    }

    if (report->parsed()) {
      std::vector<std::pair<std::string, MetricsReport>> named;
      std::optional<std::string> hash;
      std::vector<std::string> class_names;
      for (const auto &spec : report_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw ValidationError("--report expects NAME=PATH, got '" + spec + "'");
        const std::string path = spec.substr(eq + 1);
        const Json j = parse_json(read_file(path), path);
        try {
          const auto h = j.at("config_hash").get<std::string>();
          if (hash && *hash != h) throw HashMismatch("report " + path + " comes from a different world");
          hash = h;
          if (class_names.empty() && j.contains("class_names")) j.at("class_names").get_to(class_names);
          named.emplace_back(spec.substr(0, eq), report_from_json(j.at("metrics")));
        } catch (const Json::exception &e) {
          throw SchemaError(path + ": " + e.what());
        }
      }
      detail::log_hash(err, "report", hash.value_or(""));
      const auto table = compare_reports(named, class_names);
      if (report_prefix) {
        write_file(*report_prefix + ".comparison.csv", comparison_csv(table));
        write_file(*report_prefix + ".comparison.txt", comparison_text(table));
        write_file(*report_prefix + ".histogram.csv", histogram_csv(table));
      } else {
        out << comparison_text(table);
      }
      return 0;
    }

    if (bench->parsed()) {
      const World world = detail::load_world(config_path);
      detail::log_hash(err, "bench", world.hash());
      BenchmarkConfig cfg;
      if (n_cases > 0) cfg.n_cases = n_cases;
      cfg.ratios = {run.split[0], run.split[1], run.split[2]};
      cfg.limits = {run.theta_stop, run.t_max};
      cfg.train.lr = run.lr;
      cfg.train.epochs = run.epochs;
      cfg.train.tau = run.tau;
      cfg.train.beta = run.beta;
      std::map<std::string, std::vector<double>> acc;
      std::vector<std::string> order;
      for (std::size_t s = 0; s < n_seeds; ++s) {
        const auto result = run_benchmark_seed(world, s, cfg);
        for (const auto &[name, r] : result.reports) {
          if (s == 0) order.push_back(name);
          acc[name].push_back(r.overall_accuracy);
          if (bench_prefix) {
            const Json j{{"config_hash", world.hash()},
                         {"policy", name},
                         {"seed", s},
                         {"theta_stop", run.theta_stop},
                         {"t_max", run.t_max},
                         {"class_names", world.config().disease_names},
                         {"metrics", report_to_json(r)}};
            write_file(*bench_prefix + "." + name + ".seed" + std::to_string(s) + ".report.json", j.dump(2) + "\n");
          }
        }
      }
      out << "method,mean_accuracy\n";
      for (const auto &name : order) {
        double mean = 0.0;
        for (double a : acc[name]) mean += a / static_cast<double>(acc[name].size());
        out << name << ',' << ldtl::detail::fmt_value(mean) << '\n';
      }
      return 0;
    }
    throw UnknownCommand("no subcommand given");
  } catch (const IoError &e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ldtl::cli
