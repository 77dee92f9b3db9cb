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

// Accuracy, F1 and termination-step statistics over episode records, plus
// side-by-side comparison tables.

#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ldtl/episode.hpp"
#include "ldtl/error.hpp"

namespace ldtl {

/// Sufficient statistics for a set of records. Merging counts and then
/// finalizing equals computing metrics on the concatenated records.
struct MetricCounts {
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
  std::map<std::size_t, std::size_t> termination_histogram;
  std::size_t total_steps = 0;
  std::size_t n = 0;

  explicit MetricCounts(std::size_t num_classes = 0)
      : confusion(num_classes, std::vector<std::size_t>(num_classes, 0)) {}

  void add(const EpisodeRecord &r) {
    if (r.true_label >= confusion.size() || r.predicted >= confusion.size())
      throw ValidationError("record label outside the class range");
    ++confusion[r.true_label][r.predicted];
    ++termination_histogram[r.steps_taken];
    total_steps += r.steps_taken;
    ++n;
  }

  void merge(const MetricCounts &other) {
    if (other.confusion.size() != confusion.size()) throw ValidationError("class counts differ");
    for (std::size_t i = 0; i < confusion.size(); ++i)
      for (std::size_t j = 0; j < confusion.size(); ++j) confusion[i][j] += other.confusion[i][j];
    for (const auto &[k, v] : other.termination_histogram) termination_histogram[k] += v;
    total_steps += other.total_steps;
    n += other.n;
  }
};

struct MetricsReport {
  std::vector<double> per_class_accuracy;
  std::vector<double> per_class_f1;
  std::vector<std::size_t> support;
  double overall_accuracy = 0.0;
  double macro_accuracy = 0.0;
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  std::map<std::size_t, std::size_t> termination_histogram;
  double mean_tests_per_case = 0.0;
  std::size_t n_cases = 0;

  double step_fraction(std::size_t steps) const {
    auto it = termination_histogram.find(steps);
    return it == termination_histogram.end() || n_cases == 0
               ? 0.0
               : static_cast<double>(it->second) / static_cast<double>(n_cases);
  }
};

/// Per-class accuracy is recall; classes without support score 0 for both
/// accuracy and F1.
inline MetricsReport finalize_metrics(const MetricCounts &counts) {
  if (counts.n == 0) throw EmptyRecords("no episode records");
  const std::size_t k = counts.confusion.size();
  MetricsReport r;
  r.n_cases = counts.n;
  r.termination_histogram = counts.termination_histogram;
  r.mean_tests_per_case = static_cast<double>(counts.total_steps) / static_cast<double>(counts.n);
  r.per_class_accuracy.assign(k, 0.0);
  r.per_class_f1.assign(k, 0.0);
  r.support.assign(k, 0);
  std::size_t correct = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t predicted_c = 0;
    for (std::size_t t = 0; t < k; ++t) {
      r.support[c] += counts.confusion[c][t];
      predicted_c += counts.confusion[t][c];
    }
    const std::size_t tp = counts.confusion[c][c];
    correct += tp;
    if (r.support[c] > 0) r.per_class_accuracy[c] = static_cast<double>(tp) / static_cast<double>(r.support[c]);
    const std::size_t denom = r.support[c] + predicted_c;
    if (denom > 0) r.per_class_f1[c] = 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
  }
  r.overall_accuracy = static_cast<double>(correct) / static_cast<double>(counts.n);
  for (std::size_t c = 0; c < k; ++c) {
    r.macro_accuracy += r.per_class_accuracy[c] / static_cast<double>(k);
    r.macro_f1 += r.per_class_f1[c] / static_cast<double>(k);
    r.weighted_f1 += r.per_class_f1[c] * static_cast<double>(r.support[c]) / static_cast<double>(counts.n);
  }
  return r;
}

inline MetricsReport compute_metrics(const std::vector<EpisodeRecord> &records, std::size_t num_classes) {
  if (records.empty()) throw EmptyRecords("no episode records");
  MetricCounts counts(num_classes);
  for (const auto &r : records) counts.add(r);
  return finalize_metrics(counts);
}

inline Json report_to_json(const MetricsReport &r) {
  Json hist = Json::object();
  for (const auto &[steps, count] : r.termination_histogram) hist[std::to_string(steps)] = count;
  return Json{{"per_class_accuracy", r.per_class_accuracy},
              {"per_class_f1", r.per_class_f1},
              {"support", r.support},
              {"overall_accuracy", r.overall_accuracy},
              {"macro_accuracy", r.macro_accuracy},
              {"macro_f1", r.macro_f1},
              {"weighted_f1", r.weighted_f1},
              {"termination_histogram", hist},
              {"mean_tests_per_case", r.mean_tests_per_case},
              {"n_cases", r.n_cases}};
}

inline MetricsReport report_from_json(const Json &j) {
  MetricsReport r;
  j.at("per_class_accuracy").get_to(r.per_class_accuracy);
  j.at("per_class_f1").get_to(r.per_class_f1);
  j.at("support").get_to(r.support);
  j.at("overall_accuracy").get_to(r.overall_accuracy);
  j.at("macro_accuracy").get_to(r.macro_accuracy);
  j.at("macro_f1").get_to(r.macro_f1);
  j.at("weighted_f1").get_to(r.weighted_f1);
  for (const auto &[steps, count] : j.at("termination_histogram").items())
    r.termination_histogram[static_cast<std::size_t>(std::stoul(steps))] = count.get<std::size_t>();
  j.at("mean_tests_per_case").get_to(r.mean_tests_per_case);
  j.at("n_cases").get_to(r.n_cases);
  return r;
}

struct ComparisonTable {
  std::vector<std::string> methods;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;  // [method][column]
  std::vector<std::vector<bool>> best;      // strict best per column
  std::vector<std::pair<std::string, MetricsReport>> reports;
};

/// Aligns reports over shared metrics, rows in the given order. A cell is
/// flagged best only when it is strictly better than every other row (lower
/// is better for mean_tests_per_case).
inline ComparisonTable compare_reports(const std::vector<std::pair<std::string, MetricsReport>> &named,
                                       const std::vector<std::string> &class_names = {}) {
  if (named.size() < 2) throw ValidationError("comparison needs at least two reports");
  const std::size_t k = named.front().second.per_class_accuracy.size();
  for (const auto &[name, r] : named)
    if (r.per_class_accuracy.size() != k) throw ValidationError("report " + name + " has a different class count");

  ComparisonTable t;
  t.reports = named;
  t.columns = {"overall_accuracy", "macro_f1", "weighted_f1", "macro_accuracy", "mean_tests_per_case",
               "one_step_fraction"};
  for (std::size_t c = 0; c < k; ++c)
    t.columns.push_back("acc_" + (c < class_names.size() ? class_names[c] : std::to_string(c)));
  for (const auto &[name, r] : named) {
    t.methods.push_back(name);
    std::vector<double> row = {r.overall_accuracy, r.macro_f1,           r.weighted_f1,
                               r.macro_accuracy,   r.mean_tests_per_case, r.step_fraction(1)};
    row.insert(row.end(), r.per_class_accuracy.begin(), r.per_class_accuracy.end());
    t.values.push_back(std::move(row));
  }
  t.best.assign(t.methods.size(), std::vector<bool>(t.columns.size(), false));
  for (std::size_t col = 0; col < t.columns.size(); ++col) {
    const bool lower_better = t.columns[col] == "mean_tests_per_case";
    for (std::size_t i = 0; i < t.methods.size(); ++i) {
      bool strict = true;
      for (std::size_t j = 0; j < t.methods.size() && strict; ++j) {
        if (i == j) continue;
        strict = lower_better ? t.values[i][col] < t.values[j][col] : t.values[i][col] > t.values[j][col];
      }
      t.best[i][col] = strict;
    }
  }
  return t;
}

namespace detail {
inline std::string fmt_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}
}  // namespace detail

/// CSV with one row per method; `best_in` lists the columns the row wins.
inline std::string comparison_csv(const ComparisonTable &t) {
  std::ostringstream os;
  os << "method";
  for (const auto &c : t.columns) os << ',' << c;
  os << ",best_in\n";
  for (std::size_t i = 0; i < t.methods.size(); ++i) {
    os << t.methods[i];
    std::string best;
    for (std::size_t col = 0; col < t.columns.size(); ++col) {
      os << ',' << detail::fmt_value(t.values[i][col]);
      if (t.best[i][col]) best += (best.empty() ? "" : ";") + t.columns[col];
    }
    os << ',' << best << '\n';
  }
  return os.str();
}

/// Fixed-width text table; a trailing '*' marks the strict best cell.
inline std::string comparison_text(const ComparisonTable &t) {
  std::size_t name_w = 6;
  for (const auto &m : t.methods) name_w = std::max(name_w, m.size());
  std::vector<std::size_t> widths;
  for (const auto &c : t.columns) widths.push_back(std::max<std::size_t>(c.size(), 10));
  std::ostringstream os;
  auto pad = [&os](const std::string &s, std::size_t w) { os << s << std::string(w > s.size() ? w - s.size() : 0, ' '); };
  pad("method", name_w);
  for (std::size_t col = 0; col < t.columns.size(); ++col) {
    os << "  ";
    pad(t.columns[col], widths[col]);
  }
  os << '\n';
  for (std::size_t i = 0; i < t.methods.size(); ++i) {
    pad(t.methods[i], name_w);
    for (std::size_t col = 0; col < t.columns.size(); ++col) {
      os << "  ";
      pad(detail::fmt_value(t.values[i][col]) + (t.best[i][col] ? "*" : ""), widths[col]);
    }
    os << '\n';
  }
  return os.str();
}

/// Plot data: `method,steps,count`, one row per (method, observed step count).
inline std::string histogram_csv(const ComparisonTable &t) {
  std::ostringstream os;
  os << "method,steps,count\n";
  for (const auto &[name, r] : t.reports)
    for (const auto &[steps, count] : r.termination_histogram) os << name << ',' << steps << ',' << count << '\n';
  return os.str();
}

}  // namespace ldtl
