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

#include "ldtl/diagnoser.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "ldtl/presets.hpp"
#include "ldtl/trajectory.hpp"
#include "test_support.hpp"

namespace ldtl {
namespace {

using testing::brute_force_posterior;
using testing::kImg;
using testing::kLab;
using testing::kNeg;
using testing::kPos;
using testing::w2_case;

PatientState w2_state(std::vector<std::pair<std::size_t, std::size_t>> evidence) {
  PatientState s(0);
  for (const auto &[a, o] : evidence) s = s.with(a, o);
  return s;
}

TEST(FitFullInfo, LaplaceSmoothedCounts) {
  const World w(presets::w2());
  CaseSet train = {w2_case(0, kPos, std::nullopt, "a1"), w2_case(0, kPos, std::nullopt, "a2"),
                   w2_case(0, kNeg, std::nullopt, "a3"), w2_case(1, kNeg, std::nullopt, "b1")};
  const auto m = fit_full_info(w, train, 1.0);
  EXPECT_NEAR(m.cond_tables()[kLab][0][kPos], 0.6, 1e-15);
  EXPECT_NEAR(m.cond_tables()[kLab][1][kPos], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(m.priors()[0], 2.0 / 3.0, 1e-15);
  // img never observed: smoothing alone gives a uniform row.
  EXPECT_NEAR(m.cond_tables()[kImg][0][kPos], 0.5, 1e-15);
}

TEST(FitFullInfo, UnsmoothedMaximumLikelihood) {
  const World w(presets::w2());
  CaseSet train = {w2_case(0, kPos, kNeg, "a1"), w2_case(0, kPos, kPos, "a2"), w2_case(1, kNeg, kNeg, "b1")};
  const auto m = fit_full_info(w, train, 0.0);
  EXPECT_EQ(m.cond_tables()[kLab][0][kPos], 1.0);
  EXPECT_EQ(m.cond_tables()[kLab][0][kNeg], 0.0);
}

TEST(FitFullInfo, ConsistentWithTrueTablesAtScale) {
  const World w(presets::w2());
  const auto m = fit_full_info(w, sample_cases(w, 50000, 11), 1.0);
  for (std::size_t y = 0; y < 2; ++y) {
    EXPECT_NEAR(m.priors()[y], w.config().priors[y], 0.02);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t o = 0; o < 2; ++o) EXPECT_NEAR(m.cond_tables()[a][y][o], w.action(a).cond_table[y][o], 0.02);
  }
}

TEST(FitFullInfo, RejectsEmptyTrainingSet) {
  const World w(presets::w2());
  EXPECT_THROW(fit_full_info(w, {}, 1.0), EmptyTrainingSet);
}

TEST(Posterior, NoEvidenceIsUniform) {
  const World w(presets::w2());
  const auto p = posterior(oracle_model(w), w2_state({}));
  EXPECT_NEAR(p.probs[0], 0.5, 1e-15);
  EXPECT_NEAR(p.confidence, 0.5, 1e-15);
  EXPECT_EQ(p.argmax_label, 0u);  // tie -> lowest index
}

TEST(Posterior, HandBayesRuleOnW2) {
  const World w(presets::w2());
  const auto m = oracle_model(w);
  EXPECT_NEAR(posterior(m, w2_state({{kLab, kPos}})).probs[0], 9.0 / 11.0, 1e-12);
  EXPECT_NEAR(posterior(m, w2_state({{kLab, kPos}, {kImg, kPos}})).probs[0], 0.84375, 1e-12);
  EXPECT_NEAR(oracle_posterior(w, w2_state({{kImg, kPos}})).probs[0], 6.0 / 11.0, 1e-12);
}

TEST(Posterior, OracleMatchesBruteForceOnRandomWorlds) {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cfg = testing::random_world(rng);
    const World w(cfg);
    const auto cases = sample_cases(w, 1, rng.next_u64());
    PatientState s = PatientState::initial(cases[0]);
    std::vector<std::pair<std::size_t, std::size_t>> evidence;
    for (std::size_t a : feasible_actions(s, cases[0])) {
      if (rng.bernoulli(0.5)) continue;
      s = update_state(s, a, cases[0]);
      evidence.emplace_back(a, *cases[0].outcomes[a]);
    }
    const auto expected = brute_force_posterior(cfg, cases[0].init_obs, evidence);
    const auto got = oracle_posterior(w, s);
    double sum = 0.0;
    for (std::size_t y = 0; y < expected.size(); ++y) {
      EXPECT_NEAR(got.probs[y], expected[y], 1e-12);
      sum += got.probs[y];
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Posterior, EmptyStateEqualsPriorsWithUninformativeInit) {
  auto cfg = presets::w2();
  cfg.priors = {0.3, 0.7};
  const auto p = oracle_posterior(World(cfg), w2_state({}));
  EXPECT_NEAR(p.probs[0], 0.3, 1e-15);
  EXPECT_NEAR(p.probs[1], 0.7, 1e-15);
}

TEST(Posterior, ExactlyInvariantToRevealOrder) {
  Rng rng(7);
  const World w(presets::w4_benchmark());
  const auto m = fit_full_info(w, sample_cases(w, 500, 1), 1.0);
  for (const auto &c : sample_cases(w, 300, 2)) {
    auto order = feasible_actions(PatientState::initial(c), c);
    PatientState forward = PatientState::initial(c);
    for (std::size_t a : order) forward = update_state(forward, a, c);
    rng.shuffle(order);
    PatientState shuffled = PatientState::initial(c);
    for (std::size_t a : order) shuffled = update_state(shuffled, a, c);
    const auto p1 = posterior(m, forward);
    const auto p2 = posterior(m, shuffled);
    EXPECT_EQ(p1.probs, p2.probs);
    EXPECT_EQ(p1.log_probs, p2.log_probs);
  }
}

TEST(Posterior, ClampingKeepsLogProbabilitiesFinite) {
  const World w(presets::w2());
  CaseSet train = {w2_case(0, kPos, kPos, "a"), w2_case(1, kNeg, kNeg, "b")};
  const auto m = fit_full_info(w, train, 0.0);  // contains exact zeros
  const auto p = posterior(m, w2_state({{kLab, kPos}, {kImg, kNeg}}));
  for (std::size_t y = 0; y < 2; ++y) {
    EXPECT_TRUE(std::isfinite(p.log_probs[y]));
    EXPECT_GT(p.probs[y], 0.0);
  }
  EXPECT_NEAR(p.probs[0] + p.probs[1], 1.0, 1e-9);
}

TEST(Posterior, UnknownSymbolIsRejected) {
  const World w(presets::w2());
  const auto m = oracle_model(w);
  EXPECT_THROW(posterior(m, PatientState(3)), UnknownSymbol);
  EXPECT_THROW(posterior(m, w2_state({{kLab, 5}})), UnknownSymbol);
  EXPECT_THROW(posterior(m, w2_state({{4, 0}})), UnknownSymbol);
}

TEST(Posterior, EvidenceHelpsTheTrueLabelInExpectation) {
  // Mean change of log p(y | h) over random (case, state, action) draws with the
  // true-world model is a conditional mutual information, hence >= 0.
  const World w(presets::w4_benchmark());
  const auto m = oracle_model(w);
  Rng rng(2024);
  const auto cases = sample_cases(w, 10000, 99);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto &c : cases) {
    PatientState s = PatientState::initial(c);
    auto feasible = feasible_actions(s, c);
    if (feasible.empty()) continue;
    const std::size_t prefix = rng.below(feasible.size());
    for (std::size_t i = 0; i < prefix; ++i) {
      feasible = feasible_actions(s, c);
      s = update_state(s, feasible[rng.below(feasible.size())], c);
    }
    feasible = feasible_actions(s, c);
    sum += info_gain(m, s, feasible[rng.below(feasible.size())], c);
    ++n;
  }
  EXPECT_GE(sum / static_cast<double>(n), -0.01);
}

TEST(Decide, ThresholdHorizonAndFirstStepRule) {
  DiseasePosterior p{{0.95, 0.05}, {}, 0, 0.95};
  auto d = decide(p, 1, 0.9, 3, 1);
  EXPECT_TRUE(d.stop);
  EXPECT_TRUE(d.confident);
  EXPECT_EQ(d.reason, StopReason::threshold);

  DiseasePosterior q{{0.6, 0.4}, {}, 0, 0.6};
  d = decide(q, 3, 0.9, 3, 2);
  EXPECT_TRUE(d.stop);
  EXPECT_FALSE(d.confident);
  EXPECT_EQ(d.reason, StopReason::horizon);

  DiseasePosterior r{{0.99, 0.01}, {}, 0, 0.99};
  d = decide(r, 0, 0.9, 3, 2);
  EXPECT_FALSE(d.stop);
  EXPECT_EQ(d.reason, StopReason::none);

  d = decide(q, 1, 0.9, 3, 0);
  EXPECT_TRUE(d.stop);
  EXPECT_EQ(d.reason, StopReason::exhausted);
}

TEST(Decide, ValidatesArguments) {
  DiseasePosterior p{{0.5, 0.5}, {}, 0, 0.5};
  EXPECT_THROW(decide(p, 1, 0.0, 3, 1), ValidationError);
  EXPECT_THROW(decide(p, 1, 1.5, 3, 1), ValidationError);
  EXPECT_THROW(decide(p, 1, 0.9, 0, 1), ValidationError);
}

}  // namespace
}  // namespace ldtl
