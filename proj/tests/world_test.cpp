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

#include "ldtl/world.hpp"

#include <gtest/gtest.h>

#include <set>

#include "ldtl/presets.hpp"
#include "test_support.hpp"

namespace ldtl {
namespace {

using testing::kImg;
using testing::kLab;
using testing::kNeg;
using testing::kPos;
using testing::w2_case;

TEST(BuildWorld, W2IsValid) {
  const World w = build_world(presets::w2());
  EXPECT_EQ(w.num_diseases(), 2u);
  EXPECT_EQ(w.num_actions(), 2u);
  EXPECT_EQ(w.action(kLab).cond_table[0][kPos], 0.9);
  EXPECT_EQ(w.action(kImg).cond_table[1][kPos], 0.5);
  EXPECT_EQ(w.action_index("img"), kImg);
}

TEST(BuildWorld, RejectsPriorThatDoesNotSumToOne) {
  auto cfg = presets::w2();
  cfg.priors = {0.6, 0.5};
  EXPECT_THROW(build_world(cfg), InvalidDistribution);
}

TEST(BuildWorld, RejectsNonStochasticConditionalRow) {
  auto cfg = presets::w2();
  cfg.actions[kImg].cond_table[0] = {0.6, 0.5};
  EXPECT_THROW(build_world(cfg), InvalidDistribution);
}

TEST(BuildWorld, RejectsEmptyWorlds) {
  auto cfg = presets::w2();
  cfg.actions.clear();
  EXPECT_THROW(build_world(cfg), EmptyWorld);
  cfg = presets::w2();
  cfg.disease_names = {"A"};
  cfg.priors = {1.0};
  EXPECT_THROW(build_world(cfg), EmptyWorld);
}

TEST(BuildWorld, W4MirrorsFourConditionsAndThreeCategories) {
  const World w = build_world(presets::w4());
  EXPECT_EQ(w.config().disease_names,
            (std::vector<std::string>{"appendicitis", "cholecystitis", "diverticulitis", "pancreatitis"}));
  EXPECT_EQ(w.shape().action_names, (std::vector<std::string>{"exam", "lab", "img"}));
}

TEST(BuildWorld, HashTracksContent) {
  auto cfg = presets::w2();
  const auto h1 = World(cfg).hash();
  EXPECT_EQ(World(cfg).hash(), h1);
  cfg.seed = 1;
  EXPECT_NE(World(cfg).hash(), h1);
}

TEST(SampleCases, SingleCaseSchema) {
  const World w(presets::w2());
  const auto cases = sample_cases(w, 1, 0);
  ASSERT_EQ(cases.size(), 1u);
  EXPECT_LT(cases[0].label, 2u);
  EXPECT_EQ(cases[0].outcomes.size(), 2u);
  EXPECT_TRUE(cases[0].available(kLab));
  EXPECT_TRUE(cases[0].available(kImg));
}

TEST(SampleCases, DeterministicInSeed) {
  const World w(presets::w4_benchmark());
  EXPECT_EQ(sample_cases(w, 300, 5), sample_cases(w, 300, 5));
  EXPECT_NE(sample_cases(w, 300, 5), sample_cases(w, 300, 6));
}

TEST(SampleCases, LabelFrequenciesTrackPriors) {
  const World w(presets::w4());
  const auto cases = sample_cases(w, 2400, 7);
  ASSERT_EQ(cases.size(), 2400u);
  std::vector<double> freq(w.num_diseases(), 0.0);
  for (const auto &c : cases) freq[c.label] += 1.0 / 2400.0;
  for (std::size_t y = 0; y < freq.size(); ++y) EXPECT_NEAR(freq[y], w.config().priors[y], 0.03);
}

TEST(SampleCases, OutcomeFrequenciesConvergeToTables) {
  const World w(presets::w4_benchmark());
  const auto cases = sample_cases(w, 50000, 3);
  for (std::size_t a = 0; a < w.num_actions(); ++a) {
    std::vector<std::vector<double>> counts(w.num_diseases(), std::vector<double>(w.num_outcomes(a), 0.0));
    std::vector<double> totals(w.num_diseases(), 0.0);
    for (const auto &c : cases) {
      if (!c.available(a)) continue;
      counts[c.label][*c.outcomes[a]] += 1.0;
      totals[c.label] += 1.0;
    }
    for (std::size_t y = 0; y < w.num_diseases(); ++y)
      for (std::size_t o = 0; o < w.num_outcomes(a); ++o)
        EXPECT_NEAR(counts[y][o] / totals[y], w.action(a).cond_table[y][o], 0.02) << w.action(a).name;
  }
}

TEST(SampleCases, AvailabilityFollowsConfiguredProbability) {
  const World w(presets::w4_benchmark());
  const auto cases = sample_cases(w, 20000, 1);
  for (std::size_t a = 0; a < w.num_actions(); ++a) {
    double avail = 0.0;
    for (const auto &c : cases) avail += c.available(a) ? 1.0 : 0.0;
    EXPECT_NEAR(avail / 20000.0, w.availability(a), 0.01);
  }
}

TEST(UpdateState, RevealsPreSampledOutcome) {
  const auto c = w2_case(0, kPos, kNeg);
  const PatientState empty = PatientState::initial(c);
  const PatientState next = update_state(empty, kLab, c);
  ASSERT_EQ(next.step(), 1u);
  EXPECT_EQ(next.revealed()[0], (RevealedEvidence{kLab, kPos}));
  EXPECT_TRUE(next.is_done(kLab));
  EXPECT_EQ(empty.step(), 0u);
  EXPECT_FALSE(empty.is_done(kLab));
}

TEST(UpdateState, OrderChangesSequenceButNotEvidenceSet) {
  const auto c = w2_case(0, kPos, kNeg);
  const auto s0 = PatientState::initial(c);
  const auto ab = update_state(update_state(s0, kLab, c), kImg, c);
  const auto ba = update_state(update_state(s0, kImg, c), kLab, c);
  EXPECT_EQ(ab.done_mask(), ba.done_mask());
  std::multiset<std::pair<std::size_t, std::size_t>> e1, e2;
  for (const auto &ev : ab.revealed()) e1.insert({ev.action, ev.outcome});
  for (const auto &ev : ba.revealed()) e2.insert({ev.action, ev.outcome});
  EXPECT_EQ(e1, e2);
  EXPECT_NE(ab.revealed(), ba.revealed());
}

TEST(UpdateState, RejectsDuplicateAndUnavailableActions) {
  const auto c = w2_case(0, kPos, std::nullopt);
  const auto s1 = update_state(PatientState::initial(c), kLab, c);
  EXPECT_THROW(update_state(s1, kLab, c), DuplicateAction);
  EXPECT_THROW(update_state(s1, kImg, c), UnavailableAction);
}

TEST(SplitCases, SeventyTenTwentyOn2400) {
  const World w(presets::w4());
  const auto cases = sample_cases(w, 2400, 0);
  const auto s = split_cases(cases, {0.7, 0.1, 0.2}, 0);
  EXPECT_EQ(s.train.size(), 1680u);
  EXPECT_EQ(s.val.size(), 240u);
  EXPECT_EQ(s.test.size(), 480u);
  std::set<std::string> ids;
  for (const auto *part : {&s.train, &s.val, &s.test})
    for (const auto &c : *part) EXPECT_TRUE(ids.insert(c.id).second);
  EXPECT_EQ(ids.size(), 2400u);
}

TEST(SplitCases, DegenerateAllTrain) {
  const World w(presets::w2());
  const auto s = split_cases(sample_cases(w, 10, 0), {1.0, 0.0, 0.0}, 3);
  EXPECT_EQ(s.train.size(), 10u);
  EXPECT_TRUE(s.val.empty());
  EXPECT_TRUE(s.test.empty());
}

TEST(SplitCases, FloorAllocationRemainderGoesToTrain) {
  // val = floor(0.7) = 0, test = floor(1.4) = 1, train gets the remaining 6.
  const World w(presets::w2());
  const auto s = split_cases(sample_cases(w, 7, 0), {0.7, 0.1, 0.2}, 0);
  EXPECT_EQ(s.train.size(), 6u);
  EXPECT_EQ(s.val.size(), 0u);
  EXPECT_EQ(s.test.size(), 1u);
}

TEST(SplitCases, DeterministicAndRejectsBadRatios) {
  const World w(presets::w2());
  const auto cases = sample_cases(w, 50, 0);
  EXPECT_EQ(split_cases(cases, {0.7, 0.1, 0.2}, 9).test, split_cases(cases, {0.7, 0.1, 0.2}, 9).test);
  EXPECT_THROW(split_cases(cases, {0.7, 0.2, 0.2}, 0), BadRatios);
  EXPECT_THROW(split_cases(cases, {1.2, -0.1, -0.1}, 0), BadRatios);
}

}  // namespace
}  // namespace ldtl
