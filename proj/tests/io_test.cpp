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

#include "ldtl/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "ldtl/episode.hpp"
#include "ldtl/eval.hpp"
#include "ldtl/presets.hpp"
#include "test_support.hpp"

namespace ldtl {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("ldtl_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

TEST_F(TempDir, WorldConfigRoundTrip) {
  const auto cfg = presets::w4_benchmark();
  save_world_config(cfg, dir / "w.json");
  const auto back = load_world_config(dir / "w.json");
  EXPECT_EQ(config_hash(back), config_hash(cfg));
  EXPECT_EQ(World(back).hash(), World(cfg).hash());
}

TEST_F(TempDir, CaseSetRoundTrip) {
  const World w(presets::w4_benchmark());
  const auto cases = sample_cases(w, 500, 3);
  save_cases(cases, w.shape(), dir / "c.jsonl");
  EXPECT_EQ(load_cases(dir / "c.jsonl", w.shape()), cases);
  EXPECT_EQ(format_cases(load_cases(dir / "c.jsonl", w.shape()), w.shape()), read_file(dir / "c.jsonl"));
}

TEST(CaseParsing, UnavailableOutcomeIsRejectedAtItsLine) {
  const World w(presets::w2());
  const std::string good = R"({"id":"a","label":0,"init_obs":"none","outcomes":{"lab":"+"},"available":["lab"]})";
  const std::string bad = R"({"id":"b","label":1,"init_obs":"none","outcomes":{"img":"+"},"available":["lab"]})";
  try {
    parse_cases(good + "\n" + bad + "\n", w.shape());
    FAIL() << "expected SchemaError";
  } catch (const SchemaError &e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(CaseParsing, SchemaViolations) {
  const World w(presets::w2());
  const auto parse = [&](const std::string &line) { return parse_cases(line + "\n", w.shape()); };
  EXPECT_THROW(parse(R"({"id":"a","label":2,"init_obs":"none","outcomes":{},"available":[]})"), SchemaError);
  EXPECT_THROW(parse(R"({"id":"a","label":0,"init_obs":"x","outcomes":{},"available":[]})"), SchemaError);
  EXPECT_THROW(parse(R"({"id":"a","label":0,"init_obs":"none","outcomes":{},"available":["lab"]})"), SchemaError);
  EXPECT_THROW(parse(R"({"id":"a","label":0,"init_obs":"none","outcomes":{},"available":[],"x":1})"), SchemaError);
  EXPECT_THROW(parse(R"({"id":"a","label":0,"init_obs":"none","outcomes":{"lab":"?"},"available":["lab"]})"),
               SchemaError);
  EXPECT_THROW(parse("{not json"), ParseError);
  EXPECT_EQ(parse(R"({"id":"a","label":0,"init_obs":"none","outcomes":{},"available":[]})").size(), 1u);
}

TEST_F(TempDir, MissingFileIsAnIoError) { EXPECT_THROW(read_file(dir / "nope.json"), IoError); }

TEST_F(TempDir, ModelRoundTrip) {
  const World w(presets::w4_benchmark());
  const auto m = fit_full_info(w, sample_cases(w, 400, 1), 1.0);
  save_model(m, dir / "m.json");
  const auto back = load_model(dir / "m.json");
  EXPECT_EQ(back.world_hash(), m.world_hash());
  EXPECT_EQ(back.cond_tables(), m.cond_tables());
  EXPECT_EQ(back.priors(), m.priors());
  for (const auto &c : sample_cases(w, 50, 2)) {
    PatientState s = PatientState::initial(c);
    for (std::size_t a : feasible_actions(s, c)) s = update_state(s, a, c);
    EXPECT_EQ(posterior(back, s).probs, posterior(m, s).probs);
  }
}

TEST_F(TempDir, CheckpointRoundTripPreservesMetrics) {
  const World w(presets::w4_benchmark());
  const auto cases = sample_cases(w, 300, 4);
  const auto m = fit_full_info(w, cases, 1.0);
  TrainConfig cfg;
  cfg.epochs = 3;
  const auto params = train_planner(cases, m, cfg);
  save_checkpoint(params, cfg, dir / "ckpt.json");
  const auto back = load_checkpoint(dir / "ckpt.json", w.shape(), w.hash());
  EXPECT_EQ(back.weights, params.weights);
  EXPECT_EQ(back.loss_history, params.loss_history);

  PolicySpec a, b;
  a.kind = b.kind = PolicyKind::trained;
  a.params = params;
  b.params = back;
  const auto ra = compute_metrics(run_benchmark(a, cases, m, {}), w.num_diseases());
  const auto rb = compute_metrics(run_benchmark(b, cases, m, {}), w.num_diseases());
  EXPECT_EQ(report_to_json(ra), report_to_json(rb));
}

TEST_F(TempDir, CheckpointGuards) {
  const World w2(presets::w2());
  const World w4(presets::w4_benchmark());
  const auto small = PolicyParams::zeros(w2.shape(), w2.hash());
  save_checkpoint(small, {}, dir / "small.json");
  EXPECT_THROW(load_checkpoint(dir / "small.json", w4.shape(), w4.hash()), ShapeMismatch);

  const auto params = PolicyParams::zeros(w4.shape(), w4.hash());
  auto j = checkpoint_to_json(params, {});
  j["config_hash"] = "0000000000000000";
  EXPECT_THROW(checkpoint_from_json(j, w4.shape(), w4.hash()), HashMismatch);
  j = checkpoint_to_json(params, {});
  j["weights"][0].erase(0);
  EXPECT_THROW(checkpoint_from_json(j, w4.shape(), w4.hash()), ShapeMismatch);
}

}  // namespace
}  // namespace ldtl
