#include <doctest.h>

#include <cstdio>
#include <string>

#include "rewardlab/config.hpp"

using namespace rewardlab;

TEST_CASE("presets carry their transition windows and group sizes") {
  const auto sec4 = preset_config("paper-sec4");
  CHECK(sec4.schedule.t_start == 50);
  CHECK(sec4.schedule.t_end == 150);
  CHECK(sec4.train.group_size == 4);
  CHECK(sec4.train.total_steps == 200);
  CHECK(sec4.train.seed == 3407);
  CHECK(sec4.train.learning_rate == doctest::Approx(5e-6));

  const auto appc = preset_config("appendix-c");
  CHECK(appc.schedule.t_start == 3);
  CHECK(appc.schedule.t_end == 7);
  CHECK(appc.train.group_size == 2);
  CHECK(appc.hard.format_bonus == doctest::Approx(0.2));
  CHECK(appc.cont.weights.correctness == doctest::Approx(0.4));
  CHECK(appc.cont.perplexity.loss_cap == doctest::Approx(1000.0));

  CHECK_THROWS(preset_config("nope"));
}

TEST_CASE("config text round-trips exactly") {
  ToolConfig cfg = preset_config("paper-sec4");
  cfg.hard.format_bonus = 0.17;
  cfg.cont.reasoning.step_tokens = {"first", "next", "hence"};
  cfg.schedule.direction = ScheduleDirection::ConstantMix;
  cfg.schedule.fixed_mix = MixWeights{0.25, 0.75};
  cfg.train.scheme = RewardScheme::HybridHardToCont;
  cfg.train.learning_rate = 0.025;
  const std::string text = config_to_text(cfg);
  const ToolConfig back = parse_config_text(text, "mem");
  CHECK(back == cfg);
  CHECK(config_to_text(back) == text);
}

TEST_CASE("unknown sections and keys are rejected with their path") {
  CHECK_THROWS_WITH(parse_config_text("[nope]\nx = 1\n", "cfg"),
                    doctest::Contains("unknown section"));
  CHECK_THROWS_WITH(parse_config_text("[train]\nbogus = 1\n", "cfg"),
                    doctest::Contains("train.bogus"));
  CHECK_THROWS_WITH(parse_config_text("stray = 1\n", "cfg"),
                    doctest::Contains("unknown top-level key"));
  CHECK_THROWS(parse_config_text("[train\ntotal_steps = 5\n", "cfg"));
  CHECK_THROWS(parse_config_text("[train]\ntotal_steps\n", "cfg"));
  CHECK_THROWS_WITH(parse_config_text("[train]\ntotal_steps = five\n", "cfg"),
                    doctest::Contains("expected an integer"));
}

TEST_CASE("preset key must come first and invalid values fail validation") {
  CHECK_THROWS_WITH(parse_config_text("[hard]\nformat_bonus = 0.3\npreset = paper-sec4\n",
                                      "cfg"),
                    doctest::Contains("precede"));
  CHECK_THROWS(parse_config_text("[schedule]\nt_start = 9\nt_end = 4\n", "cfg"));
  CHECK_THROWS(parse_config_text("[continuous]\nw_correctness = 0.9\nw_perplexity = 0.9\n",
                                 "cfg"));
}

TEST_CASE("config file save and load") {
  const std::string path = "test_config_roundtrip.ini";
  ToolConfig cfg = preset_config("appendix-c");
  cfg.train.seed = 99;
  save_config(cfg, path);
  const ToolConfig back = load_config(path);
  CHECK(back == cfg);
  std::remove(path.c_str());
  CHECK_THROWS(load_config("does_not_exist.ini"));
}

TEST_CASE("comments and blank lines are ignored") {
  const std::string text =
      "# leading comment\n"
      "preset = appendix-c\n"
      "\n"
      "[train]\n"
      "seed = 4  # inline comment\n";
  const auto cfg = parse_config_text(text, "mem");
  CHECK(cfg.train.seed == 4);
  CHECK(cfg.train.group_size == 2);  // from the preset
}

TEST_CASE("reward setup mirrors the tool config") {
  ToolConfig cfg = preset_config("paper-sec4");
  cfg.train.seed = 123;
  const RewardSetup setup = reward_setup_from(cfg);
  CHECK(setup.hard == cfg.hard);
  CHECK(setup.cont == cfg.cont);
  CHECK(setup.schedule == cfg.schedule);
  CHECK(setup.loss_model.seed == 123);
}
