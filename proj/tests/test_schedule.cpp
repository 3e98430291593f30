#include <doctest.h>

#include <cmath>

#include "rewardlab/schedule.hpp"

using namespace rewardlab;

TEST_CASE("cont-to-hard ramp endpoints and midpoint") {
  ScheduleConfig cfg;  // (50, 150)
  CHECK(weights_at(cfg, 0).hard == 0.0);
  CHECK(weights_at(cfg, 0).cont == 1.0);
  CHECK(weights_at(cfg, 49).hard == 0.0);
  CHECK(weights_at(cfg, 50).hard == 0.0);  // ramp value at t_start is 0
  CHECK(weights_at(cfg, 100).hard == 0.5);
  CHECK(weights_at(cfg, 150).hard == 1.0);
  CHECK(weights_at(cfg, 151).hard == 1.0);
  CHECK(weights_at(cfg, 10000).cont == 0.0);
}

TEST_CASE("hard-to-cont mirrors cont-to-hard") {
  ScheduleConfig fwd;
  ScheduleConfig rev;
  rev.direction = ScheduleDirection::HardToCont;
  for (long t = 0; t <= 400; ++t) {
    const MixWeights a = weights_at(fwd, t);
    const MixWeights b = weights_at(rev, t);
    CHECK(a.hard == doctest::Approx(b.cont).epsilon(1e-15));
    CHECK(a.cont == doctest::Approx(b.hard).epsilon(1e-15));
  }
}

TEST_CASE("weights always sum to one and ramp monotonically") {
  ScheduleConfig cfg;
  cfg.t_start = 3;
  cfg.t_end = 7;  // appendix preset transition window
  double prev = -1.0;
  for (long t = 0; t <= 50; ++t) {
    const MixWeights w = weights_at(cfg, t);
    CHECK(std::fabs(w.hard + w.cont - 1.0) <= 1e-12);
    CHECK(w.hard >= prev);
    prev = w.hard;
  }
  CHECK(weights_at(cfg, 3).hard == 0.0);
  CHECK(weights_at(cfg, 5).hard == 0.5);
  CHECK(weights_at(cfg, 7).hard == 1.0);
}

TEST_CASE("constant mix ignores the step") {
  ScheduleConfig cfg;
  cfg.direction = ScheduleDirection::ConstantMix;
  cfg.fixed_mix = MixWeights{0.5, 0.5};
  cfg.validate();
  for (long t : {0L, 10L, 999L}) {
    CHECK(weights_at(cfg, t).hard == 0.5);
    CHECK(weights_at(cfg, t).cont == 0.5);
  }
}

TEST_CASE("advance recomputes weights at the next step") {
  ScheduleConfig cfg;  // (50, 150)
  ScheduleState s = initial_state(cfg);
  CHECK(s.step == 0);
  CHECK(s.w_cont == 1.0);
  for (int i = 0; i < 49; ++i) s = advance(s, cfg);
  CHECK(s.step == 49);
  CHECK(s.w_hard == 0.0);
  s = advance(s, cfg);  // into the ramp region; value still at the endpoint
  CHECK(s.step == 50);
  CHECK(s.w_hard == 0.0);
  s = advance(s, cfg);
  CHECK(s.w_hard == doctest::Approx(0.01));
  ScheduleState late{149, 0.99, 0.01};
  late = advance(late, cfg);
  CHECK(late.step == 150);
  CHECK(late.w_hard == 1.0);

  ScheduleConfig constant;
  constant.direction = ScheduleDirection::ConstantMix;
  constant.fixed_mix = MixWeights{0.25, 0.75};
  ScheduleState c = initial_state(constant);
  for (int i = 0; i < 10; ++i) c = advance(c, constant);
  CHECK(c.w_hard == 0.25);
  CHECK(c.w_cont == 0.75);
}

TEST_CASE("invalid schedule configs are rejected at construction") {
  ScheduleConfig bad;
  bad.t_start = 150;
  bad.t_end = 150;
  CHECK_THROWS(initial_state(bad));
  ScheduleConfig missing_mix;
  missing_mix.direction = ScheduleDirection::ConstantMix;
  CHECK_THROWS(missing_mix.validate());
  ScheduleConfig bad_mix;
  bad_mix.direction = ScheduleDirection::ConstantMix;
  bad_mix.fixed_mix = MixWeights{0.7, 0.7};
  CHECK_THROWS(bad_mix.validate());
}

TEST_CASE("hybrid reward is a clipped convex combination") {
  RewardBreakdown hard;
  hard.kind = RewardKind::Hard;
  hard.total = 0.2;
  RewardBreakdown cont;
  cont.kind = RewardKind::Continuous;
  cont.total = 0.6;

  const auto pass_hard = hybrid_reward(hard, cont, ScheduleState{0, 1.0, 0.0});
  CHECK(pass_hard.total == doctest::Approx(0.2));

  hard.total = 1.0;
  const auto mid = hybrid_reward(hard, cont, ScheduleState{100, 0.5, 0.5});
  CHECK(mid.total == doctest::Approx(0.8));

  cont.total = 1.0;
  const auto pass_cont = hybrid_reward(hard, cont, ScheduleState{999, 0.0, 1.0});
  CHECK(pass_cont.total == doctest::Approx(1.0));

  CHECK(mid.parts.size() == 2);
  CHECK(mid.parts[0].kind == RewardKind::Hard);
  CHECK(mid.parts[1].kind == RewardKind::Continuous);
  CHECK(mid.weights.at("hard") == 0.5);
}

TEST_CASE("clipping is a no-op for in-range inputs") {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  for (double h : grid) {
    for (double c : grid) {
      for (double w : grid) {
        RewardBreakdown hard;
        hard.total = h;
        RewardBreakdown cont;
        cont.total = c;
        const double combined = w * h + (1 - w) * c;
        const auto bd = hybrid_reward(hard, cont, ScheduleState{0, w, 1 - w});
        CHECK(bd.total == doctest::Approx(combined).epsilon(1e-15));
        CHECK(bd.total >= std::min(h, c) - 1e-15);
        CHECK(bd.total <= std::max(h, c) + 1e-15);
      }
    }
  }
}
