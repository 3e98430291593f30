#include <doctest.h>

#include <cmath>
#include <random>

#include "rewardlab/grpo.hpp"

using namespace rewardlab;

TEST_CASE("normalize_group hand-checked example") {
  const auto adv = normalize_group(CompletionGroup{"p", {1, 0, 0, 1}});
  CHECK(adv.mean == doctest::Approx(0.5));
  CHECK(adv.stddev == doctest::Approx(0.5));
  REQUIRE(adv.advantages.size() == 4);
  CHECK(adv.advantages[0] == doctest::Approx(1.0));
  CHECK(adv.advantages[1] == doctest::Approx(-1.0));
  CHECK(adv.advantages[2] == doctest::Approx(-1.0));
  CHECK(adv.advantages[3] == doctest::Approx(1.0));
}

TEST_CASE("normalize_group degenerate groups") {
  const auto flat = normalize_group(CompletionGroup{"p", {0.7, 0.7, 0.7}});
  for (double a : flat.advantages) CHECK(a == 0.0);
  const auto single = normalize_group(CompletionGroup{"p", {1.0}});
  REQUIRE(single.advantages.size() == 1);
  CHECK(single.advantages[0] == 0.0);
  CHECK_THROWS(normalize_group(CompletionGroup{"p", {}}));
  CHECK_THROWS(normalize_group(CompletionGroup{"p", {1.0, std::nan("")}}));
}

TEST_CASE("normalize_group zero mean, unit std, and affine invariance") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 2000; ++trial) {
    const size_t n = 1 + rng() % 16;
    std::vector<double> rewards(n);
    for (auto& r : rewards) r = static_cast<double>(rng() % 10000) / 1000.0 - 5.0;
    const auto adv = normalize_group(CompletionGroup{"p", rewards});
    if (adv.stddev >= 1e-8) {
      double mean = 0.0;
      double var = 0.0;
      for (double a : adv.advantages) mean += a;
      mean /= static_cast<double>(n);
      for (double a : adv.advantages) var += (a - mean) * (a - mean);
      var /= static_cast<double>(n);
      CHECK(std::fabs(mean) <= 1e-9);
      CHECK(std::fabs(std::sqrt(var) - 1.0) <= 1e-6);
    }
    // Shift and positive scale leave advantages unchanged.
    const double scale = 0.5 + static_cast<double>(rng() % 100) / 25.0;
    const double shift = static_cast<double>(rng() % 100) - 50.0;
    std::vector<double> affine(n);
    for (size_t i = 0; i < n; ++i) affine[i] = scale * rewards[i] + shift;
    const auto adv2 = normalize_group(CompletionGroup{"p", affine});
    if (adv.stddev >= 1e-6) {
      for (size_t i = 0; i < n; ++i) {
        CHECK(adv2.advantages[i] == doctest::Approx(adv.advantages[i]).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("policy_update follows the REINFORCE sums") {
  SyntheticPolicy policy;
  std::vector<SampledCompletion> comps(2);
  comps[0].correct = true;
  comps[0].formatted = true;
  comps[1].correct = false;
  comps[1].formatted = true;

  SUBCASE("zero advantages leave the policy unchanged") {
    const auto next = policy_update(policy, comps, {0.0, 0.0}, 0.5);
    CHECK(next == policy);
  }

  SUBCASE("single correct completion moves the logit by exactly lr") {
    const auto next = policy_update(policy, {comps[0]}, {1.0}, 0.01);
    CHECK(next.buckets[0].correct_logit == doctest::Approx(0.01));
    CHECK(next.buckets[0].format_logit == doctest::Approx(0.01));
  }

  SUBCASE("symmetric advantages sum by enumeration") {
    // +1 on the correct completion, -1 on the incorrect one: the correct
    // indicator sums to +1, the format indicator to 0.
    const auto next = policy_update(policy, comps, {1.0, -1.0}, 0.1);
    CHECK(next.buckets[0].correct_logit == doctest::Approx(0.1));
    CHECK(next.buckets[0].format_logit == doctest::Approx(0.0));
  }

  SUBCASE("mismatched lengths are rejected") {
    CHECK_THROWS(policy_update(policy, comps, {1.0}, 0.1));
  }
}

TEST_CASE("sample_completion honors extreme logits") {
  std::mt19937_64 rng(42);
  const auto dataset = make_synthetic_dataset(4);
  SyntheticPolicy always;
  always.buckets = {PolicyParams{30.0, 30.0}};
  for (int i = 0; i < 50; ++i) {
    const auto c = sample_completion(always, dataset[i % 4], rng);
    CHECK(c.formatted);
    CHECK(c.correct);
    const auto parsed = parse_completion(c.text);
    CHECK(parsed.has_reasoning_tag);
    CHECK(parsed.has_answer_tag);
    CHECK(answers_match(parsed, dataset[i % 4].truth));
  }
  SyntheticPolicy never;
  never.buckets = {PolicyParams{30.0, -30.0}};
  for (int i = 0; i < 50; ++i) {
    const auto c = sample_completion(never, dataset[0], rng);
    CHECK_FALSE(c.formatted);
    CHECK_FALSE(parse_completion(c.text).has_answer_tag);
  }
}

TEST_CASE("run_training is deterministic given the seed") {
  TrainRunConfig cfg;
  cfg.total_steps = 40;
  cfg.group_size = 4;
  cfg.learning_rate = 0.05;
  cfg.scheme = RewardScheme::HybridContToHard;
  const RewardSetup setup;
  const RunLog a = run_training(cfg, setup);
  const RunLog b = run_training(cfg, setup);
  CHECK(a == b);
  CHECK(to_jsonl(a) == to_jsonl(b));
  cfg.seed = 3408;
  const RunLog c = run_training(cfg, setup);
  CHECK(to_jsonl(a) != to_jsonl(c));
}

TEST_CASE("run_training produces exactly total_steps records") {
  TrainRunConfig cfg;
  cfg.total_steps = 1;
  const RunLog log = run_training(cfg, RewardSetup{});
  CHECK(log.records.size() == 1);
  CHECK(log.records[0].step == 1);
  log.validate();
}

TEST_CASE("hard scheme with zero format bonus yields two-point rewards") {
  TrainRunConfig cfg;
  cfg.total_steps = 60;
  cfg.group_size = 4;
  cfg.learning_rate = 0.01;
  RewardSetup setup;
  setup.hard.format_bonus = 0.0;
  const RunLog log = run_training(cfg, setup);
  for (const auto& rec : log.records) {
    // Group averages of {0,1} rewards must be multiples of 1/G.
    const double scaled = rec.avg_reward * 4.0;
    CHECK(std::fabs(scaled - std::round(scaled)) <= 1e-9);
    CHECK(rec.avg_reward >= 0.0);
    CHECK(rec.avg_reward <= 1.0);
  }
}

TEST_CASE("expected correctness-logit drift matches the closed form") {
  // G = 2, p_correct = 0.5, format certain, binary rewards: the update is
  // lr * sqrt(k (G - k)) which is lr exactly when k = 1 and 0 otherwise, so
  // E[drift] = lr * P(k = 1) = lr / 2.
  const double lr = 0.01;
  TrainRunConfig cfg;
  cfg.total_steps = 1;
  cfg.group_size = 2;
  cfg.learning_rate = lr;
  cfg.initial_format_logit = 30.0;
  RewardSetup setup;
  setup.hard.format_bonus = 0.0;

  const int runs = 4000;
  double drift_sum = 0.0;
  for (int i = 0; i < runs; ++i) {
    cfg.seed = 1000 + static_cast<uint64_t>(i);
    const RunLog log = run_training(cfg, setup);
    drift_sum += log.records.back().policy_correct_logits[0];
  }
  const double mean_drift = drift_sum / runs;
  // Per-run drift is lr * Bernoulli(1/2); 4 standard errors around lr/2.
  const double se = 0.5 * lr / std::sqrt(static_cast<double>(runs));
  CHECK(std::fabs(mean_drift - 0.5 * lr) <= 4.0 * se);
}

TEST_CASE("correctness drift is non-negative in expectation") {
  TrainRunConfig cfg;
  cfg.total_steps = 1;
  cfg.group_size = 4;
  cfg.learning_rate = 0.02;
  cfg.initial_format_logit = 30.0;
  RewardSetup setup;
  setup.hard.format_bonus = 0.0;
  double total = 0.0;
  for (int i = 0; i < 1500; ++i) {
    cfg.seed = 77000 + static_cast<uint64_t>(i);
    total += run_training(cfg, setup).records.back().policy_correct_logits[0];
  }
  // One-sided: the mean single-step drift must clear zero by a wide margin.
  CHECK(total / 1500.0 > 0.0);
}

TEST_CASE("learning improves accuracy with a visible learning rate") {
  TrainRunConfig cfg;
  cfg.total_steps = 200;
  cfg.group_size = 4;
  cfg.learning_rate = 0.05;
  const RunLog log = run_training(cfg, RewardSetup{});
  double first = 0.0;
  double last = 0.0;
  for (int i = 0; i < 20; ++i) {
    first += log.records[static_cast<size_t>(i)].accuracy;
    last += log.records[log.records.size() - 1 - static_cast<size_t>(i)].accuracy;
  }
  CHECK(last / 20.0 > first / 20.0);
}

TEST_CASE("buckets receive independent updates") {
  TrainRunConfig cfg;
  cfg.total_steps = 24;
  cfg.dataset_size = 8;
  cfg.difficulty_buckets = 2;
  cfg.group_size = 4;
  cfg.learning_rate = 0.05;
  const RunLog log = run_training(cfg, RewardSetup{});
  const auto& last = log.records.back();
  REQUIRE(last.policy_correct_logits.size() == 2);
  REQUIRE(last.policy_format_logits.size() == 2);
}

TEST_CASE("run_training validates its inputs") {
  TrainRunConfig cfg;
  cfg.total_steps = 0;
  CHECK_THROWS(run_training(cfg, RewardSetup{}));
  cfg = TrainRunConfig{};
  CHECK_THROWS(run_training(cfg, RewardSetup{}, SyntheticPolicy{}, {}));
  SyntheticPolicy empty_policy;
  empty_policy.buckets.clear();
  CHECK_THROWS(run_training(cfg, RewardSetup{}, empty_policy, make_synthetic_dataset(2)));
}
