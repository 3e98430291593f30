#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rewardlab/parsing.hpp"
#include "rewardlab/reward_continuous.hpp"
#include "rewardlab/reward_hard.hpp"
#include "rewardlab/run_log.hpp"
#include "rewardlab/schedule.hpp"
#include "rewardlab/surrogate_loss.hpp"

namespace rewardlab {

struct CompletionGroup {
  std::string prompt_id;
  std::vector<double> rewards;
};

struct AdvantageSet {
  std::vector<double> advantages;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

// Center and scale rewards within one group. Groups whose population std
// falls below epsilon come back with all-zero advantages.
AdvantageSet normalize_group(const CompletionGroup& group, double epsilon = 1e-8);

struct PromptCase {
  std::string id;
  std::string prompt;
  GroundTruth truth;
  int bucket = 0;
};

// Arithmetic prompts with numeric ground truths, derived from the index so
// the training RNG stays reserved for policy sampling.
std::vector<PromptCase> make_synthetic_dataset(int size, int buckets = 1);

struct PolicyParams {
  double correct_logit = 0.0;
  double format_logit = 0.0;

  bool operator==(const PolicyParams&) const = default;
};

// Parametric completion generator standing in for the LLM: emits the tag
// structure with probability sigmoid(format_logit) and, when formatted, the
// correct answer with probability sigmoid(correct_logit).
struct SyntheticPolicy {
  std::vector<PolicyParams> buckets{PolicyParams{}};
  uint64_t noise_seed = 0;

  bool operator==(const SyntheticPolicy&) const = default;
};

struct SampledCompletion {
  std::string text;
  bool formatted = false;
  bool correct = false;
  int bucket = 0;
};

SampledCompletion sample_completion(const SyntheticPolicy& policy, const PromptCase& prompt,
                                    std::mt19937_64& rng);

// REINFORCE-style update: each logit moves by
// learning_rate * sum_i advantage_i * indicator(trait_i). Pure.
SyntheticPolicy policy_update(const SyntheticPolicy& policy,
                              const std::vector<SampledCompletion>& completions,
                              const std::vector<double>& advantages, double learning_rate);

struct TrainRunConfig {
  long total_steps = 200;
  int group_size = 2;  // G
  uint64_t seed = 3407;
  double learning_rate = 5e-6;
  RewardScheme scheme = RewardScheme::Hard;
  double epsilon = 1e-8;
  int dataset_size = 16;
  int difficulty_buckets = 1;
  double initial_correct_logit = 0.0;
  double initial_format_logit = 0.0;

  void validate() const;
  bool operator==(const TrainRunConfig&) const = default;
};

// Everything needed to score a completion under any scheme.
struct RewardSetup {
  HardRewardConfig hard;
  ContinuousRewardConfig cont;
  ScheduleConfig schedule;
  SurrogateLossModel loss_model;

  void validate() const;
};

// Algorithm skeleton: per step, sample G completions for the round-robin
// prompt, score them under cfg.scheme, normalize to advantages, update the
// policy, advance the schedule (hybrid only), and append a metrics record.
// Deterministic given cfg.seed.
RunLog run_training(const TrainRunConfig& cfg, const RewardSetup& rewards,
                    SyntheticPolicy policy, const std::vector<PromptCase>& dataset);

// Convenience: builds the synthetic dataset and initial policy from cfg.
RunLog run_training(const TrainRunConfig& cfg, const RewardSetup& rewards);

double sigmoid(double x);

}  // namespace rewardlab
