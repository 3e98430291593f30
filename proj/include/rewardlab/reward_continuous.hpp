#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rewardlab/parsing.hpp"
#include "rewardlab/reward_types.hpp"

namespace rewardlab {

struct ContinuousWeights {
  double correctness = 0.4;
  double perplexity = 0.25;
  double reasoning = 0.2;
  double consistency = 0.15;

  void validate() const;  // each >= 0, sum <= 1
  bool operator==(const ContinuousWeights&) const = default;
};

struct CorrectnessConfig {
  // Numeric path: relative error, magnitude similarity, order-of-magnitude.
  double alpha = 0.6;
  double beta = 0.25;
  double gamma = 0.15;
  // Text path: sequence similarity and word overlap.
  double alpha_text = 0.7;
  double beta_text = 0.3;

  void validate() const;
  bool operator==(const CorrectnessConfig&) const = default;
};

struct PerplexityConfig {
  double w_full = 0.4;
  double w_reasoning = 0.3;
  double w_answer = 0.3;
  double tau_full = 100.0;
  double tau_reasoning = 80.0;
  double tau_answer = 60.0;
  double loss_cap = 1000.0;

  void validate() const;  // weights sum to 1, taus positive
  bool operator==(const PerplexityConfig&) const = default;
};

// Per-token normalized log-losses for the three spans of a completion.
struct SegmentLosses {
  double full = 0.0;
  double reasoning = 0.0;
  double answer = 0.0;

  void validate() const;  // finite and non-negative
  bool operator==(const SegmentLosses&) const = default;
};

struct ReasoningQualityConfig {
  int min_words = 20;
  int max_words = 200;
  int ideal_words = 100;
  double penalty_factor = 100.0;
  int step_threshold = 3;
  int math_threshold = 5;
  double w_length = 0.4;
  double w_steps = 0.3;
  double w_math = 0.3;
  // The indicator lexicon is deliberately configuration-visible; these
  // heuristics are gameable and callers may want to tighten them.
  std::vector<std::string> step_tokens = {"first", "second", "third",  "then",
                                          "next",  "finally", "step"};

  void validate() const;
  bool operator==(const ReasoningQualityConfig&) const = default;
};

struct ConsistencyConfig {
  double tolerance = 0.01;  // relative, scaled by max(|answer|, 1)
  double match_reward = 1.0;
  double num_reward = 0.5;
  double partial_reward = 0.3;
  // When set, the numeric comparison runs against the ground truth instead
  // of the completion's own stated answer.
  bool compare_to_ground_truth = false;

  void validate() const;
  bool operator==(const ConsistencyConfig&) const = default;
};

struct ContinuousRewardConfig {
  ContinuousWeights weights;
  CorrectnessConfig correctness;
  PerplexityConfig perplexity;
  ReasoningQualityConfig reasoning;
  ConsistencyConfig consistency;

  void validate() const;
  bool operator==(const ContinuousRewardConfig&) const = default;
};

// Blend of relative-error decay, magnitude similarity, and an
// order-of-magnitude indicator; clamped to [0, 1]. Zero values are guarded
// by substituting max(|v|, 1e-12) inside the log10 terms.
double correctness_numeric(double pred, double truth, const CorrectnessConfig& cfg);

// Gestalt similarity plus word overlap for non-numeric answers.
double correctness_text(std::string_view pred, std::string_view truth,
                        const CorrectnessConfig& cfg);

// Weighted exponential decay over the three capped segment losses.
// Negative losses are a contract violation.
double perplexity_reward(const SegmentLosses& losses, const PerplexityConfig& cfg);

// Length appropriateness, step indicators, and math indicators.
double reasoning_quality(std::string_view reasoning, const ReasoningQualityConfig& cfg);

// Agreement between the reasoning's final number and the stated answer,
// falling back to binned text similarity when neither side is numeric.
double consistency_reward(const ParsedCompletion& pred, const GroundTruth& truth,
                          const ConsistencyConfig& cfg);

// Eq-style weighted sum of the four components. Absent losses score the
// perplexity component as 0 and flag the breakdown.
RewardBreakdown continuous_reward(const ParsedCompletion& pred, const GroundTruth& truth,
                                  const std::optional<SegmentLosses>& losses,
                                  const ContinuousRewardConfig& cfg);

// Indicator counts backing reasoning_quality; exposed for diagnostics.
int count_step_indicators(std::string_view reasoning, const ReasoningQualityConfig& cfg);
int count_math_indicators(std::string_view reasoning);
int count_words(std::string_view text);

}  // namespace rewardlab
