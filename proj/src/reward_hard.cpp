#include "rewardlab/reward_hard.hpp"

#include <algorithm>
#include <stdexcept>

namespace rewardlab {

std::string to_string(RewardKind kind) {
  switch (kind) {
    case RewardKind::Hard: return "hard";
    case RewardKind::Continuous: return "continuous";
    case RewardKind::Hybrid: return "hybrid";
  }
  return "hard";
}

void HardRewardConfig::validate() const {
  if (format_bonus < 0.0 || format_bonus > 1.0) {
    throw std::invalid_argument("hard.format_bonus must lie in [0, 1]");
  }
  if (clamp_max <= 0.0) {
    throw std::invalid_argument("hard.clamp_max must be positive");
  }
}

RewardBreakdown hard_reward(const ParsedCompletion& pred, const GroundTruth& truth,
                            const HardRewardConfig& cfg) {
  RewardBreakdown out;
  out.kind = RewardKind::Hard;
  const double correct = answers_match(pred, truth) ? 1.0 : 0.0;
  const double format =
      (pred.has_reasoning_tag && pred.has_answer_tag) ? cfg.format_bonus : 0.0;
  out.components["correct"] = correct;
  out.components["format"] = format;
  out.weights["correct"] = 1.0;
  out.weights["format"] = 1.0;
  out.total = std::min(correct + format, cfg.clamp_max);
  return out;
}

}  // namespace rewardlab
