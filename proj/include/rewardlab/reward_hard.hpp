#pragma once

#include "rewardlab/parsing.hpp"
#include "rewardlab/reward_types.hpp"

namespace rewardlab {

struct HardRewardConfig {
  double format_bonus = 0.2;  // granted only when both tag pairs are present
  double clamp_max = 1.0;

  void validate() const;
  bool operator==(const HardRewardConfig&) const = default;
};

// Binary correctness plus the format bonus, summed then clamped to
// [0, clamp_max]. Components are reported pre-clamp.
RewardBreakdown hard_reward(const ParsedCompletion& pred, const GroundTruth& truth,
                            const HardRewardConfig& cfg);

}  // namespace rewardlab
