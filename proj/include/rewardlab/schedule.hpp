#pragma once

#include <optional>
#include <string>
#include <utility>

#include "rewardlab/reward_types.hpp"

namespace rewardlab {

enum class ScheduleDirection { ContToHard, HardToCont, ConstantMix };

std::string to_string(ScheduleDirection direction);
std::optional<ScheduleDirection> schedule_direction_from_string(const std::string& name);

struct MixWeights {
  double hard = 0.0;
  double cont = 1.0;

  bool operator==(const MixWeights&) const = default;
};

struct ScheduleConfig {
  ScheduleDirection direction = ScheduleDirection::ContToHard;
  long t_start = 50;
  long t_end = 150;
  std::optional<MixWeights> fixed_mix;  // required for ConstantMix

  void validate() const;
  bool operator==(const ScheduleConfig&) const = default;
};

struct ScheduleState {
  long step = 0;
  double w_hard = 0.0;
  double w_cont = 1.0;

  bool operator==(const ScheduleState&) const = default;
};

// Weights at an absolute step. The ramp occupies [t_start, t_end): the ramp
// value applies at t_start, the end-point regime from t_end onward.
MixWeights weights_at(const ScheduleConfig& cfg, long step);

ScheduleState initial_state(const ScheduleConfig& cfg);

// Pure transition: step + 1 with weights recomputed.
ScheduleState advance(const ScheduleState& state, const ScheduleConfig& cfg);

// clip(w_hard * hard + w_cont * cont, 0, 1), nesting both inputs.
RewardBreakdown hybrid_reward(const RewardBreakdown& hard, const RewardBreakdown& cont,
                              const ScheduleState& state);

}  // namespace rewardlab
