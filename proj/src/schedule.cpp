#include "rewardlab/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rewardlab {

std::string to_string(ScheduleDirection direction) {
  switch (direction) {
    case ScheduleDirection::ContToHard: return "cont-to-hard";
    case ScheduleDirection::HardToCont: return "hard-to-cont";
    case ScheduleDirection::ConstantMix: return "constant-mix";
  }
  return "cont-to-hard";
}

std::optional<ScheduleDirection> schedule_direction_from_string(const std::string& name) {
  if (name == "cont-to-hard") return ScheduleDirection::ContToHard;
  if (name == "hard-to-cont") return ScheduleDirection::HardToCont;
  if (name == "constant-mix") return ScheduleDirection::ConstantMix;
  return std::nullopt;
}

void ScheduleConfig::validate() const {
  if (t_start >= t_end) {
    throw std::invalid_argument("schedule.t_start must be < schedule.t_end");
  }
  if (direction == ScheduleDirection::ConstantMix) {
    if (!fixed_mix) {
      throw std::invalid_argument("schedule.fixed_mix is required for constant-mix");
    }
    if (fixed_mix->hard < 0 || fixed_mix->cont < 0 ||
        std::fabs(fixed_mix->hard + fixed_mix->cont - 1.0) > 1e-12) {
      throw std::invalid_argument("schedule.fixed_mix weights must sum to 1");
    }
  }
}

MixWeights weights_at(const ScheduleConfig& cfg, long step) {
  if (cfg.direction == ScheduleDirection::ConstantMix) {
    return cfg.fixed_mix.value_or(MixWeights{0.5, 0.5});
  }
  double ramp = 0.0;  // hard weight of the cont-to-hard schedule
  if (step >= cfg.t_end) {
    ramp = 1.0;
  } else if (step >= cfg.t_start) {
    ramp = static_cast<double>(step - cfg.t_start) /
           static_cast<double>(cfg.t_end - cfg.t_start);
  }
  const double w_hard = cfg.direction == ScheduleDirection::ContToHard ? ramp : 1.0 - ramp;
  return MixWeights{w_hard, 1.0 - w_hard};
}

ScheduleState initial_state(const ScheduleConfig& cfg) {
  cfg.validate();
  const MixWeights w = weights_at(cfg, 0);
  return ScheduleState{0, w.hard, w.cont};
}

ScheduleState advance(const ScheduleState& state, const ScheduleConfig& cfg) {
  const long next = state.step + 1;
  const MixWeights w = weights_at(cfg, next);
  return ScheduleState{next, w.hard, w.cont};
}

RewardBreakdown hybrid_reward(const RewardBreakdown& hard, const RewardBreakdown& cont,
                              const ScheduleState& state) {
  RewardBreakdown out;
  out.kind = RewardKind::Hybrid;
  out.components["hard"] = hard.total;
  out.components["continuous"] = cont.total;
  out.weights["hard"] = state.w_hard;
  out.weights["continuous"] = state.w_cont;
  out.missing_losses = cont.missing_losses;
  out.total = std::clamp(state.w_hard * hard.total + state.w_cont * cont.total, 0.0, 1.0);
  out.parts.push_back(hard);
  out.parts.push_back(cont);
  return out;
}

}  // namespace rewardlab
