#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rewardlab/reward_continuous.hpp"
#include "rewardlab/reward_types.hpp"

namespace rewardlab {

// One line of a score batch: a completion, its ground truth, and optional
// precomputed segment losses.
struct BatchRecord {
  std::string id;
  std::string completion;
  std::string truth;
  std::optional<SegmentLosses> losses;
};

nlohmann::ordered_json breakdown_to_json(const RewardBreakdown& bd);
BatchRecord batch_record_from_json(const nlohmann::ordered_json& j);

}  // namespace rewardlab
