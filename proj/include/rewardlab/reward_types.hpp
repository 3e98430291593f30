#pragma once

#include <map>
#include <string>
#include <vector>

namespace rewardlab {

enum class RewardKind { Hard, Continuous, Hybrid };

std::string to_string(RewardKind kind);

// A scored completion: clamped total plus the raw per-component values and
// the weights that produced it. Hybrid breakdowns nest their two inputs in
// `parts` (hard first, continuous second).
struct RewardBreakdown {
  RewardKind kind = RewardKind::Hard;
  double total = 0.0;
  std::map<std::string, double> components;
  std::map<std::string, double> weights;
  bool missing_losses = false;
  std::vector<RewardBreakdown> parts;

  bool operator==(const RewardBreakdown&) const = default;
};

}  // namespace rewardlab
