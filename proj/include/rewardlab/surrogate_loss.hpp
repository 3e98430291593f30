#pragma once

#include <cstdint>
#include <string_view>

#include "rewardlab/reward_continuous.hpp"

namespace rewardlab {

// Deterministic stand-in for a language-model loss provider. Each character
// trigram hashes to a pseudo per-token log-loss in [min_loss, max_loss]; a
// segment's loss is the mean over its trigrams. The same seed always yields
// the same losses, which keeps simulator runs reproducible.
struct SurrogateLossModel {
  uint64_t seed = 3407;
  double min_loss = 0.2;
  double max_loss = 4.0;

  double text_loss(std::string_view text) const;
  SegmentLosses losses(std::string_view full, std::string_view reasoning,
                       std::string_view answer) const;
};

}  // namespace rewardlab
