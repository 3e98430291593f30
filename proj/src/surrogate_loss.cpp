#include "rewardlab/surrogate_loss.hpp"

namespace rewardlab {

namespace {

// FNV-1a, kept local so losses are identical across platforms.
uint64_t fnv1a(std::string_view bytes, uint64_t state) {
  uint64_t h = state ^ 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

double unit_interval(uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

double SurrogateLossModel::text_loss(std::string_view text) const {
  const double span = max_loss - min_loss;
  if (text.size() < 3) {
    return min_loss + span * unit_interval(fnv1a(text, seed));
  }
  double sum = 0.0;
  const size_t count = text.size() - 2;
  for (size_t i = 0; i < count; ++i) {
    sum += unit_interval(fnv1a(text.substr(i, 3), seed));
  }
  return min_loss + span * (sum / static_cast<double>(count));
}

SegmentLosses SurrogateLossModel::losses(std::string_view full, std::string_view reasoning,
                                         std::string_view answer) const {
  return SegmentLosses{text_loss(full), text_loss(reasoning), text_loss(answer)};
}

}  // namespace rewardlab
