#pragma once

#include <string_view>

namespace rewardlab {

// Ratcliff-Obershelp gestalt similarity: 2 * matched / (len(a) + len(b)),
// where matched counts characters covered by recursively taking the longest
// common substring and descending into the unmatched flanks. Ties prefer the
// match starting earliest in `a`, then earliest in `b`. Two empty strings
// compare as 1.
double gestalt_similarity(std::string_view a, std::string_view b);

// Jaccard overlap of lowercased whitespace-split word sets; empty-vs-empty
// is defined as 1.
double word_overlap(std::string_view a, std::string_view b);

}  // namespace rewardlab
