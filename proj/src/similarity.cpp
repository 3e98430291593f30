#include "rewardlab/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace rewardlab {

namespace {

struct Match {
  size_t pos_a = 0;
  size_t pos_b = 0;
  size_t length = 0;
};

// Longest common substring of a and b via suffix-length DP with a rolling
// row. Ties resolve to the smallest start in a, then the smallest start in b,
// which the ascending scan order guarantees with a strict improvement test.
Match longest_common_substring(std::string_view a, std::string_view b) {
  Match best;
  if (a.empty() || b.empty()) return best;
  std::vector<uint32_t> row(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    uint32_t prev_diag = 0;
    for (size_t j = 1; j <= b.size(); ++j) {
      const uint32_t up_left = prev_diag;
      prev_diag = row[j];
      if (a[i - 1] == b[j - 1]) {
        row[j] = up_left + 1;
        if (row[j] > best.length) {
          best.length = row[j];
          best.pos_a = i - row[j];
          best.pos_b = j - row[j];
        }
      } else {
        row[j] = 0;
      }
    }
  }
  return best;
}

}  // namespace

double gestalt_similarity(std::string_view a, std::string_view b) {
  const size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  size_t matched = 0;
  // Explicit stack; degenerate inputs can otherwise recurse total/1 deep.
  std::vector<std::pair<std::string_view, std::string_view>> work;
  work.emplace_back(a, b);
  while (!work.empty()) {
    auto [sa, sb] = work.back();
    work.pop_back();
    if (sa.empty() || sb.empty()) continue;
    const Match m = longest_common_substring(sa, sb);
    if (m.length == 0) continue;
    matched += m.length;
    work.emplace_back(sa.substr(0, m.pos_a), sb.substr(0, m.pos_b));
    work.emplace_back(sa.substr(m.pos_a + m.length), sb.substr(m.pos_b + m.length));
  }
  return 2.0 * static_cast<double>(matched) / static_cast<double>(total);
}

double word_overlap(std::string_view a, std::string_view b) {
  auto words = [](std::string_view s) {
    std::set<std::string> out;
    std::string cur;
    for (char c : s) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) out.insert(cur);
        cur.clear();
      } else {
        cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      }
    }
    if (!cur.empty()) out.insert(cur);
    return out;
  };
  const auto wa = words(a);
  const auto wb = words(b);
  if (wa.empty() && wb.empty()) return 1.0;
  size_t inter = 0;
  for (const auto& w : wa) inter += wb.count(w);
  const size_t uni = wa.size() + wb.size() - inter;
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace rewardlab
