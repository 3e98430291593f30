#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace rewardlab {

// A raw completion decomposed into its tagged segments. Tag matching is
// case-sensitive and takes the first opening tag to the first closing tag
// after it; nested or duplicate tags resolve to that first valid pair.
struct ParsedCompletion {
  std::string raw;
  std::optional<std::string> reasoning;
  std::optional<std::string> answer_text;
  bool has_reasoning_tag = false;
  bool has_answer_tag = false;
  std::optional<double> answer_numeric;

  bool operator==(const ParsedCompletion&) const = default;
};

struct GroundTruth {
  std::string answer_text;
  std::optional<double> answer_numeric;

  static GroundTruth from_text(std::string_view text);

  bool operator==(const GroundTruth&) const = default;
};

// Total over arbitrary input; malformed text yields absent fields.
ParsedCompletion parse_completion(std::string_view raw);

// Last standalone numeric token in the text, after normalizing unicode
// minus and full-width digits to ASCII. Currency symbols and thousands
// separators are skipped. Absent when no numeric token exists.
std::optional<double> extract_number(std::string_view text);

// Numeric comparison within 1e-9 absolute tolerance; falls back to
// comparing normalized answer strings when either side is non-numeric.
bool answers_match(const ParsedCompletion& pred, const GroundTruth& truth);

// Lowercased, trimmed, inner whitespace collapsed to single spaces.
std::string normalize_answer_text(std::string_view text);

// U+2212 -> '-', U+FF10..U+FF19 -> '0'..'9'; other bytes pass through.
std::string normalize_unicode_digits(std::string_view text);

std::string trim(std::string_view text);

}  // namespace rewardlab
