#include "rewardlab/parsing.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace rewardlab {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_digit(char c) {
  return c >= '0' && c <= '9';
}

bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// Substring between the first `open` and the first `close` after it.
std::optional<std::string> between_tags(std::string_view raw, std::string_view open,
                                        std::string_view close) {
  const auto start = raw.find(open);
  if (start == std::string_view::npos) return std::nullopt;
  const auto body = start + open.size();
  const auto end = raw.find(close, body);
  if (end == std::string_view::npos) return std::nullopt;
  return trim(raw.substr(body, end - body));
}

}  // namespace

std::string trim(std::string_view text) {
  size_t b = 0;
  size_t e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

std::string normalize_unicode_digits(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size();) {
    const auto rest = text.substr(i);
    // U+2212 MINUS SIGN
    if (rest.size() >= 3 && static_cast<unsigned char>(rest[0]) == 0xE2 &&
        static_cast<unsigned char>(rest[1]) == 0x88 &&
        static_cast<unsigned char>(rest[2]) == 0x92) {
      out.push_back('-');
      i += 3;
      continue;
    }
    // U+FF10..U+FF19 FULLWIDTH DIGITS
    if (rest.size() >= 3 && static_cast<unsigned char>(rest[0]) == 0xEF &&
        static_cast<unsigned char>(rest[1]) == 0xBC &&
        static_cast<unsigned char>(rest[2]) >= 0x90 &&
        static_cast<unsigned char>(rest[2]) <= 0x99) {
      out.push_back(static_cast<char>('0' + (static_cast<unsigned char>(rest[2]) - 0x90)));
      i += 3;
      continue;
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

std::string normalize_answer_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::optional<double> extract_number(std::string_view text) {
  const std::string norm = normalize_unicode_digits(text);
  std::optional<double> last;
  size_t i = 0;
  const size_t n = norm.size();
  while (i < n) {
    size_t start = i;
    bool negative = false;
    if (norm[i] == '-' || norm[i] == '+') {
      // A sign glued to a preceding digit is an operator, not a sign.
      if (i > 0 && is_digit(norm[i - 1])) {
        ++i;
        continue;
      }
      negative = norm[i] == '-';
      ++i;
    }
    std::string token;
    if (i < n && is_digit(norm[i])) {
      while (i < n && is_digit(norm[i])) token.push_back(norm[i++]);
      // Thousands groups: comma followed by exactly three digits.
      while (i < n && norm[i] == ',' && i + 3 < n && is_digit(norm[i + 1]) &&
             is_digit(norm[i + 2]) && is_digit(norm[i + 3]) &&
             !(i + 4 < n && is_digit(norm[i + 4]))) {
        token.append(norm, i + 1, 3);
        i += 4;
      }
      if (i < n && norm[i] == '.' && i + 1 < n && is_digit(norm[i + 1])) {
        token.push_back('.');
        ++i;
        while (i < n && is_digit(norm[i])) token.push_back(norm[i++]);
      }
    } else if (i < n && norm[i] == '.' && i + 1 < n && is_digit(norm[i + 1])) {
      token.push_back('0');
      token.push_back('.');
      ++i;
      while (i < n && is_digit(norm[i])) token.push_back(norm[i++]);
    } else {
      i = start + 1;
      continue;
    }
    // Standalone: not glued to letters or digits on either side.
    const bool left_ok = start == 0 || !is_alnum(norm[start - 1]);
    const bool right_ok = i >= n || !is_alnum(norm[i]);
    if (left_ok && right_ok) {
      double value = 0.0;
      const auto rc = std::from_chars(token.data(), token.data() + token.size(), value);
      if (rc.ec == std::errc() && std::isfinite(value)) {
        last = negative ? -value : value;
      }
    } else {
      // Skip the glued run entirely so "42nd" yields nothing from "42".
      while (i < n && is_alnum(norm[i])) ++i;
    }
  }
  return last;
}

ParsedCompletion parse_completion(std::string_view raw) {
  ParsedCompletion out;
  out.raw = std::string(raw);
  out.reasoning = between_tags(raw, "<reasoning>", "</reasoning>");
  out.has_reasoning_tag = out.reasoning.has_value();
  out.answer_text = between_tags(raw, "<answer>", "</answer>");
  out.has_answer_tag = out.answer_text.has_value();
  if (out.answer_text) {
    out.answer_numeric = extract_number(*out.answer_text);
  }
  return out;
}

GroundTruth GroundTruth::from_text(std::string_view text) {
  GroundTruth truth;
  truth.answer_text = trim(text);
  truth.answer_numeric = extract_number(truth.answer_text);
  return truth;
}

bool answers_match(const ParsedCompletion& pred, const GroundTruth& truth) {
  if (pred.answer_numeric && truth.answer_numeric) {
    return std::fabs(*pred.answer_numeric - *truth.answer_numeric) <= 1e-9;
  }
  if (!pred.answer_text) return false;
  return normalize_answer_text(*pred.answer_text) == normalize_answer_text(truth.answer_text);
}

}  // namespace rewardlab
