#include "rewardlab/reward_continuous.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "rewardlab/similarity.hpp"

namespace rewardlab {

namespace {

constexpr double kMagnitudeFloor = 1e-12;

double clamp01(double v) {
  return std::clamp(v, 0.0, 1.0);
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

bool near_one(double v) {
  return std::fabs(v - 1.0) <= 1e-9;
}

}  // namespace

void ContinuousWeights::validate() const {
  require(correctness >= 0 && perplexity >= 0 && reasoning >= 0 && consistency >= 0,
          "continuous weights must be non-negative");
  require(correctness + perplexity + reasoning + consistency <= 1.0 + 1e-9,
          "continuous weights must sum to <= 1");
}

void CorrectnessConfig::validate() const {
  require(alpha >= 0 && beta >= 0 && gamma >= 0, "correctness weights must be non-negative");
  require(alpha + beta + gamma <= 1.0 + 1e-9, "correctness.alpha+beta+gamma must be <= 1");
  require(alpha_text >= 0 && beta_text >= 0, "correctness text weights must be non-negative");
  require(alpha_text + beta_text <= 1.0 + 1e-9, "correctness.alpha_text+beta_text must be <= 1");
}

void PerplexityConfig::validate() const {
  require(w_full >= 0 && w_reasoning >= 0 && w_answer >= 0,
          "perplexity weights must be non-negative");
  require(near_one(w_full + w_reasoning + w_answer), "perplexity weights must sum to 1");
  require(tau_full > 0 && tau_reasoning > 0 && tau_answer > 0,
          "perplexity decay factors must be positive");
  require(loss_cap > 0, "perplexity.loss_cap must be positive");
}

void SegmentLosses::validate() const {
  require(std::isfinite(full) && std::isfinite(reasoning) && std::isfinite(answer),
          "segment losses must be finite");
  require(full >= 0 && reasoning >= 0 && answer >= 0, "segment losses must be non-negative");
}

void ReasoningQualityConfig::validate() const {
  require(min_words > 0 && max_words > 0 && ideal_words > 0,
          "reasoning word bounds must be positive");
  require(min_words <= ideal_words && ideal_words <= max_words,
          "reasoning word bounds must satisfy min <= ideal <= max");
  require(penalty_factor > 0, "reasoning.penalty_factor must be positive");
  require(step_threshold > 0 && math_threshold > 0,
          "reasoning indicator thresholds must be positive");
  require(w_length >= 0 && w_steps >= 0 && w_math >= 0,
          "reasoning weights must be non-negative");
  require(near_one(w_length + w_steps + w_math), "reasoning weights must sum to 1");
}

void ConsistencyConfig::validate() const {
  require(tolerance > 0, "consistency.tolerance must be positive");
  require(match_reward >= 0 && match_reward <= 1 && num_reward >= 0 && num_reward <= 1 &&
              partial_reward >= 0 && partial_reward <= 1,
          "consistency rewards must lie in [0, 1]");
  require(match_reward >= num_reward && num_reward >= partial_reward,
          "consistency rewards must be ordered match >= num >= partial");
}

void ContinuousRewardConfig::validate() const {
  weights.validate();
  correctness.validate();
  perplexity.validate();
  reasoning.validate();
  consistency.validate();
}

double correctness_numeric(double pred, double truth, const CorrectnessConfig& cfg) {
  const double eps = std::fabs(pred - truth) / std::max(std::fabs(truth), 1.0);
  const double mag_pred = std::log10(std::max(std::fabs(pred), kMagnitudeFloor));
  const double mag_truth = std::log10(std::max(std::fabs(truth), kMagnitudeFloor));
  const double delta = std::fabs(mag_pred - mag_truth);
  const double score = cfg.alpha * std::exp(-eps) + cfg.beta / (1.0 + delta) +
                       (delta < 1.0 ? cfg.gamma : 0.0);
  return clamp01(score);
}

double correctness_text(std::string_view pred, std::string_view truth,
                        const CorrectnessConfig& cfg) {
  const double score = cfg.alpha_text * gestalt_similarity(pred, truth) +
                       cfg.beta_text * word_overlap(pred, truth);
  return clamp01(score);
}

double perplexity_reward(const SegmentLosses& losses, const PerplexityConfig& cfg) {
  losses.validate();
  const double lf = std::min(losses.full, cfg.loss_cap);
  const double lr = std::min(losses.reasoning, cfg.loss_cap);
  const double la = std::min(losses.answer, cfg.loss_cap);
  const double score = cfg.w_full * std::exp(-lf / cfg.tau_full) +
                       cfg.w_reasoning * std::exp(-lr / cfg.tau_reasoning) +
                       cfg.w_answer * std::exp(-la / cfg.tau_answer);
  return clamp01(score);
}

int count_words(std::string_view text) {
  int count = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

int count_step_indicators(std::string_view reasoning, const ReasoningQualityConfig& cfg) {
  int count = 0;
  // Whole lowercase words from the lexicon.
  std::string word;
  auto flush = [&] {
    if (!word.empty()) {
      for (const auto& token : cfg.step_tokens) {
        if (word == token) {
          ++count;
          break;
        }
      }
      word.clear();
    }
  };
  for (char c : reasoning) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      flush();
    }
  }
  flush();
  // Lines that open with an enumeration like "3." count as a step.
  size_t pos = 0;
  while (pos <= reasoning.size()) {
    size_t eol = reasoning.find('\n', pos);
    if (eol == std::string_view::npos) eol = reasoning.size();
    size_t i = pos;
    while (i < eol && (reasoning[i] == ' ' || reasoning[i] == '\t')) ++i;
    size_t digits = 0;
    while (i < eol && reasoning[i] >= '0' && reasoning[i] <= '9') {
      ++i;
      ++digits;
    }
    if (digits > 0 && i < eol && reasoning[i] == '.') ++count;
    if (eol == reasoning.size()) break;
    pos = eol + 1;
  }
  return count;
}

int count_math_indicators(std::string_view reasoning) {
  int count = 0;
  bool in_digits = false;
  for (size_t i = 0; i < reasoning.size();) {
    const char c = reasoning[i];
    if (c >= '0' && c <= '9') {
      if (!in_digits) ++count;  // each digit group counts once
      in_digits = true;
      ++i;
      continue;
    }
    in_digits = false;
    if (c == '+' || c == '*' || c == '/' || c == '=' || c == '%' || c == '-') {
      ++count;
      ++i;
      continue;
    }
    const auto rest = reasoning.substr(i);
    auto starts = [&](std::string_view utf8) {
      return rest.size() >= utf8.size() && rest.substr(0, utf8.size()) == utf8;
    };
    if (starts("−") || starts("×") || starts("÷")) {
      ++count;
      i += starts("−") ? 3 : 2;
      continue;
    }
    ++i;
  }
  return count;
}

double reasoning_quality(std::string_view reasoning, const ReasoningQualityConfig& cfg) {
  const int words = count_words(reasoning);
  double length_score = 0.0;
  if (words >= cfg.min_words && words <= cfg.max_words) {
    length_score =
        std::max(0.0, 1.0 - std::fabs(words - cfg.ideal_words) / cfg.penalty_factor);
  }
  const double step_score =
      std::min(1.0, static_cast<double>(count_step_indicators(reasoning, cfg)) /
                        static_cast<double>(cfg.step_threshold));
  const double math_score =
      std::min(1.0, static_cast<double>(count_math_indicators(reasoning)) /
                        static_cast<double>(cfg.math_threshold));
  return clamp01(cfg.w_length * length_score + cfg.w_steps * step_score +
                 cfg.w_math * math_score);
}

double consistency_reward(const ParsedCompletion& pred, const GroundTruth& truth,
                          const ConsistencyConfig& cfg) {
  const std::string reasoning = pred.reasoning.value_or("");
  const std::optional<double> reason_num = extract_number(reasoning);
  const std::optional<double> answer_num =
      cfg.compare_to_ground_truth ? truth.answer_numeric : pred.answer_numeric;
  if (reason_num && answer_num) {
    const double scale = std::max(std::fabs(*answer_num), 1.0);
    return std::fabs(*reason_num - *answer_num) <= cfg.tolerance * scale ? cfg.match_reward
                                                                         : cfg.num_reward;
  }
  if (reason_num || answer_num) {
    return cfg.partial_reward;
  }
  const std::string answer_text = cfg.compare_to_ground_truth
                                      ? truth.answer_text
                                      : pred.answer_text.value_or("");
  const double d = gestalt_similarity(reasoning, answer_text);
  if (d < 0.2) return 0.0;
  if (d < 0.8) return 0.5;
  return 1.0;
}

RewardBreakdown continuous_reward(const ParsedCompletion& pred, const GroundTruth& truth,
                                  const std::optional<SegmentLosses>& losses,
                                  const ContinuousRewardConfig& cfg) {
  RewardBreakdown out;
  out.kind = RewardKind::Continuous;

  double correctness = 0.0;
  if (pred.answer_numeric && truth.answer_numeric) {
    correctness = correctness_numeric(*pred.answer_numeric, *truth.answer_numeric,
                                      cfg.correctness);
  } else {
    correctness = correctness_text(pred.answer_text.value_or(""), truth.answer_text,
                                   cfg.correctness);
  }

  double perplexity = 0.0;
  if (losses) {
    perplexity = perplexity_reward(*losses, cfg.perplexity);
  } else {
    out.missing_losses = true;
  }

  const double reasoning = reasoning_quality(pred.reasoning.value_or(""), cfg.reasoning);
  const double consistency = consistency_reward(pred, truth, cfg.consistency);

  out.components["correctness"] = correctness;
  out.components["perplexity"] = perplexity;
  out.components["reasoning"] = reasoning;
  out.components["consistency"] = consistency;
  out.weights["correctness"] = cfg.weights.correctness;
  out.weights["perplexity"] = cfg.weights.perplexity;
  out.weights["reasoning"] = cfg.weights.reasoning;
  out.weights["consistency"] = cfg.weights.consistency;
  out.total = clamp01(cfg.weights.correctness * correctness +
                      cfg.weights.perplexity * perplexity +
                      cfg.weights.reasoning * reasoning +
                      cfg.weights.consistency * consistency);
  return out;
}

}  // namespace rewardlab
