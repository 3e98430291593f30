#include "rewardlab/grpo.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace rewardlab {

namespace {

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

uint64_t int_draw(std::mt19937_64& rng, uint64_t bound) {
  return rng() % bound;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto rc = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), rc.ptr);
}

constexpr const char* kFiller[] = {
    "we",    "keep",  "track",    "of",     "each",  "quantity", "and",
    "note",  "how",   "the",      "parts",  "relate", "before",  "adding",
    "them",  "up",    "carefully", "while", "checking", "every", "value",
    "against", "what", "the",     "problem", "actually", "asks", "for"};
constexpr size_t kFillerCount = sizeof(kFiller) / sizeof(kFiller[0]);

}  // namespace

double sigmoid(double x) {
  return 1.0 / (1.0 + std::exp(-x));
}

AdvantageSet normalize_group(const CompletionGroup& group, double epsilon) {
  if (group.rewards.empty()) {
    throw std::invalid_argument("normalize_group: empty reward group");
  }
  if (epsilon <= 0.0) {
    throw std::invalid_argument("normalize_group: epsilon must be positive");
  }
  for (double r : group.rewards) {
    if (!std::isfinite(r)) {
      throw std::invalid_argument("normalize_group: rewards must be finite");
    }
  }
  const double n = static_cast<double>(group.rewards.size());
  double mean = 0.0;
  for (double r : group.rewards) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : group.rewards) var += (r - mean) * (r - mean);
  var /= n;
  const double stddev = std::sqrt(var);

  AdvantageSet out;
  out.mean = mean;
  out.stddev = stddev;
  out.advantages.resize(group.rewards.size());
  if (stddev < epsilon) {
    std::fill(out.advantages.begin(), out.advantages.end(), 0.0);
  } else {
    for (size_t i = 0; i < group.rewards.size(); ++i) {
      out.advantages[i] = (group.rewards[i] - mean) / stddev;
    }
  }
  return out;
}

std::vector<PromptCase> make_synthetic_dataset(int size, int buckets) {
  if (size < 1) throw std::invalid_argument("synthetic dataset size must be >= 1");
  if (buckets < 1) throw std::invalid_argument("difficulty buckets must be >= 1");
  std::vector<PromptCase> out;
  out.reserve(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) {
    const long a = 7 + 3L * i;
    const long b = 5 + 2L * i;
    PromptCase pc;
    pc.id = "p" + std::to_string(i);
    pc.prompt = "What is " + std::to_string(a) + " plus " + std::to_string(b) + "?";
    pc.truth = GroundTruth::from_text(std::to_string(a + b));
    pc.bucket = i % buckets;
    out.push_back(std::move(pc));
  }
  return out;
}

SampledCompletion sample_completion(const SyntheticPolicy& policy, const PromptCase& prompt,
                                    std::mt19937_64& rng) {
  if (policy.buckets.empty()) {
    throw std::invalid_argument("synthetic policy has no parameter buckets");
  }
  const size_t bucket = static_cast<size_t>(prompt.bucket) % policy.buckets.size();
  const PolicyParams& params = policy.buckets[bucket];

  const bool formatted = unit_draw(rng) < sigmoid(params.format_logit);
  const bool correct = formatted && unit_draw(rng) < sigmoid(params.correct_logit);

  const double truth_value = prompt.truth.answer_numeric.value_or(0.0);
  const long wrong_offset = 1 + static_cast<long>(int_draw(rng, 9));
  const double answer = correct ? truth_value : truth_value + static_cast<double>(wrong_offset);

  const long target_words = 40 + static_cast<long>(int_draw(rng, 121));
  const bool second_guess = unit_draw(rng) < 0.25;

  std::string reasoning = "First restate the problem. Then work it out: ";
  reasoning += format_double(truth_value - 5.0) + " + 5 = " + format_double(truth_value) + ".";
  long words = count_words(reasoning);
  size_t filler_index = int_draw(rng, kFillerCount);
  while (words + 6 < target_words) {
    reasoning += ' ';
    reasoning += kFiller[filler_index % kFillerCount];
    ++filler_index;
    ++words;
  }
  reasoning += " Finally the total is " + format_double(answer) + ".";
  if (second_guess) {
    // Occasionally end on a conflicting number so the consistency component
    // sees genuine disagreement between reasoning and answer.
    reasoning += " Double checking gives " + format_double(answer + 1.0) + ".";
  }

  SampledCompletion out;
  out.bucket = static_cast<int>(bucket);
  out.formatted = formatted;
  out.correct = correct;
  if (formatted) {
    out.text = "<reasoning>" + reasoning + "</reasoning>\n<answer>" + format_double(answer) +
               "</answer>";
  } else {
    out.text = reasoning + " The answer is " + format_double(answer) + ".";
  }
  return out;
}

SyntheticPolicy policy_update(const SyntheticPolicy& policy,
                              const std::vector<SampledCompletion>& completions,
                              const std::vector<double>& advantages, double learning_rate) {
  if (completions.size() != advantages.size()) {
    throw std::invalid_argument("policy_update: completions and advantages differ in length");
  }
  SyntheticPolicy next = policy;
  for (size_t i = 0; i < completions.size(); ++i) {
    const auto& c = completions[i];
    if (c.bucket < 0 || static_cast<size_t>(c.bucket) >= next.buckets.size()) {
      throw std::invalid_argument("policy_update: completion bucket out of range");
    }
    PolicyParams& p = next.buckets[static_cast<size_t>(c.bucket)];
    if (c.correct) p.correct_logit += learning_rate * advantages[i];
    if (c.formatted) p.format_logit += learning_rate * advantages[i];
  }
  return next;
}

void TrainRunConfig::validate() const {
  if (total_steps < 1) throw std::invalid_argument("train.total_steps must be >= 1");
  if (group_size < 1) throw std::invalid_argument("train.group_size must be >= 1");
  if (learning_rate <= 0) throw std::invalid_argument("train.learning_rate must be positive");
  if (epsilon <= 0) throw std::invalid_argument("train.epsilon must be positive");
  if (dataset_size < 1) throw std::invalid_argument("train.dataset_size must be >= 1");
  if (difficulty_buckets < 1) {
    throw std::invalid_argument("train.difficulty_buckets must be >= 1");
  }
}

void RewardSetup::validate() const {
  hard.validate();
  cont.validate();
  schedule.validate();
}

namespace {

void accumulate_components(const RewardBreakdown& bd, std::map<std::string, double>& sums) {
  for (const auto& [name, value] : bd.components) sums[name] += value;
  if (bd.kind == RewardKind::Hybrid && bd.parts.size() == 2) {
    for (const auto& [name, value] : bd.parts[0].components) sums["hard." + name] += value;
    for (const auto& [name, value] : bd.parts[1].components) sums["cont." + name] += value;
  }
}

}  // namespace

RunLog run_training(const TrainRunConfig& cfg, const RewardSetup& rewards,
                    SyntheticPolicy policy, const std::vector<PromptCase>& dataset) {
  cfg.validate();
  rewards.validate();
  if (dataset.empty()) throw std::invalid_argument("run_training: dataset must be non-empty");
  if (policy.buckets.empty()) {
    throw std::invalid_argument("run_training: policy has no parameter buckets");
  }

  const bool hybrid = cfg.scheme == RewardScheme::HybridContToHard ||
                      cfg.scheme == RewardScheme::HybridHardToCont;
  ScheduleConfig schedule = rewards.schedule;
  if (hybrid) {
    schedule.direction = cfg.scheme == RewardScheme::HybridContToHard
                             ? ScheduleDirection::ContToHard
                             : ScheduleDirection::HardToCont;
  }
  ScheduleState sched = hybrid ? advance(initial_state(schedule), schedule) : ScheduleState{};

  std::mt19937_64 rng(cfg.seed);
  RunLog log;
  log.scheme = cfg.scheme;
  log.records.reserve(static_cast<size_t>(cfg.total_steps));

  for (long step = 1; step <= cfg.total_steps; ++step) {
    const PromptCase& prompt = dataset[static_cast<size_t>((step - 1) % dataset.size())];

    std::vector<SampledCompletion> completions;
    completions.reserve(static_cast<size_t>(cfg.group_size));
    for (int g = 0; g < cfg.group_size; ++g) {
      completions.push_back(sample_completion(policy, prompt, rng));
    }

    CompletionGroup group;
    group.prompt_id = prompt.id;
    MetricsRecord rec;
    rec.step = step;
    std::map<std::string, double> component_sums;
    double accuracy_sum = 0.0;
    double perplexity_sum = 0.0;

    for (const auto& completion : completions) {
      const ParsedCompletion parsed = parse_completion(completion.text);
      const SegmentLosses losses = rewards.loss_model.losses(
          completion.text, parsed.reasoning.value_or(""), parsed.answer_text.value_or(""));

      RewardBreakdown bd;
      switch (cfg.scheme) {
        case RewardScheme::Hard:
          bd = hard_reward(parsed, prompt.truth, rewards.hard);
          break;
        case RewardScheme::Continuous:
          bd = continuous_reward(parsed, prompt.truth, losses, rewards.cont);
          break;
        case RewardScheme::HybridContToHard:
        case RewardScheme::HybridHardToCont: {
          const RewardBreakdown hard_bd = hard_reward(parsed, prompt.truth, rewards.hard);
          const RewardBreakdown cont_bd =
              continuous_reward(parsed, prompt.truth, losses, rewards.cont);
          bd = hybrid_reward(hard_bd, cont_bd, sched);
          break;
        }
      }
      group.rewards.push_back(bd.total);
      accumulate_components(bd, component_sums);
      accuracy_sum += answers_match(parsed, prompt.truth) ? 1.0 : 0.0;
      perplexity_sum += std::exp(losses.full);
    }

    const AdvantageSet advantages = normalize_group(group, cfg.epsilon);
    policy = policy_update(policy, completions, advantages.advantages, cfg.learning_rate);

    const double g = static_cast<double>(cfg.group_size);
    rec.accuracy = accuracy_sum / g;
    rec.avg_reward = advantages.mean;
    rec.perplexity = perplexity_sum / g;
    for (auto& [name, sum] : component_sums) rec.components[name] = sum / g;
    if (hybrid) {
      rec.w_hard = sched.w_hard;
      rec.w_cont = sched.w_cont;
      sched = advance(sched, schedule);
    } else {
      rec.w_hard = cfg.scheme == RewardScheme::Hard ? 1.0 : 0.0;
      rec.w_cont = 1.0 - rec.w_hard;
    }
    for (const auto& params : policy.buckets) {
      rec.policy_correct_logits.push_back(params.correct_logit);
      rec.policy_format_logits.push_back(params.format_logit);
    }
    log.records.push_back(std::move(rec));
  }
  return log;
}

RunLog run_training(const TrainRunConfig& cfg, const RewardSetup& rewards) {
  cfg.validate();
  SyntheticPolicy policy;
  policy.buckets.assign(static_cast<size_t>(cfg.difficulty_buckets),
                        PolicyParams{cfg.initial_correct_logit, cfg.initial_format_logit});
  policy.noise_seed = cfg.seed;
  return run_training(cfg, rewards, std::move(policy),
                      make_synthetic_dataset(cfg.dataset_size, cfg.difficulty_buckets));
}

}  // namespace rewardlab
