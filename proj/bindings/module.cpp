#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rewardlab/analytics.hpp"
#include "rewardlab/config.hpp"
#include "rewardlab/grpo.hpp"
#include "rewardlab/jsonio.hpp"
#include "rewardlab/parsing.hpp"
#include "rewardlab/reward_continuous.hpp"
#include "rewardlab/reward_hard.hpp"
#include "rewardlab/run_log.hpp"
#include "rewardlab/schedule.hpp"
#include "rewardlab/similarity.hpp"
#include "rewardlab/surrogate_loss.hpp"

namespace py = pybind11;
using namespace rewardlab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reward shaping toolkit: completion parsing, hard/continuous/hybrid "
            "rewards, GRPO-style simulation, and run analytics";

  // ---- parsing ----
  py::class_<ParsedCompletion>(m, "ParsedCompletion")
      .def(py::init<>())
      .def_readwrite("raw", &ParsedCompletion::raw)
      .def_readwrite("reasoning", &ParsedCompletion::reasoning)
      .def_readwrite("answer_text", &ParsedCompletion::answer_text)
      .def_readwrite("has_reasoning_tag", &ParsedCompletion::has_reasoning_tag)
      .def_readwrite("has_answer_tag", &ParsedCompletion::has_answer_tag)
      .def_readwrite("answer_numeric", &ParsedCompletion::answer_numeric);

  py::class_<GroundTruth>(m, "GroundTruth")
      .def(py::init<>())
      .def_static("from_text", &GroundTruth::from_text)
      .def_readwrite("answer_text", &GroundTruth::answer_text)
      .def_readwrite("answer_numeric", &GroundTruth::answer_numeric);

  m.def("parse_completion", &parse_completion, py::arg("raw"));
  m.def("extract_number", &extract_number, py::arg("text"));
  m.def("answers_match", &answers_match, py::arg("pred"), py::arg("truth"));
  m.def("normalize_answer_text", &normalize_answer_text, py::arg("text"));

  // ---- similarity ----
  m.def("gestalt_similarity", &gestalt_similarity, py::arg("a"), py::arg("b"));
  m.def("word_overlap", &word_overlap, py::arg("a"), py::arg("b"));

  // ---- rewards ----
  py::enum_<RewardKind>(m, "RewardKind")
      .value("Hard", RewardKind::Hard)
      .value("Continuous", RewardKind::Continuous)
      .value("Hybrid", RewardKind::Hybrid);

  py::class_<RewardBreakdown>(m, "RewardBreakdown")
      .def(py::init<>())
      .def_readwrite("kind", &RewardBreakdown::kind)
      .def_readwrite("total", &RewardBreakdown::total)
      .def_readwrite("components", &RewardBreakdown::components)
      .def_readwrite("weights", &RewardBreakdown::weights)
      .def_readwrite("missing_losses", &RewardBreakdown::missing_losses)
      .def_readwrite("parts", &RewardBreakdown::parts)
      .def("to_json", [](const RewardBreakdown& bd) { return breakdown_to_json(bd).dump(); });

  py::class_<HardRewardConfig>(m, "HardRewardConfig")
      .def(py::init<>())
      .def_readwrite("format_bonus", &HardRewardConfig::format_bonus)
      .def_readwrite("clamp_max", &HardRewardConfig::clamp_max)
      .def("validate", &HardRewardConfig::validate);

  m.def("hard_reward", &hard_reward, py::arg("pred"), py::arg("truth"),
        py::arg("cfg") = HardRewardConfig{});

  py::class_<ContinuousWeights>(m, "ContinuousWeights")
      .def(py::init<>())
      .def_readwrite("correctness", &ContinuousWeights::correctness)
      .def_readwrite("perplexity", &ContinuousWeights::perplexity)
      .def_readwrite("reasoning", &ContinuousWeights::reasoning)
      .def_readwrite("consistency", &ContinuousWeights::consistency)
      .def("validate", &ContinuousWeights::validate);

  py::class_<CorrectnessConfig>(m, "CorrectnessConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &CorrectnessConfig::alpha)
      .def_readwrite("beta", &CorrectnessConfig::beta)
      .def_readwrite("gamma", &CorrectnessConfig::gamma)
      .def_readwrite("alpha_text", &CorrectnessConfig::alpha_text)
      .def_readwrite("beta_text", &CorrectnessConfig::beta_text)
      .def("validate", &CorrectnessConfig::validate);

  py::class_<PerplexityConfig>(m, "PerplexityConfig")
      .def(py::init<>())
      .def_readwrite("w_full", &PerplexityConfig::w_full)
      .def_readwrite("w_reasoning", &PerplexityConfig::w_reasoning)
      .def_readwrite("w_answer", &PerplexityConfig::w_answer)
      .def_readwrite("tau_full", &PerplexityConfig::tau_full)
      .def_readwrite("tau_reasoning", &PerplexityConfig::tau_reasoning)
      .def_readwrite("tau_answer", &PerplexityConfig::tau_answer)
      .def_readwrite("loss_cap", &PerplexityConfig::loss_cap)
      .def("validate", &PerplexityConfig::validate);

  py::class_<SegmentLosses>(m, "SegmentLosses")
      .def(py::init<>())
      .def(py::init([](double full, double reasoning, double answer) {
             return SegmentLosses{full, reasoning, answer};
           }),
           py::arg("full"), py::arg("reasoning"), py::arg("answer"))
      .def_readwrite("full", &SegmentLosses::full)
      .def_readwrite("reasoning", &SegmentLosses::reasoning)
      .def_readwrite("answer", &SegmentLosses::answer);

  py::class_<ReasoningQualityConfig>(m, "ReasoningQualityConfig")
      .def(py::init<>())
      .def_readwrite("min_words", &ReasoningQualityConfig::min_words)
      .def_readwrite("max_words", &ReasoningQualityConfig::max_words)
      .def_readwrite("ideal_words", &ReasoningQualityConfig::ideal_words)
      .def_readwrite("penalty_factor", &ReasoningQualityConfig::penalty_factor)
      .def_readwrite("step_threshold", &ReasoningQualityConfig::step_threshold)
      .def_readwrite("math_threshold", &ReasoningQualityConfig::math_threshold)
      .def_readwrite("w_length", &ReasoningQualityConfig::w_length)
      .def_readwrite("w_steps", &ReasoningQualityConfig::w_steps)
      .def_readwrite("w_math", &ReasoningQualityConfig::w_math)
      .def_readwrite("step_tokens", &ReasoningQualityConfig::step_tokens)
      .def("validate", &ReasoningQualityConfig::validate);

  py::class_<ConsistencyConfig>(m, "ConsistencyConfig")
      .def(py::init<>())
      .def_readwrite("tolerance", &ConsistencyConfig::tolerance)
      .def_readwrite("match_reward", &ConsistencyConfig::match_reward)
      .def_readwrite("num_reward", &ConsistencyConfig::num_reward)
      .def_readwrite("partial_reward", &ConsistencyConfig::partial_reward)
      .def_readwrite("compare_to_ground_truth", &ConsistencyConfig::compare_to_ground_truth)
      .def("validate", &ConsistencyConfig::validate);

  py::class_<ContinuousRewardConfig>(m, "ContinuousRewardConfig")
      .def(py::init<>())
      .def_readwrite("weights", &ContinuousRewardConfig::weights)
      .def_readwrite("correctness", &ContinuousRewardConfig::correctness)
      .def_readwrite("perplexity", &ContinuousRewardConfig::perplexity)
      .def_readwrite("reasoning", &ContinuousRewardConfig::reasoning)
      .def_readwrite("consistency", &ContinuousRewardConfig::consistency)
      .def("validate", &ContinuousRewardConfig::validate);

  m.def("correctness_numeric", &correctness_numeric, py::arg("pred"), py::arg("truth"),
        py::arg("cfg") = CorrectnessConfig{});
  m.def("correctness_text", &correctness_text, py::arg("pred"), py::arg("truth"),
        py::arg("cfg") = CorrectnessConfig{});
  m.def("perplexity_reward", &perplexity_reward, py::arg("losses"),
        py::arg("cfg") = PerplexityConfig{});
  m.def("reasoning_quality", &reasoning_quality, py::arg("reasoning"),
        py::arg("cfg") = ReasoningQualityConfig{});
  m.def("consistency_reward", &consistency_reward, py::arg("pred"), py::arg("truth"),
        py::arg("cfg") = ConsistencyConfig{});
  m.def("continuous_reward", &continuous_reward, py::arg("pred"), py::arg("truth"),
        py::arg("losses") = std::nullopt, py::arg("cfg") = ContinuousRewardConfig{});

  // ---- schedule ----
  py::enum_<ScheduleDirection>(m, "ScheduleDirection")
      .value("ContToHard", ScheduleDirection::ContToHard)
      .value("HardToCont", ScheduleDirection::HardToCont)
      .value("ConstantMix", ScheduleDirection::ConstantMix);

  py::class_<MixWeights>(m, "MixWeights")
      .def(py::init<>())
      .def(py::init([](double hard, double cont) { return MixWeights{hard, cont}; }),
           py::arg("hard"), py::arg("cont"))
      .def_readwrite("hard", &MixWeights::hard)
      .def_readwrite("cont", &MixWeights::cont);

  py::class_<ScheduleConfig>(m, "ScheduleConfig")
      .def(py::init<>())
      .def_readwrite("direction", &ScheduleConfig::direction)
      .def_readwrite("t_start", &ScheduleConfig::t_start)
      .def_readwrite("t_end", &ScheduleConfig::t_end)
      .def_readwrite("fixed_mix", &ScheduleConfig::fixed_mix)
      .def("validate", &ScheduleConfig::validate);

  py::class_<ScheduleState>(m, "ScheduleState")
      .def(py::init<>())
      .def_readwrite("step", &ScheduleState::step)
      .def_readwrite("w_hard", &ScheduleState::w_hard)
      .def_readwrite("w_cont", &ScheduleState::w_cont);

  m.def("weights_at", [](const ScheduleConfig& cfg, long step) {
          const MixWeights w = weights_at(cfg, step);
          return std::make_pair(w.hard, w.cont);
        },
        py::arg("cfg"), py::arg("step"));
  m.def("initial_state", &initial_state, py::arg("cfg"));
  m.def("advance", &advance, py::arg("state"), py::arg("cfg"));
  m.def("hybrid_reward", &hybrid_reward, py::arg("hard"), py::arg("cont"), py::arg("state"));

  // ---- grpo ----
  py::class_<CompletionGroup>(m, "CompletionGroup")
      .def(py::init<>())
      .def(py::init([](std::string prompt_id, std::vector<double> rewards) {
             return CompletionGroup{std::move(prompt_id), std::move(rewards)};
           }),
           py::arg("prompt_id"), py::arg("rewards"))
      .def_readwrite("prompt_id", &CompletionGroup::prompt_id)
      .def_readwrite("rewards", &CompletionGroup::rewards);

  py::class_<AdvantageSet>(m, "AdvantageSet")
      .def(py::init<>())
      .def_readwrite("advantages", &AdvantageSet::advantages)
      .def_readwrite("mean", &AdvantageSet::mean)
      .def_readwrite("stddev", &AdvantageSet::stddev);

  m.def("normalize_group", &normalize_group, py::arg("group"), py::arg("epsilon") = 1e-8);
  m.def("normalize_group",
        [](const std::vector<double>& rewards, double epsilon) {
          return normalize_group(CompletionGroup{"group", rewards}, epsilon);
        },
        py::arg("rewards"), py::arg("epsilon") = 1e-8);

  py::class_<PromptCase>(m, "PromptCase")
      .def(py::init<>())
      .def_readwrite("id", &PromptCase::id)
      .def_readwrite("prompt", &PromptCase::prompt)
      .def_readwrite("truth", &PromptCase::truth)
      .def_readwrite("bucket", &PromptCase::bucket);

  m.def("make_synthetic_dataset", &make_synthetic_dataset, py::arg("size"),
        py::arg("buckets") = 1);

  py::class_<PolicyParams>(m, "PolicyParams")
      .def(py::init<>())
      .def(py::init([](double correct_logit, double format_logit) {
             return PolicyParams{correct_logit, format_logit};
           }),
           py::arg("correct_logit"), py::arg("format_logit"))
      .def_readwrite("correct_logit", &PolicyParams::correct_logit)
      .def_readwrite("format_logit", &PolicyParams::format_logit);

  py::class_<SyntheticPolicy>(m, "SyntheticPolicy")
      .def(py::init<>())
      .def_readwrite("buckets", &SyntheticPolicy::buckets)
      .def_readwrite("noise_seed", &SyntheticPolicy::noise_seed);

  py::class_<SampledCompletion>(m, "SampledCompletion")
      .def(py::init<>())
      .def_readwrite("text", &SampledCompletion::text)
      .def_readwrite("formatted", &SampledCompletion::formatted)
      .def_readwrite("correct", &SampledCompletion::correct)
      .def_readwrite("bucket", &SampledCompletion::bucket);

  m.def("policy_update", &policy_update, py::arg("policy"), py::arg("completions"),
        py::arg("advantages"), py::arg("learning_rate"));

  py::enum_<RewardScheme>(m, "RewardScheme")
      .value("Hard", RewardScheme::Hard)
      .value("Continuous", RewardScheme::Continuous)
      .value("HybridContToHard", RewardScheme::HybridContToHard)
      .value("HybridHardToCont", RewardScheme::HybridHardToCont);

  py::class_<TrainRunConfig>(m, "TrainRunConfig")
      .def(py::init<>())
      .def_readwrite("total_steps", &TrainRunConfig::total_steps)
      .def_readwrite("group_size", &TrainRunConfig::group_size)
      .def_readwrite("seed", &TrainRunConfig::seed)
      .def_readwrite("learning_rate", &TrainRunConfig::learning_rate)
      .def_readwrite("scheme", &TrainRunConfig::scheme)
      .def_readwrite("epsilon", &TrainRunConfig::epsilon)
      .def_readwrite("dataset_size", &TrainRunConfig::dataset_size)
      .def_readwrite("difficulty_buckets", &TrainRunConfig::difficulty_buckets)
      .def_readwrite("initial_correct_logit", &TrainRunConfig::initial_correct_logit)
      .def_readwrite("initial_format_logit", &TrainRunConfig::initial_format_logit)
      .def("validate", &TrainRunConfig::validate);

  py::class_<SurrogateLossModel>(m, "SurrogateLossModel")
      .def(py::init<>())
      .def_readwrite("seed", &SurrogateLossModel::seed)
      .def_readwrite("min_loss", &SurrogateLossModel::min_loss)
      .def_readwrite("max_loss", &SurrogateLossModel::max_loss)
      .def("text_loss", &SurrogateLossModel::text_loss, py::arg("text"))
      .def("losses", &SurrogateLossModel::losses, py::arg("full"), py::arg("reasoning"),
           py::arg("answer"));

  py::class_<RewardSetup>(m, "RewardSetup")
      .def(py::init<>())
      .def_readwrite("hard", &RewardSetup::hard)
      .def_readwrite("cont", &RewardSetup::cont)
      .def_readwrite("schedule", &RewardSetup::schedule)
      .def_readwrite("loss_model", &RewardSetup::loss_model);

  m.def("run_training",
        py::overload_cast<const TrainRunConfig&, const RewardSetup&, SyntheticPolicy,
                          const std::vector<PromptCase>&>(&run_training),
        py::arg("cfg"), py::arg("rewards"), py::arg("policy"), py::arg("dataset"));
  m.def("run_training",
        py::overload_cast<const TrainRunConfig&, const RewardSetup&>(&run_training),
        py::arg("cfg"), py::arg("rewards") = RewardSetup{});

  // ---- run log / analytics ----
  py::class_<MetricsRecord>(m, "MetricsRecord")
      .def(py::init<>())
      .def_readwrite("step", &MetricsRecord::step)
      .def_readwrite("w_hard", &MetricsRecord::w_hard)
      .def_readwrite("w_cont", &MetricsRecord::w_cont)
      .def_readwrite("accuracy", &MetricsRecord::accuracy)
      .def_readwrite("avg_reward", &MetricsRecord::avg_reward)
      .def_readwrite("perplexity", &MetricsRecord::perplexity)
      .def_readwrite("components", &MetricsRecord::components)
      .def_readwrite("policy_correct_logits", &MetricsRecord::policy_correct_logits)
      .def_readwrite("policy_format_logits", &MetricsRecord::policy_format_logits);

  py::class_<RunLog>(m, "RunLog")
      .def(py::init<>())
      .def_readwrite("scheme", &RunLog::scheme)
      .def_readwrite("records", &RunLog::records)
      .def("validate", &RunLog::validate)
      .def("to_jsonl", [](const RunLog& log) { return to_jsonl(log); });

  m.def("write_run_log", &write_run_log, py::arg("log"), py::arg("path"));
  m.def("read_run_log", &read_run_log, py::arg("path"));

  py::enum_<EffectLabel>(m, "EffectLabel")
      .value("Negligible", EffectLabel::Negligible)
      .value("Small", EffectLabel::Small)
      .value("Medium", EffectLabel::Medium)
      .value("Large", EffectLabel::Large);

  py::class_<AnalysisConfig>(m, "AnalysisConfig")
      .def(py::init<>())
      .def_readwrite("cohens_d_small", &AnalysisConfig::cohens_d_small)
      .def_readwrite("cohens_d_medium", &AnalysisConfig::cohens_d_medium)
      .def_readwrite("cohens_d_large", &AnalysisConfig::cohens_d_large)
      .def_readwrite("w_accuracy", &AnalysisConfig::w_accuracy)
      .def_readwrite("w_stability", &AnalysisConfig::w_stability)
      .def_readwrite("w_convergence", &AnalysisConfig::w_convergence)
      .def_readwrite("convergence_normalization", &AnalysisConfig::convergence_normalization)
      .def_readwrite("p_value_threshold", &AnalysisConfig::p_value_threshold)
      .def("validate", &AnalysisConfig::validate);

  py::class_<StatsResult>(m, "StatsResult")
      .def(py::init<>())
      .def_readwrite("t", &StatsResult::t)
      .def_readwrite("p", &StatsResult::p)
      .def_readwrite("cohens_d", &StatsResult::cohens_d)
      .def_readwrite("pooled_std", &StatsResult::pooled_std)
      .def_readwrite("effect_label", &StatsResult::effect_label);

  m.def("stability", &stability, py::arg("rewards"));
  m.def("convergence_step", &convergence_step, py::arg("log"));
  m.def("compare_runs", &compare_runs, py::arg("a"), py::arg("b"),
        py::arg("cfg") = AnalysisConfig{});
  m.def("effect_size_label", &effect_size_label, py::arg("cohens_d"),
        py::arg("cfg") = AnalysisConfig{});
  m.def("weighted_score", &weighted_score, py::arg("accuracy"), py::arg("stability"),
        py::arg("convergence_step"), py::arg("cfg") = AnalysisConfig{});
  m.def("regularized_incomplete_beta", &regularized_incomplete_beta, py::arg("a"),
        py::arg("b"), py::arg("x"));
  m.def("student_t_two_sided_p", &student_t_two_sided_p, py::arg("t"), py::arg("dof"));

  py::class_<RunSummary>(m, "RunSummary")
      .def(py::init<>())
      .def_readwrite("scheme", &RunSummary::scheme)
      .def_readwrite("final_accuracy", &RunSummary::final_accuracy)
      .def_readwrite("final_perplexity", &RunSummary::final_perplexity)
      .def_readwrite("convergence", &RunSummary::convergence)
      .def_readwrite("stability", &RunSummary::stability)
      .def_readwrite("avg_reward", &RunSummary::avg_reward)
      .def_readwrite("weighted", &RunSummary::weighted);

  m.def("summarize_run", &summarize_run, py::arg("log"), py::arg("cfg") = AnalysisConfig{});

  py::class_<HeatmapTable>(m, "HeatmapTable")
      .def(py::init<>())
      .def_readwrite("columns", &HeatmapTable::columns)
      .def_readwrite("row_labels", &HeatmapTable::row_labels)
      .def_readwrite("values", &HeatmapTable::values);

  m.def("heatmap_export", &heatmap_export, py::arg("logs"), py::arg("cfg") = AnalysisConfig{});
  m.def("heatmap_to_csv", &heatmap_to_csv, py::arg("table"));

  // ---- config ----
  py::class_<ToolConfig>(m, "ToolConfig")
      .def(py::init<>())
      .def_readwrite("preset", &ToolConfig::preset)
      .def_readwrite("hard", &ToolConfig::hard)
      .def_readwrite("cont", &ToolConfig::cont)
      .def_readwrite("schedule", &ToolConfig::schedule)
      .def_readwrite("train", &ToolConfig::train)
      .def_readwrite("analysis", &ToolConfig::analysis)
      .def("validate", &ToolConfig::validate);

  m.def("preset_config", &preset_config, py::arg("name"));
  m.def("load_config", &load_config, py::arg("path"));
  m.def("save_config", &save_config, py::arg("cfg"), py::arg("path"));
  m.def("config_to_text", &config_to_text, py::arg("cfg"));
  m.def("reward_setup_from", &reward_setup_from, py::arg("cfg"));
}
