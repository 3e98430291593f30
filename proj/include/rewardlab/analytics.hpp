#pragma once

#include <string>
#include <vector>

#include "rewardlab/run_log.hpp"

namespace rewardlab {

struct AnalysisConfig {
  double cohens_d_small = 0.2;
  double cohens_d_medium = 0.5;
  double cohens_d_large = 0.8;
  double w_accuracy = 0.4;
  double w_stability = 0.3;
  double w_convergence = 0.3;
  double convergence_normalization = 10.0;
  double p_value_threshold = 0.05;

  void validate() const;
  bool operator==(const AnalysisConfig&) const = default;
};

enum class EffectLabel { Negligible, Small, Medium, Large };

std::string to_string(EffectLabel label);

struct StatsResult {
  double t = 0.0;
  double p = 1.0;
  double cohens_d = 0.0;
  double pooled_std = 0.0;
  EffectLabel effect_label = EffectLabel::Negligible;
};

// 1 / (1 + population variance) of the reward stream.
double stability(const std::vector<double>& rewards);

// First step whose accuracy reaches the run's maximum (within 1e-12).
long convergence_step(const RunLog& log);

// Equal-n two-sample t-test with pooled std sqrt((s1^2 + s2^2) / 2) over
// sample variances, two-sided p from the t distribution with 2n-2 degrees
// of freedom, and Cohen's d with thresholded effect labels.
StatsResult compare_runs(const std::vector<double>& a, const std::vector<double>& b,
                         const AnalysisConfig& cfg = AnalysisConfig{});

// Thresholds are inclusive upward: |d| = small boundary already maps to Small.
EffectLabel effect_size_label(double cohens_d, const AnalysisConfig& cfg = AnalysisConfig{});

// w_acc * accuracy + w_stab * stability + w_conv * max(0, 1 - step / norm).
double weighted_score(double accuracy, double stability_value, double convergence,
                      const AnalysisConfig& cfg = AnalysisConfig{});

// Regularized incomplete beta I_x(a, b) via the standard continued-fraction
// expansion; used for the t CDF and exposed for its oracle test.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided p-value of a t statistic with the given degrees of freedom.
double student_t_two_sided_p(double t, double dof);

// Summary metrics of one run, as exported in tables.
struct RunSummary {
  std::string scheme;
  double final_accuracy = 0.0;
  double final_perplexity = 0.0;
  long convergence = 0;
  double stability = 0.0;
  double avg_reward = 0.0;
  double weighted = 0.0;
};

RunSummary summarize_run(const RunLog& log, const AnalysisConfig& cfg = AnalysisConfig{});

// One row per log, insertion order preserved. Columns follow the summary
// table layout: final accuracy, final perplexity, convergence step,
// stability, avg reward, plus the normalized convergence value.
struct HeatmapTable {
  std::vector<std::string> columns;
  std::vector<std::string> row_labels;
  std::vector<std::vector<double>> values;
};

HeatmapTable heatmap_export(const std::vector<RunLog>& logs,
                            const AnalysisConfig& cfg = AnalysisConfig{});

std::string heatmap_to_csv(const HeatmapTable& table);

}  // namespace rewardlab
