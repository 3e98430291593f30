#include "rewardlab/analytics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rewardlab {

void AnalysisConfig::validate() const {
  if (!(cohens_d_small > 0 && cohens_d_small < cohens_d_medium &&
        cohens_d_medium < cohens_d_large)) {
    throw std::invalid_argument("analysis effect-size thresholds must increase from > 0");
  }
  if (w_accuracy < 0 || w_stability < 0 || w_convergence < 0) {
    throw std::invalid_argument("analysis score weights must be non-negative");
  }
  if (convergence_normalization <= 0) {
    throw std::invalid_argument("analysis.convergence_normalization must be positive");
  }
  if (p_value_threshold <= 0 || p_value_threshold >= 1) {
    throw std::invalid_argument("analysis.p_value_threshold must lie in (0, 1)");
  }
}

std::string to_string(EffectLabel label) {
  switch (label) {
    case EffectLabel::Negligible: return "Negligible";
    case EffectLabel::Small: return "Small";
    case EffectLabel::Medium: return "Medium";
    case EffectLabel::Large: return "Large";
  }
  return "Negligible";
}

double stability(const std::vector<double>& rewards) {
  if (rewards.empty()) throw std::invalid_argument("stability: empty reward stream");
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= static_cast<double>(rewards.size());
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  var /= static_cast<double>(rewards.size());
  return 1.0 / (1.0 + var);
}

long convergence_step(const RunLog& log) {
  if (log.records.empty()) throw std::invalid_argument("convergence_step: empty run log");
  double max_acc = -std::numeric_limits<double>::infinity();
  for (const auto& rec : log.records) max_acc = std::max(max_acc, rec.accuracy);
  for (const auto& rec : log.records) {
    if (rec.accuracy >= max_acc - 1e-12) return rec.step;
  }
  return log.records.back().step;
}

namespace {

// Continued-fraction kernel of the incomplete beta (Lentz's method).
double incomplete_beta_cf(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto rc = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), rc.ptr);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("incomplete beta: a, b must be positive");
  if (x < 0 || x > 1) throw std::invalid_argument("incomplete beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * incomplete_beta_cf(a, b, x) / a;
  }
  return 1.0 - std::exp(ln_front) * incomplete_beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
  if (dof <= 0) throw std::invalid_argument("t distribution: dof must be positive");
  if (!std::isfinite(t)) return 0.0;
  const double x = dof / (dof + t * t);
  return regularized_incomplete_beta(dof / 2.0, 0.5, x);
}

EffectLabel effect_size_label(double cohens_d, const AnalysisConfig& cfg) {
  const double mag = std::fabs(cohens_d);
  if (mag >= cfg.cohens_d_large) return EffectLabel::Large;
  if (mag >= cfg.cohens_d_medium) return EffectLabel::Medium;
  if (mag >= cfg.cohens_d_small) return EffectLabel::Small;
  return EffectLabel::Negligible;
}

StatsResult compare_runs(const std::vector<double>& a, const std::vector<double>& b,
                         const AnalysisConfig& cfg) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("compare_runs: samples must have equal length");
  }
  if (a.size() < 2) throw std::invalid_argument("compare_runs: need n >= 2");
  const double n = static_cast<double>(a.size());

  auto mean_of = [n](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    return m / n;
  };
  auto sample_var = [n](const std::vector<double>& v, double m) {
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (n - 1.0);
  };

  const double m1 = mean_of(a);
  const double m2 = mean_of(b);
  const double sp = std::sqrt((sample_var(a, m1) + sample_var(b, m2)) / 2.0);
  if (sp == 0.0) {
    throw std::invalid_argument("compare_runs: zero pooled variance");
  }

  StatsResult out;
  out.pooled_std = sp;
  out.t = (m1 - m2) / (sp * std::sqrt(2.0 / n));
  out.cohens_d = (m1 - m2) / sp;
  out.p = student_t_two_sided_p(out.t, 2.0 * n - 2.0);
  out.effect_label = effect_size_label(out.cohens_d, cfg);
  return out;
}

double weighted_score(double accuracy, double stability_value, double convergence,
                      const AnalysisConfig& cfg) {
  const double speed = std::max(0.0, 1.0 - convergence / cfg.convergence_normalization);
  return cfg.w_accuracy * accuracy + cfg.w_stability * stability_value +
         cfg.w_convergence * speed;
}

RunSummary summarize_run(const RunLog& log, const AnalysisConfig& cfg) {
  if (log.records.empty()) throw std::invalid_argument("summarize_run: empty run log");
  RunSummary out;
  out.scheme = to_string(log.scheme);
  out.final_accuracy = log.records.back().accuracy;
  out.final_perplexity = log.records.back().perplexity;
  out.convergence = convergence_step(log);
  std::vector<double> rewards;
  rewards.reserve(log.records.size());
  double reward_sum = 0.0;
  for (const auto& rec : log.records) {
    rewards.push_back(rec.avg_reward);
    reward_sum += rec.avg_reward;
  }
  out.stability = stability(rewards);
  out.avg_reward = reward_sum / static_cast<double>(log.records.size());
  out.weighted = weighted_score(out.final_accuracy, out.stability,
                                static_cast<double>(out.convergence), cfg);
  return out;
}

HeatmapTable heatmap_export(const std::vector<RunLog>& logs, const AnalysisConfig& cfg) {
  if (logs.empty()) throw std::invalid_argument("heatmap_export: need at least one run log");
  HeatmapTable table;
  table.columns = {"final_accuracy", "final_perplexity", "convergence_step",
                   "stability",      "avg_reward",       "convergence_norm"};
  for (const auto& log : logs) {
    const RunSummary s = summarize_run(log, cfg);
    table.row_labels.push_back(s.scheme);
    table.values.push_back({s.final_accuracy, s.final_perplexity,
                            static_cast<double>(s.convergence), s.stability, s.avg_reward,
                            static_cast<double>(s.convergence) /
                                cfg.convergence_normalization});
  }
  return table;
}

std::string heatmap_to_csv(const HeatmapTable& table) {
  std::string out = "scheme";
  for (const auto& col : table.columns) {
    out += ',';
    out += col;
  }
  out += '\n';
  for (size_t i = 0; i < table.row_labels.size(); ++i) {
    out += table.row_labels[i];
    for (double v : table.values[i]) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace rewardlab
