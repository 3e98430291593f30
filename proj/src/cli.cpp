#include "rewardlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rewardlab/analytics.hpp"
#include "rewardlab/config.hpp"
#include "rewardlab/grpo.hpp"
#include "rewardlab/jsonio.hpp"
#include "rewardlab/parsing.hpp"
#include "rewardlab/reward_continuous.hpp"
#include "rewardlab/reward_hard.hpp"
#include "rewardlab/run_log.hpp"
#include "rewardlab/schedule.hpp"

namespace rewardlab {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kConfigEnvVar = "REWARDLAB_CONFIG";

ToolConfig resolve_config(const std::string& config_path, const std::string& preset) {
  if (!config_path.empty()) return load_config(config_path);
  if (!preset.empty()) return preset_config(preset);
  if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
    return load_config(env);
  }
  return preset_config("paper-sec4");
}

// Stream that is either a file or the shared stdout.
struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = nullptr;

  static OutputTarget open(const std::string& path, std::ostream& fallback) {
    OutputTarget t;
    if (path.empty() || path == "-") {
      t.stream = &fallback;
      return t;
    }
    t.file.open(path, std::ios::binary);
    if (!t.file) throw std::runtime_error("cannot open for writing: " + path);
    t.stream = &t.file;
    return t;
  }
};

ScheduleDirection direction_for(RewardScheme scheme, const ScheduleConfig& cfg) {
  switch (scheme) {
    case RewardScheme::HybridContToHard: return ScheduleDirection::ContToHard;
    case RewardScheme::HybridHardToCont: return ScheduleDirection::HardToCont;
    default: return cfg.direction;
  }
}

bool is_hybrid(RewardScheme scheme) {
  return scheme == RewardScheme::HybridContToHard ||
         scheme == RewardScheme::HybridHardToCont;
}

int cmd_score(const ToolConfig& cfg, const std::string& input_path,
              RewardScheme scheme, long step, bool step_given,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (is_hybrid(scheme) && !step_given) {
    err << "score: --step is required for hybrid schemes\n";
    return 2;
  }

  ScheduleState sched;
  if (is_hybrid(scheme)) {
    ScheduleConfig schedule = cfg.schedule;
    schedule.direction = direction_for(scheme, cfg.schedule);
    schedule.validate();
    const MixWeights w = weights_at(schedule, step);
    sched = ScheduleState{step, w.hard, w.cont};
  }

  std::ifstream in(input_path, std::ios::binary);
  if (!in) {
    err << "score: cannot open input: " << input_path << "\n";
    return 1;
  }
  OutputTarget target = OutputTarget::open(out_path, out);

  std::set<std::string> seen_ids;
  std::string line;
  size_t line_no = 0;
  bool had_errors = false;
  while (std::getline(in, line)) {
    ++line_no;
    ordered_json result;
    try {
      const ordered_json j = ordered_json::parse(line);
      BatchRecord rec = batch_record_from_json(j);
      if (!seen_ids.insert(rec.id).second) {
        throw std::invalid_argument("duplicate id '" + rec.id + "'");
      }
      const ParsedCompletion parsed = parse_completion(rec.completion);
      const GroundTruth truth = GroundTruth::from_text(rec.truth);

      RewardBreakdown bd;
      switch (scheme) {
        case RewardScheme::Hard:
          bd = hard_reward(parsed, truth, cfg.hard);
          break;
        case RewardScheme::Continuous:
          bd = continuous_reward(parsed, truth, rec.losses, cfg.cont);
          break;
        default: {
          const RewardBreakdown hard_bd = hard_reward(parsed, truth, cfg.hard);
          const RewardBreakdown cont_bd =
              continuous_reward(parsed, truth, rec.losses, cfg.cont);
          bd = hybrid_reward(hard_bd, cont_bd, sched);
          break;
        }
      }
      result["id"] = rec.id;
      for (auto& [key, value] : breakdown_to_json(bd).items()) {
        result[key] = value;
      }
    } catch (const std::exception& e) {
      result = ordered_json{{"line", line_no}, {"error", e.what()}};
      had_errors = true;
      err << "score: " << input_path << ":" << line_no << ": " << e.what() << "\n";
    }
    *target.stream << result.dump() << "\n";
  }
  return had_errors ? 1 : 0;
}

std::pair<std::string, std::string> split_stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return {path, ""};
  }
  return {path.substr(0, dot), path.substr(dot)};
}

void print_summary_table(const std::vector<RunSummary>& rows, std::ostream& out) {
  out << std::left << std::setw(22) << "Method" << std::right << std::setw(10) << "FinalAcc"
      << std::setw(11) << "FinalPerp" << std::setw(10) << "ConvStep" << std::setw(11)
      << "Stability" << std::setw(11) << "AvgReward" << "\n";
  for (const auto& s : rows) {
    out << std::left << std::setw(22) << s.scheme << std::right << std::fixed
        << std::setprecision(3) << std::setw(10) << s.final_accuracy << std::setw(11)
        << std::setprecision(2) << s.final_perplexity << std::setw(10) << s.convergence
        << std::setw(11) << std::setprecision(3) << s.stability << std::setw(11)
        << s.avg_reward << "\n";
    out.unsetf(std::ios::fixed);
    out << std::setprecision(6);
  }
}

int cmd_simulate(ToolConfig cfg, const std::string& scheme_arg, uint64_t seed,
                 bool seed_given, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  (void)err;
  if (seed_given) cfg.train.seed = seed;

  std::vector<RewardScheme> schemes;
  if (scheme_arg == "all") {
    schemes = {RewardScheme::Hard, RewardScheme::Continuous,
               RewardScheme::HybridContToHard, RewardScheme::HybridHardToCont};
  } else if (!scheme_arg.empty()) {
    RewardScheme s;
    if (!reward_scheme_from_string(scheme_arg, s)) {
      throw std::invalid_argument("unknown scheme '" + scheme_arg + "'");
    }
    schemes = {s};
  } else {
    schemes = {cfg.train.scheme};
  }

  const auto [stem, ext] = split_stem(out_path);
  std::vector<RunLog> logs;
  std::vector<RunSummary> summaries;
  for (const RewardScheme scheme : schemes) {
    ToolConfig run_cfg = cfg;
    run_cfg.train.scheme = scheme;
    const RunLog log = run_training(run_cfg.train, reward_setup_from(run_cfg));
    const std::string path = schemes.size() == 1
                                 ? out_path
                                 : stem + "-" + to_string(scheme) + (ext.empty() ? ".jsonl" : ext);
    write_run_log(log, path);
    out << "wrote " << log.records.size() << " records to " << path << "\n";
    summaries.push_back(summarize_run(log, cfg.analysis));
    logs.push_back(log);
  }

  const std::string summary_path = stem + "-summary.csv";
  std::ofstream summary_file(summary_path, std::ios::binary);
  if (!summary_file) throw std::runtime_error("cannot open for writing: " + summary_path);
  summary_file << heatmap_to_csv(heatmap_export(logs, cfg.analysis));
  out << "wrote summary to " << summary_path << "\n\n";
  print_summary_table(summaries, out);
  return 0;
}

std::string format_stat(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

int cmd_analyze(const ToolConfig& cfg, const std::vector<std::string>& log_paths,
                const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::vector<RunLog> logs;
  std::vector<std::string> labels;
  for (const auto& path : log_paths) {
    try {
      logs.push_back(read_run_log(path));
    } catch (const std::exception& e) {
      err << "analyze: " << e.what() << "\n";
      return 1;
    }
    labels.push_back(to_string(logs.back().scheme));
  }

  std::vector<RunSummary> summaries;
  summaries.reserve(logs.size());
  for (const auto& log : logs) summaries.push_back(summarize_run(log, cfg.analysis));

  print_summary_table(summaries, out);
  out << "\n";
  out << std::left << std::setw(22) << "Run" << std::right << std::setw(14) << "WeightedScore"
      << "\n";
  for (const auto& s : summaries) {
    out << std::left << std::setw(22) << s.scheme << std::right << std::fixed
        << std::setprecision(4) << std::setw(14) << s.weighted << "\n";
    out.unsetf(std::ios::fixed);
    out << std::setprecision(6);
  }

  struct PairRow {
    std::string a;
    std::string b;
    StatsResult stats;
    std::string error;
  };
  std::vector<PairRow> pairs;
  for (size_t i = 0; i < logs.size(); ++i) {
    for (size_t j = i + 1; j < logs.size(); ++j) {
      PairRow row;
      row.a = labels[i];
      row.b = labels[j];
      std::vector<double> ra;
      std::vector<double> rb;
      for (const auto& rec : logs[i].records) ra.push_back(rec.avg_reward);
      for (const auto& rec : logs[j].records) rb.push_back(rec.avg_reward);
      try {
        row.stats = compare_runs(ra, rb, cfg.analysis);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      pairs.push_back(std::move(row));
    }
  }

  if (!pairs.empty()) out << "\nPairwise comparisons (per-step average rewards):\n";
  for (const auto& p : pairs) {
    out << p.a << " vs " << p.b << ": ";
    if (!p.error.empty()) {
      out << "error: " << p.error << "\n";
      continue;
    }
    out << "t=" << std::fixed << std::setprecision(3) << p.stats.t
        << ", p=" << std::setprecision(4) << p.stats.p
        << ", d=" << std::setprecision(3) << p.stats.cohens_d << " ("
        << to_string(p.stats.effect_label) << ")\n";
    out.unsetf(std::ios::fixed);
    out << std::setprecision(6);
  }

  if (!out_path.empty()) {
    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open for writing: " + out_path);
    csv << "scheme,final_accuracy,final_perplexity,convergence_step,stability,avg_reward,"
           "weighted_score\n";
    for (const auto& s : summaries) {
      csv << s.scheme << ',' << format_stat(s.final_accuracy) << ','
          << format_stat(s.final_perplexity) << ',' << s.convergence << ','
          << format_stat(s.stability) << ',' << format_stat(s.avg_reward) << ','
          << format_stat(s.weighted) << "\n";
    }
    csv << "\n";
    csv << "a,b,t,p,cohens_d,pooled_std,effect\n";
    for (const auto& p : pairs) {
      if (!p.error.empty()) {
        csv << p.a << ',' << p.b << ",,,,," << "error: " << p.error << "\n";
        continue;
      }
      csv << p.a << ',' << p.b << ',' << format_stat(p.stats.t) << ','
          << format_stat(p.stats.p) << ',' << format_stat(p.stats.cohens_d) << ','
          << format_stat(p.stats.pooled_std) << ',' << to_string(p.stats.effect_label)
          << "\n";
    }
    out << "\nwrote report to " << out_path << "\n";
  }
  return 0;
}

int cmd_schedule(const ToolConfig& cfg, long steps, const std::string& out_path,
                 std::ostream& out) {
  cfg.schedule.validate();
  OutputTarget target = OutputTarget::open(out_path, out);
  *target.stream << "step,w_hard,w_cont\n";
  for (long t = 0; t <= steps; ++t) {
    const MixWeights w = weights_at(cfg.schedule, t);
    *target.stream << t << ',' << format_stat(w.hard) << ',' << format_stat(w.cont) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reward shaping toolkit: structured-completion scoring, reward schedules, "
               "GRPO-style training simulation, and run analytics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  app.add_option("--config", config_path,
                 "Config file (overrides the " + std::string(kConfigEnvVar) + " env var)");
  app.add_option("--preset", preset, "Built-in preset: paper-sec4 or appendix-c")
      ->check(CLI::IsMember({"paper-sec4", "appendix-c"}));

  auto* score = app.add_subcommand("score", "Score a JSON-lines batch of completions");
  std::string score_input;
  std::string score_scheme = "hard";
  std::string score_out;
  long score_step = 0;
  score->add_option("input", score_input, "JSON-lines batch file")->required();
  score->add_option("--scheme", score_scheme, "Reward scheme")
      ->check(CLI::IsMember({"hard", "continuous", "hybrid-cont-to-hard",
                             "hybrid-hard-to-cont"}));
  auto* step_opt = score->add_option("--step", score_step,
                                     "Training step for hybrid weight lookup");
  score->add_option("--out", score_out, "Output path (default: stdout)");

  auto* simulate = app.add_subcommand("simulate", "Run the synthetic-policy training loop");
  std::string sim_scheme;
  std::string sim_out = "runlog.jsonl";
  uint64_t sim_seed = 0;
  auto* seed_opt = simulate->add_option("--seed", sim_seed, "Override the config seed");
  simulate->add_option("--scheme", sim_scheme,
                       "Scheme to simulate, or 'all' for the four-way comparison")
      ->check(CLI::IsMember({"hard", "continuous", "hybrid-cont-to-hard",
                             "hybrid-hard-to-cont", "all"}));
  simulate->add_option("--out", sim_out, "Run log path (suffix per scheme for 'all')");

  auto* analyze = app.add_subcommand("analyze", "Summarize and compare run logs");
  std::vector<std::string> analyze_logs;
  std::string analyze_out;
  analyze->add_option("logs", analyze_logs, "Run log files")->required()->expected(-1);
  analyze->add_option("--out", analyze_out, "Write the CSV report here");

  auto* schedule = app.add_subcommand("schedule", "Render the mixing schedule as CSV");
  long schedule_steps = -1;
  std::string schedule_out;
  schedule->add_option("--steps", schedule_steps, "Last step to render (default: train steps)");
  schedule->add_option("--out", schedule_out, "Output path (default: stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("rewardlab");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const ToolConfig cfg = resolve_config(config_path, preset);
    if (score->parsed()) {
      RewardScheme scheme = RewardScheme::Hard;
      reward_scheme_from_string(score_scheme, scheme);
      return cmd_score(cfg, score_input, scheme, score_step, step_opt->count() > 0,
                       score_out, out, err);
    }
    if (simulate->parsed()) {
      return cmd_simulate(cfg, sim_scheme, sim_seed, seed_opt->count() > 0, sim_out, out,
                          err);
    }
    if (analyze->parsed()) {
      return cmd_analyze(cfg, analyze_logs, analyze_out, out, err);
    }
    if (schedule->parsed()) {
      const long steps = schedule_steps >= 0 ? schedule_steps : cfg.train.total_steps;
      return cmd_schedule(cfg, steps, schedule_out, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace rewardlab
