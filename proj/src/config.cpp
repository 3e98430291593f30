#include "rewardlab/config.hpp"

#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rewardlab/parsing.hpp"

namespace rewardlab {

namespace {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto rc = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), rc.ptr);
}

[[noreturn]] void fail(const std::string& source, const std::string& path,
                       const std::string& what) {
  throw std::invalid_argument(source + ": " + path + ": " + what);
}

double parse_double(const std::string& source, const std::string& path,
                    const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty()) {
    fail(source, path, "expected a number, got '" + value + "'");
  }
  return v;
}

long parse_long(const std::string& source, const std::string& path,
                const std::string& value) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty()) {
    fail(source, path, "expected an integer, got '" + value + "'");
  }
  return v;
}

uint64_t parse_u64(const std::string& source, const std::string& path,
                   const std::string& value) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty()) {
    fail(source, path, "expected an unsigned integer, got '" + value + "'");
  }
  return static_cast<uint64_t>(v);
}

bool parse_bool(const std::string& source, const std::string& path,
                const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail(source, path, "expected true or false, got '" + value + "'");
}

std::vector<std::string> parse_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : value) {
    if (c == ',') {
      const std::string t = trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  const std::string t = trim(cur);
  if (!t.empty()) out.push_back(t);
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

void ToolConfig::validate() const {
  hard.validate();
  cont.validate();
  schedule.validate();
  train.validate();
  analysis.validate();
}

ToolConfig preset_config(const std::string& name) {
  ToolConfig cfg;
  cfg.preset = name;
  if (name == "paper-sec4") {
    cfg.schedule.t_start = 50;
    cfg.schedule.t_end = 150;
    cfg.train.group_size = 4;
  } else if (name == "appendix-c") {
    cfg.schedule.t_start = 3;
    cfg.schedule.t_end = 7;
    cfg.train.group_size = 2;
  } else {
    throw std::invalid_argument("unknown preset '" + name +
                                "' (expected paper-sec4 or appendix-c)");
  }
  return cfg;
}

ToolConfig parse_config_text(const std::string& text, const std::string& source) {
  ToolConfig cfg;
  std::string section;
  std::istringstream in(text);
  std::string raw_line;
  size_t line_no = 0;

  bool any_key_applied = false;
  auto apply = [&](const std::string& key, const std::string& value) {
    const std::string path = section.empty() ? key : section + "." + key;
    if (section.empty()) {
      if (key == "preset") {
        if (any_key_applied) {
          fail(source, path, "preset must precede all other keys");
        }
        if (value != "custom") cfg = preset_config(value);
        cfg.preset = value;
        return;
      }
      fail(source, path, "unknown top-level key");
    } else if (section == "hard") {
      if (key == "format_bonus") {
        cfg.hard.format_bonus = parse_double(source, path, value);
      } else if (key == "clamp_max") {
        cfg.hard.clamp_max = parse_double(source, path, value);
      } else {
        fail(source, path, "unknown key");
      }
    } else if (section == "continuous") {
      auto& w = cfg.cont.weights;
      if (key == "w_correctness") {
        w.correctness = parse_double(source, path, value);
      } else if (key == "w_perplexity") {
        w.perplexity = parse_double(source, path, value);
      } else if (key == "w_reasoning") {
        w.reasoning = parse_double(source, path, value);
      } else if (key == "w_consistency") {
        w.consistency = parse_double(source, path, value);
      } else {
        fail(source, path, "unknown key");
      }
    } else if (section == "correctness") {
      auto& c = cfg.cont.correctness;
      if (key == "alpha") {
        c.alpha = parse_double(source, path, value);
      } else if (key == "beta") {
        c.beta = parse_double(source, path, value);
      } else if (key == "gamma") {
        c.gamma = parse_double(source, path, value);
      } else if (key == "alpha_text") {
        c.alpha_text = parse_double(source, path, value);
      } else if (key == "beta_text") {
        c.beta_text = parse_double(source, path, value);
      } else {
        fail(source, path, "unknown key");
      }
    } else if (section == "perplexity") {
      auto& p = cfg.cont.perplexity;
      if (key == "w_full") {
        p.w_full = parse_double(source, path, value);
      } else if (key == "w_reasoning") {
        p.w_reasoning = parse_double(source, path, value);
      } else if (key == "w_answer") {
        p.w_answer = parse_double(source, path, value);
      } else if (key == "tau_full") {
        p.tau_full = parse_double(source, path, value);
      } else if (key == "tau_reasoning") {
        p.tau_reasoning = parse_double(source, path, value);
      } else if (key == "tau_answer") {
        p.tau_answer = parse_double(source, path, value);
      } else if (key == "loss_cap") {
        p.loss_cap = parse_double(source, path, value);
      } else {
        fail(source, path, "unknown key");
      }
    } else if (section == "reasoning") {
      auto& r = cfg.cont.reasoning;
      if (key == "min_words") {
        r.min_words = static_cast<int>(parse_long(source, path, value));
      } else if (key == "max_words") {
        r.max_words = static_cast<int>(parse_long(source, path, value));
      } else if (key == "ideal_words") {
        r.ideal_words = static_cast<int>(parse_long(source, path, value));
      } else if (key == "penalty_factor") {
        r.penalty_factor = parse_double(source, path, value);
      } else if (key == "step_threshold") {
        r.step_threshold = static_cast<int>(parse_long(source, path, value));
      } else if (key == "math_threshold") {
        r.math_threshold = static_cast<int>(parse_long(source, path, value));
      } else if (key == "w_length") {
        r.w_length = parse_double(source, path, value);
      } else if (key == "w_steps") {
        r.w_steps = parse_double(source, path, value);
      } else if (key == "w_math") {
        r.w_math = parse_double(source, path, value);
      } else if (key == "step_tokens") {
        r.step_tokens = parse_list(value);
      } else {
        fail(source, path, "unknown key");
      }
    } else if (section == "consistency") {
      auto& c = cfg.cont.consistency;
      if (key == "tolerance") {
        c.tolerance = parse_double(source, path, value);
      } else if (key == "match_reward") {
        c.match_reward = parse_double(source, path, value);
      } else if (key == "num_reward") {
        c.num_reward = parse_double(source, path, value);
      } else if (key == "partial_reward") {
        c.partial_reward = parse_double(source, path, value);
      } else if (key == "compare_to_ground_truth") {
        c.compare_to_ground_truth = parse_bool(source, path, value);
      } else {
        fail(source, path, "unknown key");
      }
    } else if (section == "schedule") {
      auto& s = cfg.schedule;
      if (key == "direction") {
        const auto dir = schedule_direction_from_string(value);
        if (!dir) fail(source, path, "unknown direction '" + value + "'");
        s.direction = *dir;
      } else if (key == "t_start") {
        s.t_start = parse_long(source, path, value);
      } else if (key == "t_end") {
        s.t_end = parse_long(source, path, value);
      } else if (key == "w_hard_fixed") {
        if (!s.fixed_mix) s.fixed_mix = MixWeights{};
        s.fixed_mix->hard = parse_double(source, path, value);
      } else if (key == "w_cont_fixed") {
        if (!s.fixed_mix) s.fixed_mix = MixWeights{};
        s.fixed_mix->cont = parse_double(source, path, value);
      } else {
        fail(source, path, "unknown key");
      }
    } else if (section == "train") {
      auto& t = cfg.train;
      if (key == "total_steps") {
        t.total_steps = parse_long(source, path, value);
      } else if (key == "group_size") {
        t.group_size = static_cast<int>(parse_long(source, path, value));
      } else if (key == "seed") {
        t.seed = parse_u64(source, path, value);
      } else if (key == "learning_rate") {
        t.learning_rate = parse_double(source, path, value);
      } else if (key == "scheme") {
        if (!reward_scheme_from_string(value, t.scheme)) {
          fail(source, path, "unknown scheme '" + value + "'");
        }
      } else if (key == "epsilon") {
        t.epsilon = parse_double(source, path, value);
      } else if (key == "dataset_size") {
        t.dataset_size = static_cast<int>(parse_long(source, path, value));
      } else if (key == "difficulty_buckets") {
        t.difficulty_buckets = static_cast<int>(parse_long(source, path, value));
      } else if (key == "initial_correct_logit") {
        t.initial_correct_logit = parse_double(source, path, value);
      } else if (key == "initial_format_logit") {
        t.initial_format_logit = parse_double(source, path, value);
      } else {
        fail(source, path, "unknown key");
      }
    } else if (section == "analysis") {
      auto& a = cfg.analysis;
      if (key == "cohens_d_small") {
        a.cohens_d_small = parse_double(source, path, value);
      } else if (key == "cohens_d_medium") {
        a.cohens_d_medium = parse_double(source, path, value);
      } else if (key == "cohens_d_large") {
        a.cohens_d_large = parse_double(source, path, value);
      } else if (key == "w_accuracy") {
        a.w_accuracy = parse_double(source, path, value);
      } else if (key == "w_stability") {
        a.w_stability = parse_double(source, path, value);
      } else if (key == "w_convergence") {
        a.w_convergence = parse_double(source, path, value);
      } else if (key == "convergence_normalization") {
        a.convergence_normalization = parse_double(source, path, value);
      } else if (key == "p_value_threshold") {
        a.p_value_threshold = parse_double(source, path, value);
      } else {
        fail(source, path, "unknown key");
      }
    } else {
      fail(source, "[" + section + "]", "unknown section");
    }
  };

  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string line = raw_line;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail(source, "line " + std::to_string(line_no), "malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(source, "line " + std::to_string(line_no), "expected key = value");
    }
    apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    any_key_applied = true;
  }

  cfg.validate();
  return cfg;
}

std::string config_to_text(const ToolConfig& cfg) {
  std::ostringstream out;
  out << "preset = " << cfg.preset << "\n\n";

  out << "[hard]\n";
  out << "format_bonus = " << format_double(cfg.hard.format_bonus) << "\n";
  out << "clamp_max = " << format_double(cfg.hard.clamp_max) << "\n\n";

  out << "[continuous]\n";
  out << "w_correctness = " << format_double(cfg.cont.weights.correctness) << "\n";
  out << "w_perplexity = " << format_double(cfg.cont.weights.perplexity) << "\n";
  out << "w_reasoning = " << format_double(cfg.cont.weights.reasoning) << "\n";
  out << "w_consistency = " << format_double(cfg.cont.weights.consistency) << "\n\n";

  out << "[correctness]\n";
  out << "alpha = " << format_double(cfg.cont.correctness.alpha) << "\n";
  out << "beta = " << format_double(cfg.cont.correctness.beta) << "\n";
  out << "gamma = " << format_double(cfg.cont.correctness.gamma) << "\n";
  out << "alpha_text = " << format_double(cfg.cont.correctness.alpha_text) << "\n";
  out << "beta_text = " << format_double(cfg.cont.correctness.beta_text) << "\n\n";

  out << "[perplexity]\n";
  out << "w_full = " << format_double(cfg.cont.perplexity.w_full) << "\n";
  out << "w_reasoning = " << format_double(cfg.cont.perplexity.w_reasoning) << "\n";
  out << "w_answer = " << format_double(cfg.cont.perplexity.w_answer) << "\n";
  out << "tau_full = " << format_double(cfg.cont.perplexity.tau_full) << "\n";
  out << "tau_reasoning = " << format_double(cfg.cont.perplexity.tau_reasoning) << "\n";
  out << "tau_answer = " << format_double(cfg.cont.perplexity.tau_answer) << "\n";
  out << "loss_cap = " << format_double(cfg.cont.perplexity.loss_cap) << "\n\n";

  out << "[reasoning]\n";
  out << "min_words = " << cfg.cont.reasoning.min_words << "\n";
  out << "max_words = " << cfg.cont.reasoning.max_words << "\n";
  out << "ideal_words = " << cfg.cont.reasoning.ideal_words << "\n";
  out << "penalty_factor = " << format_double(cfg.cont.reasoning.penalty_factor) << "\n";
  out << "step_threshold = " << cfg.cont.reasoning.step_threshold << "\n";
  out << "math_threshold = " << cfg.cont.reasoning.math_threshold << "\n";
  out << "w_length = " << format_double(cfg.cont.reasoning.w_length) << "\n";
  out << "w_steps = " << format_double(cfg.cont.reasoning.w_steps) << "\n";
  out << "w_math = " << format_double(cfg.cont.reasoning.w_math) << "\n";
  out << "step_tokens = " << join_list(cfg.cont.reasoning.step_tokens) << "\n\n";

  out << "[consistency]\n";
  out << "tolerance = " << format_double(cfg.cont.consistency.tolerance) << "\n";
  out << "match_reward = " << format_double(cfg.cont.consistency.match_reward) << "\n";
  out << "num_reward = " << format_double(cfg.cont.consistency.num_reward) << "\n";
  out << "partial_reward = " << format_double(cfg.cont.consistency.partial_reward) << "\n";
  out << "compare_to_ground_truth = "
      << (cfg.cont.consistency.compare_to_ground_truth ? "true" : "false") << "\n\n";

  out << "[schedule]\n";
  out << "direction = " << to_string(cfg.schedule.direction) << "\n";
  out << "t_start = " << cfg.schedule.t_start << "\n";
  out << "t_end = " << cfg.schedule.t_end << "\n";
  if (cfg.schedule.fixed_mix) {
    out << "w_hard_fixed = " << format_double(cfg.schedule.fixed_mix->hard) << "\n";
    out << "w_cont_fixed = " << format_double(cfg.schedule.fixed_mix->cont) << "\n";
  }
  out << "\n";

  out << "[train]\n";
  out << "total_steps = " << cfg.train.total_steps << "\n";
  out << "group_size = " << cfg.train.group_size << "\n";
  out << "seed = " << cfg.train.seed << "\n";
  out << "learning_rate = " << format_double(cfg.train.learning_rate) << "\n";
  out << "scheme = " << to_string(cfg.train.scheme) << "\n";
  out << "epsilon = " << format_double(cfg.train.epsilon) << "\n";
  out << "dataset_size = " << cfg.train.dataset_size << "\n";
  out << "difficulty_buckets = " << cfg.train.difficulty_buckets << "\n";
  out << "initial_correct_logit = " << format_double(cfg.train.initial_correct_logit) << "\n";
  out << "initial_format_logit = " << format_double(cfg.train.initial_format_logit) << "\n\n";

  out << "[analysis]\n";
  out << "cohens_d_small = " << format_double(cfg.analysis.cohens_d_small) << "\n";
  out << "cohens_d_medium = " << format_double(cfg.analysis.cohens_d_medium) << "\n";
  out << "cohens_d_large = " << format_double(cfg.analysis.cohens_d_large) << "\n";
  out << "w_accuracy = " << format_double(cfg.analysis.w_accuracy) << "\n";
  out << "w_stability = " << format_double(cfg.analysis.w_stability) << "\n";
  out << "w_convergence = " << format_double(cfg.analysis.w_convergence) << "\n";
  out << "convergence_normalization = "
      << format_double(cfg.analysis.convergence_normalization) << "\n";
  out << "p_value_threshold = " << format_double(cfg.analysis.p_value_threshold) << "\n";
  return out.str();
}

ToolConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void save_config(const ToolConfig& cfg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << config_to_text(cfg);
}

RewardSetup reward_setup_from(const ToolConfig& cfg) {
  RewardSetup setup;
  setup.hard = cfg.hard;
  setup.cont = cfg.cont;
  setup.schedule = cfg.schedule;
  setup.loss_model.seed = cfg.train.seed;
  return setup;
}

}  // namespace rewardlab
