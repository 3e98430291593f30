#include "rewardlab/run_log.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rewardlab {

using ordered_json = nlohmann::ordered_json;

std::string to_string(RewardScheme scheme) {
  switch (scheme) {
    case RewardScheme::Hard: return "hard";
    case RewardScheme::Continuous: return "continuous";
    case RewardScheme::HybridContToHard: return "hybrid-cont-to-hard";
    case RewardScheme::HybridHardToCont: return "hybrid-hard-to-cont";
  }
  return "hard";
}

bool reward_scheme_from_string(const std::string& name, RewardScheme& out) {
  if (name == "hard") {
    out = RewardScheme::Hard;
  } else if (name == "continuous") {
    out = RewardScheme::Continuous;
  } else if (name == "hybrid-cont-to-hard") {
    out = RewardScheme::HybridContToHard;
  } else if (name == "hybrid-hard-to-cont") {
    out = RewardScheme::HybridHardToCont;
  } else {
    return false;
  }
  return true;
}

void RunLog::validate() const {
  long expected = 1;
  for (const auto& rec : records) {
    if (rec.step != expected) {
      throw std::invalid_argument("run log steps must increase strictly from 1");
    }
    if (rec.accuracy < 0.0 || rec.accuracy > 1.0) {
      throw std::invalid_argument("run log accuracy out of [0, 1]");
    }
    ++expected;
  }
}

namespace {

ordered_json record_to_json(const RunLog& log, const MetricsRecord& rec) {
  ordered_json j;
  j["step"] = rec.step;
  j["scheme"] = to_string(log.scheme);
  j["w_hard"] = rec.w_hard;
  j["w_cont"] = rec.w_cont;
  j["accuracy"] = rec.accuracy;
  j["avg_reward"] = rec.avg_reward;
  j["perplexity"] = rec.perplexity;
  j["components"] = rec.components;
  j["policy_correct_logits"] = rec.policy_correct_logits;
  j["policy_format_logits"] = rec.policy_format_logits;
  return j;
}

MetricsRecord record_from_json(const ordered_json& j) {
  MetricsRecord rec;
  rec.step = j.at("step").get<long>();
  rec.w_hard = j.at("w_hard").get<double>();
  rec.w_cont = j.at("w_cont").get<double>();
  rec.accuracy = j.at("accuracy").get<double>();
  rec.avg_reward = j.at("avg_reward").get<double>();
  rec.perplexity = j.value("perplexity", 0.0);
  if (j.contains("components")) {
    rec.components = j.at("components").get<std::map<std::string, double>>();
  }
  if (j.contains("policy_correct_logits")) {
    rec.policy_correct_logits = j.at("policy_correct_logits").get<std::vector<double>>();
  }
  if (j.contains("policy_format_logits")) {
    rec.policy_format_logits = j.at("policy_format_logits").get<std::vector<double>>();
  }
  return rec;
}

}  // namespace

std::string to_jsonl(const RunLog& log) {
  std::string out;
  for (const auto& rec : log.records) {
    out += record_to_json(log, rec).dump();
    out += '\n';
  }
  return out;
}

RunLog run_log_from_jsonl(std::istream& in, const std::string& source_name) {
  RunLog log;
  std::string line;
  size_t line_no = 0;
  bool scheme_set = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
      MetricsRecord rec = record_from_json(j);
      RewardScheme scheme;
      if (!reward_scheme_from_string(j.at("scheme").get<std::string>(), scheme)) {
        throw std::invalid_argument("unknown scheme");
      }
      if (scheme_set && scheme != log.scheme) {
        throw std::invalid_argument("mixed schemes in one log");
      }
      log.scheme = scheme;
      scheme_set = true;
      log.records.push_back(std::move(rec));
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << source_name << ":" << line_no << ": " << e.what();
      throw std::runtime_error(msg.str());
    }
  }
  log.validate();
  return log;
}

void write_run_log(const RunLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_jsonl(log);
}

RunLog read_run_log(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open run log: " + path);
  return run_log_from_jsonl(in, path);
}

}  // namespace rewardlab
