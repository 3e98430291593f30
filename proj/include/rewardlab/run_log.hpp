#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace rewardlab {

enum class RewardScheme { Hard, Continuous, HybridContToHard, HybridHardToCont };

std::string to_string(RewardScheme scheme);
bool reward_scheme_from_string(const std::string& name, RewardScheme& out);

struct MetricsRecord {
  long step = 0;  // 1-based, strictly increasing within a log
  double w_hard = 0.0;
  double w_cont = 0.0;
  double accuracy = 0.0;
  double avg_reward = 0.0;
  double perplexity = 0.0;  // mean exp(full-segment loss) over the step
  std::map<std::string, double> components;
  std::vector<double> policy_correct_logits;
  std::vector<double> policy_format_logits;

  bool operator==(const MetricsRecord&) const = default;
};

struct RunLog {
  RewardScheme scheme = RewardScheme::Hard;
  std::vector<MetricsRecord> records;

  // Steps strictly increasing from 1, accuracies in [0, 1].
  void validate() const;
  bool operator==(const RunLog&) const = default;
};

// JSON-lines serialization; one record per line, scheme repeated per record.
std::string to_jsonl(const RunLog& log);
RunLog run_log_from_jsonl(std::istream& in, const std::string& source_name);
void write_run_log(const RunLog& log, const std::string& path);
RunLog read_run_log(const std::string& path);

}  // namespace rewardlab
