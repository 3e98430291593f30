#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "rewardlab/cli.hpp"

using namespace rewardlab;
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("rewardlab_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<ordered_json> parse_jsonl(const std::string& text) {
  std::vector<ordered_json> records;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) records.push_back(ordered_json::parse(line));
  }
  return records;
}

constexpr const char* kBatch3 =
    R"({"id":"a","completion":"<reasoning>2+2=4</reasoning><answer>4</answer>","truth":"4"}
{"id":"b","completion":"<reasoning>2+2=5</reasoning><answer>5</answer>","truth":"4"}
{"id":"c","completion":"no structure 4","truth":"4"}
)";

}  // namespace

TEST_CASE("score emits one breakdown per record in order") {
  TempDir dir;
  const std::string input = dir.file("batch.jsonl");
  const std::string output = dir.file("scores.jsonl");
  write_file(input, kBatch3);
  const auto r = cli({"score", input, "--scheme", "hard", "--out", output});
  CHECK(r.code == 0);
  const auto records = parse_jsonl(read_file(output));
  REQUIRE(records.size() == 3);
  CHECK(records[0]["id"] == "a");
  CHECK(records[1]["id"] == "b");
  CHECK(records[2]["id"] == "c");
  CHECK(records[0]["total"] == 1.0);
  CHECK(records[1]["total"] == doctest::Approx(0.2));
  CHECK(records[2]["total"] == 0.0);
}

TEST_CASE("score reports malformed lines with their number and fails") {
  TempDir dir;
  const std::string input = dir.file("batch.jsonl");
  const std::string output = dir.file("scores.jsonl");
  write_file(input, "this is not json\n" + std::string(kBatch3));
  const auto r = cli({"score", input, "--scheme", "hard", "--out", output});
  CHECK(r.code != 0);
  const auto records = parse_jsonl(read_file(output));
  REQUIRE(records.size() == 4);  // error rows keep the line count
  CHECK(records[0]["line"] == 1);
  CHECK(records[0].contains("error"));
  CHECK(records[1]["id"] == "a");
  CHECK(r.err.find(":1:") != std::string::npos);
}

TEST_CASE("score rejects duplicate ids as record errors") {
  TempDir dir;
  const std::string input = dir.file("batch.jsonl");
  write_file(input,
             R"({"id":"a","completion":"x","truth":"1"}
{"id":"a","completion":"y","truth":"1"}
)");
  const std::string output = dir.file("scores.jsonl");
  const auto r = cli({"score", input, "--scheme", "hard", "--out", output});
  CHECK(r.code != 0);
  const auto records = parse_jsonl(read_file(output));
  REQUIRE(records.size() == 2);
  CHECK(records[1].contains("error"));
}

TEST_CASE("hybrid scoring at the midpoint uses equal weights") {
  TempDir dir;
  const std::string input = dir.file("batch.jsonl");
  const std::string output = dir.file("scores.jsonl");
  write_file(input, kBatch3);
  const auto r = cli({"--preset", "paper-sec4", "score", input, "--scheme",
                      "hybrid-cont-to-hard", "--step", "100", "--out", output});
  CHECK(r.code == 0);
  const auto records = parse_jsonl(read_file(output));
  REQUIRE(records.size() == 3);
  for (const auto& rec : records) {
    CHECK(rec["weights"]["hard"] == 0.5);
    CHECK(rec["weights"]["continuous"] == 0.5);
    CHECK(rec["parts"].size() == 2);
  }
}

TEST_CASE("hybrid scoring requires --step") {
  TempDir dir;
  const std::string input = dir.file("batch.jsonl");
  write_file(input, kBatch3);
  const auto r = cli({"score", input, "--scheme", "hybrid-cont-to-hard"});
  CHECK(r.code != 0);
  CHECK(r.err.find("--step") != std::string::npos);
}

TEST_CASE("continuous scoring without losses flags the record") {
  TempDir dir;
  const std::string input = dir.file("batch.jsonl");
  const std::string output = dir.file("scores.jsonl");
  write_file(input,
             R"({"id":"a","completion":"<reasoning>r 4</reasoning><answer>4</answer>","truth":"4"}
{"id":"b","completion":"<reasoning>r 4</reasoning><answer>4</answer>","truth":"4","losses":[1.0,1.0,1.0]}
)");
  const auto r = cli({"score", input, "--scheme", "continuous", "--out", output});
  CHECK(r.code == 0);
  const auto records = parse_jsonl(read_file(output));
  REQUIRE(records.size() == 2);
  CHECK(records[0]["missing_losses"] == true);
  CHECK(records[0]["components"]["perplexity"] == 0.0);
  CHECK_FALSE(records[1].contains("missing_losses"));
  CHECK(records[1]["components"]["perplexity"].get<double>() > 0.9);
}

TEST_CASE("simulate is byte-deterministic for a fixed config and seed") {
  TempDir dir;
  const std::string log1 = dir.file("run1.jsonl");
  const std::string log2 = dir.file("run2.jsonl");
  const std::string cfg_path = dir.file("cfg.ini");
  write_file(cfg_path,
             "preset = appendix-c\n[train]\ntotal_steps = 25\nlearning_rate = 0.05\n");
  const auto r1 = cli({"--config", cfg_path, "simulate", "--out", log1});
  const auto r2 = cli({"--config", cfg_path, "simulate", "--out", log2});
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  CHECK(read_file(log1) == read_file(log2));
  CHECK(read_file(dir.file("run1-summary.csv")) == read_file(dir.file("run2-summary.csv")));

  const auto r3 = cli({"--config", cfg_path, "simulate", "--out", log2, "--seed", "9"});
  CHECK(r3.code == 0);
  CHECK(read_file(log1) != read_file(log2));
}

TEST_CASE("simulate all runs the four schemes and summarizes them in order") {
  TempDir dir;
  const std::string cfg_path = dir.file("cfg.ini");
  write_file(cfg_path,
             "preset = appendix-c\n[train]\ntotal_steps = 12\nlearning_rate = 0.05\n");
  const std::string base = dir.file("four.jsonl");
  const auto r = cli({"--config", cfg_path, "simulate", "--scheme", "all", "--out", base});
  CHECK(r.code == 0);
  for (const char* scheme :
       {"hard", "continuous", "hybrid-cont-to-hard", "hybrid-hard-to-cont"}) {
    const auto records =
        parse_jsonl(read_file(dir.file(std::string("four-") + scheme + ".jsonl")));
    CHECK(records.size() == 12);
    CHECK(records[0]["scheme"] == scheme);
  }
  const std::string summary = read_file(dir.file("four-summary.csv"));
  std::istringstream in(summary);
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "scheme,final_accuracy,final_perplexity,convergence_step,stability,avg_reward,"
        "convergence_norm");
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(line);
  }
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].rfind("hard,", 0) == 0);
  CHECK(rows[1].rfind("continuous,", 0) == 0);
  CHECK(rows[2].rfind("hybrid-cont-to-hard,", 0) == 0);
  CHECK(rows[3].rfind("hybrid-hard-to-cont,", 0) == 0);
}

TEST_CASE("simulate honors the configured total step count") {
  TempDir dir;
  const std::string out = dir.file("run.jsonl");
  const auto r = cli({"--preset", "paper-sec4", "simulate", "--out", out});
  CHECK(r.code == 0);
  CHECK(parse_jsonl(read_file(out)).size() == 200);
}

TEST_CASE("analyze computes metrics, pair counts, and fails on bad files") {
  TempDir dir;
  const std::string cfg_path = dir.file("cfg.ini");
  write_file(cfg_path,
             "preset = appendix-c\n[train]\ntotal_steps = 16\nlearning_rate = 0.05\n");
  std::vector<std::string> logs;
  int i = 0;
  for (const char* scheme :
       {"hard", "continuous", "hybrid-cont-to-hard", "hybrid-hard-to-cont"}) {
    const std::string path = dir.file("log" + std::to_string(i++) + ".jsonl");
    const auto r = cli({"--config", cfg_path, "simulate", "--scheme", scheme, "--out",
                        path, "--seed", std::to_string(100 + i)});
    REQUIRE(r.code == 0);
    logs.push_back(path);
  }

  SUBCASE("one log gives metrics only") {
    const auto r = cli({"analyze", logs[0]});
    CHECK(r.code == 0);
    CHECK(r.out.find("hard") != std::string::npos);
    CHECK(r.out.find(" vs ") == std::string::npos);
  }

  SUBCASE("two identical logs give t = 0 and Negligible") {
    const auto r = cli({"analyze", logs[0], logs[0]});
    CHECK(r.code == 0);
    CHECK(r.out.find("t=0.000") != std::string::npos);
    CHECK(r.out.find("Negligible") != std::string::npos);
  }

  SUBCASE("four logs give six pairwise comparisons") {
    const std::string report = dir.file("report.csv");
    const auto r = cli({"analyze", logs[0], logs[1], logs[2], logs[3], "--out", report});
    CHECK(r.code == 0);
    const std::string csv = read_file(report);
    size_t pair_rows = 0;
    bool in_pairs = false;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("a,b,", 0) == 0) {
        in_pairs = true;
        continue;
      }
      if (in_pairs && !line.empty()) ++pair_rows;
    }
    CHECK(pair_rows == 6);
  }

  SUBCASE("unreadable files name the file and fail") {
    const auto r = cli({"analyze", dir.file("missing.jsonl")});
    CHECK(r.code != 0);
    CHECK(r.err.find("missing.jsonl") != std::string::npos);
  }
}

TEST_CASE("schedule renders the ramp as CSV") {
  TempDir dir;
  const std::string out = dir.file("sched.csv");
  const auto r = cli({"--preset", "paper-sec4", "schedule", "--steps", "200", "--out", out});
  CHECK(r.code == 0);
  std::istringstream in(read_file(out));
  std::string line;
  std::getline(in, line);
  CHECK(line == "step,w_hard,w_cont");
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(line);
  }
  REQUIRE(rows.size() == 201);
  CHECK(rows[0] == "0,0,1");
  CHECK(rows[50] == "50,0,1");
  CHECK(rows[100] == "100,0.5,0.5");
  CHECK(rows[150] == "150,1,0");
  CHECK(rows[200] == "200,1,0");
}

TEST_CASE("schedule with the appendix preset ramps across steps 3..7") {
  TempDir dir;
  const std::string out = dir.file("sched.csv");
  const auto r = cli({"--preset", "appendix-c", "schedule", "--steps", "10", "--out", out});
  CHECK(r.code == 0);
  std::istringstream in(read_file(out));
  std::string line;
  std::getline(in, line);
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(line);
  }
  REQUIRE(rows.size() == 11);
  CHECK(rows[3] == "3,0,1");
  CHECK(rows[5] == "5,0.5,0.5");
  CHECK(rows[7] == "7,1,0");
}

TEST_CASE("schedule constant mix repeats the same row") {
  TempDir dir;
  const std::string cfg_path = dir.file("cfg.ini");
  write_file(cfg_path,
             "[schedule]\ndirection = constant-mix\nw_hard_fixed = 0.5\nw_cont_fixed = 0.5\n");
  const std::string out = dir.file("sched.csv");
  const auto r = cli({"--config", cfg_path, "schedule", "--steps", "6", "--out", out});
  CHECK(r.code == 0);
  std::istringstream in(read_file(out));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (!line.empty()) CHECK(line.substr(line.find(',')) == ",0.5,0.5");
  }
}

TEST_CASE("config path comes from the environment when flags are absent") {
  TempDir dir;
  const std::string cfg_path = dir.file("cfg.ini");
  write_file(cfg_path, "[schedule]\nt_start = 1\nt_end = 3\n");
  setenv("REWARDLAB_CONFIG", cfg_path.c_str(), 1);
  const std::string out = dir.file("sched.csv");
  const auto r = cli({"schedule", "--steps", "4", "--out", out});
  unsetenv("REWARDLAB_CONFIG");
  CHECK(r.code == 0);
  CHECK(read_file(out).find("2,0.5,0.5") != std::string::npos);
}

TEST_CASE("unknown flags and missing subcommands fail with usage errors") {
  CHECK(cli({}).code != 0);
  CHECK(cli({"score"}).code != 0);           // missing input
  CHECK(cli({"--preset", "zzz", "schedule"}).code != 0);
  CHECK(cli({"simulate", "--scheme", "bogus"}).code != 0);
}
