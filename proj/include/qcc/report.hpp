#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace qcc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "qc-cartan/1";
inline constexpr const char* kToolName = "qc-cartan";
inline constexpr const char* kToolVersion = "1.0.0";

enum class Status { pass, fail, skipped };
const char* to_string(Status s);

struct CheckRecord {
  std::string id;        // e.g. "n=2/characters"
  std::string equation;  // descriptive identifier of the verified relation
  Status status = Status::pass;
  Json witness = Json::object();
  double elapsed_ms = 0;
};

struct RunConfig {
  std::string command;  // "analyze" or "verify"
  std::string target;   // verify target, empty for analyze
  int n_first = 1;
  int n_last = 1;
  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned jobs = 1;  // 0 = hardware concurrency
  std::string out;
  bool timing = false;
  int samples = 5;  // constant sets for the shift check
};

struct Report {
  RunConfig config;
  std::vector<CheckRecord> checks;
  bool passed() const;
  Json to_json() const;
  std::string to_text() const;
};

/// Runs the configured command. Checks for distinct n run in parallel;
/// records are ordered by n and check id regardless of completion order.
Report run(const RunConfig& config);

/// Individual check groups for one n (used by run and by the acceptance driver).
std::vector<CheckRecord> analyze_checks(int n, const RunConfig& config);
std::vector<CheckRecord> verify_checks(const std::string& target, int n, const RunConfig& config);

}  // namespace qcc
