#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modroots/report.hpp"

namespace modroots {

// Grid entries are token lists. A token is a literal value, an inclusive
// range "lo:hi:step", or "primes:lo:hi". The key "trials" (a single count)
// adds a trial axis 0..trials-1 to randomised checks.
struct SweepConfig {
  std::string check;
  std::map<std::string, std::vector<std::string>> grid;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t work_budget = 1'000'000'000;
  bool timing = false;  // fill the ms column; off keeps reports reproducible
  double ratio_ceiling = 1000;
};

// Throws ConfigError on malformed JSON or unknown top-level keys.
SweepConfig parse_sweep_config(const std::string& json_text);
std::string config_to_json(const SweepConfig& config);

std::vector<std::string> registered_checks();
// Grid keys accepted by a check, with their default token lists.
std::vector<std::pair<std::string, std::vector<std::string>>> check_schema(const std::string& check);

struct RunManifest {
  std::string version;
  SweepConfig config;
  std::size_t rows = 0, passed = 0, failed = 0, skipped = 0, reported = 0;
  std::optional<double> max_ratio;
  std::string max_ratio_params;
  bool below_ceiling = true;
  int exit_code = 0;
};

std::string manifest_to_json(const RunManifest& manifest);

struct SweepResult {
  std::vector<ReportRow> rows;
  RunManifest manifest;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailed = 2;
inline constexpr int kExitConfigError = 3;

// Runs every cell of the grid. Rows follow the sorted cell order whatever
// the thread count. Throws ConfigError for unknown checks or grid keys.
SweepResult run_sweep(const SweepConfig& config);

std::string library_version();

}  // namespace modroots
