#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "matmeans/properties.hpp"

namespace matmeans {

inline constexpr const char* kLibraryVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

struct CampaignConfig {
  std::vector<std::string> ids;  // empty or {"all"}: the whole registry
  int dim = 0;                   // 0 cycles {2, 3, 4, 6}
  int trials = 500;
  std::uint64_t seed = 7;
  double tol = 1e-8;
  double condition = 100.0;
  int parallel = 1;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<PropertyVerdict> verdicts;  // in the order of the requested ids
  std::string version = kLibraryVersion;
  std::string timestamp;                  // ISO-8601 UTC
  double elapsed = 0.0;
};

// Resolves "all", checks ids and derives per-case seeds mix_seed(seed, stable_hash(id)).
// Throws ConfigError for unknown ids or bad settings.
std::vector<PropertyCase> make_cases(const CampaignConfig& cfg);

// Runs the cases on up to `parallelism` threads. A case that throws is recorded as a failed
// verdict carrying the message; the campaign continues.
std::vector<PropertyVerdict> run_cases(const std::vector<PropertyCase>& cases, int parallelism);
CampaignReport run_campaign(const CampaignConfig& cfg);

// {"schema", "seed", "config", "cases", "meta"}; "meta" holds everything that varies between
// identical runs (timestamp, timings, version).
nlohmann::json to_json(const CampaignReport& r);
// to_json without "meta": byte-identical across reruns with the same configuration.
nlohmann::json report_body(const CampaignReport& r);
std::string to_csv(const CampaignReport& r);

bool all_expected(const CampaignReport& r);

std::string utc_timestamp();

}  // namespace matmeans
