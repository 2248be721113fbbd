#include "matmeans/campaign.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "matmeans/errors.hpp"

namespace matmeans {

std::vector<PropertyCase> make_cases(const CampaignConfig& cfg) {
  if (cfg.trials < 0) throw ConfigError("trials must be non-negative");
  if (cfg.parallel < 1) throw ConfigError("parallelism must be at least 1");
  std::vector<std::string> ids;
  if (cfg.ids.empty() || (cfg.ids.size() == 1 && cfg.ids.front() == "all")) {
    for (const auto& info : property_registry()) ids.push_back(info.id);
  } else {
    std::set<std::string> seen;
    for (const auto& id : cfg.ids) {
      property_info(id);  // throws on unknown ids
      if (seen.insert(id).second) ids.push_back(id);
    }
  }
  std::vector<PropertyCase> cases;
  for (const auto& id : ids) {
    PropertyCase c;
    c.id = id;
    c.trials = cfg.trials;
    c.sampler.dim = cfg.dim;
    c.sampler.condition_target = cfg.condition;
    c.sampler.seed = mix_seed(cfg.seed, stable_hash(id));
    c.knobs.tol = cfg.tol;
    cases.push_back(std::move(c));
  }
  return cases;
}

namespace {

PropertyVerdict guarded(const PropertyCase& c) {
  try {
    return run_property(c);
  } catch (const std::exception& e) {
    PropertyVerdict v;
    v.id = c.id;
    v.seed = c.sampler.seed;
    v.failures = 1;
    v.worst_margin = -1.0;
    v.witness = nlohmann::json{{"error", e.what()}};
    return v;
  }
}

}  // namespace

std::vector<PropertyVerdict> run_cases(const std::vector<PropertyCase>& cases, int parallelism) {
  std::vector<PropertyVerdict> out(cases.size());
  const int workers = std::max(1, std::min<int>(parallelism, static_cast<int>(cases.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < cases.size(); ++i) out[i] = guarded(cases[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < cases.size(); i = next++) out[i] = guarded(cases[i]);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

CampaignReport run_campaign(const CampaignConfig& cfg) {
  const auto cases = make_cases(cfg);
  const auto start = std::chrono::steady_clock::now();
  CampaignReport r;
  r.config = cfg;
  r.timestamp = utc_timestamp();
  r.verdicts = run_cases(cases, cfg.parallel);
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json report_body(const CampaignReport& r) {
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& v : r.verdicts) ids.push_back(v.id);
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& v : r.verdicts) cases.push_back(to_json(v));
  return {{"schema", kReportSchema},
          {"seed", r.config.seed},
          {"config",
           {{"ids", ids},
            {"dim", r.config.dim},
            {"trials", r.config.trials},
            {"tol", r.config.tol},
            {"condition", r.config.condition}}},
          {"cases", cases},
          {"all_expected", all_expected(r)}};
}

nlohmann::json to_json(const CampaignReport& r) {
  nlohmann::json j = report_body(r);
  nlohmann::json elapsed = nlohmann::json::object();
  for (const auto& v : r.verdicts) elapsed[v.id] = v.elapsed;
  j["meta"] = {{"version", r.version},
               {"timestamp", r.timestamp},
               {"parallel", r.config.parallel},
               {"elapsed_seconds", r.elapsed},
               {"case_seconds", elapsed}};
  return j;
}

std::string to_csv(const CampaignReport& r) {
  std::ostringstream os;
  os << "id,expectation,trials,failures,skipped,worst_margin,seed,elapsed_seconds,meets_expectation\n";
  os << std::setprecision(17);
  for (const auto& v : r.verdicts) {
    os << v.id << ',' << to_string(property_info(v.id).expectation) << ',' << v.trials << ',' << v.failures << ','
       << v.skipped << ',' << v.worst_margin << ',' << v.seed << ',' << v.elapsed << ','
       << (meets_expectation(v) ? "true" : "false") << '\n';
  }
  return os.str();
}

bool all_expected(const CampaignReport& r) {
  for (const auto& v : r.verdicts) {
    if (!meets_expectation(v)) return false;
  }
  return true;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace matmeans
