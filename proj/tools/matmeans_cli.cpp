// Command line front end: verify, search, eval, antinorm.
// Exit codes: 0 every outcome as expected, 1 unexpected failure, 2 configuration error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "matmeans/anti_norms.hpp"
#include "matmeans/campaign.hpp"
#include "matmeans/errors.hpp"
#include "matmeans/matrix_io.hpp"
#include "matmeans/search.hpp"
#include "matmeans/spec_parse.hpp"

namespace {

using namespace matmeans;

constexpr int kExitUnexpected = 1;
constexpr int kExitConfig = 2;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

int run_verify(const CampaignConfig& cfg, const std::string& report, const std::string& csv) {
  const CampaignReport r = run_campaign(cfg);
  for (const auto& v : r.verdicts) {
    const char* status = meets_expectation(v) ? "ok " : "BAD";
    std::cout << status << ' ' << v.id << "  failures " << v.failures << '/' << v.trials << "  worst_margin "
              << v.worst_margin;
    if (v.acceptance_rate) std::cout << "  acceptance " << *v.acceptance_rate;
    std::cout << '\n';
  }
  if (!report.empty()) write_text(report, to_json(r).dump(2) + "\n");
  if (!csv.empty()) write_text(csv, to_csv(r));
  const bool ok = all_expected(r);
  std::cout << (ok ? "all outcomes as expected" : "unexpected outcomes") << " (" << r.elapsed << " s)\n";
  return ok ? 0 : kExitUnexpected;
}

int run_search(const SearchConfig& cfg, const std::string& out) {
  const SearchResult r = search_counterexample(cfg);
  nlohmann::json j = to_json(r);
  j["elapsed_seconds"] = r.elapsed;
  if (!out.empty()) write_text(out, j.dump(2) + "\n");
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_eval(const std::string& spec, const std::vector<std::string>& as, const std::string& b_path,
             const std::string& out) {
  HermitianMatrix m;
  if (spec.rfind("mmean:", 0) == 0) {
    const MultiMean mean = parse_multi_mean(spec);
    std::vector<HermitianMatrix> ms;
    for (const auto& p : as) ms.push_back(read_matrix_file(p));
    if (!b_path.empty()) ms.push_back(read_matrix_file(b_path));
    m = mean.apply(ms);
  } else {
    const BinaryMean mean = parse_mean(spec);
    if (as.size() != 1 || b_path.empty()) throw ConfigError("binary means take exactly one --A and one --B");
    m = mean.apply(read_matrix_file(as.front()), read_matrix_file(b_path));
  }
  if (!out.empty()) write_matrix_file(out, m);
  std::cout << to_json(m).dump(2) << '\n';
  return 0;
}

int run_antinorm(const std::string& spec, const std::string& a_path) {
  const HermitianMatrix a = read_matrix_file(a_path);
  const double value = spec.rfind("norm:", 0) == 0 ? evaluate_norm(parse_norm(spec), a)
                                                   : evaluate_antinorm(parse_antinorm(spec), a);
  std::cout.precision(17);
  std::cout << value << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matmeans: operator means, anti-norms and eigenvalue inequality checks"};
  app.require_subcommand(1);

  CampaignConfig vcfg;
  std::string props = "all", report, csv;
  auto* verify = app.add_subcommand("verify", "run registered properties and report verdicts");
  verify->add_option("--props", props, "comma-separated property ids, or 'all'");
  verify->add_option("--dim", vcfg.dim, "matrix dimension (0 cycles 2,3,4,6)")->check(CLI::Range(0, 8));
  verify->add_option("--trials", vcfg.trials, "trials per property")->check(CLI::PositiveNumber);
  verify->add_option("--seed", vcfg.seed, "master seed");
  verify->add_option("--tol", vcfg.tol, "failure threshold on margins");
  verify->add_option("--condition", vcfg.condition, "largest sampled condition number");
  verify->add_option("--report", report, "JSON report path");
  verify->add_option("--csv", csv, "CSV summary path");
  verify->add_option("--parallel", vcfg.parallel, "worker threads")->check(CLI::PositiveNumber);

  SearchConfig scfg;
  std::string mean_knob, search_out;
  auto* search = app.add_subcommand("search", "look for counterexamples to an open hypothesis");
  search->add_option("--hypothesis", scfg.hypothesis, "conj-1.7, gm-le-lm or thm-4.7-sigma-p")->required();
  search->add_option("--budget", scfg.budget, "candidate evaluations");
  search->add_option("--seed", scfg.seed, "seed");
  search->add_option("--tol", scfg.tol, "witnesses need margin below -10 tol");
  search->add_option("--dim", scfg.dim, "matrix dimension (0 cycles 2,3,4)")->check(CLI::Range(0, 8));
  search->add_flag("--commuting", scfg.commuting, "diagonal operands only");
  search->add_option("--mean", mean_knob, "restrict conj-1.7 to one catalog mean");
  search->add_option("--out", search_out, "JSON result path");

  std::string mean_spec, b_path, eval_out;
  std::vector<std::string> a_paths;
  auto* eval = app.add_subcommand("eval", "evaluate a mean on matrices read from files");
  eval->add_option("--mean", mean_spec, "mean:... or mmean:... spec")->required();
  eval->add_option("--A", a_paths, "matrix file (repeat for multi-variable means)")->required();
  eval->add_option("--B", b_path, "second matrix file");
  eval->add_option("--out", eval_out, "write the result as a matrix file");

  std::string an_spec, an_path;
  auto* antinorm = app.add_subcommand("antinorm", "evaluate an anti-norm (or norm) on a matrix file");
  antinorm->add_option("--spec", an_spec, "anorm:... or norm:... spec")->required();
  antinorm->add_option("--A", an_path, "matrix file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*verify) {
      vcfg.ids.clear();
      std::stringstream ss(props);
      for (std::string id; std::getline(ss, id, ',');) {
        if (!id.empty()) vcfg.ids.push_back(id);
      }
      return run_verify(vcfg, report, csv);
    }
    if (*search) {
      if (!mean_knob.empty()) scfg.knobs.mean = mean_knob;
      return run_search(scfg, search_out);
    }
    if (*eval) return run_eval(mean_spec, a_paths, b_path, eval_out);
    return run_antinorm(an_spec, an_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnexpected;
  }
}
