// Command-line front end: benchmark runs, profile regeneration, verification
// suites, and single-run traces.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqdfo/seqdfo.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;
constexpr int kExitVerifyFailed = 3;

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file: " << config_path << "\n";
    return kExitConfigError;
  }
  const seqdfo::ExperimentConfig cfg = seqdfo::parse_experiment_config(in);
  seqdfo::validate_experiment_config(cfg);
  const seqdfo::ExperimentResult result = seqdfo::run_experiment(cfg);
  seqdfo::write_experiment_outputs(result, out_dir);
  std::size_t solved = 0;
  for (const auto& r : result.records) solved += r.t_evals.has_value();
  std::cout << "wrote " << result.records.size() << " records to " << out_dir
            << " (" << solved << " solved within budget)\n";
  return kExitOk;
}

int cmd_profiles(const std::string& records_path, double tau, const std::string& out_dir) {
  if (!(tau > 0.0 && tau < 1.0)) {
    std::cerr << "error: tau must be in (0, 1)\n";
    return kExitConfigError;
  }
  std::ifstream in(records_path);
  if (!in) {
    std::cerr << "error: cannot open records file: " << records_path << "\n";
    return kExitConfigError;
  }
  const std::vector<seqdfo::SolveRecord> records = seqdfo::records_from_csv(in);
  if (records.empty()) {
    std::cerr << "error: records file has no rows\n";
    return kExitConfigError;
  }

  std::vector<double> sigmas;
  std::vector<std::string> solvers;
  std::uint64_t max_t = 1;
  for (const auto& r : records) {
    if (std::find(sigmas.begin(), sigmas.end(), r.sigma2_f) == sigmas.end()) {
      sigmas.push_back(r.sigma2_f);
    }
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end()) {
      solvers.push_back(r.solver);
    }
    if (r.t_evals && *r.t_evals > max_t) max_t = *r.t_evals;
  }
  std::sort(sigmas.begin(), sigmas.end());

  std::vector<double> data_grid;
  for (std::size_t i = 0; i <= 256; ++i) {
    data_grid.push_back(static_cast<double>(max_t) * static_cast<double>(i) / 256.0);
  }
  std::vector<double> perf_grid;
  for (std::size_t i = 0; i <= 160; ++i) {
    perf_grid.push_back(std::pow(2.0, static_cast<double>(i) / 16.0));
  }

  std::filesystem::create_directories(out_dir);
  char tau_tag[32];
  std::snprintf(tau_tag, sizeof(tau_tag), "%g", tau);
  for (double s2 : sigmas) {
    std::vector<seqdfo::SolveRecord> subset;
    for (const auto& r : records) {
      if (r.sigma2_f == s2) subset.push_back(r);
    }
    char sig_tag[32];
    std::snprintf(sig_tag, sizeof(sig_tag), "%g", s2);
    const std::string tag(sig_tag);
    const auto data = seqdfo::data_profile(subset, data_grid);
    seqdfo::write_text_file(std::filesystem::path(out_dir) / ("data_profile_sigma" + tag + ".csv"),
                            seqdfo::profiles_to_csv(data));
    seqdfo::write_text_file(
        std::filesystem::path(out_dir) / ("data_profile_sigma" + tag + ".svg"),
        seqdfo::profiles_to_svg(data,
                                "data profile, sigma2_f=" + tag + ", tau=" + tau_tag,
                                "alpha (budget units of n+1 calls)", false));
    if (solvers.size() >= 2) {
      const auto perf = seqdfo::performance_profile(subset, perf_grid);
      seqdfo::write_text_file(
          std::filesystem::path(out_dir) / ("performance_profile_sigma" + tag + ".csv"),
          seqdfo::profiles_to_csv(perf));
      seqdfo::write_text_file(
          std::filesystem::path(out_dir) / ("performance_profile_sigma" + tag + ".svg"),
          seqdfo::profiles_to_svg(perf,
                                  "performance profile, sigma2_f=" + tag + ", tau=" + tau_tag,
                                  "cost ratio alpha (log2 axis)", true));
    }
  }
  std::cout << "wrote profiles for " << sigmas.size() << " noise level(s) to " << out_dir
            << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
               const std::string& csv_path) {
  std::vector<seqdfo::CheckResult> checks;
  auto append = [&](std::vector<seqdfo::CheckResult> more) {
    checks.insert(checks.end(), more.begin(), more.end());
  };
  if (suite == "all" || suite == "testing") append(seqdfo::verify_testing_suite(trials, seed));
  if (suite == "all" || suite == "renewal") append(seqdfo::verify_renewal_suite(trials, seed));
  if (suite == "all" || suite == "inequalities") append(seqdfo::verify_inequalities_suite());
  if (checks.empty()) {
    std::cerr << "error: unknown suite '" << suite
              << "' (use all, testing, renewal or inequalities)\n";
    return kExitConfigError;
  }
  std::cout << seqdfo::format_check_report(checks);
  if (!csv_path.empty()) {
    seqdfo::write_text_file(csv_path, seqdfo::check_report_csv(checks));
  }
  for (const auto& c : checks) {
    if (!c.pass) return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_trace(const std::string& problem_name, std::size_t n, const std::string& solver,
              double sigma2, std::uint64_t seed, std::uint64_t budget) {
  const seqdfo::Problem problem = seqdfo::builtin_problem(problem_name, n);
  seqdfo::SearchConfig cfg;
  cfg.sigma2_f = sigma2;
  cfg.budget = budget;
  if (solver == "st") {
    cfg.test_kind = seqdfo::TestKind::Sequential;
  } else if (solver == "ft") {
    cfg.test_kind = seqdfo::TestKind::FixedSample;
  } else {
    std::cerr << "error: solver must be st or ft\n";
    return kExitConfigError;
  }
  // The seed is the stream seed recorded in records.csv, so a row can be
  // replayed exactly by passing its seed and solver here.
  seqdfo::RngStream stream(seed);
  const seqdfo::RunTrace trace = seqdfo::run_direct_search(cfg, problem, stream);

  std::printf("%8s %12s %14s %10s %8s %7s %12s\n", "iter", "delta", "true_f", "y_draws",
              "accept", "capped", "calls");
  for (const auto& rec : trace.records) {
    std::printf("%8llu %12.5g %14.8g %10llu %8s %7s %12llu\n",
                static_cast<unsigned long long>(rec.k), rec.delta_k, rec.true_f,
                static_cast<unsigned long long>(rec.samples_m), rec.accepted ? "yes" : "no",
                rec.capped ? "yes" : "no",
                static_cast<unsigned long long>(rec.oracle_calls_cum));
  }
  std::printf("# iterations=%zu oracle_calls=%llu best_true_f=%.10g\n", trace.records.size(),
              static_cast<unsigned long long>(trace.total_oracle_calls),
              trace.best_true_f());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequential-test direct search: benchmark and verification toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  auto* run = app.add_subcommand("run", "run the benchmark experiment from a config file");
  run->add_option("--config", config_path, "experiment config (key = value lines)")->required();
  run->add_option("--out", out_dir, "output directory");

  std::string records_path, prof_out = "out";
  double tau = 0.1;
  auto* profiles = app.add_subcommand("profiles", "rebuild profiles from a records CSV");
  profiles->add_option("--records", records_path, "records.csv from a previous run")->required();
  profiles->add_option("--tau", tau, "convergence tolerance the records were produced with");
  profiles->add_option("--out", prof_out, "output directory");

  std::string suite = "all", verify_csv;
  std::uint64_t trials = 100000, seed = 1;
  auto* verify = app.add_subcommand("verify", "run statistical verification suites");
  verify->add_option("--suite", suite, "all, testing, renewal or inequalities");
  verify->add_option("--trials", trials, "Monte Carlo trials per check");
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--csv", verify_csv, "also write the report as CSV to this path");

  std::string trace_problem = "sphere", trace_solver = "st";
  std::size_t trace_n = 2;
  double trace_sigma2 = 1.0;
  std::uint64_t trace_seed = 1, trace_budget = 10000;
  auto* trace = app.add_subcommand("trace", "print the per-iteration table of one run");
  trace->add_option("--problem", trace_problem, "catalog problem name")->required();
  trace->add_option("--n", trace_n, "dimension")->required();
  trace->add_option("--solver", trace_solver, "st or ft")->required();
  trace->add_option("--sigma2", trace_sigma2, "per-evaluation noise variance")->required();
  trace->add_option("--seed", trace_seed, "run seed")->required();
  trace->add_option("--budget", trace_budget, "oracle-call budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (profiles->parsed()) return cmd_profiles(records_path, tau, prof_out);
    if (verify->parsed()) return cmd_verify(suite, trials, seed, verify_csv);
    if (trace->parsed()) return cmd_trace(trace_problem, trace_n, trace_solver, trace_sigma2,
                                          trace_seed, trace_budget);
  } catch (const seqdfo::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitOk;
}
