#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "seqdfo/problems.hpp"
#include "seqdfo/profiles.hpp"
#include "seqdfo/rng.hpp"
#include "seqdfo/search.hpp"
#include "seqdfo/stats.hpp"

namespace seqdfo {

inline const char* solver_name(TestKind kind) {
  return kind == TestKind::Sequential ? "st" : "ft";
}

struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  std::vector<std::pair<std::string, std::size_t>> problems;
  std::vector<double> sigma2_f_values = {0.01, 1.0};
  std::size_t reps = 10;
  std::uint64_t budget = 10000;
  double tolerance_tau = 0.1;
  std::vector<TestKind> solver_kinds = {TestKind::Sequential, TestKind::FixedSample};
  double delta0 = 1.0;
  double c = 0.5;
  double theta = 0.95;
  double gamma = 1.3;
  BudgetUnit budget_unit = BudgetUnit::OracleCalls;
  // Budget multiplier for the noiseless calibration pass that pins f_L on
  // problems without a known optimum.
  std::uint64_t calibration_factor = 10;
  // 0 means: take SEQDFO_WORKERS from the environment, else all cores.
  std::size_t workers = 0;
};

inline ExperimentConfig default_experiment_config() {
  ExperimentConfig cfg;
  for (const auto& name : catalog_names()) {
    for (std::size_t n : {std::size_t{2}, std::size_t{10}, std::size_t{50}}) {
      cfg.problems.emplace_back(name, n);
    }
  }
  return cfg;
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + v);
  }
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long d = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for '" + key + "': " + v);
  }
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// Flat `key = value` configuration text; '#' starts a comment. Lists are
// comma separated, problems are name:dimension pairs. Unknown keys are
// rejected so typos surface as config errors.
inline ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  cfg.problems.clear();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));

    if (key == "master_seed") {
      cfg.master_seed = detail::parse_u64(key, value);
    } else if (key == "problems") {
      for (const auto& item : detail::split_list(value)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
          throw ConfigError("config: problems entries must be name:dimension, got " + item);
        }
        cfg.problems.emplace_back(
            detail::trim(item.substr(0, colon)),
            static_cast<std::size_t>(
                detail::parse_u64("problems", detail::trim(item.substr(colon + 1)))));
      }
    } else if (key == "sigma2_f") {
      cfg.sigma2_f_values.clear();
      for (const auto& item : detail::split_list(value)) {
        cfg.sigma2_f_values.push_back(detail::parse_double(key, item));
      }
    } else if (key == "reps") {
      cfg.reps = static_cast<std::size_t>(detail::parse_u64(key, value));
    } else if (key == "budget") {
      cfg.budget = detail::parse_u64(key, value);
    } else if (key == "tau") {
      cfg.tolerance_tau = detail::parse_double(key, value);
    } else if (key == "solvers") {
      cfg.solver_kinds.clear();
      for (const auto& item : detail::split_list(value)) {
        if (item == "st") {
          cfg.solver_kinds.push_back(TestKind::Sequential);
        } else if (item == "ft") {
          cfg.solver_kinds.push_back(TestKind::FixedSample);
        } else {
          throw ConfigError("config: unknown solver '" + item + "' (use st or ft)");
        }
      }
    } else if (key == "delta0") {
      cfg.delta0 = detail::parse_double(key, value);
    } else if (key == "c") {
      cfg.c = detail::parse_double(key, value);
    } else if (key == "theta") {
      cfg.theta = detail::parse_double(key, value);
    } else if (key == "gamma") {
      cfg.gamma = detail::parse_double(key, value);
    } else if (key == "budget_unit") {
      if (value == "calls") {
        cfg.budget_unit = BudgetUnit::OracleCalls;
      } else if (value == "draws") {
        cfg.budget_unit = BudgetUnit::YDraws;
      } else {
        throw ConfigError("config: budget_unit must be calls or draws");
      }
    } else if (key == "calibration_factor") {
      cfg.calibration_factor = detail::parse_u64(key, value);
    } else if (key == "workers") {
      cfg.workers = static_cast<std::size_t>(detail::parse_u64(key, value));
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

inline void validate_experiment_config(const ExperimentConfig& cfg) {
  if (cfg.problems.empty()) throw ConfigError("config: no problems listed");
  if (cfg.reps < 1) throw ConfigError("config: reps must be >= 1");
  if (cfg.budget < 1) throw ConfigError("config: budget must be >= 1");
  if (!(cfg.tolerance_tau > 0.0 && cfg.tolerance_tau < 1.0)) {
    throw ConfigError("config: tau must be in (0, 1)");
  }
  if (cfg.solver_kinds.empty()) throw ConfigError("config: no solvers listed");
  if (cfg.sigma2_f_values.empty()) throw ConfigError("config: no sigma2_f values listed");
  for (double s2 : cfg.sigma2_f_values) {
    if (!(s2 >= 0.0)) throw ConfigError("config: sigma2_f values must be >= 0");
  }
  SearchConfig probe;
  probe.delta0 = cfg.delta0;
  probe.c = cfg.c;
  probe.theta = cfg.theta;
  probe.gamma = cfg.gamma;
  validate_config(probe);
  for (const auto& [name, n] : cfg.problems) {
    builtin_problem(name, n);  // throws on an unresolvable entry
  }
}

struct ExperimentResult {
  std::vector<SolveRecord> records;
  // Keyed by sigma2_f, then solver name.
  std::map<double, std::map<std::string, ProfileCurve>> data_profiles;
  std::map<double, std::map<std::string, ProfileCurve>> performance_profiles;
  // f_L actually used per "problem:n" instance label.
  std::map<std::string, double> f_lower;
  std::uint64_t budget = 0;
  double tolerance_tau = 0.0;
};

namespace detail {

inline std::size_t resolve_workers(std::size_t configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("SEQDFO_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

// Index-dispatched parallel loop. Each index is processed exactly once and
// writes only its own output slot, so the result is independent of the
// worker count. The first worker exception is rethrown on the caller.
template <class Fn>
void parallel_for_index(std::size_t count, std::size_t workers, Fn&& fn) {
  if (count == 0) return;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  const std::size_t spawn = std::min(workers, count);
  if (spawn <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(spawn - 1);
    for (std::size_t w = 0; w + 1 < spawn; ++w) threads.emplace_back(work);
    work();
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
}

inline std::uint64_t rep_seed(std::uint64_t master_seed, const std::string& problem,
                              std::size_t n, double sigma2, std::size_t rep) {
  const std::string label = "problem=" + problem + ";n=" + std::to_string(n) +
                            ";sigma2=" + format_double(sigma2) +
                            ";rep=" + std::to_string(rep);
  return RngStream::mix_key(master_seed, fnv1a64(label));
}

}  // namespace detail

// Runs the full grid of (problem, sigma2, rep, solver) jobs and assembles
// records and profiles. Every run draws from a stream derived as
// derive(rep_seed, solver), where rep_seed mixes the master seed with the
// instance label; the rep_seed is what lands in the records, shared by both
// solvers of a replication. Output is deterministic for a given config, no
// matter how many workers execute it.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_experiment_config(cfg);
  const std::size_t workers = detail::resolve_workers(cfg.workers);

  SearchConfig base;
  base.delta0 = cfg.delta0;
  base.c = cfg.c;
  base.theta = cfg.theta;
  base.gamma = cfg.gamma;
  base.budget = cfg.budget;
  base.budget_unit = cfg.budget_unit;
  base.record_iterates = false;

  // Unique instances, first-seen order.
  std::vector<std::pair<std::string, std::size_t>> instances;
  for (const auto& inst : cfg.problems) {
    if (std::find(instances.begin(), instances.end(), inst) == instances.end()) {
      instances.push_back(inst);
    }
  }

  ExperimentResult result;
  result.budget = cfg.budget;
  result.tolerance_tau = cfg.tolerance_tau;

  // Baseline value per instance: the known optimum where the catalog has one,
  // otherwise the best value any noiseless calibration run finds with an
  // enlarged budget (the usual best-found convention).
  std::map<std::string, double> f_lower;
  std::map<std::string, double> f_start;
  std::vector<std::size_t> needs_calibration;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& [name, n] = instances[i];
    const Problem p = builtin_problem(name, n);
    const std::string label = name + ":" + std::to_string(n);
    f_start[label] = p.eval_at(p.x0);
    if (p.f_star) {
      f_lower[label] = *p.f_star;
    } else {
      needs_calibration.push_back(i);
    }
  }
  if (!needs_calibration.empty()) {
    std::vector<double> best(needs_calibration.size() * cfg.reps);
    detail::parallel_for_index(
        best.size(), workers, [&](std::size_t j) {
          const auto& [name, n] = instances[needs_calibration[j / cfg.reps]];
          const std::size_t rep = j % cfg.reps;
          const Problem p = builtin_problem(name, n);
          SearchConfig run_cfg = base;
          run_cfg.sigma2_f = 0.0;
          run_cfg.test_kind = TestKind::Sequential;
          run_cfg.budget = cfg.budget * cfg.calibration_factor;
          RngStream stream = RngStream::derive(
              detail::rep_seed(cfg.master_seed, name, n, 0.0, rep), fnv1a64("calibration"));
          best[j] = run_direct_search(run_cfg, p, stream).best_true_f();
        });
    for (std::size_t j = 0; j < needs_calibration.size(); ++j) {
      const auto& [name, n] = instances[needs_calibration[j]];
      double b = best[j * cfg.reps];
      for (std::size_t r = 1; r < cfg.reps; ++r) b = std::min(b, best[j * cfg.reps + r]);
      f_lower[name + ":" + std::to_string(n)] = b;
    }
  }
  result.f_lower = f_lower;

  // Main grid.
  struct Job {
    std::size_t instance;
    double sigma2;
    std::size_t rep;
    TestKind kind;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (double s2 : cfg.sigma2_f_values) {
      for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
        for (TestKind kind : cfg.solver_kinds) {
          jobs.push_back({i, s2, rep, kind});
        }
      }
    }
  }

  result.records.resize(jobs.size());
  detail::parallel_for_index(jobs.size(), workers, [&](std::size_t j) {
    const Job& job = jobs[j];
    const auto& [name, n] = instances[job.instance];
    const std::string label = name + ":" + std::to_string(n);
    const Problem p = builtin_problem(name, n);
    SearchConfig run_cfg = base;
    run_cfg.sigma2_f = job.sigma2;
    run_cfg.test_kind = job.kind;
    const std::uint64_t seed = detail::rep_seed(cfg.master_seed, name, n, job.sigma2, job.rep);
    // Both solvers of a replication run from the same stream seed, so a
    // noiseless replication is literally the same search under either test
    // and noisy comparisons are paired.
    RngStream stream(seed);
    const RunTrace trace = run_direct_search(run_cfg, p, stream);
    const double f0 = f_start.at(label);
    const double fL = f_lower.at(label);
    if (!(f0 > fL)) {
      throw std::runtime_error("experiment: baseline is not below the start value for " + label);
    }
    SolveRecord rec;
    rec.problem = name;
    rec.n = n;
    rec.solver = solver_name(job.kind);
    rec.sigma2_f = job.sigma2;
    rec.seed = seed;
    rec.t_evals = evals_to_convergence(trace, f0, fL, cfg.tolerance_tau);
    rec.best_true_f = trace.best_true_f();
    result.records[j] = std::move(rec);
  });

  // Profiles per noise level.
  std::vector<double> data_grid;
  for (std::size_t i = 0; i <= 256; ++i) {
    data_grid.push_back(static_cast<double>(cfg.budget) * static_cast<double>(i) / 256.0);
  }
  std::vector<double> perf_grid;
  for (std::size_t i = 0; i <= 160; ++i) {
    perf_grid.push_back(std::pow(2.0, static_cast<double>(i) / 16.0));
  }
  for (double s2 : cfg.sigma2_f_values) {
    std::vector<SolveRecord> subset;
    for (const auto& r : result.records) {
      if (r.sigma2_f == s2) subset.push_back(r);
    }
    if (subset.empty()) continue;
    result.data_profiles[s2] = data_profile(subset, data_grid);
    if (cfg.solver_kinds.size() >= 2) {
      result.performance_profiles[s2] = performance_profile(subset, perf_grid);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// CSV and SVG serialization.

inline std::string records_to_csv(std::span<const SolveRecord> records) {
  std::string csv = "problem,n,solver,sigma2_f,seed,t_evals,best_true_f\n";
  for (const auto& r : records) {
    csv += r.problem;
    csv += ',' + std::to_string(r.n);
    csv += ',' + r.solver;
    csv += ',' + detail::format_double(r.sigma2_f);
    csv += ',' + std::to_string(r.seed);
    csv += ',';
    if (r.t_evals) csv += std::to_string(*r.t_evals);
    csv += ',' + detail::format_double(r.best_true_f);
    csv += '\n';
  }
  return csv;
}

inline std::vector<SolveRecord> records_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("records csv: empty input");
  if (detail::trim(line) != "problem,n,solver,sigma2_f,seed,t_evals,best_true_f") {
    throw std::runtime_error("records csv: unexpected header: " + line);
  }
  std::vector<SolveRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (fields.size() != 7) {
      throw std::runtime_error("records csv: line " + std::to_string(lineno) +
                               " has " + std::to_string(fields.size()) + " fields");
    }
    SolveRecord r;
    r.problem = fields[0];
    r.n = static_cast<std::size_t>(detail::parse_u64("n", fields[1]));
    r.solver = fields[2];
    r.sigma2_f = detail::parse_double("sigma2_f", fields[3]);
    r.seed = detail::parse_u64("seed", fields[4]);
    if (!fields[5].empty()) r.t_evals = detail::parse_u64("t_evals", fields[5]);
    r.best_true_f = detail::parse_double("best_true_f", fields[6]);
    records.push_back(std::move(r));
  }
  return records;
}

inline std::string profiles_to_csv(const std::map<std::string, ProfileCurve>& curves) {
  std::string csv = "solver,alpha,fraction\n";
  for (const auto& [solver, curve] : curves) {
    for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
      csv += solver;
      csv += ',' + detail::format_double(curve.alphas[i]);
      csv += ',' + detail::format_double(curve.fractions[i]);
      csv += '\n';
    }
  }
  return csv;
}

// Minimal hand-rolled SVG: axes, ticks, one step line per solver, legend.
// log2_x plots the abscissa on a log2 scale (for performance ratios).
inline std::string profiles_to_svg(const std::map<std::string, ProfileCurve>& curves,
                                   const std::string& title, const std::string& x_label,
                                   bool log2_x) {
  const double width = 640, height = 440;
  const double ml = 64, mr = 20, mt = 36, mb = 52;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = 0.0, xmax = 1.0;
  bool first = true;
  for (const auto& [solver, curve] : curves) {
    for (double a : curve.alphas) {
      const double v = log2_x ? std::log2(std::max(a, 1e-300)) : a;
      if (first) {
        xmin = xmax = v;
        first = false;
      } else {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
      }
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;

  auto sx = [&](double a) {
    const double v = log2_x ? std::log2(std::max(a, 1e-300)) : a;
    return ml + (v - xmin) / (xmax - xmin) * pw;
  };
  auto sy = [&](double f) { return mt + (1.0 - f) * ph; };

  char buf[512];
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"440\" "
         "viewBox=\"0 0 640 440\">\n";
  svg += "<rect width=\"640\" height=\"440\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" "
                "text-anchor=\"middle\">%s</text>\n",
                ml + pw / 2, title.c_str());
  svg += buf;
  // axes
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                ml, mt + ph, ml + pw, mt + ph);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                ml, mt, ml, mt + ph);
  svg += buf;
  // y ticks at 0, 0.2, ..., 1
  for (int i = 0; i <= 5; ++i) {
    const double f = i / 5.0;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" "
                  "text-anchor=\"end\">%.1f</text>\n",
                  ml - 4, sy(f), ml, sy(f), ml - 7, sy(f) + 4, f);
    svg += buf;
  }
  // x ticks
  for (int i = 0; i <= 5; ++i) {
    const double v = xmin + (xmax - xmin) * i / 5.0;
    const double a = log2_x ? std::pow(2.0, v) : v;
    const double px = ml + pw * i / 5.0;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" "
                  "text-anchor=\"middle\">%.4g</text>\n",
                  px, mt + ph, px, mt + ph + 4, px, mt + ph + 18, a);
    svg += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\" "
                "text-anchor=\"middle\">%s</text>\n",
                ml + pw / 2, height - 14, x_label.c_str());
  svg += buf;
  svg += "<text x=\"16\" y=\"235\" font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 16 235)\">fraction solved</text>\n";

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::size_t ci = 0;
  double legend_y = mt + 14;
  for (const auto& [solver, curve] : curves) {
    const char* color = palette[ci % 4];
    std::string pts;
    double prev_y = sy(curve.fractions.empty() ? 0.0 : curve.fractions[0]);
    for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
      const double px = sx(curve.alphas[i]);
      const double py = sy(curve.fractions[i]);
      if (i > 0) {  // horizontal-then-vertical step
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px, prev_y);
        pts += buf;
      }
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px, py);
      pts += buf;
      prev_y = py;
    }
    std::snprintf(buf, sizeof(buf),
                  "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"%s\"/>\n",
                  color, pts.c_str());
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                  "stroke-width=\"2\"/><text x=\"%.1f\" y=\"%.1f\" "
                  "font-family=\"sans-serif\" font-size=\"12\">%s</text>\n",
                  ml + pw - 110, legend_y, ml + pw - 86, legend_y, color, ml + pw - 80,
                  legend_y + 4, solver.c_str());
    svg += buf;
    legend_y += 18;
    ++ci;
  }
  svg += "</svg>\n";
  return svg;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// Writes records.csv plus per-noise-level profile CSVs and SVG plots.
inline void write_experiment_outputs(const ExperimentResult& result,
                                     const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir / "records.csv", records_to_csv(result.records));
  auto sig_tag = [](double s2) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%g", s2);
    return std::string(buf);
  };
  for (const auto& [s2, curves] : result.data_profiles) {
    const std::string tag = sig_tag(s2);
    write_text_file(out_dir / ("data_profile_sigma" + tag + ".csv"), profiles_to_csv(curves));
    write_text_file(out_dir / ("data_profile_sigma" + tag + ".svg"),
                    profiles_to_svg(curves, "data profile, sigma2_f=" + tag,
                                    "alpha (budget units of n+1 calls)", false));
  }
  for (const auto& [s2, curves] : result.performance_profiles) {
    const std::string tag = sig_tag(s2);
    write_text_file(out_dir / ("performance_profile_sigma" + tag + ".csv"),
                    profiles_to_csv(curves));
    write_text_file(out_dir / ("performance_profile_sigma" + tag + ".svg"),
                    profiles_to_svg(curves, "performance profile, sigma2_f=" + tag,
                                    "cost ratio alpha (log2 axis)", true));
  }
}

}  // namespace seqdfo
