#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "seqdfo/search.hpp"

namespace seqdfo {

// One solver run on one problem instance. t_evals is the oracle-call count at
// which the run first met the convergence test; empty means unsolved within
// budget. seed identifies the replication and is shared by all solvers on the
// same instance, so profile code can pair runs.
struct SolveRecord {
  std::string problem;
  std::size_t n = 0;
  std::string solver;
  double sigma2_f = 0.0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> t_evals;
  double best_true_f = 0.0;
};

// Smallest oracle-call count at which the trace's best exact value reached
// f_L + tau (f0 - f_L); empty if it never did.
inline std::optional<std::uint64_t> evals_to_convergence(const RunTrace& trace, double f0,
                                                         double f_L, double tau) {
  if (!(f0 > f_L)) throw std::invalid_argument("evals_to_convergence: needs f0 > f_L");
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("evals_to_convergence: tau must be in (0, 1)");
  }
  const double threshold = f_L + tau * (f0 - f_L);
  for (const auto& [calls, best] : trace.best_true_f_by_calls) {
    if (best <= threshold) return calls;
  }
  return std::nullopt;
}

// Fraction-of-instances-solved curves.
struct ProfileCurve {
  std::vector<double> alphas;
  std::vector<double> fractions;
};

// Data profile: per solver, d(alpha) = fraction of records solved within
// alpha * (n + 1) oracle calls. Unsolved records stay in the denominator but
// never count as solved.
inline std::map<std::string, ProfileCurve> data_profile(std::span<const SolveRecord> records,
                                                        std::span<const double> alpha_grid) {
  if (records.empty()) throw std::invalid_argument("data_profile: no records");
  std::map<std::string, std::vector<double>> cost_units;  // t / (n+1), inf if unsolved
  for (const auto& r : records) {
    const double units =
        r.t_evals ? static_cast<double>(*r.t_evals) / static_cast<double>(r.n + 1)
                  : std::numeric_limits<double>::infinity();
    cost_units[r.solver].push_back(units);
  }
  std::map<std::string, ProfileCurve> curves;
  for (auto& [solver, units] : cost_units) {
    std::sort(units.begin(), units.end());
    ProfileCurve curve;
    for (double alpha : alpha_grid) {
      const auto solved = std::upper_bound(units.begin(), units.end(), alpha) - units.begin();
      curve.alphas.push_back(alpha);
      curve.fractions.push_back(static_cast<double>(solved) /
                                static_cast<double>(units.size()));
    }
    curves[solver] = std::move(curve);
  }
  return curves;
}

// Performance profile: records are grouped into instances by
// (problem, n, sigma2_f, seed); within a group each solver's cost ratio is
// t_s / min_s t_s (infinite when unsolved), and rho_s(alpha) is the fraction
// of all instances with ratio <= alpha.
inline std::map<std::string, ProfileCurve> performance_profile(
    std::span<const SolveRecord> records, std::span<const double> alpha_grid) {
  if (records.empty()) throw std::invalid_argument("performance_profile: no records");
  std::vector<std::string> solvers;
  for (const auto& r : records) {
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end()) {
      solvers.push_back(r.solver);
    }
  }
  if (solvers.size() < 2) {
    throw std::invalid_argument("performance_profile: needs at least 2 solvers");
  }
  std::sort(solvers.begin(), solvers.end());

  using InstanceKey = std::tuple<std::string, std::size_t, double, std::uint64_t>;
  std::map<InstanceKey, std::map<std::string, double>> instances;
  for (const auto& r : records) {
    const double t = r.t_evals ? static_cast<double>(*r.t_evals)
                               : std::numeric_limits<double>::infinity();
    instances[{r.problem, r.n, r.sigma2_f, r.seed}][r.solver] = t;
  }

  std::map<std::string, std::vector<double>> ratios;
  for (const auto& s : solvers) ratios[s] = {};
  for (const auto& [key, by_solver] : instances) {
    double tmin = std::numeric_limits<double>::infinity();
    for (const auto& [solver, t] : by_solver) tmin = std::min(tmin, t);
    for (const auto& s : solvers) {
      const auto it = by_solver.find(s);
      const double t = it == by_solver.end() ? std::numeric_limits<double>::infinity()
                                             : it->second;
      ratios[s].push_back(std::isfinite(t) && std::isfinite(tmin)
                              ? t / tmin
                              : std::numeric_limits<double>::infinity());
    }
  }

  std::map<std::string, ProfileCurve> curves;
  for (auto& [solver, rs] : ratios) {
    std::sort(rs.begin(), rs.end());
    ProfileCurve curve;
    for (double alpha : alpha_grid) {
      const auto within = std::upper_bound(rs.begin(), rs.end(), alpha) - rs.begin();
      curve.alphas.push_back(alpha);
      curve.fractions.push_back(static_cast<double>(within) / static_cast<double>(rs.size()));
    }
    curves[solver] = std::move(curve);
  }
  return curves;
}

}  // namespace seqdfo
