#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seqdfo/rng.hpp"
#include "seqdfo/search.hpp"
#include "seqdfo/stats.hpp"
#include "seqdfo/testing.hpp"

namespace seqdfo {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

inline McEstimate to_estimate(const RunningStat& s) {
  return {s.mean(), s.std_error(), s.count()};
}

struct ErrorProbEstimates {
  McEstimate accept_h1;
  McEstimate accept_h0;
};

// Empirical acceptance probabilities of the chosen test on Gaussian
// Y ~ N(mu, sigma2) at accuracy level C, over independent trials.
inline ErrorProbEstimates estimate_error_probabilities(double mu, double sigma2, double C,
                                                       TestKind kind, std::uint64_t trials,
                                                       RngStream& stream) {
  if (!(sigma2 > 0.0) || !(C > 0.0)) {
    throw std::invalid_argument("estimate_error_probabilities: sigma2 and C must be > 0");
  }
  if (trials == 0) throw std::invalid_argument("estimate_error_probabilities: trials must be > 0");
  const double sd = std::sqrt(sigma2);
  auto sampler = [&](RngStream& s) { return gaussian(s, mu, sd); };

  std::uint64_t h1 = 0;
  if (kind == TestKind::Sequential) {
    const double c0 = c_accurate_boundary(sigma2, C);
    const std::uint64_t cap = 10 * fixed_sample_size(sigma2, C);
    const auto schedule = BoundarySchedule::constant_symmetric(c0, cap);
    for (std::uint64_t i = 0; i < trials; ++i) {
      if (run_sequential_test(sampler, schedule, stream).decision.accepted == Hypothesis::H1) ++h1;
    }
  } else {
    const std::uint64_t m = fixed_sample_size(sigma2, C);
    for (std::uint64_t i = 0; i < trials; ++i) {
      if (run_fixed_test(sampler, m, stream).decision.accepted == Hypothesis::H1) ++h1;
    }
  }
  const double p1 = static_cast<double>(h1) / static_cast<double>(trials);
  const double se =
      trials > 1 ? std::sqrt(p1 * (1.0 - p1) / static_cast<double>(trials - 1)) : 0.0;
  return {{p1, se, trials}, {1.0 - p1, se, trials}};
}

// Mean stopping size of the sequential test with the minimal C-accurate
// boundary on Gaussian Y ~ N(mu, sigma2).
inline McEstimate estimate_expected_sample_size(double mu, double sigma2, double C,
                                                std::uint64_t trials, RngStream& stream) {
  if (!(sigma2 > 0.0) || !(C > 0.0)) {
    throw std::invalid_argument("estimate_expected_sample_size: sigma2 and C must be > 0");
  }
  if (trials == 0) throw std::invalid_argument("estimate_expected_sample_size: trials must be > 0");
  const double sd = std::sqrt(sigma2);
  auto sampler = [&](RngStream& s) { return gaussian(s, mu, sd); };
  const double c0 = c_accurate_boundary(sigma2, C);
  const std::uint64_t cap = 10 * fixed_sample_size(sigma2, C);
  const auto schedule = BoundarySchedule::constant_symmetric(c0, cap);
  RunningStat stat;
  for (std::uint64_t i = 0; i < trials; ++i) {
    stat.add(static_cast<double>(
        run_sequential_test(sampler, schedule, stream).decision.samples_used));
  }
  return to_estimate(stat);
}

// Valid envelope of the diffusion approximation of the expected sample size:
// tanh(u) <= min(u, 1) gives
//   E[m] <~ (sigma2/(4 e^2 C^2)) * min(1, 2eC/|mu|).
// Note the factor 2: for |mu| > eC the single-eC variant printed by
// sample_size_bound drops below the approximation itself (tanh passes 1/2 at
// mu = 2eC), so dominance checks must use this ceiling.
inline double expected_size_ceiling(double mu, double sigma2, double C) {
  const double ec = std::numbers::e * C;
  const double first = sigma2 / (4.0 * ec * ec);
  if (mu == 0.0) return first;
  return first * std::min(1.0, 2.0 * ec / std::abs(mu));
}

struct ScalingFit {
  double slope = 0.0;
  // (log delta, log mean sample size) per grid point.
  std::vector<std::pair<double, double>> log_points;
};

// Slope of log(mean stopping size) against log(delta) when the accuracy level
// scales as C = s delta^2 and the tested mean as mu = mu_coeff delta^r. A
// slope of -4 marks the fixed-sampling regime; drifts of order delta^r with
// r < 2 pull it up to -(2+r).
inline ScalingFit check_scaling_law(double r, double mu_coeff, double s_coeff, double sigma2,
                                    std::span<const double> delta_grid, std::uint64_t trials,
                                    RngStream& stream) {
  if (!(r > 0.0 && r <= 2.0)) throw std::invalid_argument("check_scaling_law: r must be in (0, 2]");
  if (!(s_coeff > 0.0) || !(sigma2 > 0.0)) {
    throw std::invalid_argument("check_scaling_law: s and sigma2 must be > 0");
  }
  if (trials == 0) throw std::invalid_argument("check_scaling_law: trials must be > 0");
  if (delta_grid.size() < 4) {
    throw std::invalid_argument("check_scaling_law: need at least 4 grid points");
  }
  double dmin = delta_grid[0], dmax = delta_grid[0];
  for (double d : delta_grid) {
    if (!(d > 0.0)) throw std::invalid_argument("check_scaling_law: deltas must be > 0");
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  if (!(dmax / dmin >= 8.0)) {
    throw std::invalid_argument("check_scaling_law: grid must span at least an 8x range");
  }

  ScalingFit fit;
  std::vector<double> lx, ly;
  for (double delta : delta_grid) {
    const double C = s_coeff * delta * delta;
    const double mu = mu_coeff * std::pow(delta, r);
    const McEstimate est = estimate_expected_sample_size(mu, sigma2, C, trials, stream);
    lx.push_back(std::log(delta));
    ly.push_back(std::log(est.mean));
    fit.log_points.emplace_back(lx.back(), ly.back());
  }
  fit.slope = fit_slope(lx, ly);
  return fit;
}

// The fixed-sampling comparator on the same accuracy grid: its size is the
// deterministic ceil(sigma2 / (s delta^2)^2), slope exactly -4 up to rounding.
inline ScalingFit fixed_sampling_scaling(double s_coeff, double sigma2,
                                         std::span<const double> delta_grid) {
  if (delta_grid.size() < 2) {
    throw std::invalid_argument("fixed_sampling_scaling: need at least 2 grid points");
  }
  ScalingFit fit;
  std::vector<double> lx, ly;
  for (double delta : delta_grid) {
    const double C = s_coeff * delta * delta;
    lx.push_back(std::log(delta));
    ly.push_back(std::log(static_cast<double>(fixed_sample_size(sigma2, C))));
    fit.log_points.emplace_back(lx.back(), ly.back());
  }
  fit.slope = fit_slope(lx, ly);
  return fit;
}

// Two-outcome increment process: W = a > 0 with probability p, else b < 0.
// Positive mean increment v = p(a-b)+b is required throughout.
struct RenewalParams {
  double a = 0.0;
  double b = 0.0;
  double p = 0.0;

  double drift() const { return p * (a - b) + b; }

  void validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("renewal: a must be > 0");
    if (!(b < 0.0)) throw std::invalid_argument("renewal: b must be < 0");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("renewal: p must be in (0, 1)");
    if (!(drift() > 0.0)) {
      throw std::invalid_argument("renewal: mean increment p(a-b)+b must be > 0");
    }
  }
};

// Closed-form ceiling on the mean first passage to 0 of the walk started at
// b: (a - b) / (p a - p b + b).
inline double renewal_bound(const RenewalParams& rp) {
  rp.validate();
  return (rp.a - rp.b) / rp.drift();
}

struct RenewalEstimates {
  McEstimate tau_bar;  // passage time to >= 0 of the free walk started at b
  McEstimate tau_n;    // interarrival time of the ceiling-clamped walk
};

// Simulates both hitting times. The clamped walk is normalized so the ceiling
// sits at 0 (its interarrival law does not depend on the ceiling's value):
// from the ceiling, an up step returns immediately, a down step falls to b
// and must climb back.
inline RenewalEstimates simulate_renewal(const RenewalParams& rp, std::uint64_t trials,
                                         RngStream& stream) {
  rp.validate();
  if (trials == 0) throw std::invalid_argument("simulate_renewal: trials must be > 0");
  RunningStat bar_stat, n_stat;
  for (std::uint64_t i = 0; i < trials; ++i) {
    double z = rp.b;
    std::uint64_t t = 0;
    while (z < 0.0) {
      z += stream.next_double() < rp.p ? rp.a : rp.b;
      ++t;
    }
    bar_stat.add(static_cast<double>(t));
  }
  for (std::uint64_t i = 0; i < trials; ++i) {
    double z = 0.0;
    std::uint64_t t = 0;
    do {
      z = std::min(z + (stream.next_double() < rp.p ? rp.a : rp.b), 0.0);
      ++t;
    } while (z < 0.0);
    n_stat.add(static_cast<double>(t));
  }
  return {to_estimate(bar_stat), to_estimate(n_stat)};
}

struct InequalityViolation {
  std::string which;
  double param = 0.0;  // A or t
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct InequalityReport {
  std::uint64_t checked_ratio_bound = 0;
  std::uint64_t checked_power_bound = 0;
  std::vector<InequalityViolation> violations;

  bool clean() const { return violations.empty(); }
};

// Pointwise checks of the two scalar inequalities behind the boundary choice
// and the sample-size ceiling:
//   ratio bound:  (A^x - 1) / (x (A^x + 1)) <= log(A) / 2   for A > 1, any x
//                 (x = 0 evaluated by its limit log(A)/2)
//   power bound:  1 / t^x <= 1 / x                          for x >= 1,
//                 which holds for every x iff t >= e^(1/e).
// Comparisons carry a 1e-12 relative guard so double rounding near the tight
// points cannot manufacture violations.
inline InequalityReport check_auxiliary_inequalities(std::span<const double> grid_A,
                                                     std::span<const double> grid_x_ratio,
                                                     std::span<const double> grid_t,
                                                     std::span<const double> grid_x_power) {
  InequalityReport report;
  for (double A : grid_A) {
    if (!(A > 1.0)) throw std::invalid_argument("check_auxiliary_inequalities: A must be > 1");
    const double rhs = std::log(A) / 2.0;
    for (double x : grid_x_ratio) {
      double lhs;
      if (x == 0.0) {
        lhs = rhs;
      } else {
        const double em = std::expm1(x * std::log(A));
        lhs = em / (x * (em + 2.0));
      }
      ++report.checked_ratio_bound;
      if (!(lhs <= rhs * (1.0 + 1e-12))) {
        report.violations.push_back({"ratio_bound", A, x, lhs, rhs});
      }
    }
  }
  for (double t : grid_t) {
    if (!(t > 0.0)) throw std::invalid_argument("check_auxiliary_inequalities: t must be > 0");
    for (double x : grid_x_power) {
      if (x < 1.0) continue;
      const double tx = std::exp(x * std::log(t));
      ++report.checked_power_bound;
      if (!(tx >= x * (1.0 - 1e-12))) {
        report.violations.push_back({"power_bound", t, x, 1.0 / tx, 1.0 / x});
      }
    }
  }
  return report;
}

// Closed-form ceiling on the expected number of iterations the search needs
// to drive the true gradient norm below eps, for a problem with L_f-Lipschitz
// gradient started f0_minus_fstar above its optimum.
inline double complexity_bound(double c, double theta, double gamma, double L_f,
                               double f0_minus_fstar, double delta0, std::size_t n,
                               double eps) {
  SearchConfig probe;
  probe.c = c;
  probe.theta = theta;
  probe.gamma = gamma;
  probe.delta0 = delta0;
  validate_config(probe);
  if (!(L_f > 0.0)) throw std::invalid_argument("complexity_bound: L_f must be > 0");
  if (!(eps > 0.0)) throw std::invalid_argument("complexity_bound: eps must be > 0");
  if (!(f0_minus_fstar >= 0.0)) {
    throw std::invalid_argument("complexity_bound: f0 - f* must be >= 0");
  }
  if (n == 0) throw std::invalid_argument("complexity_bound: n must be >= 1");
  const double lg = std::log(gamma);
  const double lt = std::log(theta);
  const double prefactor = 14.0 * lg / (3.0 * lg + 11.0 * lt);
  const double g2 = gamma * gamma, t2 = theta * theta;
  const double merit_term =
      ((g2 - t2) * f0_minus_fstar + c * delta0 * delta0) / ((c / 2.0) * (1.0 - t2) * t2);
  const double grad_term = (7.0 * L_f + 14.0 * c) * (7.0 * L_f + 14.0 * c) / 4.0;
  return 1.0 + prefactor * merit_term * grad_term * static_cast<double>(n) / (eps * eps);
}

struct TEpsilonResult {
  std::uint64_t iterations = 0;
  bool reached = false;
};

// First iteration index whose iterate has true gradient norm <= eps. The
// gradient is read through the verification channel; the optimizer itself
// only ever sees noisy function values.
inline TEpsilonResult measure_t_epsilon(const Problem& problem, const SearchConfig& cfg,
                                        double eps, RngStream& stream,
                                        std::uint64_t max_iterations = 10000000) {
  if (!problem.grad) {
    throw std::invalid_argument("measure_t_epsilon: problem lacks an analytic gradient");
  }
  TEpsilonResult result;
  auto watcher = [&](std::uint64_t k, std::span<const double> x, double) {
    if (k >= max_iterations) return false;
    const std::vector<double> g = problem.grad(x);
    double n2 = 0.0;
    for (double v : g) n2 += v * v;
    if (std::sqrt(n2) <= eps) {
      result.iterations = k;
      result.reached = true;
      return false;
    }
    return true;
  };
  run_direct_search(cfg, problem, stream, watcher);
  return result;
}

// ---------------------------------------------------------------------------
// Named check suites backing the `verify` CLI command.

struct CheckResult {
  std::string id;
  double statistic = 0.0;
  std::string band;
  bool pass = false;
};

namespace detail {

inline std::string format_band(const char* fmt, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return std::string(buf);
}

}  // namespace detail

inline std::vector<CheckResult> verify_testing_suite(std::uint64_t trials, std::uint64_t seed) {
  std::vector<CheckResult> out;

  {  // Acceptance probability is exactly 1/2 at mu = 0 with symmetric boundaries.
    RngStream s = RngStream::derive(seed, fnv1a64("verify.symmetry"));
    const auto est = estimate_error_probabilities(0.0, 1.0, 0.1, TestKind::Sequential, trials, s);
    const double tol = 3.0 * est.accept_h1.std_error;
    out.push_back({"symmetry-mu0", est.accept_h1.mean,
                   detail::format_band("0.5 +- %.4g", tol),
                   std::abs(est.accept_h1.mean - 0.5) <= tol});
  }
  {  // Wrong-acceptance bound exp(-2 c0 mu / sigma2) = 1/e at mu = eC.
    RngStream s = RngStream::derive(seed, fnv1a64("verify.error-bound"));
    const double mu = std::numbers::e * 0.1;
    const auto est = estimate_error_probabilities(mu, 1.0, 0.1, TestKind::Sequential, trials, s);
    const double limit = std::exp(-1.0) + 3.0 * est.accept_h0.std_error;
    out.push_back({"error-bound-mu-eC", est.accept_h0.mean,
                   detail::format_band("<= %.4g", limit), est.accept_h0.mean <= limit});
  }
  {  // P(accept H1) must be nondecreasing in mu, up to Monte Carlo slack.
    RngStream s = RngStream::derive(seed, fnv1a64("verify.monotonicity"));
    const double grid[] = {-0.2, -0.1, 0.0, 0.1, 0.2};
    std::vector<McEstimate> ests;
    for (double mu : grid) {
      ests.push_back(
          estimate_error_probabilities(mu, 1.0, 0.1, TestKind::Sequential, trials, s).accept_h1);
    }
    double worst = 0.0;
    bool pass = true;
    for (std::size_t i = 0; i + 1 < ests.size(); ++i) {
      const double slack =
          3.0 * std::sqrt(ests[i].std_error * ests[i].std_error +
                          ests[i + 1].std_error * ests[i + 1].std_error);
      const double drop = ests[i].mean - ests[i + 1].mean;
      worst = std::max(worst, drop);
      if (drop > slack) pass = false;
    }
    out.push_back({"monotone-in-mu", worst, "max drop <= 3*stderr", pass});
  }
  {  // Mean stopping size against the diffusion formula, C = 0.01.
    RngStream s = RngStream::derive(seed, fnv1a64("verify.sample-size"));
    const std::uint64_t t = std::min<std::uint64_t>(trials, 10000);
    const auto est = estimate_expected_sample_size(0.0, 1.0, 0.01, t, s);
    out.push_back({"mean-size-C0.01", est.mean, "[338, 390]",
                   est.mean >= 338.0 && est.mean <= 390.0});
  }
  {  // Bounded boundaries end properly: no capped run in 10^4 tries at cap 10^6.
    RngStream s = RngStream::derive(seed, fnv1a64("verify.proper-ending"));
    const std::uint64_t t = std::min<std::uint64_t>(trials, 10000);
    const auto schedule =
        BoundarySchedule::constant_symmetric(c_accurate_boundary(1.0, 0.1), 1000000);
    auto sampler = [](RngStream& st) { return gaussian(st, 0.0, 1.0); };
    std::uint64_t capped = 0;
    for (std::uint64_t i = 0; i < t; ++i) {
      if (run_sequential_test(sampler, schedule, s).decision.capped) ++capped;
    }
    out.push_back({"proper-ending", static_cast<double>(capped), "= 0", capped == 0});
  }
  {  // Stopping-size scaling in delta: drift delta^1 gives slope -3.
    RngStream s = RngStream::derive(seed, fnv1a64("verify.scaling"));
    const std::uint64_t t = std::max<std::uint64_t>(std::min<std::uint64_t>(trials / 10, 2000),
                                                    200);
    const double grid[] = {0.5, 0.25, 0.125, 0.0625};
    const auto fit = check_scaling_law(1.0, 1.0, 0.031, 1.0, grid, t, s);
    out.push_back({"scaling-slope-r1", fit.slope, "-3 +- 0.3",
                   std::abs(fit.slope + 3.0) <= 0.3});
  }
  return out;
}

inline std::vector<CheckResult> verify_renewal_suite(std::uint64_t trials, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const RenewalParams stepsize_walk{std::log(1.3), std::log(0.95), 3.0 / 14.0};
  RngStream s = RngStream::derive(seed, fnv1a64("verify.renewal"));
  const auto est = simulate_renewal(stepsize_walk, trials, s);
  {
    const double limit = renewal_bound(stepsize_walk) + 3.0 * est.tau_bar.std_error;
    out.push_back({"passage-mean-bound", est.tau_bar.mean,
                   detail::format_band("<= %.4g", limit), est.tau_bar.mean <= limit});
  }
  {
    const double predicted =
        stepsize_walk.p + (1.0 + est.tau_bar.mean) * (1.0 - stepsize_walk.p);
    const double combined =
        3.0 * std::sqrt(est.tau_n.std_error * est.tau_n.std_error +
                        (1.0 - stepsize_walk.p) * (1.0 - stepsize_walk.p) * est.tau_bar.std_error *
                            est.tau_bar.std_error);
    out.push_back({"interarrival-identity", est.tau_n.mean - predicted,
                   detail::format_band("|diff| <= %.4g", combined),
                   std::abs(est.tau_n.mean - predicted) <= combined});
  }
  {  // p + (1 + bound)(1-p) collapses to a/v, the complexity prefactor.
    const double via_bound =
        stepsize_walk.p + (1.0 + renewal_bound(stepsize_walk)) * (1.0 - stepsize_walk.p);
    const double prefactor =
        14.0 * std::log(1.3) / (3.0 * std::log(1.3) + 11.0 * std::log(0.95));
    out.push_back({"prefactor-identity", via_bound - prefactor, "|diff| <= 1e-3",
                   std::abs(via_bound - prefactor) <= 1e-3});
  }
  {  // Unit +-1 walk with p = 3/4: passage mean from -1 is exactly 2.
    RngStream s2 = RngStream::derive(seed, fnv1a64("verify.renewal-unit"));
    const RenewalParams unit{1.0, -1.0, 0.75};
    const auto e2 = simulate_renewal(unit, trials, s2);
    const double tol = 3.0 * e2.tau_bar.std_error;
    out.push_back({"unit-walk-passage", e2.tau_bar.mean,
                   detail::format_band("2 +- %.4g", tol),
                   std::abs(e2.tau_bar.mean - 2.0) <= tol &&
                       e2.tau_bar.mean <= renewal_bound(unit) + tol});
  }
  return out;
}

inline std::vector<CheckResult> verify_inequalities_suite() {
  std::vector<CheckResult> out;
  const std::vector<double> grid_A = {1.1, 2.0, 10.0};
  const std::vector<double> x_ratio = make_grid(-20.0, 0.01, 4001);
  const std::vector<double> grid_t = {std::exp(1.0 / std::numbers::e), 1.5, 2.0, 10.0};
  const std::vector<double> x_power = make_grid(1.0, 0.01, 4901);

  const auto report = check_auxiliary_inequalities(grid_A, x_ratio, grid_t, x_power);
  out.push_back({"ratio-bound-grid", static_cast<double>(report.violations.size()),
                 "0 violations", report.clean()});

  const std::vector<double> t_good = {std::exp(1.0 / std::numbers::e), 1.5, 2.0, 10.0};
  const auto good = check_auxiliary_inequalities({}, {}, t_good, x_power);
  out.push_back({"power-bound-grid", static_cast<double>(good.violations.size()),
                 "0 violations", good.clean()});

  const std::vector<double> t_bad = {1.4};
  const auto bad = check_auxiliary_inequalities({}, {}, t_bad, x_power);
  out.push_back({"power-bound-converse", static_cast<double>(bad.violations.size()),
                 ">= 1 violation at t=1.4", !bad.clean()});
  return out;
}

inline std::string format_check_report(std::span<const CheckResult> checks) {
  std::string text;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof(line), "[%s] %-24s statistic=%.6g band=%s\n",
                  c.pass ? "PASS" : "FAIL", c.id.c_str(), c.statistic, c.band.c_str());
    text += line;
  }
  return text;
}

inline std::string check_report_csv(std::span<const CheckResult> checks) {
  std::string csv = "claim,statistic,band,result\n";
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof(line), "%s,%.17g,\"%s\",%s\n", c.id.c_str(), c.statistic,
                  c.band.c_str(), c.pass ? "pass" : "fail");
    csv += line;
  }
  return csv;
}

}  // namespace seqdfo
