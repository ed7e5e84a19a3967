#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seqdfo/oracle.hpp"
#include "seqdfo/problems.hpp"
#include "seqdfo/rng.hpp"
#include "seqdfo/testing.hpp"

namespace seqdfo {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TestKind { Sequential, FixedSample };

// What the evaluation budget counts. Each Y draw costs two oracle calls, so
// OracleCalls is the stricter reading of "sample evaluations"; YDraws is the
// other reading, kept selectable.
enum class BudgetUnit { OracleCalls, YDraws };

enum class TerminationReason { BudgetExhausted, StepsizeUnderflow, StoppedByObserver };

struct SearchConfig {
  double delta0 = 1.0;
  double c = 0.5;
  double theta = 0.95;
  double gamma = 1.3;
  TestKind test_kind = TestKind::Sequential;
  std::uint64_t budget = 10000;
  double sigma2_f = 0.0;  // assumed known; variance of one oracle call
  BudgetUnit budget_unit = BudgetUnit::OracleCalls;
  // Keep per-iteration copies of the iterate and direction in the trace.
  // Turn off for long benchmark runs where only the cost curve matters.
  bool record_iterates = true;
};

// Accuracy level handed to the acceptance test at stepsize delta:
//   C = c delta^2 (1 - theta^2) / (2 (gamma^2 - theta^2)).
inline double accuracy_level(double c, double theta, double gamma, double delta) {
  return c * delta * delta * (1.0 - theta * theta) /
         (2.0 * (gamma * gamma - theta * theta));
}

// Rejects configurations that cannot sustain the stepsize recurrence. The
// expansion/contraction pair must satisfy 3 log(gamma) + 11 log(theta) > 0,
// otherwise the stepsize drifts to zero even at non-stationary points.
inline void validate_config(const SearchConfig& cfg) {
  if (!(cfg.delta0 > 0.0)) throw ConfigError("config: delta0 must be > 0");
  if (!(cfg.c > 0.0)) throw ConfigError("config: c must be > 0");
  if (!(cfg.theta > 0.0 && cfg.theta < 1.0)) {
    throw ConfigError("config: theta must lie in (0, 1)");
  }
  if (!(cfg.gamma > 1.0)) throw ConfigError("config: gamma must be > 1");
  if (!(cfg.sigma2_f >= 0.0)) throw ConfigError("config: sigma2_f must be >= 0");
  const double balance = 3.0 * std::log(cfg.gamma) + 11.0 * std::log(cfg.theta);
  if (!(balance > 0.0)) {
    throw ConfigError("config: requires 3 log(gamma) + 11 log(theta) > 0, got " +
                      std::to_string(balance));
  }
}

struct IterationRecord {
  std::uint64_t k = 0;
  double delta_k = 0.0;
  std::vector<double> x_k;       // present when record_iterates is on
  std::vector<double> direction; // likewise
  double true_f = 0.0;           // exact f(x_k), logged outside the budget
  std::uint64_t samples_m = 0;   // Y draws spent by this iteration's test
  bool accepted = false;
  bool capped = false;
  std::uint64_t oracle_calls_cum = 0;
};

struct RunTrace {
  std::vector<IterationRecord> records;
  // (cumulative oracle calls, best exact f seen at an accepted iterate so
  // far); starts with (0, f(x0)) and gains a point per improvement.
  std::vector<std::pair<std::uint64_t, double>> best_true_f_by_calls;
  TerminationReason terminated_reason = TerminationReason::BudgetExhausted;
  std::vector<double> final_x;
  std::uint64_t total_oracle_calls = 0;
  std::uint64_t total_y_draws = 0;

  double best_true_f() const { return best_true_f_by_calls.back().second; }
};

// Direct search with one uniformly random polling direction per iteration.
// Each candidate step x + delta d is screened by the configured acceptance
// test on Y draws; H0 takes the step and expands the stepsize by gamma, H1
// rejects and contracts by theta. The observer is called at the start of
// every iteration with (k, x_k, delta_k); returning false stops the run
// (used by harnesses that watch the true gradient).
//
// Budget rules: an iteration starts whenever at least one Y draw is still
// affordable; an in-flight test that would overrun is truncated at the
// affordable cap and decided by the sign of its running sum. The sequential
// test additionally caps at 10x the fixed-test size, a level its walks
// essentially never reach.
template <class Observer>
RunTrace run_direct_search(const SearchConfig& cfg, const Problem& problem,
                           RngStream& stream, Observer&& observer) {
  validate_config(cfg);
  RunTrace trace;
  std::vector<double> x = problem.x0;
  double delta = cfg.delta0;
  const double sigma2_y = 2.0 * cfg.sigma2_f;
  const std::uint64_t units_per_draw =
      cfg.budget_unit == BudgetUnit::OracleCalls ? 2 : 1;
  CallCounter counter;
  GaussianNoiseModel noise{cfg.sigma2_f};

  double best_f = problem.eval_at(x);
  trace.best_true_f_by_calls.emplace_back(0, best_f);
  trace.terminated_reason = TerminationReason::BudgetExhausted;

  for (std::uint64_t k = 0;; ++k) {
    if (!observer(k, std::span<const double>(x), delta)) {
      trace.terminated_reason = TerminationReason::StoppedByObserver;
      break;
    }
    const std::uint64_t spent =
        cfg.budget_unit == BudgetUnit::OracleCalls ? counter.calls() : trace.total_y_draws;
    const std::uint64_t affordable = (cfg.budget - spent) / units_per_draw;
    if (affordable == 0) {
      trace.terminated_reason = TerminationReason::BudgetExhausted;
      break;
    }

    const double true_f = problem.eval_at(x);
    Direction d = uniform_sphere_direction(stream, problem.n);
    const double level = accuracy_level(cfg.c, cfg.theta, cfg.gamma, delta);
    DecreaseObservable obs{&problem, noise, x, d, delta, cfg.c};
    auto sampler = [&](RngStream& s) { return draw_Y(obs, s, counter); };

    // Target test size; collapses to a single sign draw when noiseless.
    const double m_needed =
        sigma2_y > 0.0 ? std::ceil(sigma2_y / (level * level)) : 1.0;

    TestTranscript transcript;
    if (cfg.test_kind == TestKind::Sequential) {
      const double c0 = sigma2_y > 0.0 ? c_accurate_boundary(sigma2_y, level) : 0.0;
      std::uint64_t cap = affordable;
      if (10.0 * m_needed < static_cast<double>(affordable)) {
        cap = static_cast<std::uint64_t>(10.0 * m_needed);
      }
      transcript = run_sequential_test(
          sampler, BoundarySchedule::constant_symmetric(c0, cap), stream);
    } else {
      const std::uint64_t m = m_needed < 9.0e18
                                  ? static_cast<std::uint64_t>(m_needed)
                                  : std::uint64_t{1} << 63;
      std::uint64_t cap = affordable < m ? affordable : m;
      transcript = run_sequential_test(
          sampler, BoundarySchedule::fixed_size_instance(m, cap), stream);
    }
    trace.total_y_draws += transcript.decision.samples_used;

    const bool accepted = transcript.decision.accepted == Hypothesis::H0;
    IterationRecord rec;
    rec.k = k;
    rec.delta_k = delta;
    rec.true_f = true_f;
    rec.samples_m = transcript.decision.samples_used;
    rec.accepted = accepted;
    rec.capped = transcript.decision.capped;
    rec.oracle_calls_cum = counter.calls();
    if (cfg.record_iterates) {
      rec.x_k = x;
      rec.direction = d.components;
    }
    trace.records.push_back(std::move(rec));

    if (accepted) {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += delta * d.components[i];
      const double fx = problem.eval_at(x);
      if (fx < best_f) {
        best_f = fx;
        trace.best_true_f_by_calls.emplace_back(counter.calls(), best_f);
      }
      delta *= cfg.gamma;
    } else {
      delta *= cfg.theta;
    }
    if (delta < 1e-150) {
      trace.terminated_reason = TerminationReason::StepsizeUnderflow;
      break;
    }
  }

  trace.final_x = std::move(x);
  trace.total_oracle_calls = counter.calls();
  return trace;
}

inline RunTrace run_direct_search(const SearchConfig& cfg, const Problem& problem,
                                  RngStream& stream) {
  return run_direct_search(cfg, problem, stream,
                           [](std::uint64_t, std::span<const double>, double) { return true; });
}

}  // namespace seqdfo
