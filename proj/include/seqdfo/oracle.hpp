#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "seqdfo/problems.hpp"
#include "seqdfo/rng.hpp"

namespace seqdfo {

// Additive homoscedastic Gaussian noise: every oracle call returns
// f(x) + N(0, sigma2_f), independently across calls.
struct GaussianNoiseModel {
  double sigma2_f = 0.0;

  double noise_sd() const { return std::sqrt(sigma2_f); }
};

// Per-run tally of stochastic oracle calls. Single-owner, like the stream.
class CallCounter {
 public:
  void add(std::uint64_t k = 1) { calls_ += k; }
  std::uint64_t calls() const { return calls_; }

 private:
  std::uint64_t calls_ = 0;
};

// One noisy observation of f(x). Costs exactly one oracle call.
inline double noisy_eval(const Problem& problem, const GaussianNoiseModel& noise,
                         std::span<const double> x, RngStream& stream,
                         CallCounter& counter) {
  const double f = problem.eval_at(x);
  counter.add(1);
  return f + gaussian(stream, 0.0, noise.noise_sd());
}

// The tested observable of a candidate step:
//   Y = c delta^2 - (F(x, xi_x) - F(x + delta d, xi_d)),
// two independent noisy evaluations per draw, so E[Y] is c delta^2 minus the
// true decrease and Var[Y] = 2 sigma2_f.
struct DecreaseObservable {
  const Problem* problem = nullptr;
  GaussianNoiseModel noise;
  std::vector<double> x;
  Direction d;
  double delta = 0.0;
  double c = 0.0;

  // Variance of one Y draw. This is the "sigma2" the tests consume; the
  // factor 2 over the per-evaluation variance lives here and nowhere else.
  double y_variance() const { return 2.0 * noise.sigma2_f; }

  std::vector<double> trial_point() const {
    std::vector<double> xt(x);
    for (std::size_t i = 0; i < xt.size(); ++i) xt[i] += delta * d.components[i];
    return xt;
  }
};

// One draw of Y. Evaluation order is fixed (current point first, then trial
// point) so a given stream always replays the same draw. Costs two calls.
inline double draw_Y(const DecreaseObservable& obs, RngStream& stream,
                     CallCounter& counter) {
  if (obs.problem == nullptr) throw std::invalid_argument("draw_Y: missing problem");
  if (!(obs.delta > 0.0)) throw std::invalid_argument("draw_Y: delta must be > 0");
  const double f_cur = noisy_eval(*obs.problem, obs.noise, obs.x, stream, counter);
  const std::vector<double> xt = obs.trial_point();
  const double f_trial = noisy_eval(*obs.problem, obs.noise, xt, stream, counter);
  return obs.c * obs.delta * obs.delta - (f_cur - f_trial);
}

}  // namespace seqdfo
