#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "seqdfo/rng.hpp"

namespace seqdfo {

// Decision between a pair of one-sided hypotheses about the mean of Y:
//   H0: E[Y] <= 0   (in the optimizer: sufficient decrease holds, take the step)
//   H1: E[Y]  > 0   (reject the step)
enum class Hypothesis { H0, H1 };

struct HypothesisDecision {
  Hypothesis accepted;
  std::uint64_t samples_used;
  double final_sum;
  // True when the walk was cut off at the cap before crossing a boundary; the
  // decision is then sign-based: H0 iff the running sum is < 0.
  bool capped;
};

struct TestTranscript {
  HypothesisDecision decision;
  // partial_sums[l-1] = Y^1 + ... + Y^l, recorded up to the stopping index.
  std::vector<double> partial_sums;
};

// Stopping boundaries {a_l} (upper) and {b_l} (lower) with a_l >= b_l, plus a
// hard cap on the number of samples. Values may be +/-infinity.
class BoundarySchedule {
 public:
  // a_l = c0, b_l = -c0 for every l. c0 = 0 is allowed: it degenerates to a
  // single-sample sign test, which is exactly what a noiseless run needs.
  static BoundarySchedule constant_symmetric(double c0, std::uint64_t cap) {
    if (!(c0 >= 0.0)) {
      throw std::invalid_argument("BoundarySchedule: c0 must be >= 0");
    }
    BoundarySchedule s(Kind::ConstantSymmetric, cap);
    s.c0_ = c0;
    return s;
  }

  // Arbitrary per-level boundaries; vectors must cover every level up to cap.
  static BoundarySchedule explicit_bounds(std::vector<double> upper,
                                          std::vector<double> lower,
                                          std::uint64_t cap) {
    if (upper.size() != lower.size() || upper.size() < cap) {
      throw std::invalid_argument("BoundarySchedule: boundary sequences must cover the cap");
    }
    for (std::size_t i = 0; i < upper.size(); ++i) {
      if (!(upper[i] >= lower[i])) {
        throw std::invalid_argument("BoundarySchedule: requires a_l >= b_l at every level");
      }
    }
    BoundarySchedule s(Kind::Explicit, cap);
    s.upper_ = std::move(upper);
    s.lower_ = std::move(lower);
    return s;
  }

  // The fixed-size test of size m, written as boundaries: a_l = +inf and
  // b_l = -inf below m, a_m = b_m = 0. With cap >= m this reproduces the
  // fixed test exactly; with cap < m it is the budget-truncated variant.
  static BoundarySchedule fixed_size_instance(std::uint64_t m, std::uint64_t cap) {
    if (m == 0) throw std::invalid_argument("BoundarySchedule: fixed size m must be >= 1");
    BoundarySchedule s(Kind::FixedInstance, cap);
    s.fixed_m_ = m;
    return s;
  }

  double upper(std::uint64_t level) const {
    switch (kind_) {
      case Kind::ConstantSymmetric: return c0_;
      case Kind::Explicit: return upper_[level - 1];
      case Kind::FixedInstance:
        return level == fixed_m_ ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return 0.0;  // unreachable
  }

  double lower(std::uint64_t level) const {
    switch (kind_) {
      case Kind::ConstantSymmetric: return -c0_;
      case Kind::Explicit: return lower_[level - 1];
      case Kind::FixedInstance:
        return level == fixed_m_ ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    return 0.0;  // unreachable
  }

  std::uint64_t cap() const { return cap_; }

 private:
  enum class Kind { ConstantSymmetric, Explicit, FixedInstance };

  BoundarySchedule(Kind kind, std::uint64_t cap) : kind_(kind), cap_(cap) {
    if (cap == 0) throw std::invalid_argument("BoundarySchedule: cap must be >= 1");
  }

  Kind kind_;
  std::uint64_t cap_;
  double c0_ = 0.0;
  std::uint64_t fixed_m_ = 0;
  std::vector<double> upper_;
  std::vector<double> lower_;
};

// Draw i.i.d. observations from sampler until the running sum leaves the
// boundary corridor: sum <= b_l decides H0, sum >= a_l decides H1. Ties at a
// coincident boundary go to H0, which keeps the fixed-size instance's
// "sum <= 0 means H0" convention. Hitting the cap without a crossing decides
// by the sign of the running sum (H0 iff sum < 0) and marks the transcript
// capped.
template <class Sampler>
TestTranscript run_sequential_test(Sampler&& sampler, const BoundarySchedule& schedule,
                                   RngStream& stream) {
  TestTranscript t;
  t.partial_sums.reserve(static_cast<std::size_t>(
      std::min<std::uint64_t>(schedule.cap(), 1024)));
  double sum = 0.0;
  for (std::uint64_t l = 1;; ++l) {
    sum += sampler(stream);
    t.partial_sums.push_back(sum);
    if (sum <= schedule.lower(l)) {
      t.decision = {Hypothesis::H0, l, sum, false};
      break;
    }
    if (sum >= schedule.upper(l)) {
      t.decision = {Hypothesis::H1, l, sum, false};
      break;
    }
    if (l == schedule.cap()) {
      t.decision = {sum < 0.0 ? Hypothesis::H0 : Hypothesis::H1, l, sum, true};
      break;
    }
  }
  return t;
}

// Fixed-size test: exactly m draws, H0 iff their sum is <= 0.
template <class Sampler>
TestTranscript run_fixed_test(Sampler&& sampler, std::uint64_t m, RngStream& stream) {
  if (m == 0) throw std::invalid_argument("run_fixed_test: m must be >= 1");
  TestTranscript t;
  t.partial_sums.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(m, 1024)));
  double sum = 0.0;
  for (std::uint64_t l = 1; l <= m; ++l) {
    sum += sampler(stream);
    t.partial_sums.push_back(sum);
  }
  t.decision = {sum <= 0.0 ? Hypothesis::H0 : Hypothesis::H1, m, sum, false};
  return t;
}

// Minimal symmetric boundary giving error probability at most C/mu against a
// false H0 when Y is Gaussian with variance sigma2: c0 = sigma2 / (2 e C).
inline double c_accurate_boundary(double sigma2, double C) {
  if (!(sigma2 > 0.0) || !(C > 0.0)) {
    throw std::invalid_argument("c_accurate_boundary: sigma2 and C must be > 0");
  }
  return sigma2 / (2.0 * std::numbers::e * C);
}

// Sample size that makes the fixed test C-accurate: ceil(sigma2 / C^2).
inline std::uint64_t fixed_sample_size(double sigma2, double C) {
  if (!(sigma2 > 0.0) || !(C > 0.0)) {
    throw std::invalid_argument("fixed_sample_size: sigma2 and C must be > 0");
  }
  const double m = std::ceil(sigma2 / (C * C));
  if (!(m < 9.0e18)) {
    throw std::overflow_error("fixed_sample_size: required size exceeds 64-bit range");
  }
  return static_cast<std::uint64_t>(m);
}

// Wald's diffusion approximation of the expected sample size of the
// symmetric-boundary sequential test with c0 = sigma2/(2eC) on Gaussian Y of
// mean mu:  (sigma2 / (2 e C mu)) * tanh(mu / (2 e C)).
// The mu -> 0 singularity is removable; the limit sigma2/(4 e^2 C^2) is
// returned there. Even in mu.
inline double wald_expected_sample_size(double mu, double sigma2, double C) {
  if (!(sigma2 > 0.0) || !(C > 0.0)) {
    throw std::invalid_argument("wald_expected_sample_size: sigma2 and C must be > 0");
  }
  const double ec = std::numbers::e * C;
  if (mu == 0.0) return sigma2 / (4.0 * ec * ec);
  return sigma2 / (2.0 * ec * mu) * std::tanh(mu / (2.0 * ec));
}

// Closed-form ceiling on the approximate expected sample size:
// (sigma2 / (4 e^2 C^2)) * min(1, eC/|mu|), with min(1, inf) = 1 at mu = 0.
inline double sample_size_bound(double mu, double sigma2, double C) {
  if (!(sigma2 > 0.0) || !(C > 0.0)) {
    throw std::invalid_argument("sample_size_bound: sigma2 and C must be > 0");
  }
  const double ec = std::numbers::e * C;
  const double first = sigma2 / (4.0 * ec * ec);
  if (mu == 0.0) return first;
  return first * std::min(1.0, ec / std::abs(mu));
}

}  // namespace seqdfo
