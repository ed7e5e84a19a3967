#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace seqdfo {

namespace detail {

// splitmix64 step (Steele, Lea, Flood). Used only for seeding and key mixing.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// Deterministic random stream: xoshiro256++ (Blackman & Vigna), state filled
// from a 64-bit seed by four splitmix64 steps. Equal seeds give equal draw
// sequences. Independent streams come from derive(), which folds a 64-bit
// stream key into the master seed through two further splitmix64 passes:
//
//   h    = splitmix64(master_seed)        (one step of the splitmix sequence)
//   seed = splitmix64(h ^ stream_key)
//
// Streams are single-owner: never share one stream between concurrent tasks;
// derive one per worker instead.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = detail::splitmix64(s);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  static RngStream derive(std::uint64_t master_seed, std::uint64_t stream_key) {
    return RngStream(mix_key(master_seed, stream_key));
  }

  // The mixed seed itself, exposed so experiment records can log the exact
  // value that reproduces a run.
  static std::uint64_t mix_key(std::uint64_t master_seed, std::uint64_t stream_key) {
    std::uint64_t s = master_seed;
    std::uint64_t h = detail::splitmix64(s);
    std::uint64_t t = h ^ stream_key;
    return detail::splitmix64(t);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::array<std::uint64_t, 4> state_;
};

// One draw from N(mean, sd^2) by the Marsaglia polar method. The second value
// of each polar pair is discarded, so the stream position after a call depends
// only on the rejection path, never on caller state. sd == 0 returns the mean
// without consuming any randomness.
inline double gaussian(RngStream& stream, double mean, double sd) {
  if (!(sd >= 0.0)) throw std::invalid_argument("gaussian: sd must be >= 0");
  if (sd == 0.0) return mean;
  double u, v, s;
  do {
    u = 2.0 * stream.next_double() - 1.0;
    v = 2.0 * stream.next_double() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return mean + sd * u * std::sqrt(-2.0 * std::log(s) / s);
}

// Unit vector in R^n.
struct Direction {
  std::vector<double> components;

  double norm() const {
    double s = 0.0;
    for (double c : components) s += c * c;
    return std::sqrt(s);
  }
};

// Uniform direction on the unit sphere: normalized vector of independent
// standard Gaussians. A norm below 1e-300 triggers a redraw of the whole
// vector so the normalization cannot blow up.
inline Direction uniform_sphere_direction(RngStream& stream, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_sphere_direction: n must be >= 1");
  Direction d;
  d.components.resize(n);
  double norm = 0.0;
  do {
    for (auto& c : d.components) c = gaussian(stream, 0.0, 1.0);
    norm = d.norm();
  } while (norm < 1e-300);
  for (auto& c : d.components) c /= norm;
  return d;
}

// Cosine of the angle between -gradient and d; 1 means d points straight
// downhill. Undefined for a zero gradient.
inline double descent_quality(std::span<const double> gradient, const Direction& d) {
  if (gradient.size() != d.components.size()) {
    throw std::invalid_argument("descent_quality: dimension mismatch");
  }
  double dot = 0.0, gnorm2 = 0.0;
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    dot += gradient[i] * d.components[i];
    gnorm2 += gradient[i] * gradient[i];
  }
  if (gnorm2 == 0.0) {
    throw std::invalid_argument("descent_quality: zero gradient has no descent angle");
  }
  const double kappa = -dot / (std::sqrt(gnorm2) * d.norm());
  return std::fmin(1.0, std::fmax(-1.0, kappa));
}

}  // namespace seqdfo
