#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqdfo {

// A smooth unconstrained benchmark objective. eval is the exact (noiseless)
// function; grad, where present, is the analytic gradient and exists only for
// verification harnesses -- the solvers never see it.
struct Problem {
  std::string name;
  std::size_t n = 0;
  std::function<double(std::span<const double>)> eval;
  std::function<std::vector<double>(std::span<const double>)> grad;
  std::vector<double> x0;
  std::optional<double> f_star;

  double eval_at(std::span<const double> x) const {
    if (x.size() != n) throw std::invalid_argument("Problem: dimension mismatch");
    return eval(x);
  }

  std::vector<double> grad_at(std::span<const double> x) const {
    if (!grad) throw std::invalid_argument("Problem: no analytic gradient available");
    if (x.size() != n) throw std::invalid_argument("Problem: dimension mismatch");
    return grad(x);
  }
};

namespace detail {

inline std::vector<double> constant_start(std::size_t n, double v) {
  return std::vector<double>(n, v);
}

inline std::vector<double> alternating_start(std::size_t n, double odd, double even) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (i % 2 == 0) ? odd : even;
  return x;
}

}  // namespace detail

// Catalog of built-in objectives. Minimum dimensions: the chained functions
// (rosenbrock_ext, arwhead, engval1, cosine_chain) need n >= 2, the separable
// ones accept n >= 1.
//
//   sphere          sum x_i^2
//   quad_illcond    sum i x_i^2                 (condition number n)
//   rosenbrock_ext  sum 100(x_{i+1}-x_i^2)^2 + (1-x_i)^2
//   arwhead         sum (x_i^2+x_n^2)^2 - 4x_i + 3      over i < n
//   dqrtic          sum (x_i - i)^4
//   tridia          (x_1-1)^2 + sum_{i>=2} i (2x_i - x_{i-1})^2
//   engval1         sum (x_i^2+x_{i+1}^2)^2 - 4x_i + 3  over i < n
//   cosine_chain    sum cos(-0.5 x_{i+1} + x_i^2)       over i < n
inline Problem builtin_problem(const std::string& name, std::size_t n) {
  if (n == 0) throw std::invalid_argument("builtin_problem: n must be >= 1");
  Problem p;
  p.name = name;
  p.n = n;

  if (name == "sphere") {
    p.eval = [](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += v * v;
      return s;
    };
    p.grad = [](std::span<const double> x) {
      std::vector<double> g(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i];
      return g;
    };
    p.x0 = detail::constant_start(n, 1.0);
    p.f_star = 0.0;
    return p;
  }

  if (name == "quad_illcond") {
    p.eval = [](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        s += static_cast<double>(i + 1) * x[i] * x[i];
      }
      return s;
    };
    p.grad = [](std::span<const double> x) {
      std::vector<double> g(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        g[i] = 2.0 * static_cast<double>(i + 1) * x[i];
      }
      return g;
    };
    p.x0 = detail::constant_start(n, 1.0);
    p.f_star = 0.0;
    return p;
  }

  if (name == "rosenbrock_ext") {
    if (n < 2) throw std::invalid_argument("builtin_problem: rosenbrock_ext needs n >= 2");
    p.eval = [](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double t = x[i + 1] - x[i] * x[i];
        const double u = 1.0 - x[i];
        s += 100.0 * t * t + u * u;
      }
      return s;
    };
    p.grad = [](std::span<const double> x) {
      std::vector<double> g(x.size(), 0.0);
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double t = x[i + 1] - x[i] * x[i];
        g[i] += -400.0 * x[i] * t - 2.0 * (1.0 - x[i]);
        g[i + 1] += 200.0 * t;
      }
      return g;
    };
    p.x0 = detail::alternating_start(n, -1.2, 1.0);
    p.f_star = 0.0;
    return p;
  }

  if (name == "arwhead") {
    if (n < 2) throw std::invalid_argument("builtin_problem: arwhead needs n >= 2");
    p.eval = [](std::span<const double> x) {
      double s = 0.0;
      const double xn2 = x.back() * x.back();
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double q = x[i] * x[i] + xn2;
        s += q * q - 4.0 * x[i] + 3.0;
      }
      return s;
    };
    p.grad = [](std::span<const double> x) {
      std::vector<double> g(x.size(), 0.0);
      const double xn = x.back();
      const double xn2 = xn * xn;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double q = x[i] * x[i] + xn2;
        g[i] += 4.0 * x[i] * q - 4.0;
        g.back() += 4.0 * xn * q;
      }
      return g;
    };
    p.x0 = detail::constant_start(n, 1.0);
    p.f_star = 0.0;
    return p;
  }

  if (name == "dqrtic") {
    p.eval = [](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = x[i] - static_cast<double>(i + 1);
        s += t * t * t * t;
      }
      return s;
    };
    p.grad = [](std::span<const double> x) {
      std::vector<double> g(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = x[i] - static_cast<double>(i + 1);
        g[i] = 4.0 * t * t * t;
      }
      return g;
    };
    p.x0 = detail::constant_start(n, 2.0);
    p.f_star = 0.0;
    return p;
  }

  if (name == "tridia") {
    p.eval = [](std::span<const double> x) {
      double s = (x[0] - 1.0) * (x[0] - 1.0);
      for (std::size_t i = 1; i < x.size(); ++i) {
        const double t = 2.0 * x[i] - x[i - 1];
        s += static_cast<double>(i + 1) * t * t;
      }
      return s;
    };
    p.grad = [](std::span<const double> x) {
      std::vector<double> g(x.size(), 0.0);
      g[0] = 2.0 * (x[0] - 1.0);
      for (std::size_t i = 1; i < x.size(); ++i) {
        const double w = static_cast<double>(i + 1);
        const double t = 2.0 * x[i] - x[i - 1];
        g[i] += 4.0 * w * t;
        g[i - 1] += -2.0 * w * t;
      }
      return g;
    };
    p.x0 = detail::constant_start(n, 1.0);
    p.f_star = 0.0;
    return p;
  }

  if (name == "engval1") {
    if (n < 2) throw std::invalid_argument("builtin_problem: engval1 needs n >= 2");
    p.eval = [](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double q = x[i] * x[i] + x[i + 1] * x[i + 1];
        s += q * q - 4.0 * x[i] + 3.0;
      }
      return s;
    };
    p.grad = [](std::span<const double> x) {
      std::vector<double> g(x.size(), 0.0);
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double q = x[i] * x[i] + x[i + 1] * x[i + 1];
        g[i] += 4.0 * x[i] * q - 4.0;
        g[i + 1] += 4.0 * x[i + 1] * q;
      }
      return g;
    };
    p.x0 = detail::constant_start(n, 2.0);
    // No closed-form optimum; benchmark baselines come from a calibration pass.
    p.f_star = std::nullopt;
    return p;
  }

  if (name == "cosine_chain") {
    if (n < 2) throw std::invalid_argument("builtin_problem: cosine_chain needs n >= 2");
    p.eval = [](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        s += std::cos(-0.5 * x[i + 1] + x[i] * x[i]);
      }
      return s;
    };
    p.grad = [](std::span<const double> x) {
      std::vector<double> g(x.size(), 0.0);
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double sn = std::sin(-0.5 * x[i + 1] + x[i] * x[i]);
        g[i] += -sn * 2.0 * x[i];
        g[i + 1] += 0.5 * sn;
      }
      return g;
    };
    p.x0 = detail::constant_start(n, 1.0);
    p.f_star = -static_cast<double>(n - 1);
    return p;
  }

  throw std::invalid_argument("builtin_problem: unknown problem name '" + name + "'");
}

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "sphere",  "quad_illcond", "rosenbrock_ext", "arwhead",
      "dqrtic",  "tridia",       "engval1",        "cosine_chain",
  };
  return names;
}

// Central finite-difference gradient with per-coordinate step 1e-6*(1+|x_i|).
// Verification-only helper for checking the analytic gradients above.
inline std::vector<double> finite_difference_gradient(const Problem& p,
                                                      std::span<const double> x) {
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * (1.0 + std::abs(x[i]));
    const double xi = xp[i];
    xp[i] = xi + h;
    const double fp = p.eval_at(xp);
    xp[i] = xi - h;
    const double fm = p.eval_at(xp);
    xp[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace seqdfo
