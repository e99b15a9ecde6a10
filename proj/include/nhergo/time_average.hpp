#pragma once

// Kinetic moment k0 = <|p|^2> measured along constant-energy Verlet orbits.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>

#include "nhergo/action.hpp"
#include "nhergo/error.hpp"
#include "nhergo/integrators.hpp"
#include "nhergo/models.hpp"

namespace nhergo {

struct TimeAverageOptions {
  double horizon = 1e4;
  double dt = 1e-3;
  double tolerance = 1e-3;  // relative agreement of the horizon and horizon/2 averages
};

struct KineticMoment {
  double value = 0.0;       // average over the full horizon
  double half_value = 0.0;  // average over the first half
  std::size_t returns = 0;  // completed section returns used for `value`
  double averaging_time = 0.0;

  /// Mean return time, i.e. the orbit period, when returns were observed.
  std::optional<double> mean_return_time() const {
    if (returns == 0) return std::nullopt;
    return averaging_time / static_cast<double>(returns);
  }
};

/// Start point on {H = h} used by the time averages and its section.
/// 1D: q = 0 with p > 0, section q = 0 mod 2 pi crossed upward.
/// 2D: q = (r_c, 0), p = (p_r, L / r_c), section r = r_c crossed outward.
inline PhaseState level_set_start(const ModelSpec& model, double h, double L = 0.0) {
  if (model.dim() == 1) {
    detail::check_energy_1d(model, h);
    const double v0 = potential(model, Coords(0.0));
    return make_phase(0.0, std::sqrt(std::max(0.0, 2.0 * (h - v0))));
  }
  const auto c = circular_orbit(L);
  if (h < c.energy) detail::fail(ErrorCategory::out_of_range, "energy below the effective minimum");
  const double pr = std::sqrt(2.0 * (h - c.energy));
  return make_phase(c.radius, 0.0, pr, L / c.radius);
}

namespace detail {

// Signed distance to the section, ahead of the last crossing.
class SectionTracker {
 public:
  SectionTracker(const ModelSpec& model, const PhaseState& start) : model_(model) {
    if (model.dim() == 2) radius2_ = start.q.norm2();
  }

  // true when the step old -> new crossed the section in the positive sense;
  // `frac` is the linear-interpolation fraction of the crossing in the step.
  bool crossed(const PhaseState& old_s, const PhaseState& new_s, double& frac) const {
    double g0 = 0.0;
    double g1 = 0.0;
    switch (model_.kind()) {
      case ModelKind::harmonic1d:
        g0 = old_s.q[0];
        g1 = new_s.q[0];
        break;
      case ModelKind::pendulum1d: {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        const double m = std::floor(new_s.q[0] / two_pi);
        if (!(std::floor(old_s.q[0] / two_pi) < m)) return false;
        g0 = old_s.q[0] - m * two_pi;
        g1 = new_s.q[0] - m * two_pi;
        break;
      }
      case ModelKind::centralforce2d:
        g0 = old_s.q.norm2() - radius2_;
        g1 = new_s.q.norm2() - radius2_;
        break;
    }
    if (!(g0 < 0.0 && g1 >= 0.0)) return false;
    frac = -g0 / (g1 - g0);
    return true;
  }

 private:
  const ModelSpec& model_;
  double radius2_ = 0.0;
};

}  // namespace detail

/// Time average of |p|^2 on {H = h} (and fixed L in 2D). The average is taken
/// over whole section returns, so the horizon only has to contain many periods.
inline KineticMoment k0_time_average_detail(const ModelSpec& model, double h, double L,
                                            const TimeAverageOptions& opt = {}) {
  detail::require(opt.horizon > 0.0 && opt.dt > 0.0, ErrorCategory::invalid_argument,
                  "horizon and dt must be positive");
  PhaseState s = level_set_start(model, h, L);
  const detail::SectionTracker tracker(model, s);
  const auto n = static_cast<std::size_t>(std::llround(opt.horizon / opt.dt));
  const std::size_t n_half = n / 2;

  double integral = 0.0;
  double f_old = s.p.norm2();
  double last_cross_t = 0.0;
  double last_cross_integral = 0.0;
  std::size_t returns = 0;
  double half_t = 0.0;
  double half_integral = 0.0;
  std::size_t half_returns = 0;
  double plain_half = 0.0;

  for (std::size_t i = 1; i <= n; ++i) {
    const PhaseState next = verlet_step(model, s, opt.dt);
    if (!next.finite()) throw DivergenceError(static_cast<double>(i) * opt.dt, "time average diverged");
    const double f_new = next.p.norm2();
    double frac = 0.0;
    if (tracker.crossed(s, next, frac)) {
      const double f_cross = f_old + frac * (f_new - f_old);
      last_cross_integral = integral + 0.5 * frac * opt.dt * (f_old + f_cross);
      last_cross_t = (static_cast<double>(i - 1) + frac) * opt.dt;
      ++returns;
    }
    integral += 0.5 * opt.dt * (f_old + f_new);
    f_old = f_new;
    s = next;
    if (i == n_half) {
      half_t = last_cross_t;
      half_integral = last_cross_integral;
      half_returns = returns;
      plain_half = integral / (static_cast<double>(n_half) * opt.dt);
    }
  }

  KineticMoment out;
  if (half_returns >= 1) {
    out.value = last_cross_integral / last_cross_t;
    out.half_value = half_integral / half_t;
    out.returns = returns;
    out.averaging_time = last_cross_t;
  } else {
    // no return inside half the horizon (rest point or very slow orbit)
    out.value = integral / (static_cast<double>(n) * opt.dt);
    out.half_value = plain_half;
    out.averaging_time = static_cast<double>(n) * opt.dt;
  }
  const double scale = std::abs(out.value);
  if (std::abs(out.value - out.half_value) > opt.tolerance * scale) {
    throw NonConvergenceError(out.value, out.half_value,
                              "time average not converged at h = " + std::to_string(h) +
                                  ": full " + std::to_string(out.value) + ", half " +
                                  std::to_string(out.half_value));
  }
  return out;
}

inline double k0_time_average(const ModelSpec& model, double h, const TimeAverageOptions& opt = {}) {
  return k0_time_average_detail(model, h, 0.0, opt).value;
}

inline double k0_time_average(const ModelSpec& model, double h, double L, const TimeAverageOptions& opt) {
  return k0_time_average_detail(model, h, L, opt).value;
}

}  // namespace nhergo
