#pragma once

// Return map of the pendulum Nose-Hoover flow on the section q = 0 mod 2 pi,
// crossed with q' > 0.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "nhergo/action.hpp"
#include "nhergo/averaged.hpp"
#include "nhergo/error.hpp"
#include "nhergo/integrators.hpp"
#include "nhergo/models.hpp"

namespace nhergo {

struct SectionCrossing {
  double t = 0.0;
  double a = 0.0;
  double alpha = 0.0;  // xi / sqrt(Q)
  double h = 0.0;
  ThermostatState state;  // refined state on the section
};

struct PoincareOptions {
  double dt = 1e-3;
  std::size_t max_steps_between = 1'000'000;
  double section_tolerance = 1e-9;
  bool thermostat = true;  // false: xi is frozen at 0 and the flow is Hamiltonian
  double h_min = -std::numeric_limits<double>::infinity();
  double h_max = std::numeric_limits<double>::infinity();
};

struct PoincareResult {
  std::vector<SectionCrossing> crossings;
  std::size_t separatrix_skipped = 0;
};

namespace detail {

// Cubic Hermite on [0, dt] through (y0, dy0) and (y1, dy1), at fraction u.
inline double hermite(double y0, double dy0, double y1, double dy1, double dt, double u) {
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * dt * dy0 + (-2 * u3 + 3 * u2) * y1 +
         (u3 - u2) * dt * dy1;
}

}  // namespace detail

/// Collects `n_crossings` section crossings starting from `init`. A start on
/// the section with p > 0 is emitted as the crossing at t = 0.
inline PoincareResult poincare_map(const ModelSpec& model, const ThermostatState& init, std::size_t n_crossings,
                                   const PoincareOptions& opt = {}) {
  detail::require(model.kind() == ModelKind::pendulum1d, ErrorCategory::invalid_argument,
                  "the return map is defined for the pendulum");
  detail::require(opt.dt > 0.0, ErrorCategory::invalid_argument, "dt must be positive");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double sqrtQ = std::sqrt(model.Q());

  PoincareResult out;
  auto emit = [&](double t, const ThermostatState& s) {
    const double h = hamiltonian(model, s.phase);
    if (h < opt.h_min || h > opt.h_max) {
      detail::fail(ErrorCategory::out_of_range,
                   "crossing energy " + std::to_string(h) + " left the table range at t = " + std::to_string(t));
    }
    if (in_separatrix_band(model, h)) {
      ++out.separatrix_skipped;
      return;
    }
    out.crossings.push_back({t, action_1d(model, h), s.xi / sqrtQ, h, s});
  };
  auto field = [&](const ThermostatState& s) {
    ThermostatState d = nh_vector_field(model, s);
    if (!opt.thermostat) {
      d.phase.p = grad_potential(model, s.phase.q) * -1.0;
      d.xi = 0.0;
    }
    return d;
  };
  auto step = [&](const ThermostatState& s) {
    if (opt.thermostat) return nh_step(model, s, opt.dt);
    return ThermostatState{verlet_step(model, s.phase, opt.dt), 0.0};
  };

  ThermostatState s = init;
  if (!opt.thermostat) s.xi = 0.0;
  if (!s.finite()) throw DivergenceError(0.0, "initial state is not finite");
  if (std::remainder(s.phase.q[0], two_pi) == 0.0 && s.phase.p[0] > 0.0) emit(0.0, s);

  std::size_t i = 0;
  std::size_t since_last = 0;
  while (out.crossings.size() < n_crossings) {
    const ThermostatState next = step(s);
    ++i;
    const double t1 = static_cast<double>(i) * opt.dt;
    if (!next.finite()) throw DivergenceError(t1, "state became non-finite at t = " + std::to_string(t1));
    const double m = std::floor(next.phase.q[0] / two_pi);
    if (std::floor(s.phase.q[0] / two_pi) < m) {
      const double target = m * two_pi;
      const ThermostatState d0 = field(s);
      const ThermostatState d1 = field(next);
      auto q_at = [&](double u) {
        return detail::hermite(s.phase.q[0], d0.phase.q[0], next.phase.q[0], d1.phase.q[0], opt.dt, u) - target;
      };
      double lo = 0.0;
      double hi = 1.0;
      double u = 0.5;
      for (int it = 0; it < 200; ++it) {
        u = 0.5 * (lo + hi);
        const double g = q_at(u);
        if (std::abs(g) < 0.01 * opt.section_tolerance || hi - lo < 1e-16) break;
        if (g < 0.0) {
          lo = u;
        } else {
          hi = u;
        }
      }
      ThermostatState c;
      c.phase = make_phase(q_at(u) + target,
                           detail::hermite(s.phase.p[0], d0.phase.p[0], next.phase.p[0], d1.phase.p[0], opt.dt, u));
      c.xi = detail::hermite(s.xi, d0.xi, next.xi, d1.xi, opt.dt, u);
      if (c.phase.p[0] > 0.0) {
        emit(t1 - opt.dt + u * opt.dt, c);
        since_last = 0;
      }
    }
    s = next;
    if (++since_last > opt.max_steps_between) {
      detail::fail(ErrorCategory::stall, "no section crossing in " + std::to_string(opt.max_steps_between) +
                                             " steps before t = " + std::to_string(t1));
    }
  }
  return out;
}

/// Largest |G(a, alpha) - G(first crossing)| over the crossings, in units of
/// the well's G window, with G = alpha^2/2 + W(a).
template <SlowPotential P>
double match_to_averaged(const std::vector<SectionCrossing>& crossings, const AveragedWell<P>& well) {
  detail::require(!crossings.empty(), ErrorCategory::invalid_argument, "no crossings to compare");
  const auto& pot = well.potential();
  auto G = [&](const SectionCrossing& c) { return 0.5 * c.alpha * c.alpha + pot.W(c.a); };
  const double G_ref = G(crossings.front());
  const double width = well.g_window().width();
  double worst = 0.0;
  for (const auto& c : crossings) worst = std::max(worst, std::abs(G(c) - G_ref) / width);
  return worst;
}

}  // namespace nhergo
