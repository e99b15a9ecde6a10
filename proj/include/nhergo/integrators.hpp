#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nhergo/error.hpp"
#include "nhergo/models.hpp"

namespace nhergo {

struct IntegratorConfig {
  double dt = 1e-3;
  double t_final = 1.0;
  std::size_t sample_stride = 1;

  void validate() const {
    detail::require(dt > 0.0 && std::isfinite(dt), ErrorCategory::invalid_argument, "dt must be positive");
    detail::require(std::isfinite(t_final) && t_final >= dt * (1.0 - 1e-12),
                    ErrorCategory::invalid_argument, "t_final must be at least dt");
    detail::require(sample_stride >= 1, ErrorCategory::invalid_argument, "sample_stride must be >= 1");
  }

  /// Number of fixed steps covering [0, t_final].
  std::size_t steps() const { return static_cast<std::size_t>(std::llround(t_final / dt)); }
};

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;

  std::size_t size() const noexcept { return times.size(); }
};

namespace detail {

// T(h): half kick of xi, exact momentum rescaling, half kick of xi.
inline void thermostat_substep(const ModelSpec& model, ThermostatState& s, double h) {
  const double n_over_beta = static_cast<double>(model.dim()) / model.beta();
  auto& p = s.phase.p;
  s.xi += 0.5 * h * (p.norm2() - n_over_beta);
  p *= std::exp(-(s.xi / model.Q()) * h);
  s.xi += 0.5 * h * (p.norm2() - n_over_beta);
}

inline void kick(const ModelSpec& model, PhaseState& s, double h) {
  s.p -= grad_potential(model, s.q) * h;
}

inline void drift(PhaseState& s, double h) { s.q += s.p * h; }

}  // namespace detail

/// One step of the symmetric splitting T(dt/2) K(dt/2) D(dt) K(dt/2) T(dt/2).
/// Second order and time reversible; dt may be negative.
inline ThermostatState nh_step(const ModelSpec& model, ThermostatState s, double dt) {
  const double half = 0.5 * dt;
  detail::thermostat_substep(model, s, half);
  detail::kick(model, s.phase, half);
  detail::drift(s.phase, dt);
  detail::kick(model, s.phase, half);
  detail::thermostat_substep(model, s, half);
  return s;
}

/// Kick-drift-kick leapfrog for the Hamiltonian field.
inline PhaseState verlet_step(const ModelSpec& model, PhaseState s, double dt) {
  const double half = 0.5 * dt;
  detail::kick(model, s, half);
  detail::drift(s, dt);
  detail::kick(model, s, half);
  return s;
}

/// Slow variables of the one-dimensional averaged system.
struct AveragedState1D {
  double sigma = 0.0;
  double alpha = 0.0;

  bool finite() const noexcept { return std::isfinite(sigma) && std::isfinite(alpha); }
  friend bool operator==(const AveragedState1D&, const AveragedState1D&) = default;
};

/// Symplectic Euler for sigma' = -alpha, alpha' = U'(sigma):
/// alpha is updated first and the new alpha drives sigma.
template <class Slope>
AveragedState1D symplectic_euler_step(Slope&& slope, AveragedState1D s, double dt) {
  s.alpha += dt * slope(s.sigma);
  s.sigma -= dt * s.alpha;
  return s;
}

/// Stormer-Verlet (alpha half kick, sigma drift, alpha half kick) for the
/// same system; second order, used where event times must be accurate.
template <class Slope>
AveragedState1D stormer_verlet_step(Slope&& slope, AveragedState1D s, double dt) {
  s.alpha += 0.5 * dt * slope(s.sigma);
  s.sigma -= dt * s.alpha;
  s.alpha += 0.5 * dt * slope(s.sigma);
  return s;
}

/// Classical fourth-order Runge-Kutta for a state with +, scalar * and a
/// field `rhs(state) -> state`.
template <class State, class Rhs>
State rk4_step(Rhs&& rhs, const State& s, double dt) {
  const State k1 = rhs(s);
  const State k2 = rhs(s + k1 * (0.5 * dt));
  const State k3 = rhs(s + k2 * (0.5 * dt));
  const State k4 = rhs(s + k3 * dt);
  return s + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
}

/// Fixed-step loop. `observer(t, state)` sees every step including t = 0;
/// states are stored every `sample_stride` steps.
template <class State, class Stepper, class Observer>
Trajectory<State> integrate(State init, const IntegratorConfig& config, Stepper&& step,
                            Observer&& observer, bool store = true) {
  config.validate();
  const std::size_t n = config.steps();
  Trajectory<State> traj;
  if (store) {
    const std::size_t samples = n / config.sample_stride + 1;
    traj.times.reserve(samples);
    traj.states.reserve(samples);
  }
  State s = std::move(init);
  if (!s.finite()) throw DivergenceError(0.0, "initial state is not finite");
  observer(0.0, std::as_const(s));
  if (store) {
    traj.times.push_back(0.0);
    traj.states.push_back(s);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    s = step(std::as_const(s), config.dt);
    const double t = static_cast<double>(i) * config.dt;
    if (!s.finite()) {
      throw DivergenceError(t, "state became non-finite at t = " + std::to_string(t));
    }
    observer(t, std::as_const(s));
    if (store && i % config.sample_stride == 0) {
      traj.times.push_back(t);
      traj.states.push_back(s);
    }
  }
  return traj;
}

template <class State, class Stepper>
Trajectory<State> integrate(State init, const IntegratorConfig& config, Stepper&& step) {
  return integrate(std::move(init), config, std::forward<Stepper>(step), [](double, const State&) {});
}

inline Trajectory<ThermostatState> integrate_nose_hoover(
    const ModelSpec& model, const ThermostatState& init, const IntegratorConfig& config,
    const std::function<void(double, const ThermostatState&)>& observer = {}, bool store = true) {
  auto step = [&model](const ThermostatState& s, double dt) { return nh_step(model, s, dt); };
  if (observer) return integrate(init, config, step, observer, store);
  return integrate(init, config, step, [](double, const ThermostatState&) {}, store);
}

inline Trajectory<PhaseState> integrate_verlet(
    const ModelSpec& model, const PhaseState& init, const IntegratorConfig& config,
    const std::function<void(double, const PhaseState&)>& observer = {}, bool store = true) {
  auto step = [&model](const PhaseState& s, double dt) { return verlet_step(model, s, dt); };
  if (observer) return integrate(init, config, step, observer, store);
  return integrate(init, config, step, [](double, const PhaseState&) {}, store);
}

}  // namespace nhergo
