#pragma once

// Exact and approximate first integrals evaluated on extended phase points.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nhergo/action.hpp"
#include "nhergo/error.hpp"
#include "nhergo/models.hpp"
#include "nhergo/slow_potential.hpp"

namespace nhergo {

/// G = xi^2/(2Q) + H - N/(beta k) ln|F| for a first integral F homogeneous of
/// degree k in p.
template <class FirstIntegral>
double homogeneous_invariant(const ModelSpec& model, const ThermostatState& s, FirstIntegral&& F, double degree) {
  detail::require(degree != 0.0, ErrorCategory::invalid_argument, "homogeneity degree must be nonzero");
  const double f = F(s.phase);
  if (f == 0.0 || !std::isfinite(f)) {
    detail::fail(ErrorCategory::invalid_argument, "first integral vanishes: logarithm undefined");
  }
  const double N = static_cast<double>(model.dim());
  return s.xi * s.xi / (2.0 * model.Q()) + hamiltonian(model, s.phase) -
         N / (model.beta() * degree) * std::log(std::abs(f));
}

/// The central-force instance: F = L, degree 1.
inline double angular_invariant(const ModelSpec& model, const ThermostatState& s) {
  return homogeneous_invariant(model, s, [](const PhaseState& ps) { return angular_momentum(ps); }, 1.0);
}

/// G1 = a1(H, L) / L.
inline double g1(const ModelSpec& model, const PhaseState& s) {
  const double L = angular_momentum(s);
  detail::require(L != 0.0, ErrorCategory::invalid_argument, "G1 is undefined for L = 0");
  return radial_action(model, hamiltonian(model, s), L) / L;
}

/// E = alpha^2/2 + H - (2/beta) ln|L|.
inline double averaged_E(double L, double H, double alpha, double beta) {
  detail::require(L != 0.0, ErrorCategory::invalid_argument, "E is undefined for L = 0");
  return 0.5 * alpha * alpha + H - 2.0 / beta * std::log(std::abs(L));
}

struct E1E2 {
  double E1 = 0.0;  // NaN when L = 0
  double E2 = 0.0;
};

/// E1 = tau(H)/L and E2 = xi^2/(2Q) + H - (2/beta) ln tau(H).
inline E1E2 e1_e2(const ModelSpec& model, const ThermostatState& s, const TauMap& tau) {
  const double H = hamiltonian(model, s.phase);
  const double log_tau = tau.log_tau(H);
  const double L = angular_momentum(s.phase);
  E1E2 out;
  out.E1 = L != 0.0 ? std::exp(log_tau) / L : std::nan("");
  out.E2 = s.xi * s.xi / (2.0 * model.Q()) + H - 2.0 / model.beta() * log_tau;
  return out;
}

inline double e1(const ModelSpec& model, const ThermostatState& s, const TauMap& tau) {
  const double L = angular_momentum(s.phase);
  detail::require(L != 0.0, ErrorCategory::invalid_argument, "E1 is undefined for L = 0");
  return e1_e2(model, s, tau).E1;
}

/// Extended-phase-space point as a flat vector (q..., p..., xi).
inline std::vector<double> flatten(const ThermostatState& s) {
  std::vector<double> z;
  for (std::size_t i = 0; i < s.phase.q.size(); ++i) z.push_back(s.phase.q[i]);
  for (std::size_t i = 0; i < s.phase.p.size(); ++i) z.push_back(s.phase.p[i]);
  z.push_back(s.xi);
  return z;
}

inline ThermostatState unflatten(std::span<const double> z) {
  ThermostatState s;
  if (z.size() == 3) {
    s.phase = make_phase(z[0], z[1]);
    s.xi = z[2];
  } else {
    detail::require(z.size() == 5, ErrorCategory::invalid_argument, "extended state must have 3 or 5 components");
    s.phase = make_phase(z[0], z[1], z[2], z[3]);
    s.xi = z[4];
  }
  return s;
}

/// div(rho f) of the Nose-Hoover field at s by centered differences, with
/// rho = exp(-beta_density (H + xi^2/(2Q))). Passing beta_density different
/// from the model's beta gives the perturbed control.
inline double measure_divergence(const ModelSpec& model, const ThermostatState& s, double beta_density,
                                 double step = 1e-5) {
  const auto z = flatten(s);
  auto flux_component = [&](std::vector<double> w, std::size_t i) {
    const ThermostatState x = unflatten(w);
    const double rho = std::exp(-beta_density * (hamiltonian(model, x.phase) + x.xi * x.xi / (2.0 * model.Q())));
    return rho * flatten(nh_vector_field(model, x))[i];
  };
  double div = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    auto plus = z;
    auto minus = z;
    plus[i] += step;
    minus[i] -= step;
    div += (flux_component(plus, i) - flux_component(minus, i)) / (2.0 * step);
  }
  return div;
}

inline double measure_divergence(const ModelSpec& model, const ThermostatState& s) {
  return measure_divergence(model, s, model.beta());
}

/// Time series of one invariant with its relative drift max |v/v(0) - 1|.
struct InvariantReport {
  std::vector<double> times;
  std::vector<double> values;

  void push(double t, double v) {
    times.push_back(t);
    values.push_back(v);
  }

  double relative_drift() const {
    detail::require(!values.empty() && values.front() != 0.0, ErrorCategory::invalid_argument,
                    "relative drift needs a nonzero initial value");
    double d = 0.0;
    for (double v : values) d = std::max(d, std::abs(v / values.front() - 1.0));
    return d;
  }

  double absolute_drift() const {
    double d = 0.0;
    for (double v : values) d = std::max(d, std::abs(v - values.front()));
    return d;
  }
};

}  // namespace nhergo
