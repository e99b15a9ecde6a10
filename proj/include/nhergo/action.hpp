#pragma once

// Level-set actions and periods computed by turning-point quadrature.

#include <cmath>
#include <numbers>
#include <string>

#include "nhergo/error.hpp"
#include "nhergo/models.hpp"
#include "nhergo/quadrature.hpp"

namespace nhergo {

/// Half-width of the excluded energy band around the pendulum separatrix h = 1.
inline constexpr double separatrix_band = 0.002;

inline constexpr double pendulum_separatrix_energy = 1.0;

inline double minimum_energy(const ModelSpec& model) {
  return model.kind() == ModelKind::pendulum1d ? -1.0 : 0.0;
}

inline bool in_separatrix_band(const ModelSpec& model, double h) {
  return model.kind() == ModelKind::pendulum1d && std::abs(h - pendulum_separatrix_energy) < separatrix_band;
}

inline bool is_rotation(const ModelSpec& model, double h) {
  return model.kind() == ModelKind::pendulum1d && h > pendulum_separatrix_energy;
}

/// Number of connected components of the level set {H = h} on the reduced
/// configuration space: two rotation branches above the pendulum separatrix.
inline int component_count(const ModelSpec& model, double h) { return is_rotation(model, h) ? 2 : 1; }

namespace detail {

inline void check_one_dimensional(const ModelSpec& model) {
  if (model.dim() != 1) {
    fail(ErrorCategory::invalid_argument, "one-dimensional level sets need the harmonic or pendulum model");
  }
}

inline void check_energy_1d(const ModelSpec& model, double h) {
  check_one_dimensional(model);
  if (!std::isfinite(h) || h < minimum_energy(model)) {
    fail(ErrorCategory::out_of_range, "energy " + std::to_string(h) + " below the potential minimum");
  }
  if (in_separatrix_band(model, h)) {
    fail(ErrorCategory::separatrix, "energy " + std::to_string(h) + " inside the separatrix band");
  }
}

// Integrates w(gap) over one closed 1D oscillation, where gap = h - V(q)
// is supplied in product form so it stays accurate near the turning points.
template <class Weight>
double oscillation_integral(const ModelSpec& model, double h, Weight&& w, std::size_t nodes) {
  if (model.kind() == ModelKind::harmonic1d) {
    const double qt = std::sqrt(2.0 * h);
    auto f = [&](double, double d_lo, double d_hi) { return w(0.5 * d_lo * d_hi); };
    return integrate_between_turning_points(f, -qt, qt, nodes);
  }
  // pendulum: cos q - cos q_t = 2 sin((q_t + q)/2) sin((q_t - q)/2)
  const double qt = std::acos(-h);
  auto f = [&](double, double d_lo, double d_hi) {
    return w(2.0 * std::sin(0.5 * d_lo) * std::sin(0.5 * d_hi));
  };
  return integrate_between_turning_points(f, -qt, qt, nodes);
}

// Integrates w(gap) over q in [0, pi] for a pendulum rotation, x = pi - q.
template <class Weight>
double rotation_half_integral(double h, Weight&& w, std::size_t nodes) {
  const double excess = h - pendulum_separatrix_energy;
  auto f = [&](double x) {
    const double s = std::sin(0.5 * x);
    return w(excess + 2.0 * s * s);
  };
  return integrate_gauss_legendre(f, 0.0, std::numbers::pi, nodes);
}

}  // namespace detail

/// a(h) = loop integral of p dq over every component of {H = h}.
inline double action_1d(const ModelSpec& model, double h, std::size_t nodes = default_quadrature_nodes) {
  detail::check_energy_1d(model, h);
  if (h == minimum_energy(model)) return 0.0;
  auto momentum = [](double gap) { return std::sqrt(2.0 * gap); };
  if (is_rotation(model, h)) {
    // two branches, each 2 * integral over [0, pi] by symmetry about q = pi
    return 4.0 * detail::rotation_half_integral(h, momentum, nodes);
  }
  return 2.0 * detail::oscillation_integral(model, h, momentum, nodes);
}

/// Period of one closed component (a single branch for pendulum rotation).
inline double orbit_period(const ModelSpec& model, double h, std::size_t nodes = default_quadrature_nodes) {
  detail::check_energy_1d(model, h);
  if (h == minimum_energy(model)) return 2.0 * std::numbers::pi;  // small-oscillation limit
  auto inverse_speed = [](double gap) { return 1.0 / std::sqrt(2.0 * gap); };
  if (is_rotation(model, h)) return 2.0 * detail::rotation_half_integral(h, inverse_speed, nodes);
  return 2.0 * detail::oscillation_integral(model, h, inverse_speed, nodes);
}

// ---------------------------------------------------------------------------
// Central-force reduced radial problem, V(r) = r^2 + r^4.
//
// With u = r^2, r^2 (V_eff(r) - h) = P(u) = u^3 + u^2 - h u + L^2/2, whose
// positive roots are the squared turning radii.

struct CircularOrbit {
  double radius;
  double energy;
};

/// Minimum of H_L(r, 0) for |L| > 0.
inline CircularOrbit circular_orbit(double L) {
  detail::require(std::isfinite(L) && L != 0.0, ErrorCategory::invalid_argument,
                  "circular orbit needs nonzero angular momentum");
  const double L2 = L * L;
  // L^2 = 2u^2 + 4u^3 is increasing in u
  auto f = [L2](double u) { return 2.0 * u * u + 4.0 * u * u * u - L2; };
  double hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  const double u = bracketed_root(f, 0.0, hi);
  return {std::sqrt(u), 0.5 * L2 / u + u + u * u};
}

/// Largest |L| admitting a closed reduced orbit at energy h.
inline double max_angular_momentum(double h) {
  detail::require(h > 0.0, ErrorCategory::out_of_range, "energy must be positive");
  // circular orbit energy at u: 2u + 3u^2 = h (since L^2/(2u) = u + 2u^2)
  const double u = 2.0 * h / (2.0 + 2.0 * std::sqrt(1.0 + 3.0 * h));
  return std::sqrt(2.0 * u * u + 4.0 * u * u * u);
}

struct RadialTurningPoints {
  double r_min;
  double r_max;
  double u_third;  // negative third root of P
};

inline RadialTurningPoints radial_turning_points(double h, double L) {
  const double L2 = L * L;
  auto P = [&](double u) { return ((u + 1.0) * u - h) * u + 0.5 * L2; };
  if (!(h > 0.0)) detail::fail(ErrorCategory::out_of_range, "energy below the effective minimum");
  const double u_star = h / (1.0 + std::sqrt(1.0 + 3.0 * h));  // P'(u*) = 0
  const double p_star = P(u_star);
  if (p_star > 0.0) {
    detail::fail(ErrorCategory::out_of_range, "energy " + std::to_string(h) +
                                                   " below the effective minimum for L = " + std::to_string(L));
  }
  double u_lo = u_star;
  double u_hi = u_star;
  if (p_star < 0.0) {
    u_lo = bracketed_root(P, 0.0, u_star);
    u_hi = bracketed_root(P, u_star, h + 1.0);
  }
  return {std::sqrt(u_lo), std::sqrt(u_hi), -1.0 - u_lo - u_hi};
}

namespace detail {

template <class Weight>
double radial_integral(double h, double L, Weight&& w, std::size_t nodes) {
  const auto tp = radial_turning_points(h, L);
  if (tp.r_max <= tp.r_min) return 0.0;
  auto f = [&](double r, double d_lo, double d_hi) {
    const double gap = d_lo * (r + tp.r_min) * d_hi * (tp.r_max + r) * (r * r - tp.u_third) / (r * r);
    return w(r, gap);
  };
  return integrate_between_turning_points(f, tp.r_min, tp.r_max, nodes);
}

inline void check_radial(const ModelSpec& model, double L) {
  if (model.kind() != ModelKind::centralforce2d) {
    fail(ErrorCategory::invalid_argument, "radial quantities need the central-force model");
  }
  if (!(std::isfinite(L) && L != 0.0)) {
    fail(ErrorCategory::invalid_argument, "radial action needs nonzero angular momentum");
  }
}

}  // namespace detail

/// a1(h, L): area enclosed by the reduced orbit in the (r, p_r) plane.
inline double radial_action(const ModelSpec& model, double h, double L,
                            std::size_t nodes = default_quadrature_nodes) {
  detail::check_radial(model, L);
  return 2.0 * detail::radial_integral(h, L, [](double, double gap) { return std::sqrt(2.0 * gap); }, nodes);
}

/// Radial period of the reduced orbit (zero on the circular orbit).
inline double orbit_period(const ModelSpec& model, double h, double L,
                           std::size_t nodes = default_quadrature_nodes) {
  detail::check_radial(model, L);
  return 2.0 * detail::radial_integral(h, L, [](double, double gap) { return 1.0 / std::sqrt(2.0 * gap); }, nodes);
}

/// Time average of |p|^2 over one radial period, by quadrature.
inline double radial_kinetic_moment(const ModelSpec& model, double h, double L,
                                    std::size_t nodes = default_quadrature_nodes) {
  detail::check_radial(model, L);
  const double L2 = L * L;
  const auto tp = radial_turning_points(h, L);
  if (tp.r_max <= tp.r_min) return L2 / (tp.r_min * tp.r_min);
  const double T = orbit_period(model, h, L, nodes);
  const double moment = 2.0 * detail::radial_integral(
                                  h, L,
                                  [L2](double r, double gap) {
                                    return (2.0 * gap + L2 / (r * r)) / std::sqrt(2.0 * gap);
                                  },
                                  nodes);
  return moment / T;
}

/// Action of the L = 0 radial motion: the 1D oscillation in V(|x|) = x^2 + x^4
/// along a line through the origin. Its h-derivative is the period.
inline double line_action(double h, std::size_t nodes = default_quadrature_nodes) {
  detail::require(std::isfinite(h) && h >= 0.0, ErrorCategory::out_of_range, "energy below the minimum");
  if (h == 0.0) return 0.0;
  const double u = 2.0 * h / (1.0 + std::sqrt(1.0 + 4.0 * h));
  auto f = [u](double x, double d_lo, double d_hi) { return std::sqrt(2.0 * d_lo * d_hi * (x * x + 1.0 + u)); };
  return 2.0 * integrate_between_turning_points(f, -std::sqrt(u), std::sqrt(u), nodes);
}

inline double line_period(double h, std::size_t nodes = default_quadrature_nodes) {
  detail::require(std::isfinite(h) && h >= 0.0, ErrorCategory::out_of_range, "energy below the minimum");
  if (h == 0.0) return std::numbers::pi * std::sqrt(2.0);  // V'' = 2 at the origin
  const double u = 2.0 * h / (1.0 + std::sqrt(1.0 + 4.0 * h));
  auto f = [u](double x, double d_lo, double d_hi) {
    return 1.0 / std::sqrt(2.0 * d_lo * d_hi * (x * x + 1.0 + u));
  };
  return 2.0 * integrate_between_turning_points(f, -std::sqrt(u), std::sqrt(u), nodes);
}

/// Harmonic-oscillator action-angle map with angle period 1 and a the full
/// loop integral (a = 2 pi h): q = sqrt(a/pi) cos(2 pi theta),
/// p = -sqrt(a/pi) sin(2 pi theta).
struct AngleMapPoint {
  double q = 0.0;
  double p = 0.0;
  double dq_dtheta = 0.0;
};

inline AngleMapPoint harmonic_action_angle(double theta, double a) {
  const double r = std::sqrt(a / std::numbers::pi);
  const double w = 2.0 * std::numbers::pi;
  return {r * std::cos(w * theta), -r * std::sin(w * theta), -w * r * std::sin(w * theta)};
}

/// S(a) = integral over one angle period of (d phi1 / d theta) phi2, by the
/// periodic trapezoid rule.
template <class Map>
double averaged_S(Map&& map, double a, std::size_t points = 64) {
  double sum = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const auto m = map(static_cast<double>(i) / static_cast<double>(points), a);
    sum += m.dq_dtheta * m.p;
  }
  return sum / static_cast<double>(points);
}

}  // namespace nhergo
