#pragma once

// Averaged slow dynamics: the (sigma, alpha) system with U(sigma) = W(a0 e^sigma),
// the (L, H, alpha) central-force reduction, the first integrals of the
// (a, alpha) form, and the period function T1(G) of the closed averaged orbits.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "nhergo/error.hpp"
#include "nhergo/integrators.hpp"
#include "nhergo/interpolation.hpp"
#include "nhergo/quadrature.hpp"
#include "nhergo/slow_potential.hpp"

namespace nhergo {

template <class P>
concept SlowPotential = requires(const P& p, double a, double d) {
  { p.k(a) } -> std::convertible_to<double>;
  { p.W(a) } -> std::convertible_to<double>;
  { p.W_drop(a, d) } -> std::convertible_to<double>;
  { p.a_min() } -> std::convertible_to<double>;
  { p.a_max() } -> std::convertible_to<double>;
  { p.breakpoints() } -> std::convertible_to<std::vector<double>>;
};

struct TurningPoints {
  double sigma1 = 0.0;  // left, < 0
  double sigma2 = 0.0;  // right, > 0
};

struct GWindow {
  double G0 = 0.0;
  double G_top = 0.0;
  double width() const noexcept { return G_top - G0; }
};

/// A potential well of the 1D averaged system around a0.
template <SlowPotential P>
class AveragedWell {
 public:
  AveragedWell(P potential, double a0) : pot_(std::move(potential)), a0_(a0) {
    detail::require(a0 > pot_.a_min() && a0 < pot_.a_max(), ErrorCategory::out_of_range,
                    "a0 must lie strictly inside the action window");
    for (double a : pot_.breakpoints()) knots_.push_back(std::log(a / a0_));
    std::sort(knots_.begin(), knots_.end());
    knots_.front() = std::max(knots_.front(), std::log(pot_.a_min() / a0_));
    knots_.back() = std::min(knots_.back(), std::log(pot_.a_max() / a0_));
    G0_ = pot_.W(a0_);
  }

  const P& potential() const noexcept { return pot_; }
  double a0() const noexcept { return a0_; }
  double G0() const noexcept { return G0_; }
  double sigma_min() const noexcept { return knots_.front(); }
  double sigma_max() const noexcept { return knots_.back(); }
  std::span<const double> sigma_knots() const noexcept { return knots_; }

  double action(double sigma) const { return a0_ * std::exp(sigma); }
  double sigma(double a) const { return std::log(a / a0_); }
  double U(double sigma) const { return pot_.W(action(sigma)); }
  double dU(double sigma) const { return pot_.k(action(sigma)); }
  double G(const AveragedState1D& s) const { return 0.5 * s.alpha * s.alpha + U(s.sigma); }

  /// sigma1 < 0 < sigma2 with U = G, found by scanning knots outward and
  /// bracketing inside the first knot interval that reaches G.
  TurningPoints turning_points(double G) const {
    if (!(G > G0_)) detail::fail(ErrorCategory::out_of_range, "G must exceed the well bottom G0");
    auto f = [&](double s) { return U(s) - G; };
    TurningPoints tp;
    {
      double prev = 0.0;
      bool found = false;
      for (double s : knots_) {
        if (s <= 0.0) continue;
        if (U(s) >= G) {
          tp.sigma2 = bracketed_root(f, prev, s);
          found = true;
          break;
        }
        prev = s;
      }
      if (!found) detail::fail(ErrorCategory::out_of_range, "level curve leaves the action window on the right");
    }
    {
      double prev = 0.0;
      bool found = false;
      for (auto it = knots_.rbegin(); it != knots_.rend(); ++it) {
        const double s = *it;
        if (s >= 0.0) continue;
        if (U(s) >= G) {
          tp.sigma1 = bracketed_root(f, s, prev);
          found = true;
          break;
        }
        prev = s;
      }
      if (!found) detail::fail(ErrorCategory::out_of_range, "level curve leaves the action window on the left");
    }
    return tp;
  }

  /// [G0, G_top] where G_top is the lowest barrier: W at the window edges and
  /// at the nearest maximizers of W on either side of a0.
  GWindow g_window() const {
    GWindow w{G0_, std::min(pot_.W(pot_.a_min()), pot_.W(pot_.a_max()))};
    if constexpr (requires { pot_.maximizers(); }) {
      double left = -std::numeric_limits<double>::infinity();
      double right = std::numeric_limits<double>::infinity();
      for (double a : pot_.maximizers()) {
        if (a < a0_) left = std::max(left, a);
        if (a > a0_) right = std::min(right, a);
      }
      if (std::isfinite(left)) w.G_top = std::min(w.G_top, pot_.W(left));
      if (std::isfinite(right)) w.G_top = std::min(w.G_top, pot_.W(right));
    }
    return w;
  }

 private:
  P pot_;
  double a0_;
  double G0_ = 0.0;
  std::vector<double> knots_;
};

/// (sigma', alpha') = (-alpha, U'(sigma)).
template <SlowPotential P>
AveragedState1D averaged_rhs_1d(const AveragedState1D& s, const AveragedWell<P>& well) {
  return {-s.alpha, well.dU(s.sigma)};
}

/// Symplectic Euler orbit of the averaged 1D system, as (a, alpha) samples.
struct AveragedOrbitSample {
  double t = 0.0;
  double a = 0.0;
  double alpha = 0.0;
  double G = 0.0;
};

template <SlowPotential P>
std::vector<AveragedOrbitSample> averaged_orbit(const AveragedWell<P>& well, AveragedState1D init,
                                                const IntegratorConfig& config) {
  std::vector<AveragedOrbitSample> out;
  auto slope = [&](double s) { return well.dU(s); };
  auto step = [&](const AveragedState1D& s, double dt) { return symplectic_euler_step(slope, s, dt); };
  const auto traj = integrate(init, config, step);
  out.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& s = traj.states[i];
    out.push_back({traj.times[i], well.action(s.sigma), s.alpha, well.G(s)});
  }
  return out;
}

namespace detail {

// Integral of 1/sqrt(2 gap(d)) over d from 0 to span (signed), where gap has
// a simple zero at d = 0. Near a maximum of U the gap has a second zero at
// distance ~ |U'| / (|U''|/2) outside the panel; the panel is graded toward
// the turning point accordingly.
template <class Gap>
double turning_panel(Gap&& gap, double span, double slope, double curvature, std::size_t nodes) {
  auto f = [&](double d) { return 1.0 / std::sqrt(2.0 * gap(d)); };
  const double dir = span < 0.0 ? -1.0 : 1.0;
  const double len = std::abs(span);
  double d_star = curvature > 0.0 ? std::abs(slope) / (0.5 * curvature) : len;
  d_star = std::clamp(d_star, 1e-12 * len, len);
  double sum = dir * integrate_from_turning_point([&](double, double d) { return f(d); }, 0.0, dir * d_star, nodes);
  for (double lo = d_star; lo < len;) {
    const double hi = std::min(2.0 * lo, len);
    sum += integrate_gauss_legendre([&](double x) { return f(dir * x); }, lo, hi, nodes);
    lo = hi;
  }
  return sum;
}

}  // namespace detail

/// T1(G) = 2 * integral over [sigma1, sigma2] of dsigma / sqrt(2 (G - U)),
/// by panels split at the knots of the potential and at sigma = 0.
template <SlowPotential P>
double period_T1(double G, const AveragedWell<P>& well, std::size_t nodes = default_quadrature_nodes) {
  const TurningPoints tp = well.turning_points(G);
  std::vector<double> cuts{tp.sigma1};
  for (double s : well.sigma_knots()) {
    if (s > tp.sigma1 && s < tp.sigma2) cuts.push_back(s);
  }
  cuts.push_back(0.0);
  cuts.push_back(tp.sigma2);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto& pot = well.potential();
  auto end_panel = [&](double st, double other) {
    const double at = well.action(st);
    auto gap = [&](double d) { return pot.W_drop(at, d); };
    const double slope = well.dU(st);
    // U'' = a k'(a) from a one-sided difference taken inside the panel
    const double h = 1e-6 * (other > st ? 1.0 : -1.0) * std::min(1.0, std::abs(other - st));
    const double curvature = std::abs((well.dU(st + h) - slope) / h);
    return detail::turning_panel(gap, other - st, slope, curvature, nodes);
  };

  double half = end_panel(tp.sigma1, cuts[1]) + end_panel(tp.sigma2, cuts[cuts.size() - 2]);
  for (std::size_t i = 1; i + 2 < cuts.size(); ++i) {
    half += integrate_gauss_legendre([&](double s) { return 1.0 / std::sqrt(2.0 * (G - well.U(s))); }, cuts[i],
                                     cuts[i + 1], nodes);
  }
  return 2.0 * half;
}

/// T1 by integrating the averaged system from the left turning point with
/// Stormer-Verlet until alpha changes sign for the second time.
template <SlowPotential P>
double period_T1_first_return(double G, const AveragedWell<P>& well, double dt = 1e-4, double max_time = 1e4) {
  const TurningPoints tp = well.turning_points(G);
  auto slope = [&](double s) { return well.dU(s); };
  AveragedState1D s{tp.sigma1, 0.0};
  int sign_changes = 0;
  double t = 0.0;
  // the first step leaves alpha = 0; count changes strictly after it
  AveragedState1D prev = s;
  s = stormer_verlet_step(slope, s, dt);
  t += dt;
  while (t < max_time) {
    prev = s;
    s = stormer_verlet_step(slope, s, dt);
    t += dt;
    if ((prev.alpha < 0.0) != (s.alpha < 0.0)) {
      ++sign_changes;
      if (sign_changes == 2) return t - dt * s.alpha / (s.alpha - prev.alpha);
    }
  }
  detail::fail(ErrorCategory::stall, "averaged orbit did not return within the time limit");
}

struct WellWidth {
  double width = 0.0;     // sigma2 - sigma1
  double residual = 0.0;  // width - (T1/pi) sqrt(2 (G - G0))
  double T1 = 0.0;
};

template <SlowPotential P>
WellWidth well_width_and_isochrony(double G, const AveragedWell<P>& well,
                                   std::size_t nodes = default_quadrature_nodes) {
  const TurningPoints tp = well.turning_points(G);
  WellWidth w;
  w.T1 = period_T1(G, well, nodes);
  w.width = tp.sigma2 - tp.sigma1;
  w.residual = w.width - w.T1 / std::numbers::pi * std::sqrt(2.0 * (G - well.G0()));
  return w;
}

struct T1GridOptions {
  std::size_t nodes = 50;
  double bottom_margin = 1e-3;
  double top_margin = 1e-4;
  std::size_t quadrature_nodes = default_quadrature_nodes;
};

struct T1GridPoint {
  double G = 0.0;
  double T1 = 0.0;
  double width = 0.0;
  double residual = 0.0;
};

template <SlowPotential P>
std::vector<T1GridPoint> t1_grid(const AveragedWell<P>& well, const T1GridOptions& opt = {}) {
  const GWindow win = well.g_window();
  const double lo = win.G0 + opt.bottom_margin;
  const double hi = win.G_top - opt.top_margin;
  detail::require(hi > lo, ErrorCategory::out_of_range, "G window is empty after margins");
  std::vector<T1GridPoint> out;
  for (double G : uniform_grid(lo, hi, opt.nodes)) {
    const auto w = well_width_and_isochrony(G, well, opt.quadrature_nodes);
    out.push_back({G, w.T1, w.width, w.residual});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Central-force reduction in (L, H, alpha).

struct AveragedState2D {
  double L = 0.0;
  double H = 0.0;
  double alpha = 0.0;

  bool finite() const noexcept { return std::isfinite(L) && std::isfinite(H) && std::isfinite(alpha); }
  friend AveragedState2D operator+(const AveragedState2D& x, const AveragedState2D& y) {
    return {x.L + y.L, x.H + y.H, x.alpha + y.alpha};
  }
  friend AveragedState2D operator*(const AveragedState2D& x, double c) { return {x.L * c, x.H * c, x.alpha * c}; }
};

/// (L', H', alpha') = (-alpha L, -alpha k0app(H), k0app(H) - 2/beta).
inline AveragedState2D averaged_rhs_2d(const AveragedState2D& s, const PiecewiseLinear& k0app, double beta) {
  const double k0 = k0app(s.H);
  return {-s.alpha * s.L, -s.alpha * k0, k0 - 2.0 / beta};
}

inline AveragedState2D averaged_step_2d(const AveragedState2D& s, const PiecewiseLinear& k0app, double beta,
                                        double dt) {
  return rk4_step([&](const AveragedState2D& x) { return averaged_rhs_2d(x, k0app, beta); }, s, dt);
}

// ---------------------------------------------------------------------------
// The (a, alpha) form: a' = -alpha a, alpha' = k(a), for action vectors.

struct ActionAlphaState {
  std::vector<double> a;
  double alpha = 0.0;

  bool finite() const noexcept {
    return std::isfinite(alpha) && std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
  }
  friend ActionAlphaState operator+(const ActionAlphaState& x, const ActionAlphaState& y) {
    ActionAlphaState r{x.a, x.alpha + y.alpha};
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
  }
  friend ActionAlphaState operator*(const ActionAlphaState& x, double c) {
    ActionAlphaState r{x.a, x.alpha * c};
    for (double& v : r.a) v *= c;
    return r;
  }
};

template <class K>
ActionAlphaState goodform_rhs(const ActionAlphaState& s, K&& k) {
  ActionAlphaState d{s.a, k(std::span<const double>(s.a))};
  for (double& v : d.a) v *= -s.alpha;
  return d;
}

/// G_i = a_i / a_N for i < N and G_N = alpha^2/2 + integral from a_ref to a_N
/// of k(s a / a_N) / s ds along the ray through a.
/// ray_breaks are values of s where k is not smooth (table knots mapped onto
/// the ray); the quadrature splits there. Without them a kinked k is only
/// resolved to about 1e-6.
template <class K>
std::vector<double> averaged_first_integrals(std::span<const double> a, double alpha, K&& k, double a_ref,
                                             std::span<const double> ray_breaks = {}, std::size_t nodes = 64) {
  detail::require(!a.empty(), ErrorCategory::invalid_argument, "empty action vector");
  const double aN = a.back();
  detail::require(aN != 0.0, ErrorCategory::invalid_argument, "a_N must be nonzero");
  detail::require(a_ref > 0.0 && aN > 0.0, ErrorCategory::invalid_argument, "ray integral needs positive actions");
  std::vector<double> G;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) G.push_back(a[i] / aN);
  std::vector<double> point(a.size());
  // integrate in u = ln s so the integrand is k on the ray
  auto integrand = [&](double u) {
    const double s = std::exp(u);
    for (std::size_t i = 0; i < a.size(); ++i) point[i] = s * a[i] / aN;
    return k(std::span<const double>(point));
  };
  const double lo = std::min(a_ref, aN);
  const double hi = std::max(a_ref, aN);
  std::vector<double> cuts{std::log(lo)};
  for (double b : ray_breaks)
    if (b > lo && b < hi) cuts.push_back(std::log(b));
  cuts.push_back(std::log(hi));
  std::sort(cuts.begin(), cuts.end());
  double ray = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) ray += integrate_gauss_legendre(integrand, cuts[i], cuts[i + 1], nodes);
  G.push_back(0.5 * alpha * alpha + (aN >= a_ref ? ray : -ray));
  return G;
}

}  // namespace nhergo
