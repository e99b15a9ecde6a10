#include <gtest/gtest.h>

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <cmath>
#include <numbers>

#include "nhergo/action.hpp"

using namespace nhergo;
using boost::math::ellint_1;
using boost::math::ellint_2;

namespace {

const ModelSpec pendulum(ModelKind::pendulum1d, 1.0, 1.0);
const ModelSpec harmonic(ModelKind::harmonic1d, 1.0, 1.0);
const ModelSpec central(ModelKind::centralforce2d, 1.0, 1.0);

// Closed forms through complete elliptic integrals.
double pendulum_action_exact(double h) {
  if (h < 1.0) {
    const double k = std::sqrt((1.0 + h) / 2.0);
    return 16.0 * (ellint_2(k) - (1.0 - k * k) * ellint_1(k));
  }
  const double k = std::sqrt(2.0 / (1.0 + h));
  return 8.0 * std::sqrt(2.0 * (1.0 + h)) * ellint_2(k);  // both branches
}

double pendulum_period_exact(double h) {
  if (h < 1.0) return 4.0 * ellint_1(std::sqrt((1.0 + h) / 2.0));
  return 4.0 * ellint_1(std::sqrt(2.0 / (1.0 + h))) / std::sqrt(2.0 * (1.0 + h));
}

// Brute-force midpoint area of {H_L <= h} in the (r, p_r) plane.
double radial_area_midpoint(double h, double L, std::size_t n) {
  auto gap = [&](double r) { return h - 0.5 * L * L / (r * r) - r * r - r * r * r * r; };
  // turning points by plain bisection around the circular radius
  double r_c = 0.1;
  for (double r = 0.01; r < 3.0; r += 1e-4) {
    if (gap(r) > gap(r_c)) r_c = r;
  }
  auto bisect = [&](double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      ((gap(lo) < 0) == (gap(mid) < 0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double r1 = bisect(1e-6, r_c);
  const double r2 = bisect(r_c, 5.0);
  const double w = (r2 - r1) / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = gap(r1 + (static_cast<double>(i) + 0.5) * w);
    if (g > 0) s += std::sqrt(2.0 * g);
  }
  return 2.0 * s * w;
}

}  // namespace

TEST(Action, HarmonicClosedForm) {
  for (double h : {0.01, 0.5, 1.0, 7.0}) {
    EXPECT_NEAR(action_1d(harmonic, h) / (2 * std::numbers::pi * h), 1.0, 1e-12);
    EXPECT_NEAR(orbit_period(harmonic, h), 2 * std::numbers::pi, 1e-12);
  }
  EXPECT_EQ(action_1d(harmonic, 0.0), 0.0);
}

TEST(Action, PendulumOscillationMatchesEllipticIntegrals) {
  for (double h : {-0.999, -0.9, -0.5, 0.0, 0.5, 0.9, 0.99, 0.998}) {
    EXPECT_NEAR(action_1d(pendulum, h) / pendulum_action_exact(h), 1.0, 1e-12) << h;
    EXPECT_NEAR(orbit_period(pendulum, h) / pendulum_period_exact(h), 1.0, 1e-10) << h;
  }
}

TEST(Action, PendulumRotationMatchesEllipticIntegrals) {
  for (double h : {1.002, 1.01, 1.5, 3.0, 5.0}) {
    EXPECT_NEAR(action_1d(pendulum, h) / pendulum_action_exact(h), 1.0, 1e-12) << h;
    EXPECT_NEAR(orbit_period(pendulum, h) / pendulum_period_exact(h), 1.0, 1e-10) << h;
  }
}

TEST(Action, PeriodIsTheActionDerivativePerComponent) {
  for (double h : {-0.3, 0.6, 2.0}) {
    const double d = 1e-5;
    const double slope = (action_1d(pendulum, h + d) - action_1d(pendulum, h - d)) / (2 * d);
    EXPECT_NEAR(slope / (component_count(pendulum, h) * orbit_period(pendulum, h)), 1.0, 1e-8);
  }
}

TEST(Action, SeparatrixAndRangeErrors) {
  try {
    action_1d(pendulum, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::separatrix);
  }
  EXPECT_THROW(action_1d(pendulum, 0.9995), Error);
  EXPECT_NO_THROW(action_1d(pendulum, 0.997));
  try {
    action_1d(pendulum, -1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::out_of_range);
  }
  EXPECT_THROW(action_1d(central, 1.0), Error);
}

TEST(Action, RadialActionAgainstBruteForceArea) {
  const double h = 2.5625;
  const double L = 0.75;
  EXPECT_NEAR(radial_action(central, h, L) / radial_area_midpoint(h, L, 2'000'000), 1.0, 1e-7);
}

TEST(Action, RadialPeriodIsTheAreaDerivative) {
  const double L = 0.75;
  for (double h : {1.5, 2.5625, 4.0}) {
    const double d = 1e-5;
    const double slope = (radial_action(central, h + d, L) - radial_action(central, h - d, L)) / (2 * d);
    EXPECT_NEAR(slope / orbit_period(central, h, L), 1.0, 1e-8);
  }
}

TEST(Action, CircularOrbitIsTheBottom) {
  for (double L : {0.1, 0.75, 2.0}) {
    const auto c = circular_orbit(L);
    EXPECT_NEAR(effective_radial_hamiltonian(central, c.radius, 0.0, L), c.energy, 1e-14);
    EXPECT_NEAR(max_angular_momentum(c.energy) / L, 1.0, 1e-12);
    EXPECT_THROW(radial_turning_points(c.energy - 1e-6, L), Error);
    EXPECT_LT(radial_action(central, c.energy + 1e-8, L), 1e-6);
  }
}

TEST(Action, RadialKineticMomentMatchesVirialAtCircle) {
  // on the circular orbit |p|^2 = L^2 / r^2
  const double L = 0.75;
  const auto c = circular_orbit(L);
  const double near = radial_kinetic_moment(central, c.energy + 1e-10, L);
  EXPECT_NEAR(near, L * L / (c.radius * c.radius), 1e-4);
}

TEST(Action, LineActionAndPeriod) {
  for (double h : {0.2, 1.0, 3.0}) {
    const double d = 1e-5;
    EXPECT_NEAR((line_action(h + d) - line_action(h - d)) / (2 * d) / line_period(h), 1.0, 1e-8);
  }
  // small energy: V ~ x^2, so T -> pi sqrt(2)
  EXPECT_NEAR(line_period(1e-9), std::numbers::pi * std::sqrt(2.0), 1e-6);
}

TEST(Action, HarmonicAngleMapIdentity) {
  for (double a : {0.5, 2 * std::numbers::pi, 30.0}) {
    EXPECT_NEAR(averaged_S(harmonic_action_angle, a), a, 1e-10 * a);
    // the map lands on {H = a / 2 pi}
    const auto pt = harmonic_action_angle(0.37, a);
    EXPECT_NEAR(0.5 * (pt.q * pt.q + pt.p * pt.p), a / (2 * std::numbers::pi), 1e-12);
  }
}
