#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nhergo/averaged.hpp"

using namespace nhergo;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

AveragedWell<AnalyticPotential> harmonic_well(double beta) {
  AnalyticPotential pot([beta](double a) { return a / two_pi - 1.0 / beta; }, 0.05, 60.0);
  return AveragedWell<AnalyticPotential>(std::move(pot), two_pi / beta);
}

// k(a) = ln(a/a0) gives U(sigma) = sigma^2/2 exactly: an isochronous well
// with T1 = 2 pi.
AveragedWell<AnalyticPotential> quadratic_well() {
  const double a0 = 3.0;
  AnalyticPotential pot([a0](double a) { return std::log(a / a0); }, a0 * std::exp(-3.0), a0 * std::exp(3.0));
  return AveragedWell<AnalyticPotential>(std::move(pot), a0);
}

}  // namespace

TEST(Averaged, HarmonicSmallOscillationPeriod) {
  for (double beta : {1.0, 2.0}) {
    const auto well = harmonic_well(beta);
    const double T = period_T1(well.G0() + 1e-8, well);
    EXPECT_NEAR(T / (two_pi * std::sqrt(beta)), 1.0, 1e-3);
  }
}

TEST(Averaged, QuadraticWellIsIsochronous) {
  const auto well = quadratic_well();
  EXPECT_NEAR(well.G0(), well.potential().W(3.0), 0.0);
  for (double dG : {1e-4, 0.1, 1.0, 4.0}) {
    const auto w = well_width_and_isochrony(well.G0() + dG, well);
    EXPECT_NEAR(w.T1, two_pi, 1e-9) << dG;
    EXPECT_NEAR(w.width, 2.0 * std::sqrt(2.0 * dG), 1e-9);
    EXPECT_NEAR(w.residual, 0.0, 1e-8);
  }
}

TEST(Averaged, TurningPointsSolveTheLevelEquation) {
  const auto well = harmonic_well(1.0);
  const double G = well.G0() + 0.7;
  const auto tp = well.turning_points(G);
  EXPECT_LT(tp.sigma1, 0.0);
  EXPECT_GT(tp.sigma2, 0.0);
  EXPECT_NEAR(well.U(tp.sigma1), G, 1e-12);
  EXPECT_NEAR(well.U(tp.sigma2), G, 1e-12);
  EXPECT_THROW(well.turning_points(well.G0()), Error);
  EXPECT_THROW(well.turning_points(well.G0() + 100.0), Error);
}

TEST(Averaged, QuadratureAgreesWithFirstReturn) {
  const auto well = harmonic_well(1.0);
  for (double dG : {0.05, 0.5, 1.5}) {
    const double G = well.G0() + dG;
    EXPECT_NEAR(period_T1_first_return(G, well) / period_T1(G, well), 1.0, 1e-6) << dG;
  }
}

TEST(Averaged, PeriodConvergesUnderNodeDoubling) {
  const auto well = harmonic_well(1.0);
  const double G = well.G0() + 1.0;
  EXPECT_NEAR(period_T1(G, well, 64), period_T1(G, well, 256), 1e-10);
}

TEST(Averaged, WindowAndGrid) {
  const auto well = harmonic_well(1.0);
  const auto win = well.g_window();
  const auto& pot = well.potential();
  EXPECT_DOUBLE_EQ(win.G_top, std::min(pot.W(pot.a_min()), pot.W(pot.a_max())));
  const auto grid = t1_grid(well, {10, 1e-3, 1e-3, 128});
  ASSERT_EQ(grid.size(), 10u);
  EXPECT_NEAR(grid.front().G, win.G0 + 1e-3, 1e-14);
  EXPECT_NEAR(grid.back().G, win.G_top - 1e-3, 1e-12);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_GT(grid[i].T1, grid[i - 1].T1);
  EXPECT_THROW(t1_grid(well, {10, 1.0, 1e6, 64}), Error);
}

TEST(Averaged, OrbitKeepsGNearlyConstant) {
  const auto well = harmonic_well(1.0);
  const auto orbit = averaged_orbit(well, {well.sigma(10.0), 0.0}, {1e-3, 20.0, 100});
  double worst = 0.0;
  for (const auto& s : orbit) worst = std::max(worst, std::abs(s.G - orbit.front().G));
  EXPECT_LT(worst, 1e-3);
  EXPECT_NEAR(orbit.front().a, 10.0, 1e-12);
}

TEST(Averaged, TwoDimensionalSystemConservesE) {
  const PiecewiseLinear k0app({0.01, 1.0, 3.0, 10.0}, {0.012, 1.1, 3.4, 11.0});
  const double beta = 1.0;
  AveragedState2D s{0.75, 2.0, 0.3};
  auto E = [&](const AveragedState2D& x) { return 0.5 * x.alpha * x.alpha + x.H - 2.0 / beta * std::log(x.L); };
  const double E0 = E(s);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    s = averaged_step_2d(s, k0app, beta, 1e-3);
    worst = std::max(worst, std::abs(E(s) - E0));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Averaged, GoodformRatiosAndRayIntegral) {
  auto k = [](std::span<const double> a) { return 0.3 * a[0] + 0.2 * a[1] - 1.0; };
  ActionAlphaState s{{2.0, 4.0}, 0.1};
  const auto G0 = averaged_first_integrals(std::span<const double>(s.a), s.alpha, k, 1.0);
  double worst_ratio = 0.0;
  double worst_G = 0.0;
  for (int i = 0; i < 5000; ++i) {
    s = rk4_step([&](const ActionAlphaState& x) { return goodform_rhs(x, k); }, s, 1e-3);
    const auto G = averaged_first_integrals(std::span<const double>(s.a), s.alpha, k, 1.0);
    worst_ratio = std::max(worst_ratio, std::abs(G[0] - G0[0]));
    worst_G = std::max(worst_G, std::abs(G[1] - G0[1]));
  }
  EXPECT_LT(worst_ratio, 1e-14);
  EXPECT_LT(worst_G, 1e-10);
  EXPECT_THROW(averaged_first_integrals(std::vector<double>{}, 0.0, k, 1.0), Error);
}

TEST(Averaged, RayIntegralResolvesKinks) {
  // integral from 1 to 4 of |s - 2| / s ds = 1
  auto k = [](std::span<const double> a) { return std::abs(a[0] - 2.0); };
  const std::vector<double> a{4.0};
  const std::vector<double> kink{2.0};
  EXPECT_NEAR(averaged_first_integrals(a, 0.0, k, 1.0, kink)[0], 1.0, 1e-14);
  EXPECT_GT(std::abs(averaged_first_integrals(a, 0.0, k, 1.0)[0] - 1.0), 1e-8);
  // reversed limits change sign
  const std::vector<double> b{1.0};
  EXPECT_NEAR(averaged_first_integrals(b, 0.0, k, 4.0, kink)[0], -1.0, 1e-14);
  EXPECT_NEAR(averaged_first_integrals(a, 2.0, k, 4.0)[0], 2.0, 0.0);
}
