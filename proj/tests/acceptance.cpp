// Acceptance runs at desk scale. One PASS/FAIL line per criterion; every
// threshold is a named constant below. Exit status is nonzero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "experiments.hpp"

using namespace nhergo;
using namespace nhergo::tools;

namespace {

// criterion 1
constexpr double kGDriftMax = 1e-4;
constexpr double kRatioLo = 3.5;
constexpr double kRatioHi = 4.5;
// criterion 2
constexpr double kG1DriftQ100 = 0.05;
constexpr double kG1DriftQ1 = 0.35;
constexpr std::size_t kG1Stride = 10;
// criterion 3
constexpr double kE1DriftQ100 = 0.02;
constexpr double kE2DriftQ100 = 0.01;
constexpr double kE2DriftQ1 = 0.10;
constexpr double kE2IdentityMax = 1e-12;
// criterion 4
constexpr double kLineFloor = 0.9;
constexpr double kLineMassBelowOneMin = 0.5;
// criterion 5
constexpr double kPendulumFloor = -0.5;
constexpr double kTVMin = 0.3;
constexpr std::size_t kHistogramBins = 40;
// criterion 6
constexpr double kMin1 = 7.6;
constexpr double kMin1Tol = 0.2;
constexpr double kMin2 = 16.17;
constexpr double kMin2Tol = 0.3;
// criterion 7
constexpr double kT1Lo = 7.3;
constexpr double kT1Hi = 9.5;
constexpr double kFirstReturnRel = 1e-3;
// criterion 8
constexpr std::size_t kCrossings = 500;
constexpr double kTubeMax = 0.05;
constexpr double kActionFloor = 5.5;
// criterion 9
constexpr double kHarmonicActionRel = 1e-8;
constexpr double kHarmonicK0Rel = 1e-3;
constexpr double kHarmonicK0Horizon = 1e4;
constexpr double kHarmonicMinimizerRel = 1e-6;
constexpr double kHarmonicT1Rel = 0.01;
constexpr double kHarmonicSAbs = 1e-10;
// criterion 10
constexpr double kK0CrossRel = 1e-3;
// criterion 11
constexpr double kDivMax = 1e-6;
constexpr double kControlMin = 1e-4;
constexpr int kControlCount = 95;
constexpr int kDivPoints = 100;
constexpr double kPerturbedBetaFactor = 2.0;
// criterion 12
constexpr double kAveragedDriftMax = 1e-6;
constexpr double kAveragedDt = 1e-4;
constexpr double kAveragedHorizon = 1e2;
constexpr double kRatioDriftMax = 1e-12;  // a_i/a_N along the (a, alpha) form

constexpr double desk_dt = 1e-3;

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// max |v/v0 - 1| without storing the series.
class RunningDrift {
 public:
  void push(double v) {
    if (!started_) {
      v0_ = v;
      started_ = true;
    }
    worst_ = std::max(worst_, std::abs(v / v0_ - 1.0));
  }
  double value() const { return started_ ? worst_ : NAN; }

 private:
  bool started_ = false;
  double v0_ = 0.0;
  double worst_ = 0.0;
};

// Everything measured along one central-force run.
struct CentralRun {
  double G_drift = NAN;
  double G1_drift = NAN;
  double E1_drift = NAN;
  double E2_drift = NAN;
  double identity = 0.0;
  double H_min = INFINITY;
};

CentralRun central_run(double Q, double dt, const ThermostatState& init, const TauMap* tau, bool with_G) {
  const ModelSpec m(ModelKind::centralforce2d, 1.0, Q);
  RunningDrift G;
  RunningDrift G1;
  RunningDrift E1;
  RunningDrift E2;
  CentralRun out;
  std::size_t i = 0;
  integrate_nose_hoover(
      m, init, {dt, desk_drift_horizon, 1},
      [&](double, const ThermostatState& s) {
        out.H_min = std::min(out.H_min, hamiltonian(m, s.phase));
        if (with_G) {
          G.push(angular_invariant(m, s));
          if (i % kG1Stride == 0) G1.push(g1(m, s.phase));
        }
        ++i;
        if (!tau) return;
        const auto e = e1_e2(m, s, *tau);
        E2.push(e.E2);
        const double L = angular_momentum(s.phase);
        if (L != 0.0) {
          E1.push(e.E1);
          const double E = averaged_E(L, hamiltonian(m, s.phase), s.xi / std::sqrt(Q), m.beta());
          out.identity = std::max(out.identity, std::abs(e.E2 - (E - 2.0 / m.beta() * std::log(std::abs(e.E1)))));
        }
      },
      false);
  out.G_drift = G.value();
  out.G1_drift = G1.value();
  out.E1_drift = E1.value();
  out.E2_drift = E2.value();
  return out;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Mass of the L = 0 energy density below h_cut, relative to [0, h_hi].
double line_mass_below(double h_cut, double beta, double h_hi) {
  auto rho = [&](double h) { return line_gibbs_density(h, beta); };
  const double below = integrate_gauss_legendre(rho, 0.0, h_cut, 64);
  double total = below;
  for (double lo = h_cut; lo < h_hi; lo += 1.0) total += integrate_gauss_legendre(rho, lo, lo + 1.0, 64);
  return below / total;
}

}  // namespace


int main() {
  const Stopwatch total;
  auto note = [&](const char* what) {
    std::printf("[%7.1f s] %s\n", total.seconds(), what);
    std::fflush(stdout);
  };

  note("central-force k0 table");
  const auto cf_table = central_force_table(1.0);
  const TauMap tau(cf_table.k0_app);

  // Criteria 1-4: central force, beta = 1.
  note("central-force runs");
  {
    const auto fig1 = central_force_start();
    const auto q100 = central_run(100.0, desk_dt, fig1, &tau, true);
    const auto q100h = central_run(100.0, desk_dt / 2, fig1, nullptr, true);
    const auto q1 = central_run(1.0, desk_dt, fig1, &tau, true);
    const auto q1h = central_run(1.0, desk_dt / 2, fig1, nullptr, true);
    const double r100 = q100.G_drift / q100h.G_drift;
    const double r1 = q1.G_drift / q1h.G_drift;
    auto in_band = [](double r) { return r >= kRatioLo && r <= kRatioHi; };
    report(1, q100.G_drift < kGDriftMax && q1.G_drift < kGDriftMax && in_band(r100) && in_band(r1),
           "G drift Q=100 " + fmt(q100.G_drift) + ", Q=1 " + fmt(q1.G_drift) + " (< " + fmt(kGDriftMax) +
               "); drift(dt)/drift(dt/2) " + fmt(r100) + ", " + fmt(r1) + " (in [" + fmt(kRatioLo) + ", " +
               fmt(kRatioHi) + "])");
    report(2, q100.G1_drift < kG1DriftQ100 && q1.G1_drift < kG1DriftQ1,
           "G1 drift Q=100 " + fmt(q100.G1_drift) + " (< " + fmt(kG1DriftQ100) + "), Q=1 " + fmt(q1.G1_drift) +
               " (< " + fmt(kG1DriftQ1) + ")");

    const auto line = central_force_line_start();
    const auto l100 = central_run(100.0, desk_dt, line, &tau, false);
    const auto l1 = central_run(1.0, desk_dt, line, &tau, false);
    const double identity = std::max({q100.identity, q1.identity, l100.identity, l1.identity});
    report(3,
           q100.E1_drift < kE1DriftQ100 && l100.E2_drift < kE2DriftQ100 && l1.E2_drift < kE2DriftQ1 &&
               identity < kE2IdentityMax,
           "E1 drift Q=100 " + fmt(q100.E1_drift) + " (< " + fmt(kE1DriftQ100) + "); E2 drift on L=0 run Q=100 " +
               fmt(l100.E2_drift) + " (< " + fmt(kE2DriftQ100) + "), Q=1 " + fmt(l1.E2_drift) + " (< " +
               fmt(kE2DriftQ1) + "); identity residual " + fmt(identity) + " (< " + fmt(kE2IdentityMax) + ")");

    const double mass = line_mass_below(1.0, 1.0, 40.0);
    report(4, l1.H_min >= kLineFloor && mass > kLineMassBelowOneMin,
           "L=0 run Q=1 min H " + fmt(l1.H_min) + " (>= " + fmt(kLineFloor) + "); reference mass below h=1 " +
               fmt(mass) + " (> " + fmt(kLineMassBelowOneMin) + ")");
  }

  note("pendulum action table");
  const auto table = pendulum_table(1.0);
  const ModelSpec pendulum(ModelKind::pendulum1d, 1.0, 1.0);

  note("pendulum energy floor");
  {
    std::vector<double> energies;
    energies.reserve(static_cast<std::size_t>(desk_floor_horizon / desk_dt) + 1);
    integrate_nose_hoover(
        pendulum, pendulum_start(), {desk_dt, desk_floor_horizon, 1},
        [&](double, const ThermostatState& s) { energies.push_back(hamiltonian(pendulum, s.phase)); }, false);
    const double h_min = *std::min_element(energies.begin(), energies.end());
    const auto hist = energy_histogram(energies, kHistogramBins, table.h_min(), table.h_max(),
                                       [&](double h) { return gibbs_energy_density(h, table, 1.0); });
    report(5, h_min >= kPendulumFloor && hist.total_variation > kTVMin,
           "min H " + fmt(h_min) + " (>= " + fmt(kPendulumFloor) + "); histogram TV " + fmt(hist.total_variation) +
               " (> " + fmt(kTVMin) + ")");
  }

  {
    const auto mins = find_W_minimizers(table, 1.0);
    std::string found;
    for (double a : mins) found += (found.empty() ? "" : ", ") + fmt(a);
    const bool ok = mins.size() == 2 && std::abs(mins[0] - kMin1) <= kMin1Tol && std::abs(mins[1] - kMin2) <= kMin2Tol;
    report(6, ok, "W minimizers {" + found + "} (two, " + fmt(kMin1) + " +- " + fmt(kMin1Tol) + " and " +
                      fmt(kMin2) + " +- " + fmt(kMin2Tol) + ")");
  }

  const auto well = pendulum_well(table, 1.0);

  note("period function");
  {
    const auto grid = t1_grid(well);
    bool increasing = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (i > 0 && !(grid[i].T1 > grid[i - 1].T1)) increasing = false;
      const double fr = period_T1_first_return(grid[i].G, well);
      worst = std::max(worst, std::abs(fr / grid[i].T1 - 1.0));
    }
    const double lo = grid.front().T1;
    const double hi = grid.back().T1;
    report(7, grid.size() == 50 && increasing && lo <= kT1Lo && hi >= kT1Hi && worst < kFirstReturnRel,
           std::to_string(grid.size()) + " nodes around a0 = " + fmt(well.a0()) + ", strictly increasing: " +
               (increasing ? "yes" : "no") + ", T1 in [" + fmt(lo) + ", " + fmt(hi) + "] (covers [" + fmt(kT1Lo) +
               ", " + fmt(kT1Hi) + "]); first-return rel. diff " + fmt(worst) + " (< " + fmt(kFirstReturnRel) + ")");
  }

  note("return maps");
  {
    PoincareOptions opt;
    opt.dt = desk_dt;
    opt.h_min = table.h_min();
    opt.h_max = table.h_max();
    double tube = 0.0;
    double a_min = INFINITY;
    std::size_t n_big = 0;
    std::size_t n_small = 0;
    for (double a : poincare_actions()) {
      const ModelSpec big(ModelKind::pendulum1d, 1.0, 1e5);
      const auto r = poincare_map(big, pendulum_start_for_action(big, a), kCrossings, opt);
      tube = std::max(tube, match_to_averaged(r.crossings, well));
      n_big += r.crossings.size();
      const auto s = poincare_map(pendulum, pendulum_start_for_action(pendulum, a), kCrossings, opt);
      for (const auto& c : s.crossings) a_min = std::min(a_min, c.a);
      n_small += s.crossings.size();
    }
    report(8, n_big == 3 * kCrossings && n_small == 3 * kCrossings && tube < kTubeMax && a_min >= kActionFloor,
           "Q=1e5 tube thickness " + fmt(tube) + " of the G window (< " + fmt(kTubeMax) + "); Q=1 min a " +
               fmt(a_min) + " (>= " + fmt(kActionFloor) + ")");
  }

  note("harmonic oracles");
  {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    bool ok = true;
    std::string msg;
    for (double beta : {1.0, 2.0}) {
      const ModelSpec ho(ModelKind::harmonic1d, beta, 1.0);
      double a_err = 0.0;
      for (double h : {0.05, 0.5, 1.0, 2.0, 5.0}) a_err = std::max(a_err, std::abs(action_1d(ho, h) / (two_pi * h) - 1.0));
      double k_err = 0.0;
      for (double h : {0.1, 1.0, 3.0}) {
        k_err = std::max(k_err, std::abs(k0_time_average(ho, h, {kHarmonicK0Horizon, desk_dt, 1e-3}) / h - 1.0));
      }
      const auto t = build_action_table(ho, uniform_grid(0.05, 5.0, 25));
      const auto mins = find_W_minimizers(t, beta);
      const double a0 = two_pi / beta;
      const double min_err = mins.size() == 1 ? std::abs(mins[0] / a0 - 1.0) : INFINITY;
      const AveragedWell<ThermostatPotential> w(ThermostatPotential(t, beta), mins.empty() ? a0 : mins[0]);
      const double T1 = period_T1(w.G0() + 1e-6, w);
      const double T1_err = std::abs(T1 / (two_pi * std::sqrt(beta)) - 1.0);
      const double S_err = std::abs(averaged_S(harmonic_action_angle, a0) - a0);
      ok = ok && a_err < kHarmonicActionRel && k_err < kHarmonicK0Rel && min_err < kHarmonicMinimizerRel &&
           T1_err < kHarmonicT1Rel && S_err < kHarmonicSAbs;
      msg += "beta=" + fmt(beta) + ": a " + fmt(a_err) + ", k0 " + fmt(k_err) + ", a0 " + fmt(min_err) + " (" +
             std::to_string(mins.size()) + " minimizer), T1 " + fmt(T1_err) + ", S " + fmt(S_err) + "; ";
    }
    report(9, ok,
           msg + "bounds " + fmt(kHarmonicActionRel) + ", " + fmt(kHarmonicK0Rel) + ", " + fmt(kHarmonicMinimizerRel) +
               ", " + fmt(kHarmonicT1Rel) + ", " + fmt(kHarmonicSAbs));
  }

  {
    double worst = 0.0;
    for (const auto& e : table.entries()) {
      const double quad = e.a / (e.components * e.period);
      worst = std::max(worst, std::abs(e.k0 / quad - 1.0));
    }
    report(10, worst < kK0CrossRel,
           std::to_string(table.size()) + " nodes, worst |k0 / (a/T) - 1| " + fmt(worst) + " (< " + fmt(kK0CrossRel) +
               ")");
  }

  note("invariant measure");
  {
    std::mt19937_64 rng(20240611);
    double worst = 0.0;
    int worst_control = kDivPoints;
    for (auto k : {ModelKind::harmonic1d, ModelKind::pendulum1d, ModelKind::centralforce2d}) {
      const ModelSpec m(k, 1.0, 1.0);
      int control = 0;
      for (int i = 0; i < kDivPoints; ++i) {
        std::vector<double> z(2 * m.dim() + 1);
        for (double& v : z) v = uniform(rng, -1.0, 1.0);
        const auto s = unflatten(z);
        worst = std::max(worst, std::abs(measure_divergence(m, s)));
        control += std::abs(measure_divergence(m, s, kPerturbedBetaFactor * m.beta())) > kControlMin;
      }
      worst_control = std::min(worst_control, control);
    }
    report(11, worst < kDivMax && worst_control >= kControlCount,
           "max |div| " + fmt(worst) + " (< " + fmt(kDivMax) + "); perturbed control above " + fmt(kControlMin) +
               " at >= " + std::to_string(worst_control) + " of " + std::to_string(kDivPoints) + " points (>= " +
               std::to_string(kControlCount) + ")");
  }

  note("averaged systems");
  {
    const auto n = static_cast<std::size_t>(std::llround(kAveragedHorizon / kAveragedDt));
    AveragedState2D s2{0.75, 2.5625, 0.0};
    auto E = [](const AveragedState2D& x) { return averaged_E(x.L, x.H, x.alpha, 1.0); };
    const double E0 = E(s2);
    double E_drift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s2 = averaged_step_2d(s2, cf_table.k0_app, 1.0, kAveragedDt);
      E_drift = std::max(E_drift, std::abs(E(s2) - E0));
    }

    // (sigma, alpha) from a = 10.72 at rest; Stormer-Verlet
    AveragedState1D s1{well.sigma(10.72), 0.0};
    auto slope = [&](double sg) { return well.dU(sg); };
    const double G0 = well.G(s1);
    double G_drift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s1 = stormer_verlet_step(slope, s1, kAveragedDt);
      G_drift = std::max(G_drift, std::abs(well.G(s1) - G0));
    }

    // N = 2 (a, alpha) form on a ray: k depends on both actions
    const auto& pot = well.potential();
    auto k2 = [&](std::span<const double> a) { return pot.k(std::sqrt(a[0] * a[1])); };
    ActionAlphaState g{{0.8 * 10.72, 1.25 * 10.72}, 0.0};
    const double a_ref = well.a0();
    // k2 has kinks where sqrt(a1 a2) s / a2 hits a table knot
    const double ray_scale = g.a[1] / std::sqrt(g.a[0] * g.a[1]);
    std::vector<double> breaks;
    for (double knot : pot.knots()) breaks.push_back(knot * ray_scale);
    const auto I0 = averaged_first_integrals(std::span<const double>(g.a), g.alpha, k2, a_ref, breaks);
    double ratio_drift = 0.0;
    double GN_drift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      g = rk4_step([&](const ActionAlphaState& x) { return goodform_rhs(x, k2); }, g, kAveragedDt);
      if (i % 100 == 99) {
        const auto I = averaged_first_integrals(std::span<const double>(g.a), g.alpha, k2, a_ref, breaks);
        ratio_drift = std::max(ratio_drift, std::abs(I[0] - I0[0]));
        GN_drift = std::max(GN_drift, std::abs(I[1] - I0[1]));
      }
    }
    report(12,
           E_drift < kAveragedDriftMax && G_drift < kAveragedDriftMax && GN_drift < kAveragedDriftMax &&
               ratio_drift < kRatioDriftMax,
           "dt=" + fmt(kAveragedDt) + ", t=" + fmt(kAveragedHorizon) + ": E drift " + fmt(E_drift) + ", G drift " +
               fmt(G_drift) + ", G_N drift " + fmt(GN_drift) + " (< " + fmt(kAveragedDriftMax) + "); a1/a2 drift " +
               fmt(ratio_drift) + " (< " + fmt(kRatioDriftMax) + ")");
  }

  note("done");
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
