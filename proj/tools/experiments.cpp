#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>

namespace nhergo::tools {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Shared setups

ThermostatState central_force_start() { return {make_phase(0.0, 0.5, -1.5, 1.5), 0.0}; }
ThermostatState central_force_line_start() { return {make_phase(-0.5, 0.5, -1.0, 1.0), 0.0}; }
ThermostatState pendulum_start() { return {make_phase(0.0, 1.5), 0.0}; }

ThermostatState pendulum_start_for_action(const ModelSpec& model, double a) {
  detail::require(model.kind() == ModelKind::pendulum1d, ErrorCategory::invalid_argument, "pendulum model expected");
  const double h_lo = -1.0 + 1e-12;
  const double h_hi = pendulum_separatrix_energy - separatrix_band;
  if (!(a > 0.0 && a < action_1d(model, h_hi))) {
    detail::fail(ErrorCategory::out_of_range, "initial action must lie in the oscillation range");
  }
  const double h = bracketed_root([&](double x) { return action_1d(model, x) - a; }, h_lo, h_hi);
  return {make_phase(0.0, std::sqrt(2.0 * (h + 1.0))), 0.0};
}

std::vector<double> poincare_actions() { return {7.72, 10.72, 13.6}; }

ThermostatState state_from_numbers(const ModelSpec& model, const std::vector<double>& v) {
  const std::size_t want = 2 * model.dim() + 1;
  if (v.size() != want) {
    detail::fail(ErrorCategory::invalid_argument, "init needs " + std::to_string(want) + " numbers (q..., p..., xi)");
  }
  return unflatten(v);
}

ActionTable pendulum_table(double beta, const TimeAverageOptions& opt) {
  const auto grid = pendulum_default_grid();
  return build_action_table(ModelSpec(ModelKind::pendulum1d, beta, 1.0), grid, opt);
}

std::vector<double> central_force_energy_grid() {
  std::vector<double> H;
  constexpr int n = 10;
  for (int i = 0; i < n; ++i) H.push_back(0.01 * std::pow(3.0 / 0.01, static_cast<double>(i) / (n - 1)));
  H.back() = 3.0;
  return H;
}

CentralForceTable central_force_table(double beta, const TimeAverageOptions& opt) {
  const auto grid = central_force_energy_grid();
  return build_central_force_table(ModelSpec(ModelKind::centralforce2d, beta, 1.0), grid, 10, opt);
}

AveragedWell<ThermostatPotential> pendulum_well(const ActionTable& table, double beta) {
  ThermostatPotential pot(table, beta);
  const auto mins = pot.minimizers();
  if (mins.empty()) detail::fail(ErrorCategory::out_of_range, "W has no minimizer on the table");
  return AveragedWell<ThermostatPotential>(std::move(pot), mins.front());
}

ModelSpec model_from(const Overrides& o, ModelKind fallback_kind, double fallback_Q) {
  const ModelKind kind = o.model ? parse_model_kind(*o.model) : fallback_kind;
  return ModelSpec(kind, o.beta.value_or(1.0), o.Q.value_or(fallback_Q));
}

// ---------------------------------------------------------------------------
// Files

fs::path write_csv_file(const fs::path& dir, const std::string& name, const CsvTable& table) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) detail::fail(ErrorCategory::io, "cannot write " + path.string());
  write_csv(out, table);
  if (!out) detail::fail(ErrorCategory::io, "write failed for " + path.string());
  return path;
}

void write_manifest(const fs::path& dir, const std::vector<std::pair<std::string, std::string>>& entries) {
  fs::create_directories(dir);
  std::ofstream out(dir / "manifest.txt", std::ios::binary);
  if (!out) detail::fail(ErrorCategory::io, "cannot write manifest in " + dir.string());
  for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
}

CsvTable read_csv_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) detail::fail(ErrorCategory::io, "cannot read " + path.string());
  return read_csv(in);
}

fs::path write_gnuplot_script(const fs::path& dir, const ExperimentResult& result) {
  const fs::path path = dir / "plot.gp";
  std::ofstream out(path, std::ios::binary);
  if (!out) detail::fail(ErrorCategory::io, "cannot write " + path.string());
  out << "set datafile separator ','\nset key autotitle columnhead\n";
  for (const auto& f : result.files) {
    if (f.extension() != ".csv") continue;
    out << "set title '" << f.filename().string() << "'\n";
    out << "plot '" << f.filename().string() << "' using 1:2 with lines\npause -1\n";
  }
  return path;
}

namespace {

std::string numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

// Collects files and manifest entries for one experiment.
class Recorder {
 public:
  explicit Recorder(const ExperimentConfig& cfg) : cfg_(cfg) { put("experiment", cfg.id); }

  void put(const std::string& k, const std::string& v) { result_.manifest.emplace_back(k, v); }
  void put(const std::string& k, double v) { put(k, format_double(v)); }

  void model(const ModelSpec& m) {
    put("model", std::string(to_string(m.kind())));
    put("beta", m.beta());
    put("Q", m.Q());
  }

  void integrator(const IntegratorConfig& c) {
    put("dt", c.dt);
    put("t_final", c.t_final);
    put("sample_stride", static_cast<double>(c.sample_stride));
  }

  void init(const ThermostatState& s) { put("init", numbers(flatten(s))); }

  void csv(const std::string& name, const CsvTable& t) {
    result_.files.push_back(write_csv_file(cfg_.out_dir, name, t));
    put("file", name);
  }

  ExperimentResult finish() {
    write_manifest(cfg_.out_dir, result_.manifest);
    result_.files.push_back(cfg_.out_dir / "manifest.txt");
    return result_;
  }

  ExperimentResult& result() { return result_; }

 private:
  const ExperimentConfig& cfg_;
  ExperimentResult result_;
};

double drift_horizon(const ExperimentConfig& cfg) {
  return cfg.overrides.t_final.value_or(cfg.long_horizons ? long_drift_horizon : desk_drift_horizon);
}

double floor_horizon(const ExperimentConfig& cfg) {
  return cfg.overrides.t_final.value_or(cfg.long_horizons ? long_floor_horizon : desk_floor_horizon);
}

// About 5000 rows per long series.
IntegratorConfig series_config(double dt, double t_final) {
  IntegratorConfig c{dt, t_final, 1};
  c.sample_stride = std::max<std::size_t>(1, c.steps() / 5000);
  return c;
}

ThermostatState start_or(const ExperimentConfig& cfg, const ModelSpec& model, const ThermostatState& fallback) {
  return cfg.overrides.init ? state_from_numbers(model, *cfg.overrides.init) : fallback;
}

template <class F>
auto stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const DivergenceError& e) {
    throw DivergenceError(e.time(), "stage '" + name + "': " + e.what());
  } catch (const Error& e) {
    throw Error(e.category(), "stage '" + name + "': " + e.what());
  }
}

// fig1 / fig2: G and G1 relative to their initial values.
ExperimentResult exp_g_g1(const ExperimentConfig& cfg, double default_Q) {
  Recorder rec(cfg);
  const ModelSpec model = model_from(cfg.overrides, ModelKind::centralforce2d, default_Q);
  detail::require(model.kind() == ModelKind::centralforce2d, ErrorCategory::invalid_argument,
                  "this experiment needs the central-force model");
  const ThermostatState init = start_or(cfg, model, central_force_start());
  const IntegratorConfig ic = series_config(cfg.overrides.dt.value_or(1e-3), drift_horizon(cfg));
  rec.model(model);
  rec.integrator(ic);
  rec.init(init);
  CsvTable t{{"t", "G_rel", "G1_rel"}, {}};
  double G0 = 0.0;
  double G10 = 0.0;
  InvariantReport G;
  InvariantReport G1;
  std::size_t i = 0;
  stage("integrate", [&] {
    integrate_nose_hoover(
        model, init, ic,
        [&](double time, const ThermostatState& s) {
          const double g = angular_invariant(model, s);
          G.push(time, g);
          if (i++ % ic.sample_stride != 0) return;
          const double g1 = nhergo::g1(model, s.phase);
          if (time == 0.0) {
            G0 = g;
            G10 = g1;
          }
          G1.push(time, g1);
          t.add_row({time, g / G0, g1 / G10});
        },
        false);
    return 0;
  });
  rec.csv("G_G1.csv", t);
  rec.put("G_relative_drift", G.relative_drift());
  rec.put("G1_relative_drift", G1.relative_drift());
  return rec.finish();
}

ExperimentResult exp_k0_table(const ExperimentConfig& cfg) {
  Recorder rec(cfg);
  const double beta = cfg.overrides.beta.value_or(1.0);
  rec.put("model", "centralforce2d");
  rec.put("beta", beta);
  const auto table = stage("k0 table", [&] { return central_force_table(beta); });
  CsvTable samples{{"H", "L", "k0", "a1"}, {}};
  CsvTable app{{"H", "k0_app", "spread"}, {}};
  double worst = 0.0;
  for (std::size_t i = 0; i < table.energies.size(); ++i) {
    for (const auto& s : table.samples[i]) samples.add_row({s.H, s.L, s.k0, s.a1});
    const double k0 = table.k0_app.y()[i];
    app.add_row({table.energies[i], k0, table.spread(i)});
    worst = std::max(worst, table.spread(i) / k0);
  }
  rec.csv("k0_samples.csv", samples);
  rec.csv("k0_app.csv", app);
  rec.put("max_relative_spread", worst);
  return rec.finish();
}

// fig4: E1 for Q = 100 and Q = 1 from the first central-force start.
ExperimentResult exp_e1(const ExperimentConfig& cfg) {
  Recorder rec(cfg);
  const double beta = cfg.overrides.beta.value_or(1.0);
  const auto table = stage("k0 table", [&] { return central_force_table(beta); });
  const TauMap tau(table.k0_app);
  const std::vector<double> Qs = cfg.overrides.Q ? std::vector<double>{*cfg.overrides.Q} : std::vector<double>{100.0, 1.0};
  for (double Q : Qs) {
    const ModelSpec model(ModelKind::centralforce2d, beta, Q);
    const ThermostatState init = start_or(cfg, model, central_force_start());
    const IntegratorConfig ic = series_config(cfg.overrides.dt.value_or(1e-3), drift_horizon(cfg));
    rec.model(model);
    rec.integrator(ic);
    rec.init(init);
    CsvTable t{{"t", "E1_rel"}, {}};
    InvariantReport E1;
    std::size_t i = 0;
    stage("integrate Q=" + format_double(Q), [&] {
      integrate_nose_hoover(
          model, init, ic,
          [&](double time, const ThermostatState& s) {
            E1.push(time, e1(model, s, tau));
            if (i++ % ic.sample_stride == 0) t.add_row({time, E1.values.back() / E1.values.front()});
          },
          false);
      return 0;
    });
    rec.csv("E1_Q" + format_double(Q) + ".csv", t);
    rec.put("E1_relative_drift_Q" + format_double(Q), E1.relative_drift());
  }
  return rec.finish();
}

// fig5: E2 for Q = 100 and Q = 1 from the L = 0 start.
ExperimentResult exp_e2(const ExperimentConfig& cfg) {
  Recorder rec(cfg);
  const double beta = cfg.overrides.beta.value_or(1.0);
  const auto table = stage("k0 table", [&] { return central_force_table(beta); });
  const TauMap tau(table.k0_app);
  rec.put("tau_reference_H", table.energies.front());
  const std::vector<double> Qs = cfg.overrides.Q ? std::vector<double>{*cfg.overrides.Q} : std::vector<double>{100.0, 1.0};
  for (double Q : Qs) {
    const ModelSpec model(ModelKind::centralforce2d, beta, Q);
    const ThermostatState init = start_or(cfg, model, central_force_line_start());
    const IntegratorConfig ic = series_config(cfg.overrides.dt.value_or(1e-3), drift_horizon(cfg));
    rec.model(model);
    rec.integrator(ic);
    rec.init(init);
    CsvTable t{{"t", "E2_rel"}, {}};
    InvariantReport E2;
    std::size_t i = 0;
    stage("integrate Q=" + format_double(Q), [&] {
      integrate_nose_hoover(
          model, init, ic,
          [&](double time, const ThermostatState& s) {
            E2.push(time, e1_e2(model, s, tau).E2);
            if (i++ % ic.sample_stride == 0) t.add_row({time, E2.values.back() / E2.values.front()});
          },
          false);
      return 0;
    });
    rec.csv("E2_Q" + format_double(Q) + ".csv", t);
    rec.put("E2_relative_drift_Q" + format_double(Q), E2.relative_drift());
  }
  return rec.finish();
}

// Energy along a trajectory with the running minimum.
CsvTable energy_series(const ModelSpec& model, const ThermostatState& init, const IntegratorConfig& ic,
                       std::vector<double>* all, double& h_min) {
  CsvTable t{{"t", "H", "H_min_so_far"}, {}};
  h_min = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  integrate_nose_hoover(
      model, init, ic,
      [&](double time, const ThermostatState& s) {
        const double h = hamiltonian(model, s.phase);
        h_min = std::min(h_min, h);
        if (all) all->push_back(h);
        if (i++ % ic.sample_stride == 0) t.add_row({time, h, h_min});
      },
      false);
  return t;
}

// Mass of the L = 0 canonical energy density below h_cut, on [0, h_hi].
double line_mass_below(double h_cut, double beta, double h_hi = 40.0) {
  auto rho = [&](double h) { return line_gibbs_density(h, beta); };
  const double below = integrate_gauss_legendre(rho, 0.0, h_cut, 64);
  double total = below;
  for (double lo = h_cut; lo < h_hi; lo += 1.0) total += integrate_gauss_legendre(rho, lo, lo + 1.0, 64);
  return below / total;
}

ExperimentResult exp_line_energy(const ExperimentConfig& cfg) {
  Recorder rec(cfg);
  const ModelSpec model = model_from(cfg.overrides, ModelKind::centralforce2d, 1.0);
  const ThermostatState init = start_or(cfg, model, central_force_line_start());
  const IntegratorConfig ic = series_config(cfg.overrides.dt.value_or(1e-3), drift_horizon(cfg));
  rec.model(model);
  rec.integrator(ic);
  rec.init(init);
  double h_min = 0.0;
  const auto t = stage("integrate", [&] { return energy_series(model, init, ic, nullptr, h_min); });
  rec.csv("H.csv", t);
  rec.put("H_min", h_min);
  rec.put("reference_mass_below_1", line_mass_below(1.0, model.beta()));
  return rec.finish();
}

ExperimentResult exp_action_table(const ExperimentConfig& cfg) {
  Recorder rec(cfg);
  const double beta = cfg.overrides.beta.value_or(1.0);
  rec.put("model", "pendulum1d");
  rec.put("beta", beta);
  const auto table = stage("action table", [&] { return pendulum_table(beta); });
  rec.csv("action_table.csv", action_table_csv(table));
  const ThermostatPotential pot(table, beta);
  CsvTable w{{"a", "k", "W"}, {}};
  for (double a : pot.knots()) w.add_row({a, pot.k(a), pot.W(a)});
  rec.csv("W.csv", w);
  for (double a : pot.minimizers()) rec.put("W_minimizer", a);
  for (double a : pot.maximizers()) rec.put("W_maximizer", a);
  return rec.finish();
}

ExperimentResult exp_level_curves(const ExperimentConfig& cfg) {
  Recorder rec(cfg);
  const double beta = cfg.overrides.beta.value_or(1.0);
  const auto table = stage("action table", [&] { return pendulum_table(beta); });
  const auto well = stage("well", [&] { return pendulum_well(table, beta); });
  const IntegratorConfig ic{cfg.overrides.dt.value_or(1e-2), cfg.overrides.t_final.value_or(40.0), 1};
  rec.put("model", "pendulum1d");
  rec.put("beta", beta);
  rec.put("a0", well.a0());
  rec.integrator(ic);
  for (double a : poincare_actions()) {
    rec.csv("averaged_a" + format_double(a) + ".csv",
            stage("averaged orbit", [&] { return averaged_orbit_csv(well, a, ic); }));
  }
  return rec.finish();
}

ExperimentResult exp_poincare(const ExperimentConfig& cfg, double default_Q) {
  Recorder rec(cfg);
  const ModelSpec model = model_from(cfg.overrides, ModelKind::pendulum1d, default_Q);
  const auto table = stage("action table", [&] { return pendulum_table(model.beta()); });
  const auto well = stage("well", [&] { return pendulum_well(table, model.beta()); });
  PoincareOptions opt;
  opt.dt = cfg.overrides.dt.value_or(1e-3);
  opt.h_min = table.h_min();
  opt.h_max = table.h_max();
  const std::size_t n = 2000;
  rec.model(model);
  rec.put("dt", opt.dt);
  rec.put("crossings", static_cast<double>(n));
  rec.put("a0", well.a0());
  for (double a : poincare_actions()) {
    const ThermostatState init = pendulum_start_for_action(model, a);
    rec.init(init);
    const auto res = stage("return map a=" + format_double(a), [&] { return poincare_map(model, init, n, opt); });
    rec.csv("poincare_a" + format_double(a) + ".csv", poincare_csv(res.crossings));
    rec.put("tube_a" + format_double(a), match_to_averaged(res.crossings, well));
    rec.put("separatrix_skipped_a" + format_double(a), static_cast<double>(res.separatrix_skipped));
  }
  return rec.finish();
}

ExperimentResult exp_period(const ExperimentConfig& cfg) {
  Recorder rec(cfg);
  const double beta = cfg.overrides.beta.value_or(1.0);
  const auto table = stage("action table", [&] { return pendulum_table(beta); });
  const auto well = stage("well", [&] { return pendulum_well(table, beta); });
  rec.put("model", "pendulum1d");
  rec.put("beta", beta);
  rec.put("a0", well.a0());
  const auto win = well.g_window();
  rec.put("G0", win.G0);
  rec.put("G_top", win.G_top);
  rec.csv("T1.csv", stage("T1 grid", [&] { return t1_grid_csv(well, true); }));
  return rec.finish();
}

ExperimentResult exp_pendulum_energy(const ExperimentConfig& cfg) {
  Recorder rec(cfg);
  const ModelSpec model = model_from(cfg.overrides, ModelKind::pendulum1d, 1.0);
  const ThermostatState init = start_or(cfg, model, pendulum_start());
  const IntegratorConfig ic = series_config(cfg.overrides.dt.value_or(1e-3), floor_horizon(cfg));
  rec.model(model);
  rec.integrator(ic);
  rec.init(init);
  double h_min = 0.0;
  const auto t = stage("integrate", [&] { return energy_series(model, init, ic, nullptr, h_min); });
  rec.csv("H.csv", t);
  rec.put("H_min", h_min);
  if (model.kind() == ModelKind::pendulum1d) rec.put("initial_action", action_1d(model, hamiltonian(model, init.phase)));
  return rec.finish();
}

ExperimentResult exp_histogram(const ExperimentConfig& cfg) {
  Recorder rec(cfg);
  const ModelSpec model = model_from(cfg.overrides, ModelKind::pendulum1d, 1.0);
  detail::require(model.kind() == ModelKind::pendulum1d, ErrorCategory::invalid_argument,
                  "the histogram experiment uses the pendulum table");
  const ThermostatState init = start_or(cfg, model, pendulum_start());
  const IntegratorConfig ic = series_config(cfg.overrides.dt.value_or(1e-3), floor_horizon(cfg));
  rec.model(model);
  rec.integrator(ic);
  rec.init(init);
  const auto table = stage("action table", [&] { return pendulum_table(model.beta()); });
  std::vector<double> energies;
  double h_min = 0.0;
  stage("integrate", [&] { return energy_series(model, init, ic, &energies, h_min); });
  const auto hist = energy_histogram(energies, 40, table.h_min(), table.h_max(),
                                     [&](double h) { return gibbs_energy_density(h, table, model.beta()); });
  rec.csv("histogram.csv", histogram_csv(hist));
  rec.put("total_variation", hist.total_variation);
  rec.put("outside_fraction", hist.outside_fraction);
  return rec.finish();
}

// A quick property suite; each row is one property.
ExperimentResult exp_properties(const ExperimentConfig& cfg) {
  Recorder rec(cfg);
  CsvTable t{{"index", "value", "bound", "pass"}, {}};
  bool all = true;
  auto check = [&](const std::string& name, double value, double bound) {
    const bool ok = value < bound;
    all = all && ok;
    rec.put("property." + std::to_string(t.rows.size()), name);
    t.add_row({static_cast<double>(t.rows.size()), value, bound, ok ? 1.0 : 0.0});
  };

  std::mt19937_64 rng(20240611);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const std::vector<ModelSpec> models{ModelSpec(ModelKind::harmonic1d, 1.0, 1.0),
                                      ModelSpec(ModelKind::pendulum1d, 1.0, 1.0),
                                      ModelSpec(ModelKind::centralforce2d, 1.0, 1.0)};
  double rev = 0.0;
  double div = 0.0;
  for (const auto& m : models) {
    for (int i = 0; i < 100; ++i) {
      std::vector<double> z(2 * m.dim() + 1);
      for (double& v : z) v = uniform(-1.0, 1.0);
      const ThermostatState s = unflatten(z);
      const auto back = flatten(nh_step(m, nh_step(m, s, 1e-2), -1e-2));
      for (std::size_t k = 0; k < z.size(); ++k) rev = std::max(rev, std::abs(back[k] - z[k]) / std::max(1.0, std::abs(z[k])));
      div = std::max(div, std::abs(measure_divergence(m, s)));
    }
  }
  check("nh_step reversibility (relative)", rev, 1e-12);
  check("invariant-measure divergence", div, 1e-6);

  const ModelSpec ho(ModelKind::harmonic1d, 1.0, 1.0);
  check("harmonic a(1) = 2 pi (relative)", std::abs(action_1d(ho, 1.0) / (2.0 * std::numbers::pi) - 1.0), 1e-8);
  check("harmonic S(a) = a", std::abs(averaged_S(harmonic_action_angle, 3.0) - 3.0), 1e-10);

  const ModelSpec cf(ModelKind::centralforce2d, 1.0, 1.0);
  PhaseState ps = make_phase(0.0, 0.5, -1.5, 1.5);
  double dL = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PhaseState next = verlet_step(cf, ps, 1e-3);
    dL = std::max(dL, std::abs(angular_momentum(next) - angular_momentum(ps)));
    ps = next;
  }
  check("Verlet per-step |dL|", dL, 1e-13);

  rec.csv("properties.csv", t);
  rec.result().ok = all;
  rec.put("all_pass", all ? "1" : "0");
  return rec.finish();
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"fig1", "fig2",  "fig3",  "fig4",  "fig5",      "fig6",      "fig8",
                                            "fig9", "fig10", "fig11", "fig12", "fig13", "histogram", "properties"};
  return ids;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  static const std::map<std::string, std::function<ExperimentResult(const ExperimentConfig&)>> table{
      {"fig1", [](const ExperimentConfig& c) { return exp_g_g1(c, 100.0); }},
      {"fig2", [](const ExperimentConfig& c) { return exp_g_g1(c, 1.0); }},
      {"fig3", exp_k0_table},
      {"fig4", exp_e1},
      {"fig5", exp_e2},
      {"fig6", exp_line_energy},
      {"fig8", exp_action_table},
      {"fig9", exp_level_curves},
      {"fig10", [](const ExperimentConfig& c) { return exp_poincare(c, 1e5); }},
      {"fig11", [](const ExperimentConfig& c) { return exp_poincare(c, 1.0); }},
      {"fig12", exp_period},
      {"fig13", exp_pendulum_energy},
      {"histogram", exp_histogram},
      {"properties", exp_properties},
  };
  const auto it = table.find(cfg.id);
  if (it == table.end()) detail::fail(ErrorCategory::invalid_argument, "unknown experiment id '" + cfg.id + "'");
  return it->second(cfg);
}

// ---------------------------------------------------------------------------
// Subcommand tables

CsvTable simulate_csv(const ModelSpec& model, const ThermostatState& init, const IntegratorConfig& cfg) {
  CsvTable t;
  t.columns = model.dim() == 1 ? std::vector<std::string>{"t", "q", "p", "xi", "H"}
                               : std::vector<std::string>{"t", "q1", "q2", "p1", "p2", "xi", "H"};
  const auto traj = integrate_nose_hoover(model, init, cfg);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::vector<double> row{traj.times[i]};
    for (double v : flatten(traj.states[i])) row.push_back(v);
    row.push_back(hamiltonian(model, traj.states[i].phase));
    t.add_row(std::move(row));
  }
  return t;
}

CsvTable averaged_orbit_csv(const AveragedWell<ThermostatPotential>& well, double a, const IntegratorConfig& cfg) {
  CsvTable t{{"t", "a", "alpha", "G"}, {}};
  for (const auto& s : averaged_orbit(well, {well.sigma(a), 0.0}, cfg)) t.add_row({s.t, s.a, s.alpha, s.G});
  return t;
}

CsvTable poincare_csv(const std::vector<SectionCrossing>& crossings) {
  CsvTable t{{"t", "a", "alpha", "h"}, {}};
  for (const auto& c : crossings) t.add_row({c.t, c.a, c.alpha, c.h});
  return t;
}

CsvTable t1_grid_csv(const AveragedWell<ThermostatPotential>& well, bool first_return) {
  CsvTable t{{"G", "T1", "T1_first_return", "width", "residual"}, {}};
  for (const auto& p : t1_grid(well)) {
    const double fr = first_return ? period_T1_first_return(p.G, well) : std::nan("");
    t.add_row({p.G, p.T1, fr, p.width, p.residual});
  }
  return t;
}

CsvTable histogram_csv(const EnergyHistogram& hist) {
  CsvTable t{{"h_lo", "h_hi", "empirical", "reference"}, {}};
  for (std::size_t i = 0; i < hist.empirical.size(); ++i) {
    t.add_row({hist.edges[i], hist.edges[i + 1], hist.empirical[i], hist.reference[i]});
  }
  return t;
}

}  // namespace nhergo::tools
