// nhergo: command-line front end to the library and the experiments.
//
//   nhergo simulate --model pendulum --Q 1 --t-final 100 --out run/
//   nhergo experiment fig12 --out out/fig12
//   nhergo check
//
// Every subcommand takes the shared flags; --config names a key = value file
// read first, so flags on the command line win.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "experiments.hpp"

namespace {

using namespace nhergo;
using namespace nhergo::tools;

struct Shared {
  std::optional<std::string> model;
  std::optional<double> beta;
  std::optional<double> Q;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<std::string> init;
  std::optional<std::string> config;
  std::string out;
  bool long_horizons = false;

  Overrides resolve() const {
    Overrides o;
    if (config) o = overrides_from(load_key_values(*config));
    Overrides cli;
    cli.model = model;
    cli.beta = beta;
    cli.Q = Q;
    cli.dt = dt;
    cli.t_final = t_final;
    if (init) cli.init = parse_number_list(*init);
    o.merge(cli);
    return o;
  }
};

void add_shared(CLI::App* app, Shared& s) {
  app->add_option("--model", s.model, "harmonic | pendulum | centralforce");
  app->add_option("--beta", s.beta, "inverse temperature");
  app->add_option("--Q", s.Q, "thermostat mass");
  app->add_option("--dt", s.dt, "time step");
  app->add_option("--t-final", s.t_final, "integration horizon");
  app->add_option("--init", s.init, "initial state q...,p...,xi");
  app->add_option("--config", s.config, "key = value file, overridden by flags");
  app->add_option("--out", s.out, "output directory (stdout when omitted, where allowed)");
  app->add_flag("--paper-scale", s.long_horizons, "use the long horizons (hours)");
}

// Writes to out/name, or to stdout when no directory was given.
void emit(const Shared& s, const std::string& name, const CsvTable& t) {
  if (s.out.empty()) {
    write_csv(std::cout, t);
  } else {
    std::cerr << write_csv_file(s.out, name, t).string() << '\n';
  }
}

ThermostatState default_start(const ModelSpec& m) {
  switch (m.kind()) {
    case ModelKind::centralforce2d: return central_force_start();
    case ModelKind::pendulum1d: return pendulum_start();
    case ModelKind::harmonic1d: return {make_phase(1.0, 0.0), 0.0};
  }
  return pendulum_start();
}

int run_simulate(const Shared& s) {
  const Overrides o = s.resolve();
  const ModelSpec m = model_from(o, ModelKind::pendulum1d, 1.0);
  const ThermostatState init = o.init ? state_from_numbers(m, *o.init) : default_start(m);
  IntegratorConfig ic{o.dt.value_or(1e-3), o.t_final.value_or(10.0), 1};
  ic.sample_stride = std::max<std::size_t>(1, ic.steps() / 10000);
  emit(s, "trajectory.csv", simulate_csv(m, init, ic));
  return 0;
}

int run_table(const Shared& s) {
  const Overrides o = s.resolve();
  const ModelSpec m = model_from(o, ModelKind::pendulum1d, 1.0);
  if (m.kind() == ModelKind::centralforce2d) {
    const auto table = central_force_table(m.beta());
    CsvTable t{{"H", "L", "k0", "a1"}, {}};
    for (const auto& row : table.samples)
      for (const auto& x : row) t.add_row({x.H, x.L, x.k0, x.a1});
    emit(s, "k0_samples.csv", t);
    return 0;
  }
  const auto grid = m.kind() == ModelKind::pendulum1d ? pendulum_default_grid() : uniform_grid(0.05, 5.0, 40);
  emit(s, "action_table.csv", action_table_csv(build_action_table(m, grid)));
  return 0;
}

int run_averaged(const Shared& s, double a) {
  const Overrides o = s.resolve();
  const double beta = o.beta.value_or(1.0);
  const auto table = pendulum_table(beta);
  const auto well = pendulum_well(table, beta);
  const IntegratorConfig ic{o.dt.value_or(1e-2), o.t_final.value_or(40.0), 1};
  emit(s, "averaged.csv", averaged_orbit_csv(well, a, ic));
  return 0;
}

int run_poincare(const Shared& s, double a, std::size_t n) {
  const Overrides o = s.resolve();
  const ModelSpec m = model_from(o, ModelKind::pendulum1d, 1.0);
  const auto table = pendulum_table(m.beta());
  PoincareOptions opt;
  opt.dt = o.dt.value_or(1e-3);
  opt.h_min = table.h_min();
  opt.h_max = table.h_max();
  const ThermostatState init = o.init ? state_from_numbers(m, *o.init) : pendulum_start_for_action(m, a);
  const auto res = poincare_map(m, init, n, opt);
  if (res.separatrix_skipped > 0) std::cerr << "skipped " << res.separatrix_skipped << " crossings near the separatrix\n";
  emit(s, "poincare.csv", poincare_csv(res.crossings));
  return 0;
}

int run_period(const Shared& s, bool first_return) {
  const Overrides o = s.resolve();
  const double beta = o.beta.value_or(1.0);
  const auto table = pendulum_table(beta);
  const auto well = pendulum_well(table, beta);
  emit(s, "T1.csv", t1_grid_csv(well, first_return));
  return 0;
}

int run_histogram(const Shared& s, std::size_t bins) {
  const Overrides o = s.resolve();
  const ModelSpec m = model_from(o, ModelKind::pendulum1d, 1.0);
  if (m.kind() != ModelKind::pendulum1d) detail::fail(ErrorCategory::invalid_argument, "histogram needs the pendulum");
  const ThermostatState init = o.init ? state_from_numbers(m, *o.init) : pendulum_start();
  const double t_final = o.t_final.value_or(s.long_horizons ? long_floor_horizon : desk_floor_horizon);
  const IntegratorConfig ic{o.dt.value_or(1e-3), t_final, 1};
  const auto table = pendulum_table(m.beta());
  std::vector<double> energies;
  integrate_nose_hoover(
      m, init, ic, [&](double, const ThermostatState& x) { energies.push_back(hamiltonian(m, x.phase)); }, false);
  const auto hist = energy_histogram(energies, bins, table.h_min(), table.h_max(),
                                     [&](double h) { return gibbs_energy_density(h, table, m.beta()); });
  std::cerr << "total_variation = " << format_double(hist.total_variation) << '\n';
  emit(s, "histogram.csv", histogram_csv(hist));
  return 0;
}

int run_experiment_cmd(const Shared& s, const std::string& id, bool gnuplot) {
  ExperimentConfig cfg;
  cfg.id = id;
  cfg.out_dir = s.out.empty() ? std::filesystem::path("out") / id : std::filesystem::path(s.out);
  cfg.overrides = s.resolve();
  cfg.long_horizons = s.long_horizons;
  const auto res = run_experiment(cfg);
  for (const auto& f : res.files) std::cout << f.string() << '\n';
  if (gnuplot) std::cout << write_gnuplot_script(cfg.out_dir, res).string() << '\n';
  return res.ok ? 0 : 1;
}

int run_check(const Shared& s) {
  ExperimentConfig cfg;
  cfg.id = "properties";
  cfg.out_dir = s.out.empty() ? std::filesystem::path("out") / "properties" : std::filesystem::path(s.out);
  const auto res = run_experiment(cfg);
  const auto t = read_csv_file(cfg.out_dir / "properties.csv");
  std::size_t i = 0;
  for (const auto& [k, v] : res.manifest) {
    if (k.rfind("property.", 0) != 0) continue;
    const auto& row = t.rows.at(i++);
    std::cout << (row[3] != 0.0 ? "PASS " : "FAIL ") << v << ": " << format_double(row[1]) << " < "
              << format_double(row[2]) << '\n';
  }
  return res.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nose-Hoover ergodicity diagnostics"};
  app.require_subcommand(1);
  Shared shared;

  auto* sim = app.add_subcommand("simulate", "integrate one thermostatted trajectory");
  auto* tab = app.add_subcommand("table", "action / k0 table");
  auto* avg = app.add_subcommand("averaged", "orbit of the averaged 1D system (pendulum)");
  auto* poi = app.add_subcommand("poincare", "return map on q = 0 mod 2pi (pendulum)");
  auto* per = app.add_subcommand("period", "period function T1 on the G grid (pendulum)");
  auto* his = app.add_subcommand("histogram", "energy histogram against the canonical density (pendulum)");
  auto* exp = app.add_subcommand("experiment", "run one experiment");
  auto* chk = app.add_subcommand("check", "quick property suite");
  for (auto* sub : {sim, tab, avg, poi, per, his, exp, chk}) add_shared(sub, shared);

  double action = 7.72;
  std::size_t crossings = 2000;
  std::size_t bins = 40;
  bool first_return = false;
  bool gnuplot = false;
  std::string id;
  avg->add_option("--a", action, "initial action");
  poi->add_option("--a", action, "initial action on the section");
  poi->add_option("--crossings", crossings, "number of crossings");
  per->add_flag("--first-return", first_return, "also time the orbit directly");
  his->add_option("--bins", bins, "number of bins");
  exp->add_option("id", id, "experiment id")->required();
  exp->add_flag("--gnuplot", gnuplot, "also write plot.gp for the CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: parse: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*sim) return run_simulate(shared);
    if (*tab) return run_table(shared);
    if (*avg) return run_averaged(shared, action);
    if (*poi) return run_poincare(shared, action, crossings);
    if (*per) return run_period(shared, first_return);
    if (*his) return run_histogram(shared, bins);
    if (*exp) return run_experiment_cmd(shared, id, gnuplot);
    if (*chk) return run_check(shared);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.category()) << ": " << e.what() << '\n';
    return e.category() == ErrorCategory::parse ? 2 : 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: io: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
