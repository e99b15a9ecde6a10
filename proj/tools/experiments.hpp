#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "nhergo/nhergo.hpp"

namespace nhergo::tools {

// Shared setups ------------------------------------------------------------

inline constexpr double desk_drift_horizon = 5e3;
inline constexpr double long_drift_horizon = 5e4;
inline constexpr double desk_floor_horizon = 1e4;
inline constexpr double long_floor_horizon = 5e5;

/// Initial condition of the first central-force runs: q=(0,0.5), p=(-1.5,1.5).
ThermostatState central_force_start();
/// Initial condition with L = 0: q=(-0.5,0.5), p=(-1,1).
ThermostatState central_force_line_start();
/// Pendulum q=0, p=1.5.
ThermostatState pendulum_start();
/// Pendulum start on the section with action a (q = 0, p > 0, xi = 0).
ThermostatState pendulum_start_for_action(const ModelSpec& model, double a);
/// The three actions of the return-map experiments.
std::vector<double> poincare_actions();

/// (q..., p..., xi) with 3 or 5 numbers, checked against the model.
ThermostatState state_from_numbers(const ModelSpec& model, const std::vector<double>& v);

ActionTable pendulum_table(double beta, const TimeAverageOptions& opt = {});
/// Energies of the k0app table: 10 geometric nodes from 0.01 to 3.
std::vector<double> central_force_energy_grid();
CentralForceTable central_force_table(double beta, const TimeAverageOptions& opt = {});

/// The averaged well around the lower W minimizer of the pendulum table.
AveragedWell<ThermostatPotential> pendulum_well(const ActionTable& table, double beta);

// Experiments --------------------------------------------------------------

struct ExperimentConfig {
  std::string id;
  std::filesystem::path out_dir = ".";
  Overrides overrides;
  bool long_horizons = false;
};

struct ExperimentResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::pair<std::string, std::string>> manifest;  // echoed to manifest.txt
  bool ok = true;  // false when a property suite reports a failure
};

const std::vector<std::string>& experiment_ids();

/// Runs one experiment, writes its CSV files and manifest.txt under
/// cfg.out_dir. Stage failures are rethrown with the stage named.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes `table` to dir/name and returns the path.
std::filesystem::path write_csv_file(const std::filesystem::path& dir, const std::string& name, const CsvTable& table);
void write_manifest(const std::filesystem::path& dir, const std::vector<std::pair<std::string, std::string>>& entries);
CsvTable read_csv_file(const std::filesystem::path& path);

/// plot.gp next to the CSVs: one panel per file, second column against the
/// first. No plotting happens here.
std::filesystem::path write_gnuplot_script(const std::filesystem::path& dir, const ExperimentResult& result);

// Subcommand helpers used by the CLI ----------------------------------------

ModelSpec model_from(const Overrides& o, ModelKind fallback_kind, double fallback_Q);

/// Trajectory table: t, q..., p..., xi, H (every `stride` steps).
CsvTable simulate_csv(const ModelSpec& model, const ThermostatState& init, const IntegratorConfig& cfg);

/// Averaged orbit (symplectic Euler) from action a with alpha = 0.
CsvTable averaged_orbit_csv(const AveragedWell<ThermostatPotential>& well, double a, const IntegratorConfig& cfg);

CsvTable poincare_csv(const std::vector<SectionCrossing>& crossings);

CsvTable t1_grid_csv(const AveragedWell<ThermostatPotential>& well, bool first_return);

CsvTable histogram_csv(const EnergyHistogram& hist);

}  // namespace nhergo::tools
