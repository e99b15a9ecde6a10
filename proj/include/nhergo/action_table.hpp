#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "nhergo/action.hpp"
#include "nhergo/error.hpp"
#include "nhergo/interpolation.hpp"
#include "nhergo/models.hpp"
#include "nhergo/time_average.hpp"

namespace nhergo {

struct ActionTableEntry {
  double h = 0.0;
  double a = 0.0;
  double k0 = 0.0;
  double period = 0.0;  // +inf when unbounded
  int components = 1;
};

/// Monotone tabulation h -> (a, k0, period) with piecewise-linear lookup in
/// both directions. Immutable after construction.
class ActionTable {
 public:
  ActionTable() = default;

  ActionTable(ModelKind kind, std::vector<ActionTableEntry> entries) : kind_(kind), entries_(std::move(entries)) {
    detail::require(entries_.size() >= 2, ErrorCategory::invalid_argument, "action table needs two entries");
    std::vector<double> h;
    std::vector<double> a;
    std::vector<double> k0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      detail::require(std::isfinite(e.h) && std::isfinite(e.a) && std::isfinite(e.k0),
                      ErrorCategory::invalid_argument, "table entries must be finite");
      detail::require(e.k0 >= 0.0, ErrorCategory::invalid_argument, "k0 must be nonnegative");
      detail::require(e.components == 1 || e.components == 2, ErrorCategory::invalid_argument,
                      "component count must be 1 or 2");
      if (i > 0) {
        detail::require(e.h > entries_[i - 1].h, ErrorCategory::invalid_argument, "table energies must increase");
        detail::require(e.a > entries_[i - 1].a, ErrorCategory::invalid_argument, "table actions must increase");
      }
      h.push_back(e.h);
      a.push_back(e.a);
      k0.push_back(e.k0);
    }
    action_of_energy_ = PiecewiseLinear(h, a);
    energy_of_action_ = PiecewiseLinear(a, h);
    k0_of_energy_ = PiecewiseLinear(h, k0);
  }

  ModelKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return kind_ == ModelKind::centralforce2d ? 2 : 1; }
  std::span<const ActionTableEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  double h_min() const noexcept { return entries_.front().h; }
  double h_max() const noexcept { return entries_.back().h; }
  double a_min() const noexcept { return entries_.front().a; }
  double a_max() const noexcept { return entries_.back().a; }

  double action(double h) const { return action_of_energy_(h); }
  double energy(double a) const { return energy_of_action_(a); }
  double k0_at_energy(double h) const { return k0_of_energy_(h); }
  double k0_at_action(double a) const { return k0_of_energy_(energy_of_action_(a)); }

  /// a'(h) from centered differences of the nodes (one-sided at the ends),
  /// linearly interpolated between nodes.
  double action_slope(double h) const {
    const std::size_t i = action_of_energy_.segment(h);
    const double s0 = nodal_slope(i);
    const double s1 = nodal_slope(i + 1);
    const double t = (h - entries_[i].h) / (entries_[i + 1].h - entries_[i].h);
    return s0 + t * (s1 - s0);
  }

  double nodal_slope(std::size_t i) const {
    const std::size_t n = entries_.size();
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
    return (entries_[hi].a - entries_[lo].a) / (entries_[hi].h - entries_[lo].h);
  }

 private:
  ModelKind kind_ = ModelKind::harmonic1d;
  std::vector<ActionTableEntry> entries_;
  PiecewiseLinear action_of_energy_;
  PiecewiseLinear energy_of_action_;
  PiecewiseLinear k0_of_energy_;
};

/// One table node for a 1D model.
inline ActionTableEntry action_table_entry(const ModelSpec& model, double h, const TimeAverageOptions& opt = {}) {
  ActionTableEntry e;
  e.h = h;
  e.a = action_1d(model, h);
  e.period = orbit_period(model, h);
  e.components = component_count(model, h);
  e.k0 = k0_time_average(model, h, opt);
  return e;
}

inline ActionTable build_action_table(const ModelSpec& model, std::span<const double> h_grid,
                                      const TimeAverageOptions& opt = {}) {
  detail::check_one_dimensional(model);
  std::vector<ActionTableEntry> entries;
  entries.reserve(h_grid.size());
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    try {
      entries.push_back(action_table_entry(model, h_grid[i], opt));
    } catch (const Error& e) {
      throw Error(e.category(), "table node " + std::to_string(i) + " (h = " + std::to_string(h_grid[i]) +
                                    "): " + e.what());
    }
  }
  return ActionTable(model.kind(), std::move(entries));
}

/// Default pendulum grid (55 nodes): uniform up to h = 0.8, then geometric
/// clustering toward both sides of the separatrix band, rotation up to h = 5.
/// The uniform part is dense enough that the piecewise-linear k gives a
/// monotone T1 in the lower well.
inline std::vector<double> pendulum_default_grid() {
  std::vector<double> h;
  constexpr int n_uniform = 30;
  for (int i = 0; i < n_uniform; ++i) h.push_back(-0.99 + (0.8 + 0.99) * i / (n_uniform - 1));
  constexpr int n_inner = 11;  // distances 0.2 -> band edge, excluding 0.2
  for (int i = 1; i <= n_inner; ++i) {
    const double d = 0.2 * std::pow(separatrix_band / 0.2, static_cast<double>(i) / n_inner);
    h.push_back(1.0 - d);
  }
  constexpr int n_rot = 14;  // distances band edge -> 4
  for (int i = 0; i < n_rot; ++i) {
    const double d = separatrix_band * std::pow(4.0 / separatrix_band, static_cast<double>(i) / (n_rot - 1));
    h.push_back(1.0 + d);
  }
  return h;
}

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  detail::require(n >= 2 && hi > lo, ErrorCategory::invalid_argument, "grid needs n >= 2 and hi > lo");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  g.back() = hi;
  return g;
}

// ---------------------------------------------------------------------------
// Central force: k0(H, L) samples and the L-averaged interpolant k0_app(H).

struct CentralForceSample {
  double H = 0.0;
  double L = 0.0;
  double a1 = 0.0;
  double k0 = 0.0;
};

struct CentralForceTable {
  std::vector<double> energies;
  std::vector<std::vector<CentralForceSample>> samples;  // samples[i] share energies[i]
  PiecewiseLinear k0_app;

  /// max_L k0 - min_L k0 at energy node i.
  double spread(std::size_t i) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : samples[i]) {
      lo = std::min(lo, s.k0);
      hi = std::max(hi, s.k0);
    }
    return hi - lo;
  }
};

/// Angular momenta sampled at energy H: L_j = L_max(H) * j / (n + 1).
inline std::vector<double> angular_momentum_samples(double H, std::size_t n) {
  const double L_max = max_angular_momentum(H);
  std::vector<double> L(n);
  for (std::size_t j = 0; j < n; ++j) L[j] = L_max * static_cast<double>(j + 1) / static_cast<double>(n + 1);
  return L;
}

inline CentralForceTable build_central_force_table(const ModelSpec& model, std::span<const double> H_grid,
                                                   std::size_t n_L = 10, const TimeAverageOptions& opt = {}) {
  detail::require(model.kind() == ModelKind::centralforce2d, ErrorCategory::invalid_argument,
                  "central-force table needs the central-force model");
  detail::require(n_L >= 1, ErrorCategory::invalid_argument, "need at least one L sample per energy");
  CentralForceTable table;
  std::vector<double> k0_mean;
  for (std::size_t i = 0; i < H_grid.size(); ++i) {
    const double H = H_grid[i];
    std::vector<CentralForceSample> row;
    double sum = 0.0;
    for (double L : angular_momentum_samples(H, n_L)) {
      try {
        CentralForceSample s{H, L, radial_action(model, H, L), k0_time_average(model, H, L, opt)};
        sum += s.k0;
        row.push_back(s);
      } catch (const Error& e) {
        throw Error(e.category(), "table node H = " + std::to_string(H) + ", L = " + std::to_string(L) + ": " +
                                      e.what());
      }
    }
    table.energies.push_back(H);
    table.samples.push_back(std::move(row));
    k0_mean.push_back(sum / static_cast<double>(n_L));
  }
  table.k0_app = PiecewiseLinear(table.energies, k0_mean);
  return table;
}

}  // namespace nhergo
