#pragma once

#include <cmath>

#include "nhergo/action.hpp"
#include "nhergo/action_table.hpp"
#include "nhergo/error.hpp"

namespace nhergo {

/// Unnormalized canonical energy density exp(-beta h) a'(h), with a' taken
/// from centered differences of the table.
inline double gibbs_energy_density(double h, const ActionTable& table, double beta) {
  detail::require(beta > 0.0, ErrorCategory::invalid_argument, "beta must be positive");
  return std::exp(-beta * h) * table.action_slope(h);
}

/// Central force restricted to L = 0: the canonical energy density of the
/// radial line motion, exp(-beta h) T_line(h).
inline double line_gibbs_density(double h, double beta) {
  detail::require(beta > 0.0, ErrorCategory::invalid_argument, "beta must be positive");
  return std::exp(-beta * h) * line_period(h);
}

}  // namespace nhergo
