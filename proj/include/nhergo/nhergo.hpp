#pragma once

#include "nhergo/action.hpp"
#include "nhergo/action_table.hpp"
#include "nhergo/averaged.hpp"
#include "nhergo/csv.hpp"
#include "nhergo/error.hpp"
#include "nhergo/gibbs.hpp"
#include "nhergo/histogram.hpp"
#include "nhergo/integrators.hpp"
#include "nhergo/interpolation.hpp"
#include "nhergo/invariants.hpp"
#include "nhergo/models.hpp"
#include "nhergo/poincare.hpp"
#include "nhergo/quadrature.hpp"
#include "nhergo/slow_potential.hpp"
#include "nhergo/time_average.hpp"
