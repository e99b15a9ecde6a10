#pragma once

// Sampled energy histogram against a reference energy density.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nhergo/error.hpp"
#include "nhergo/quadrature.hpp"

namespace nhergo {

struct EnergyHistogram {
  std::vector<double> edges;      // bins + 1 values
  std::vector<double> empirical;  // sums to 1 over in-range samples
  std::vector<double> reference;  // density mass per bin, sums to 1
  double total_variation = 0.0;
  double outside_fraction = 0.0;  // samples outside [lo, hi]
};

/// Histogram of `energies` on [lo, hi] with `bins` equal bins; the reference
/// mass of each bin is the integral of `density` over it, normalized.
inline EnergyHistogram energy_histogram(std::span<const double> energies, std::size_t bins, double lo, double hi,
                                        const std::function<double(double)>& density) {
  detail::require(!energies.empty(), ErrorCategory::invalid_argument, "no energy samples");
  detail::require(bins >= 1 && hi > lo, ErrorCategory::invalid_argument, "empty bin range");
  EnergyHistogram out;
  const double w = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) out.edges.push_back(lo + w * static_cast<double>(i));
  out.edges.back() = hi;
  out.empirical.assign(bins, 0.0);
  std::size_t inside = 0;
  for (double e : energies) {
    if (!(e >= lo && e <= hi)) continue;
    auto b = static_cast<std::size_t>((e - lo) / w);
    if (b >= bins) b = bins - 1;
    out.empirical[b] += 1.0;
    ++inside;
  }
  out.outside_fraction = 1.0 - static_cast<double>(inside) / static_cast<double>(energies.size());
  if (inside > 0) {
    for (double& v : out.empirical) v /= static_cast<double>(inside);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    out.reference.push_back(integrate_gauss_legendre(density, out.edges[i], out.edges[i + 1], 16));
    total += out.reference.back();
  }
  detail::require(total > 0.0, ErrorCategory::invalid_argument, "reference density has no mass on the range");
  for (double& v : out.reference) v /= total;
  for (std::size_t i = 0; i < bins; ++i) out.total_variation += 0.5 * std::abs(out.empirical[i] - out.reference[i]);
  return out;
}

}  // namespace nhergo
