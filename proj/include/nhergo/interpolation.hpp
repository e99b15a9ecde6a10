#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nhergo/error.hpp"

namespace nhergo {

/// Piecewise-linear interpolant on strictly increasing knots. Evaluation
/// outside [front, back] is an error; there is no extrapolation.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;

  PiecewiseLinear(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    detail::require(x_.size() == y_.size(), ErrorCategory::invalid_argument, "knot arrays differ in length");
    detail::require(x_.size() >= 2, ErrorCategory::invalid_argument, "interpolant needs two knots");
    for (std::size_t i = 0; i < x_.size(); ++i) {
      detail::require(std::isfinite(x_[i]) && std::isfinite(y_[i]), ErrorCategory::invalid_argument,
                      "knots must be finite");
      if (i > 0) {
        detail::require(x_[i] > x_[i - 1], ErrorCategory::invalid_argument,
                        "interpolant abscissae must be strictly increasing");
      }
    }
  }

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }
  std::size_t size() const noexcept { return x_.size(); }
  double x_min() const noexcept { return x_.front(); }
  double x_max() const noexcept { return x_.back(); }

  bool contains(double x) const noexcept { return x >= x_.front() && x <= x_.back(); }

  /// Index i of the segment [x_i, x_{i+1}] holding x (last segment for x_max).
  std::size_t segment(double x) const {
    if (!contains(x)) {
      detail::fail(ErrorCategory::out_of_range,
                   "interpolation argument " + std::to_string(x) + " outside [" + std::to_string(x_.front()) +
                       ", " + std::to_string(x_.back()) + "]");
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const auto i = static_cast<std::size_t>(it - x_.begin());
    return std::min(i == 0 ? 0 : i - 1, x_.size() - 2);
  }

  double slope(std::size_t i) const { return (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]); }

  double operator()(double x) const {
    const std::size_t i = segment(x);
    if (x == x_[i + 1]) return y_[i + 1];
    return y_[i] + (x - x_[i]) * slope(i);
  }

  bool strictly_increasing_values() const noexcept {
    for (std::size_t i = 1; i < y_.size(); ++i) {
      if (!(y_[i] > y_[i - 1])) return false;
    }
    return true;
  }

  /// Inverse for strictly increasing values.
  PiecewiseLinear inverse() const {
    detail::require(strictly_increasing_values(), ErrorCategory::invalid_argument,
                    "inverse needs strictly increasing values");
    return PiecewiseLinear(y_, x_);
  }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

}  // namespace nhergo
