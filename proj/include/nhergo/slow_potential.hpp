#pragma once

// The thermostat potential of the averaged system: k(a) = k0(a) - N/beta,
// W(a) = integral of k(s)/s, its minimizers, and tau(H) for the 2D reduction.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "nhergo/action_table.hpp"
#include "nhergo/error.hpp"
#include "nhergo/interpolation.hpp"
#include "nhergo/quadrature.hpp"

namespace nhergo {

/// k and W on the action range of a table. Between nodes both a and k0 are
/// linear in h, so k is linear in a and W integrates in closed form.
class ThermostatPotential {
 public:
  ThermostatPotential(const ActionTable& table, double beta, std::size_t N) {
    detail::require(beta > 0.0, ErrorCategory::invalid_argument, "beta must be positive");
    detail::require(table.a_min() > 0.0, ErrorCategory::invalid_argument,
                    "W needs a table starting above the energy minimum (a > 0)");
    const double shift = static_cast<double>(N) / beta;
    for (const auto& e : table.entries()) {
      a_.push_back(e.a);
      k_.push_back(e.k0 - shift);
    }
    k_of_a_ = PiecewiseLinear(a_, k_);
    W_.assign(a_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < a_.size(); ++i) W_[i + 1] = W_[i] + segment_integral(i, a_[i + 1]);
  }

  ThermostatPotential(const ActionTable& table, double beta) : ThermostatPotential(table, beta, table.dim()) {}

  double a_min() const noexcept { return a_.front(); }
  double a_max() const noexcept { return a_.back(); }
  bool contains(double a) const noexcept { return a >= a_.front() && a <= a_.back(); }
  std::span<const double> knots() const noexcept { return a_; }
  std::span<const double> knot_values() const noexcept { return k_; }

  double k(double a) const { return k_of_a_(a); }

  /// W(a) with W(a_min) = 0.
  double W(double a) const {
    const std::size_t i = k_of_a_.segment(a);
    return W_[i] + segment_integral(i, a);
  }

  /// W(a_end) - W(a_end * e^d) for a_end and a_end * e^d on segment i, free
  /// of cancellation for small d.
  double W_drop(std::size_t i, double a_end, double d) const {
    const double m = k_of_a_.slope(i);
    const double c = k_[i] - m * a_[i];
    return -c * d - m * a_end * std::expm1(d);
  }

  /// As above with the segment taken at the geometric midpoint; valid when
  /// both ends lie on one segment.
  double W_drop(double a_end, double d) const { return W_drop(segment(a_end * std::exp(0.5 * d)), a_end, d); }

  std::size_t segment(double a) const { return k_of_a_.segment(a); }

  /// Actions where k has a kink.
  std::vector<double> breakpoints() const { return a_; }

  /// Local minimizers of W: upward sign changes of k, refined by bisection.
  std::vector<double> minimizers(double tol = 1e-10) const { return sign_changes(true, tol); }

  /// Local maximizers of W: downward sign changes of k.
  std::vector<double> maximizers(double tol = 1e-10) const { return sign_changes(false, tol); }

 private:
  double segment_integral(std::size_t i, double a) const {
    const double m = k_of_a_.slope(i);
    const double c = k_[i] - m * a_[i];
    return c * std::log(a / a_[i]) + m * (a - a_[i]);
  }

  std::vector<double> sign_changes(bool upward, double tol) const {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < k_.size(); ++i) {
      const double lo = upward ? k_[i] : -k_[i];
      const double hi = upward ? k_[i + 1] : -k_[i + 1];
      if (lo < 0.0 && hi > 0.0) {
        out.push_back(bisect_root([this](double a) { return k(a); }, a_[i], a_[i + 1], tol));
      } else if (lo < 0.0 && hi == 0.0) {
        // root on a node: count it once, from the left segment
        const double next = i + 2 < k_.size() ? (upward ? k_[i + 2] : -k_[i + 2]) : 1.0;
        if (next > 0.0) out.push_back(a_[i + 1]);
      }
    }
    return out;
  }

  std::vector<double> a_;
  std::vector<double> k_;
  std::vector<double> W_;
  PiecewiseLinear k_of_a_;
};

/// A smooth k given as a function, for closed-form test wells. W(a_min) = 0.
class AnalyticPotential {
 public:
  AnalyticPotential(std::function<double(double)> k, double a_min, double a_max, std::size_t nodes = 64)
      : k_(std::move(k)), a_min_(a_min), a_max_(a_max), nodes_(nodes) {
    detail::require(a_min > 0.0 && a_max > a_min, ErrorCategory::invalid_argument, "need 0 < a_min < a_max");
  }

  double a_min() const noexcept { return a_min_; }
  double a_max() const noexcept { return a_max_; }
  bool contains(double a) const noexcept { return a >= a_min_ && a <= a_max_; }

  double k(double a) const {
    check(a);
    return k_(a);
  }

  double W(double a) const {
    check(a);
    return integrate_gauss_legendre([&](double u) { return k_(a_min_ * std::exp(u)); }, 0.0, std::log(a / a_min_),
                                    nodes_);
  }

  double W_drop(double a_end, double d) const {
    check(a_end);
    check(a_end * std::exp(d));
    return -integrate_gauss_legendre([&](double u) { return k_(a_end * std::exp(u)); }, 0.0, d, nodes_);
  }

  std::vector<double> breakpoints() const { return {a_min_, a_max_}; }

 private:
  void check(double a) const {
    if (!(a >= a_min_ * (1.0 - 1e-14) && a <= a_max_ * (1.0 + 1e-14))) {
      detail::fail(ErrorCategory::out_of_range, "action outside the potential window");
    }
  }

  std::function<double(double)> k_;
  double a_min_;
  double a_max_;
  std::size_t nodes_;
};

inline double k_of_a(double a, const ActionTable& table, double beta, std::size_t N) {
  const double k0 = table.k0_at_action(a);
  return k0 - static_cast<double>(N) / beta;
}

inline double W_of_a(double a, const ActionTable& table, double beta) {
  return ThermostatPotential(table, beta).W(a);
}

inline std::vector<double> find_W_minimizers(const ActionTable& table, double beta) {
  return ThermostatPotential(table, beta).minimizers();
}

/// tau(H) = exp(integral of ds / k0_app(s)) from the interpolant's left end.
/// The integral is exact for a piecewise-linear k0_app.
class TauMap {
 public:
  explicit TauMap(PiecewiseLinear k0_app) : k0_(std::move(k0_app)) {
    for (double v : k0_.y()) {
      detail::require(v > 0.0, ErrorCategory::invalid_argument, "tau needs a positive k0_app");
    }
    log_tau_.assign(k0_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < k0_.size(); ++i) log_tau_[i + 1] = log_tau_[i] + segment_log(i, k0_.x()[i + 1]);
  }

  double log_tau(double H) const {
    const std::size_t i = k0_.segment(H);
    return log_tau_[i] + segment_log(i, H);
  }

  double operator()(double H) const { return std::exp(log_tau(H)); }

  const PiecewiseLinear& k0_app() const noexcept { return k0_; }

 private:
  double segment_log(std::size_t i, double H) const {
    const double dH = H - k0_.x()[i];
    const double k = k0_.y()[i];
    const double x = k0_.slope(i) * dH / k;
    // log1p(x) / m, written to stay finite as the slope goes to zero
    return dH / k * (x == 0.0 ? 1.0 : std::log1p(x) / x);
  }

  PiecewiseLinear k0_;
  std::vector<double> log_tau_;
};

inline double tau_of_H(double H, const PiecewiseLinear& k0_app) { return TauMap(k0_app)(H); }

}  // namespace nhergo
