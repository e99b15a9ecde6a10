#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "nhergo/error.hpp"

namespace nhergo {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline GaussLegendreRule compute_gauss_legendre(std::size_t n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace detail

/// Cached rule; safe to call concurrently.
inline const GaussLegendreRule& gauss_legendre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussLegendreRule>> cache;
  detail::require(n >= 1, ErrorCategory::invalid_argument, "quadrature needs at least one node");
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(detail::compute_gauss_legendre(n));
  return *slot;
}

inline constexpr std::size_t default_quadrature_nodes = 256;

template <class F>
double integrate_gauss_legendre(F&& f, double lo, double hi, std::size_t nodes = default_quadrature_nodes) {
  const auto& rule = gauss_legendre(nodes);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

/// Integral over [lo, hi] of an integrand with square-root behaviour at both
/// ends. Uses x = mid + half*sin(s); `f(x, d_lo, d_hi)` receives the distances
/// x - lo and hi - x evaluated without cancellation.
template <class F>
double integrate_between_turning_points(F&& f, double lo, double hi,
                                        std::size_t nodes = default_quadrature_nodes) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  constexpr double quarter_pi = std::numbers::pi / 4.0;
  auto g = [&](double s) {
    const double c = std::cos(quarter_pi - 0.5 * s);
    const double sn = std::sin(quarter_pi - 0.5 * s);
    const double d_lo = 2.0 * half * c * c;
    const double d_hi = 2.0 * half * sn * sn;
    return f(mid + half * std::sin(s), d_lo, d_hi) * half * std::cos(s);
  };
  return integrate_gauss_legendre(g, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi, nodes);
}

/// Integral over [end, other] (either orientation) of an integrand with a
/// square-root endpoint at `end` only. Uses x = end + (other - end) t^2;
/// `f(x, d)` receives the exact offset d = x - end.
template <class F>
double integrate_from_turning_point(F&& f, double end, double other,
                                    std::size_t nodes = default_quadrature_nodes) {
  const double span = other - end;
  auto g = [&](double t) {
    const double d = span * t * t;
    return f(end + d, d) * 2.0 * span * t;
  };
  return integrate_gauss_legendre(g, 0.0, 1.0, nodes);
}

/// Root of f on [lo, hi] given a sign change; TOMS 748 to full precision.
template <class F>
double bracketed_root(F&& f, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    detail::fail(ErrorCategory::out_of_range, "root is not bracketed");
  }
  std::uintmax_t max_iter = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                   boost::math::tools::eps_tolerance<double>(52), max_iter);
  return 0.5 * (r.first + r.second);
}

/// Plain bisection to an absolute tolerance in x; used where the caller
/// wants the refinement tolerance stated explicitly.
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    detail::fail(ErrorCategory::out_of_range, "root is not bracketed");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace nhergo
