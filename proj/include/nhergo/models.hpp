#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "nhergo/error.hpp"

namespace nhergo {

/// Fixed-capacity coordinate vector of length 1 or 2.
class Coords {
 public:
  Coords() = default;
  explicit Coords(double x) : v_{x, 0.0}, n_(1) {}
  Coords(double x, double y) : v_{x, y}, n_(2) {}

  static Coords zeros(std::size_t n) { return n == 2 ? Coords(0.0, 0.0) : Coords(0.0); }

  std::size_t size() const noexcept { return n_; }
  double operator[](std::size_t i) const noexcept { return v_[i]; }
  double& operator[](std::size_t i) noexcept { return v_[i]; }

  double norm2() const noexcept { return v_[0] * v_[0] + v_[1] * v_[1]; }
  double norm() const noexcept { return std::sqrt(norm2()); }
  bool finite() const noexcept { return std::isfinite(v_[0]) && std::isfinite(v_[1]); }

  Coords& operator+=(const Coords& o) noexcept {
    v_[0] += o.v_[0];
    v_[1] += o.v_[1];
    return *this;
  }
  Coords& operator-=(const Coords& o) noexcept {
    v_[0] -= o.v_[0];
    v_[1] -= o.v_[1];
    return *this;
  }
  Coords& operator*=(double s) noexcept {
    v_[0] *= s;
    v_[1] *= s;
    return *this;
  }

  friend Coords operator+(Coords a, const Coords& b) noexcept { return a += b; }
  friend Coords operator-(Coords a, const Coords& b) noexcept { return a -= b; }
  friend Coords operator*(Coords a, double s) noexcept { return a *= s; }
  friend Coords operator*(double s, Coords a) noexcept { return a *= s; }
  friend double dot(const Coords& a, const Coords& b) noexcept {
    return a.v_[0] * b.v_[0] + a.v_[1] * b.v_[1];
  }
  friend bool operator==(const Coords&, const Coords&) = default;

 private:
  // unused trailing components stay exactly zero
  std::array<double, 2> v_{0.0, 0.0};
  std::size_t n_ = 1;
};

enum class ModelKind { harmonic1d, pendulum1d, centralforce2d };

inline std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::harmonic1d: return "harmonic";
    case ModelKind::pendulum1d: return "pendulum";
    case ModelKind::centralforce2d: return "centralforce";
  }
  return "unknown";
}

inline ModelKind parse_model_kind(std::string_view s) {
  if (s == "harmonic" || s == "harmonic1d") return ModelKind::harmonic1d;
  if (s == "pendulum" || s == "pendulum1d") return ModelKind::pendulum1d;
  if (s == "centralforce" || s == "centralforce2d" || s == "central") {
    return ModelKind::centralforce2d;
  }
  detail::fail(ErrorCategory::parse, "unknown model '" + std::string(s) + "'");
}

/// Physical model: Hamiltonian kind, inverse temperature (k_B = 1) and
/// thermostat mass. The mass matrix is the identity for every kind.
class ModelSpec {
 public:
  ModelSpec(ModelKind kind, double beta, double Q) : kind_(kind), beta_(beta), Q_(Q) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      detail::fail(ErrorCategory::invalid_argument, "beta must be positive and finite");
    }
    if (!(Q > 0.0) || !std::isfinite(Q)) {
      detail::fail(ErrorCategory::invalid_argument, "Q must be positive and finite");
    }
  }

  ModelKind kind() const noexcept { return kind_; }
  double beta() const noexcept { return beta_; }
  double Q() const noexcept { return Q_; }
  std::size_t dim() const noexcept { return kind_ == ModelKind::centralforce2d ? 2 : 1; }

  ModelSpec with_Q(double Q) const { return ModelSpec(kind_, beta_, Q); }
  ModelSpec with_beta(double beta) const { return ModelSpec(kind_, beta, Q_); }

 private:
  ModelKind kind_;
  double beta_;
  double Q_;
};

struct PhaseState {
  Coords q;
  Coords p;

  bool finite() const noexcept { return q.finite() && p.finite(); }
  friend bool operator==(const PhaseState&, const PhaseState&) = default;
};

struct ThermostatState {
  PhaseState phase;
  double xi = 0.0;

  bool finite() const noexcept { return phase.finite() && std::isfinite(xi); }
  friend bool operator==(const ThermostatState&, const ThermostatState&) = default;
};

inline void check_dim(const ModelSpec& model, const Coords& q) {
  if (q.size() != model.dim()) {
    detail::fail(ErrorCategory::invalid_argument, "coordinate length does not match model dimension");
  }
}

/// Radial potential of the central-force model, V(r) = r^2 + r^4.
inline double central_potential(double r) noexcept {
  const double r2 = r * r;
  return r2 + r2 * r2;
}

inline double potential(const ModelSpec& model, const Coords& q) {
  check_dim(model, q);
  switch (model.kind()) {
    case ModelKind::harmonic1d: return 0.5 * q[0] * q[0];
    case ModelKind::pendulum1d: return -std::cos(q[0]);
    case ModelKind::centralforce2d: {
      const double r2 = q.norm2();
      return r2 + r2 * r2;
    }
  }
  return 0.0;
}

inline Coords grad_potential(const ModelSpec& model, const Coords& q) {
  check_dim(model, q);
  switch (model.kind()) {
    case ModelKind::harmonic1d: return Coords(q[0]);
    case ModelKind::pendulum1d: return Coords(std::sin(q[0]));
    case ModelKind::centralforce2d: {
      // (2r + 4r^3) q / r = (2 + 4 r^2) q; smooth through the origin
      const double f = 2.0 + 4.0 * q.norm2();
      return Coords(f * q[0], f * q[1]);
    }
  }
  return Coords::zeros(model.dim());
}

inline double kinetic_energy(const Coords& p) noexcept { return 0.5 * p.norm2(); }

inline double hamiltonian(const ModelSpec& model, const PhaseState& s) {
  return kinetic_energy(s.p) + potential(model, s.q);
}

inline double angular_momentum(const PhaseState& s) {
  if (s.q.size() != 2 || s.p.size() != 2) {
    detail::fail(ErrorCategory::invalid_argument, "angular momentum needs a two-dimensional state");
  }
  return s.q[0] * s.p[1] - s.q[1] * s.p[0];
}

/// Nose-Hoover vector field (q', p', xi').
inline ThermostatState nh_vector_field(const ModelSpec& model, const ThermostatState& s) {
  const auto& [q, p] = s.phase;
  check_dim(model, q);
  ThermostatState d;
  d.phase.q = p;
  d.phase.p = grad_potential(model, q) * -1.0 - p * (s.xi / model.Q());
  d.xi = p.norm2() - static_cast<double>(model.dim()) / model.beta();
  return d;
}

/// H_L(r, p_r) = p_r^2/2 + L^2/(2 r^2) + V(r) for the central-force model.
inline double effective_radial_hamiltonian(const ModelSpec& model, double r, double p_r, double L) {
  if (model.kind() != ModelKind::centralforce2d) {
    detail::fail(ErrorCategory::invalid_argument, "reduced radial Hamiltonian needs the central-force model");
  }
  if (!(r > 0.0)) detail::fail(ErrorCategory::invalid_argument, "radius must be positive");
  return 0.5 * p_r * p_r + 0.5 * L * L / (r * r) + central_potential(r);
}

inline PhaseState make_phase(double q, double p) { return {Coords(q), Coords(p)}; }

inline PhaseState make_phase(double q1, double q2, double p1, double p2) {
  return {Coords(q1, q2), Coords(p1, p2)};
}

}  // namespace nhergo
