#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "hlx/spectral_field.hpp"

namespace hlx {

/// Velocity and magnetic field on a common torus, both divergence-free.
struct MhdState {
  SpectralField u;
  SpectralField b;
  Scalar t = 0.0;
};

MhdState zero_state(const GridPtr& grid);

struct SolverConfig {
  Scalar nu = 0.0;  ///< viscosity
  Scalar mu = 0.0;  ///< resistivity
  /// Fixed step; empty selects the advective CFL step each step.
  std::optional<Scalar> dt;
  /// Courant number for the advective limit max(|u|+|b|) dt N / (2L) <= cfl.
  Scalar cfl = 0.5;
  Scalar t_end = 1.0;
  Scalar record_every = 0.01;

  /// Throws ConfigurationError on negative coefficients or nonpositive steps.
  void validate() const;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// Time derivatives of u and b.
struct MhdRhs {
  SpectralField du;
  SpectralField db;
};

/// Full right-hand side of the truncated system: projected Lorentz and
/// advection terms plus the viscous and resistive Laplacians. Both outputs
/// are divergence-free and db has zero mean.
MhdRhs rhs(const MhdState& state, const SolverConfig& cfg);

/// Nonlinear part of rhs only (what the integrating factor leaves over).
MhdRhs nonlinear_terms(const MhdState& state);

/// Largest pointwise |u| + |b| on the grid.
Scalar max_signal_speed(const MhdState& state);

/// Step allowed by the advective CFL condition (infinite for a static state).
Scalar cfl_step(const MhdState& state, const SolverConfig& cfg);

/// One integrating-factor RK4 step of size `dt`: the stiff linear terms are
/// integrated exactly through exp(-nu |k|^2 dt) and exp(-mu |k|^2 dt).
/// Throws DivergedRunError if the result is not finite.
MhdState step(const MhdState& state, const SolverConfig& cfg, Scalar dt);
/// Step of size cfg.dt (or the CFL step when cfg.dt is empty).
MhdState step(const MhdState& state, const SolverConfig& cfg);

using Observer = std::function<void(const MhdState&)>;

struct Trajectory {
  MhdState final_state;
  std::size_t steps = 0;
  std::size_t records = 0;
  Scalar smallest_dt = 0.0;
};

/// Advances `initial` to cfg.t_end. Observers see the initial state, every
/// multiple of cfg.record_every, and the final state; steps are shortened so
/// that those times are hit exactly.
Trajectory integrate(const MhdState& initial, const SolverConfig& cfg,
                     const std::vector<Observer>& observers);

/// True when every coefficient of u and b is finite.
bool is_finite(const MhdState& state);

}  // namespace hlx
