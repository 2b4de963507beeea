#include "hlx/mhd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hlx/errors.hpp"
#include "hlx/operators.hpp"

namespace hlx {

namespace {

PhysicalField lorentz_and_advection(const PhysicalField& u, const PhysicalField& w,
                                    const PhysicalField& b, const PhysicalField& j, int dim) {
  PhysicalField f(u.grid(), dim);
  if (dim == 3) {
    // u x w + j x b
    f[0] = u[1] * w[2] - u[2] * w[1] + j[1] * b[2] - j[2] * b[1];
    f[1] = u[2] * w[0] - u[0] * w[2] + j[2] * b[0] - j[0] * b[2];
    f[2] = u[0] * w[1] - u[1] * w[0] + j[0] * b[1] - j[1] * b[0];
  } else {
    // u x (w e_z) + (j e_z) x b with scalar vorticity and current
    f[0] = u[1] * w[0] - j[0] * b[1];
    f[1] = -u[0] * w[0] + j[0] * b[0];
  }
  return f;
}

MhdRhs nonlinear_impl(const MhdState& s, Scalar* max_speed) {
  const int dim = s.u.dim();
  const PhysicalField u = inverse_transform(s.u);
  const PhysicalField b = inverse_transform(s.b);
  const PhysicalField w = inverse_transform(curl(s.u));
  const PhysicalField j = inverse_transform(curl(s.b));

  if (max_speed) {
    RealArray u2 = RealArray::Zero(u[0].size());
    RealArray b2 = RealArray::Zero(u[0].size());
    for (int c = 0; c < dim; ++c) {
      u2 += u[c].square();
      b2 += b[c].square();
    }
    *max_speed = (u2.sqrt() + b2.sqrt()).maxCoeff();
  }

  SpectralField du = leray_project(forward_transform(lorentz_and_advection(u, w, b, j, dim)));
  for (int c = 0; c < dim; ++c) du[c](0) = 0.0;

  SpectralField db;
  if (dim == 3) {
    PhysicalField uxb(u.grid(), 3);
    uxb[0] = u[1] * b[2] - u[2] * b[1];
    uxb[1] = u[2] * b[0] - u[0] * b[2];
    uxb[2] = u[0] * b[1] - u[1] * b[0];
    db = curl(forward_transform(uxb));
  } else {
    PhysicalField bxu(u.grid(), 1);
    bxu[0] = b[0] * u[1] - b[1] * u[0];
    db = perp_grad(forward_transform(bxu));
  }
  return {std::move(du), std::move(db)};
}

// y <- factor * y, component-wise
void scale_by(SpectralField& f, const RealArray& factor) {
  for (int c = 0; c < f.ncomp(); ++c) f[c] *= factor;
}

void axpy(SpectralField& y, Scalar a, const SpectralField& x) {
  for (int c = 0; c < y.ncomp(); ++c) y[c] += a * x[c];
}

}  // namespace

MhdState zero_state(const GridPtr& grid) {
  return {SpectralField(grid, grid->dim()), SpectralField(grid, grid->dim()), 0.0};
}

void SolverConfig::validate() const {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ConfigurationError("nu must be nonnegative");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ConfigurationError("mu must be nonnegative");
  if (dt && !(*dt > 0.0)) throw ConfigurationError("dt must be positive");
  if (!(cfl > 0.0)) throw ConfigurationError("cfl must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigurationError("t_end must be nonnegative");
  if (!(record_every > 0.0)) throw ConfigurationError("record_every must be positive");
}

MhdRhs nonlinear_terms(const MhdState& state) { return nonlinear_impl(state, nullptr); }

MhdRhs rhs(const MhdState& state, const SolverConfig& cfg) {
  MhdRhs r = nonlinear_impl(state, nullptr);
  const RealArray& k2 = state.u.grid()->k_squared();
  for (int c = 0; c < state.u.ncomp(); ++c) {
    r.du[c] -= cfg.nu * k2 * state.u[c];
    r.db[c] -= cfg.mu * k2 * state.b[c];
  }
  return r;
}

Scalar max_signal_speed(const MhdState& state) {
  const PhysicalField u = inverse_transform(state.u);
  const PhysicalField b = inverse_transform(state.b);
  RealArray u2 = RealArray::Zero(u[0].size());
  RealArray b2 = RealArray::Zero(u[0].size());
  for (int c = 0; c < u.ncomp(); ++c) {
    u2 += u[c].square();
    b2 += b[c].square();
  }
  return (u2.sqrt() + b2.sqrt()).maxCoeff();
}

Scalar cfl_step(const MhdState& state, const SolverConfig& cfg) {
  const Scalar speed = max_signal_speed(state);
  if (speed == 0.0) return std::numeric_limits<Scalar>::infinity();
  const TorusSpec& spec = state.u.spec();
  return cfg.cfl * 2.0 * spec.side_length / (spec.modes * speed);
}

bool is_finite(const MhdState& state) {
  for (int c = 0; c < state.u.ncomp(); ++c) {
    if (!state.u[c].allFinite() || !state.b[c].allFinite()) return false;
  }
  return true;
}

MhdState step(const MhdState& s, const SolverConfig& cfg, Scalar dt) {
  const RealArray& k2 = s.u.grid()->k_squared();
  const RealArray eu_half = (-0.5 * cfg.nu * dt * k2).exp();
  const RealArray eb_half = (-0.5 * cfg.mu * dt * k2).exp();
  const RealArray eu = eu_half.square();
  const RealArray eb = eb_half.square();

  // Lawson RK4 in the variable exp(-L t) y.
  const MhdRhs k1 = nonlinear_terms(s);

  MhdState y2 = s;
  axpy(y2.u, 0.5 * dt, k1.du);
  axpy(y2.b, 0.5 * dt, k1.db);
  scale_by(y2.u, eu_half);
  scale_by(y2.b, eb_half);
  const MhdRhs k2s = nonlinear_terms(y2);

  MhdState half = s;
  scale_by(half.u, eu_half);
  scale_by(half.b, eb_half);

  MhdState y3 = half;
  axpy(y3.u, 0.5 * dt, k2s.du);
  axpy(y3.b, 0.5 * dt, k2s.db);
  const MhdRhs k3 = nonlinear_terms(y3);

  MhdState y4 = half;
  axpy(y4.u, dt, k3.du);
  axpy(y4.b, dt, k3.db);
  scale_by(y4.u, eu_half);
  scale_by(y4.b, eb_half);
  const MhdRhs k4 = nonlinear_terms(y4);

  MhdState out = s;
  const Scalar w = dt / 6.0;
  for (int c = 0; c < s.u.ncomp(); ++c) {
    out.u[c] = eu * (s.u[c] + w * k1.du[c]) + eu_half * (2.0 * w) * (k2s.du[c] + k3.du[c]) +
               w * k4.du[c];
    out.b[c] = eb * (s.b[c] + w * k1.db[c]) + eb_half * (2.0 * w) * (k2s.db[c] + k3.db[c]) +
               w * k4.db[c];
  }
  out.t = s.t + dt;
  if (!is_finite(out)) {
    throw DivergedRunError(fmt::format("non-finite state at t = {:.6g}", out.t), out.t);
  }
  return out;
}

MhdState step(const MhdState& state, const SolverConfig& cfg) {
  return step(state, cfg, cfg.dt ? *cfg.dt : cfl_step(state, cfg));
}

Trajectory integrate(const MhdState& initial, const SolverConfig& cfg,
                     const std::vector<Observer>& observers) {
  cfg.validate();
  auto notify = [&](const MhdState& s) {
    for (const auto& obs : observers) obs(s);
  };

  Trajectory traj{initial, 0, 0, std::numeric_limits<Scalar>::infinity()};
  MhdState& s = traj.final_state;
  const Scalar t0 = initial.t;
  const Scalar t_final = t0 + cfg.t_end;
  notify(s);
  ++traj.records;

  for (long k = 1; s.t < t_final; ++k) {
    Scalar target = std::min(t0 + static_cast<Scalar>(k) * cfg.record_every, t_final);
    // absorb a record interval shorter than round-off into the final one
    if (t_final - target <= 1e-12 * std::max(1.0, std::abs(t_final))) target = t_final;

    while (s.t < target) {
      const Scalar remaining = target - s.t;
      Scalar h = cfg.dt ? *cfg.dt : cfl_step(s, cfg);
      if (!(h > 0.0)) {
        throw DivergedRunError(fmt::format("step size collapsed at t = {:.6g}", s.t), s.t);
      }
      const Scalar n = std::ceil(remaining / h * (1.0 - 1e-12));
      h = remaining / std::max(n, 1.0);
      const bool last = n <= 1.0;
      s = step(s, cfg, h);
      if (last) s.t = target;
      traj.smallest_dt = std::min(traj.smallest_dt, h);
      ++traj.steps;
    }
    notify(s);
    ++traj.records;
  }
  if (traj.steps == 0) traj.smallest_dt = 0.0;
  return traj;
}

}  // namespace hlx
