#include "hlx/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "hlx/errors.hpp"
#include "hlx/hodge.hpp"
#include "hlx/operators.hpp"

namespace hlx {

namespace {

void require_nonempty(const Series& series) {
  if (series.empty()) throw UsageError("diagnostics series is empty");
}

Scalar gradient_norm_squared(const SpectralField& v) {
  const Grid& g = *v.grid();
  Scalar sum = 0.0;
  for (int c = 0; c < v.ncomp(); ++c) {
    sum += (g.multiplicity() * g.k_squared() * v[c].abs2()).sum();
  }
  return sum * g.volume();
}

// 2 Re <grad v, grad w>
Scalar gradient_inner(const SpectralField& v, const SpectralField& w) {
  const Grid& g = *v.grid();
  Scalar sum = 0.0;
  for (int c = 0; c < v.ncomp(); ++c) {
    sum += (g.multiplicity() * g.k_squared() * (v[c].conjugate() * w[c]).real()).sum();
  }
  return 2.0 * sum * g.volume();
}

Scalar trapezoid(Scalar acc, Scalar dt, Scalar prev_rate, Scalar rate) {
  return acc + 0.5 * dt * (prev_rate + rate);
}

Scalar corrected(Scalar acc, Scalar dt, Scalar prev_rate, Scalar rate, Scalar prev_dot,
                 Scalar dot) {
  return trapezoid(acc, dt, prev_rate, rate) + dt * dt / 12.0 * (prev_dot - dot);
}

}  // namespace

DiagnosticsRecord record(const MhdState& state, const SolverConfig& cfg,
                         const DiagnosticsRecord* running) {
  const SpectralField& u = state.u;
  const SpectralField& b = state.b;
  const int dim = u.dim();

  DiagnosticsRecord r;
  r.t = state.t;
  r.b_sq = norm_squared(b);
  r.energy = 0.5 * (norm_squared(u) + r.b_sq);
  r.cross_helicity = inner_product(u, b);
  r.b_mean = b.mean();
  r.visc_rate = cfg.nu * gradient_norm_squared(u);
  r.ohmic_rate = cfg.mu * gradient_norm_squared(b);

  const bool dissipative = cfg.nu != 0.0 || cfg.mu != 0.0;
  MhdRhs d;
  if (dissipative) {
    d = rhs(state, cfg);
    r.visc_rate_dot = cfg.nu * gradient_inner(u, d.du);
    r.ohmic_rate_dot = cfg.mu * gradient_inner(b, d.db);
  }

  if (dim == 3) {
    const SpectralField j = curl(b);
    r.helicity = inner_product(coulomb_potential(project_sigma(b)), b);
    r.helicity_rate = 2.0 * cfg.mu * inner_product(b, j);
    if (dissipative) r.helicity_rate_dot = 4.0 * cfg.mu * inner_product(d.db, j);
    const PhysicalField bg = inverse_transform(b);
    const PhysicalField jg = inverse_transform(j);
    const RealArray density = (bg[0] * jg[0] + bg[1] * jg[1] + bg[2] * jg[2]).abs();
    r.abs_helicity_rate =
        cfg.mu * density.sum() * b.grid()->volume() / static_cast<Scalar>(density.size());
  } else {
    r.msp = mean_square_potential(b);
    // |grad phi| = |b - mean b|
    const SpectralField b_sigma = project_sigma(b);
    r.msp_rate = 2.0 * cfg.mu * norm_squared(b_sigma);
    if (dissipative) r.msp_rate_dot = 4.0 * cfg.mu * inner_product(b_sigma, d.db);
  }

  if (running) {
    const Scalar h = r.t - running->t;
    const DiagnosticsRecord& p = *running;
    r.visc_diss =
        corrected(p.visc_diss, h, p.visc_rate, r.visc_rate, p.visc_rate_dot, r.visc_rate_dot);
    r.ohmic_diss =
        corrected(p.ohmic_diss, h, p.ohmic_rate, r.ohmic_rate, p.ohmic_rate_dot, r.ohmic_rate_dot);
    r.helicity_flux = corrected(p.helicity_flux, h, p.helicity_rate, r.helicity_rate,
                                p.helicity_rate_dot, r.helicity_rate_dot);
    r.msp_flux = corrected(p.msp_flux, h, p.msp_rate, r.msp_rate, p.msp_rate_dot, r.msp_rate_dot);
    r.ohmic_trapezoid = trapezoid(p.ohmic_trapezoid, h, p.ohmic_rate, r.ohmic_rate);
    r.abs_helicity_diss =
        trapezoid(running->abs_helicity_diss, h, running->abs_helicity_rate, r.abs_helicity_rate);
    r.b_sq_integral = trapezoid(running->b_sq_integral, h, running->b_sq, r.b_sq);
  }
  return r;
}

void SeriesRecorder::operator()(const MhdState& state) {
  series_.push_back(record(state, cfg_, series_.empty() ? nullptr : &series_.back()));
}

Scalar helicity_balance_residual(const Series& series) {
  require_nonempty(series);
  const Scalar h0 = series.front().helicity;
  Scalar worst = 0.0;
  for (const auto& r : series) {
    worst = std::max(worst, std::abs(r.helicity - h0 + r.helicity_flux));
  }
  return worst / std::max(1.0, std::abs(h0));
}

Scalar msp_balance_residual(const Series& series) {
  require_nonempty(series);
  const Scalar m0 = series.front().msp;
  Scalar worst = 0.0;
  for (const auto& r : series) worst = std::max(worst, std::abs(r.msp - m0 + r.msp_flux));
  return worst / std::max(1.0, std::abs(m0));
}

Scalar energy_balance_residual(const Series& series) {
  require_nonempty(series);
  const Scalar e0 = series.front().energy;
  Scalar worst = 0.0;
  for (const auto& r : series) {
    worst = std::max(worst, std::abs(r.energy + r.visc_diss + r.ohmic_diss - e0));
  }
  return e0 > 0.0 ? worst / e0 : worst;
}

Scalar max_helicity_drift(const Series& series) {
  require_nonempty(series);
  Scalar worst = 0.0;
  for (const auto& r : series) {
    worst = std::max(worst, std::abs(r.helicity - series.front().helicity));
  }
  return worst;
}

Scalar max_msp_drift(const Series& series) {
  require_nonempty(series);
  Scalar worst = 0.0;
  for (const auto& r : series) worst = std::max(worst, std::abs(r.msp - series.front().msp));
  return worst;
}

Scalar b_mean_variation(const Series& series) {
  require_nonempty(series);
  Scalar worst = 0.0;
  for (const auto& r : series) {
    worst = std::max(worst, (r.b_mean - series.front().b_mean).cwiseAbs().maxCoeff());
  }
  return worst;
}

Scalar cross_helicity_drift(const Series& series) {
  require_nonempty(series);
  const Scalar x0 = series.front().cross_helicity;
  const Scalar scale = std::max({1e-300, std::abs(x0), series.front().energy});
  Scalar worst = 0.0;
  for (const auto& r : series) worst = std::max(worst, std::abs(r.cross_helicity - x0));
  return worst / scale;
}

BoundVerdict sqrt_mu_bound_check(const Series& series, const SolverConfig& cfg, Scalar E0) {
  require_nonempty(series);
  if (!(cfg.mu > 0.0)) throw UsageError("sqrt-mu bound requires mu > 0");
  const DiagnosticsRecord& last = series.back();
  const Scalar root = std::sqrt(cfg.mu);
  const Scalar horizon = last.t - series.front().t;
  BoundVerdict v;
  v.lhs = last.abs_helicity_diss;
  v.rhs = 0.5 * root * (last.b_sq_integral + last.ohmic_trapezoid);
  v.energy_envelope = 0.5 * root * (2.0 * horizon + 1.0) * E0;
  v.holds = v.lhs <= v.rhs * (1.0 + 1e-9);
  return v;
}

int dissipation_peak_shell(const SpectralField& b) {
  const Grid& g = *b.grid();
  const Scalar unit = 2.0 * std::numbers::pi / g.spec().side_length;
  const int nshell = static_cast<int>(std::ceil(std::sqrt(3.0) * g.modes() / 2.0)) + 2;
  std::vector<Scalar> spectrum(nshell, 0.0);
  for (Eigen::Index s = 0; s < g.spectral_size(); ++s) {
    Scalar power = 0.0;
    for (int c = 0; c < b.ncomp(); ++c) power += std::norm(b[c](s));
    const int shell = static_cast<int>(std::lround(std::sqrt(g.k_squared()(s)) / unit));
    spectrum[shell] += g.multiplicity()(s) * g.k_squared()(s) * power;
  }
  return static_cast<int>(std::max_element(spectrum.begin(), spectrum.end()) - spectrum.begin());
}

bool is_resolved(const SpectralField& b) {
  return 9 * dissipation_peak_shell(b) < 2 * b.spec().modes;
}

void write_series_csv(std::ostream& os, const Series& series, int dim) {
  os << "t,energy,cross_helicity,helicity,msp,visc_diss,ohmic_diss,helicity_flux,b_mean_x,b_mean_y";
  if (dim == 3) os << ",b_mean_z";
  os << '\n';
  for (const auto& r : series) {
    os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}", r.t,
                      r.energy, r.cross_helicity, r.helicity, r.msp, r.visc_diss, r.ohmic_diss,
                      r.helicity_flux);
    for (int c = 0; c < dim; ++c) {
      os << fmt::format(",{:.17g}", c < r.b_mean.size() ? r.b_mean(c) : 0.0);
    }
    os << '\n';
  }
}

}  // namespace hlx
