#pragma once

#include <iosfwd>
#include <vector>

#include "hlx/mhd.hpp"

namespace hlx {

/// Conserved and dissipated quantities at one recording time. Cumulative
/// dissipation integrals use the trapezoid rule over the recording grid with
/// the Euler-Maclaurin end correction h^2/12 (f'(a) - f'(b)); the rate
/// derivatives come from the semi-discrete right-hand side.
struct DiagnosticsRecord {
  Scalar t = 0.0;
  Scalar energy = 0.0;          ///< (|u|^2 + |b|^2)/2 integrated
  Scalar cross_helicity = 0.0;  ///< integral of u.b
  Scalar helicity = 0.0;        ///< Coulomb-gauge magnetic helicity (3-D; 0 in 2-D)
  Scalar msp = 0.0;             ///< mean-square magnetic potential (2-D; 0 in 3-D)
  Scalar visc_diss = 0.0;       ///< nu int |grad u|^2 dt
  Scalar ohmic_diss = 0.0;      ///< mu int |curl b|^2 dt
  Scalar helicity_flux = 0.0;   ///< 2 mu int int b.curl b dt
  Vector b_mean;

  // Not part of the CSV contract; needed by the bound checks.
  Scalar msp_flux = 0.0;           ///< 2 mu int |grad phi|^2 dt (2-D)
  Scalar abs_helicity_diss = 0.0;  ///< mu int int |b.curl b| dx dt (3-D)
  Scalar b_sq_integral = 0.0;      ///< int |b|^2 dt
  Scalar ohmic_trapezoid = 0.0;    ///< ohmic_diss without the end correction

  // Plain trapezoid on the three columns above keeps the pointwise Young
  // inequality exact after quadrature.

  // Instantaneous integrands of the cumulative columns.
  Scalar visc_rate = 0.0;
  Scalar ohmic_rate = 0.0;
  Scalar helicity_rate = 0.0;
  Scalar msp_rate = 0.0;
  Scalar abs_helicity_rate = 0.0;
  Scalar b_sq = 0.0;

  // Time derivatives of the corrected integrands.
  Scalar visc_rate_dot = 0.0;
  Scalar ohmic_rate_dot = 0.0;
  Scalar helicity_rate_dot = 0.0;
  Scalar msp_rate_dot = 0.0;
};

using Series = std::vector<DiagnosticsRecord>;

/// Diagnostics of `state`; cumulative columns continue from `running` (or
/// start at zero when it is null). Helicity uses the Coulomb gauge.
DiagnosticsRecord record(const MhdState& state, const SolverConfig& cfg,
                         const DiagnosticsRecord* running = nullptr);

/// Observer that appends a record per call.
class SeriesRecorder {
 public:
  explicit SeriesRecorder(SolverConfig cfg) : cfg_(std::move(cfg)) {}
  void operator()(const MhdState& state);
  Observer observer() {
    return [this](const MhdState& s) { (*this)(s); };
  }
  const Series& series() const { return series_; }
  Series take() { return std::move(series_); }

 private:
  SolverConfig cfg_;
  Series series_;
};

/// max_t |H(t) - H(0) + helicity_flux(t)| / max(1, |H(0)|). Throws
/// UsageError on an empty series.
Scalar helicity_balance_residual(const Series& series);

/// max_t |msp(t) - msp(0) + msp_flux(t)| / max(1, msp(0)).
Scalar msp_balance_residual(const Series& series);

/// max_t |E(t) + visc(t) + ohmic(t) - E(0)| / E(0) (absolute when E(0) = 0).
Scalar energy_balance_residual(const Series& series);

Scalar max_helicity_drift(const Series& series);
Scalar max_msp_drift(const Series& series);
/// Largest absolute change of any b_mean component from its initial value.
Scalar b_mean_variation(const Series& series);
/// max_t |X(t) - X(0)| / max(1e-300, |X(0)|, E(0)) for the cross helicity X.
Scalar cross_helicity_drift(const Series& series);

struct BoundVerdict {
  bool holds = false;
  Scalar lhs = 0.0;  ///< mu int int |b.curl b|
  Scalar rhs = 0.0;  ///< sqrt(mu)/2 (int |b|^2 + mu int |curl b|^2)
  /// sqrt(mu)/2 (2T + 1) E0: the rhs bounded through the energy inequality.
  Scalar energy_envelope = 0.0;
};

/// Pointwise Young inequality behind the sqrt(mu) bound on helicity
/// dissipation. holds <=> lhs <= rhs (1 + 1e-9). Throws UsageError for mu <= 0
/// or an empty series.
BoundVerdict sqrt_mu_bound_check(const Series& series, const SolverConfig& cfg, Scalar E0);

/// Shell (in units of 2 pi / L) holding the peak of the ohmic dissipation
/// spectrum |k|^2 |b(k)|^2.
int dissipation_peak_shell(const SpectralField& b);
/// True when the dissipation spectrum peaks below 2N/9.
bool is_resolved(const SpectralField& b);

/// CSV with header t,energy,cross_helicity,helicity,msp,visc_diss,ohmic_diss,
/// helicity_flux,b_mean_x,b_mean_y[,b_mean_z]; 17 significant digits.
void write_series_csv(std::ostream& os, const Series& series, int dim);

}  // namespace hlx
