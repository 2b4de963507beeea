#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hlx/diagnostics.hpp"
#include "hlx/initial_data.hpp"

namespace hlx {

/// How the viscosity follows the resistivity along a sweep.
struct NuRule {
  bool equal_to_mu = true;
  Scalar fixed = 0.0;  ///< used when equal_to_mu is false

  Scalar operator()(Scalar mu) const { return equal_to_mu ? mu : fixed; }
  friend bool operator==(const NuRule&, const NuRule&) = default;
};

/// Optional high-frequency perturbation of fixed RMS `amplitude` added to u and
/// b on row j at wavenumber min(base_mode + j, max retained). Models initial
/// data that converge only weakly along the sweep.
struct Perturbation {
  Scalar amplitude = 0.0;
  int base_mode = 2;

  friend bool operator==(const Perturbation&, const Perturbation&) = default;
};

struct SweepPlan {
  TorusSpec torus;
  InitialDataSpec initial;
  std::vector<Scalar> mu_values;  ///< strictly decreasing, each >= 1e-8
  NuRule nu_rule;
  Scalar t_end = 1.0;
  std::optional<Scalar> dt;
  Scalar cfl = 0.5;
  Scalar record_every = 0.01;
  Perturbation perturbation;
  int threads = 1;

  /// Throws ConfigurationError on a malformed ladder; with `require_fit` the
  /// ladder must also hold at least three values.
  void validate(bool require_fit) const;
  SolverConfig solver_config(Scalar mu) const;
};

struct SweepRow {
  Scalar mu = 0.0;
  Scalar nu = 0.0;
  Scalar max_helicity_drift = 0.0;  ///< 3-D
  Scalar max_msp_drift = 0.0;       ///< 2-D
  Scalar energy_balance_residual = 0.0;
  Scalar helicity_balance_residual = 0.0;
  Scalar msp_balance_residual = 0.0;
  /// sqrt(mu) bound verdict (3-D rows).
  std::optional<BoundVerdict> bound;
  /// Per-row drift envelope: 3-D 2 * bound.rhs; 2-D 2 mu int |b|^2 dt.
  Scalar envelope = 0.0;
  bool within_envelope = false;
  int peak_shell = 0;
  bool resolved = true;
  bool diverged = false;
  std::string message;
  Series series;

  /// Drift that enters the scaling fit: helicity in 3-D, msp in 2-D.
  Scalar drift(int dim) const { return dim == 3 ? max_helicity_drift : max_msp_drift; }
  bool flagged() const { return diverged || !resolved; }
};

struct PowerLawFit {
  Scalar slope = 0.0;
  Scalar intercept = 0.0;  ///< natural log of the prefactor
  int points = 0;
};

struct SweepResult {
  int dim = 3;
  std::vector<SweepRow> rows;  ///< ordered by mu, descending
  std::optional<PowerLawFit> fit;
  /// max over unflagged rows of drift / sqrt(mu)
  Scalar bound_constant = 0.0;

  std::size_t flagged_count() const;
};

/// Least-squares line through (log x, log y) for points with y > 1e-14.
/// Empty when fewer than three points qualify.
std::optional<PowerLawFit> fit_power_law(std::span<const std::pair<Scalar, Scalar>> points);

/// One independent trajectory per mu from identical (seeded) initial data.
/// Rows run concurrently on plan.threads workers; the result is independent of
/// the worker count. Diverged or under-resolved rows are flagged and kept out
/// of the fit.
SweepResult run_sweep(const SweepPlan& plan);

/// Single row of a sweep (row index j selects the perturbation frequency).
SweepRow run_sweep_row(const SweepPlan& plan, std::size_t j);

}  // namespace hlx
