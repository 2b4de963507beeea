#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "hlx/mhd.hpp"

namespace hlx {

/// Named initial condition.
///
/// Presets and their parameters (defaults in brackets):
///  - "beltrami-abc": b = amplitude [1] * (A sin z + C cos y, B sin x + A cos z,
///    C sin y + B cos x) with A, B, C [1]; u = u_amplitude [0] times the same
///    field. In 2-D the preset is the |k| = 1 field (-sin y, sin x).
///  - "orszag-tang-like": 2-D u = u_amplitude [1] (-sin y, sin x),
///    b = b_amplitude [1] (-sin 2y, sin x). 3-D keeps the same u (zero z
///    component) and uses the helical b = (-sin 2y + sin z, sin x + cos z,
///    sin y + cos x).
///  - "random-solenoidal": Gaussian coefficients with shell energy spectrum
///    k^-slope [5/3] for 1 <= |k| <= k_max [4], Leray-projected and scaled
///    to mean kinetic/magnetic energy densities energy_u, energy_b [0.5 each,
///    i.e. unit RMS]. Zero mean. Fully determined by `seed`.
/// Coordinates are scaled by 2 pi / L so every preset is periodic on the torus.
/// All presets have zero-mean u and b. `b_mean`, when given, is written into
/// the k = 0 mode of b after everything else.
struct InitialDataSpec {
  std::string preset = "beltrami-abc";
  std::map<std::string, Scalar> params;
  std::uint64_t seed = 0;
  std::optional<Vector> b_mean;
};

bool operator==(const InitialDataSpec& a, const InitialDataSpec& b);

/// Throws UsageError for an unknown preset or a preset that does not exist in
/// the requested dimension.
MhdState make_initial_data(const TorusSpec& torus, const InitialDataSpec& spec);

/// Zero-mean, divergence-free field of unit RMS built from modes with
/// max-norm wavenumber `mode` (ABC-type in 3-D, cellular in 2-D).
SpectralField oscillating_field(const GridPtr& grid, int mode);

}  // namespace hlx
