#pragma once

#include <optional>

#include "hlx/spectral_field.hpp"

namespace hlx {

/// Orthogonal splitting of a divergence-free field into its curl-range part
/// (zero mean) and its harmonic part. On a torus the harmonic fields are the
/// constants, so the harmonic part is the spatial mean.
struct GaugeDecomposition {
  SpectralField sigma_part;
  Vector harmonic_part;
  /// Coulomb-gauge potential of sigma_part (3-D only).
  std::optional<SpectralField> potential;
};

/// Relative divergence above which decompose and friends reject their input.
inline constexpr Scalar kDivergenceTolerance = 1e-10;

/// Throws PreconditionError if `b` is not divergence-free.
GaugeDecomposition decompose(const SpectralField& b);

/// Projections onto the curl-range and harmonic subspaces.
SpectralField project_sigma(const SpectralField& b);
SpectralField project_harmonic(const SpectralField& b);

/// Orthonormal basis of the harmonic space: unit constant fields scaled by
/// |Omega|^{-1/2}.
std::vector<SpectralField> harmonic_basis(const GridPtr& grid);

/// psi(k) = i k x b(k) / |k|^2, psi(0) = 0. 3-D only; the input must have
/// zero mean and zero divergence (constants are not curls of periodic fields).
SpectralField coulomb_potential(const SpectralField& b_sigma);

/// 2-D stream function phi with zero mean and -perp_grad(phi) equal to the
/// zero-mean part of b.
SpectralField stream_function(const SpectralField& b);

/// Magnetic helicity integral of (psi + gauge_shift) . b, where psi is the
/// Coulomb potential of the sigma part. Equals the Coulomb-gauge value plus
/// gauge_shift . b_H |Omega|. 3-D only.
Scalar helicity(const SpectralField& b, const Vector& gauge_shift);
Scalar helicity(const SpectralField& b);

/// Integral of phi^2 for the stream function phi of b. 2-D only.
Scalar mean_square_potential(const SpectralField& b);

}  // namespace hlx
