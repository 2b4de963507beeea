#pragma once

#include <initializer_list>
#include <vector>

#include "hlx/torus.hpp"

namespace hlx {

/// Real field sampled on the uniform grid: `ncomp` arrays of modes^dim values,
/// row-major with x slowest.
class PhysicalField {
 public:
  PhysicalField() = default;
  PhysicalField(GridPtr grid, int ncomp);

  const GridPtr& grid() const { return grid_; }
  const TorusSpec& spec() const { return grid_->spec(); }
  int ncomp() const { return static_cast<int>(components_.size()); }

  RealArray& operator[](int c) { return components_[c]; }
  const RealArray& operator[](int c) const { return components_[c]; }

 private:
  GridPtr grid_;
  std::vector<RealArray> components_;
};

/// Truncated Fourier representation of a real scalar (ncomp = 1) or vector
/// (ncomp = dim) field. Coefficient normalization puts the spatial mean in
/// the k = 0 slot.
///
/// Only the half spectrum is stored (see Grid); the conjugate-symmetric partner
/// of each coefficient is implicit. Modes removed by the 2/3 rule are zero for
/// every field produced by the library.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(GridPtr grid, int ncomp);

  static SpectralField zeros_like(const SpectralField& other, int ncomp);

  const GridPtr& grid() const { return grid_; }
  const TorusSpec& spec() const { return grid_->spec(); }
  int dim() const { return grid_->dim(); }
  int ncomp() const { return static_cast<int>(components_.size()); }
  bool is_vector() const { return ncomp() == dim(); }

  ComplexArray& operator[](int c) { return components_[c]; }
  const ComplexArray& operator[](int c) const { return components_[c]; }

  /// Coefficient of component `c` at any wavevector (resolving negative last
  /// components through conjugate symmetry). Out-of-range k gives 0.
  Complex coefficient(int c, const WaveVector& k) const;
  /// Sets the coefficient at k and, where k and -k share storage, keeps the
  /// pair conjugate-symmetric.
  void set_coefficient(int c, const WaveVector& k, Complex value);

  /// Spatial mean of each component.
  Vector mean() const;
  void set_mean(const Vector& mean);

  SpectralField& operator+=(const SpectralField& rhs);
  SpectralField& operator-=(const SpectralField& rhs);
  SpectralField& operator*=(Scalar s);

 private:
  GridPtr grid_;
  std::vector<ComplexArray> components_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(Scalar s, SpectralField a);
SpectralField operator*(SpectralField a, Scalar s);

/// Throws ConfigurationError unless both fields live on the same torus.
void require_same_torus(const SpectralField& a, const SpectralField& b);

/// Samples to coefficients. Modes beyond the 2/3-rule band are dropped, so the
/// round trip is exact for fields band-limited to the retained band.
SpectralField forward_transform(const PhysicalField& samples);
PhysicalField inverse_transform(const SpectralField& field);

/// Zeroes every mode outside the retained band.
SpectralField truncate(SpectralField field);

/// Orthogonal projection onto real fields: averages each stored coefficient
/// with the conjugate of its partner on the self-conjugate planes.
SpectralField hermitian_symmetrize(SpectralField field);

/// Largest violation of conjugate symmetry, relative to the largest coefficient.
Scalar hermitian_defect(const SpectralField& field);

/// Largest coefficient magnitude on modes outside the retained band.
Scalar dealiased_band_defect(const SpectralField& field);

}  // namespace hlx
