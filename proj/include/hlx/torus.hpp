#pragma once

#include <array>
#include <complex>
#include <memory>
#include <numbers>

#include <Eigen/Core>

namespace hlx {

using Scalar = double;
using Complex = std::complex<Scalar>;
using RealArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
using ComplexArray = Eigen::Array<Complex, Eigen::Dynamic, 1>;
using IndexArray = Eigen::Array<int, Eigen::Dynamic, 1>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Flat periodic box [0, side_length)^dim sampled on modes^dim points.
struct TorusSpec {
  int dim = 3;
  Scalar side_length = 2.0 * std::numbers::pi;
  int modes = 16;

  /// Throws ConfigurationError unless dim is 2 or 3 and modes is even, >= 4.
  void validate() const;
  Scalar volume() const;
  /// Largest |k_i| kept by the 2/3 rule: the largest K with 3K < modes.
  int max_retained() const { return (modes - 1) / 3; }

  friend bool operator==(const TorusSpec&, const TorusSpec&) = default;
};

/// Integer wavevector; the third entry is ignored in 2-D.
struct WaveVector {
  std::array<int, 3> k{0, 0, 0};

  int operator[](int axis) const { return k[axis]; }
  friend bool operator==(const WaveVector&, const WaveVector&) = default;
};

/// Precomputed wavenumber tables and FFT plans for one TorusSpec.
///
/// Spectral storage follows the FFTW real-to-complex layout: row-major with
/// the last axis halved to modes/2 + 1 entries. Coefficients for wavevectors
/// with a negative last component are implied by conjugate symmetry.
class Grid {
 public:
  /// Returns the shared grid for `spec`. Grids are cached and immutable, so
  /// the same pointer is handed to every caller asking for an equal spec.
  static std::shared_ptr<const Grid> make(const TorusSpec& spec);

  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  const TorusSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim; }
  int modes() const { return spec_.modes; }
  Scalar volume() const { return spec_.volume(); }
  Eigen::Index real_size() const { return real_size_; }
  Eigen::Index spectral_size() const { return spectral_size_; }
  Eigen::Index half_modes() const { return spec_.modes / 2 + 1; }

  /// Integer wavevector component along `axis` for every spectral slot.
  const IndexArray& index(int axis) const { return index_[axis]; }
  /// Physical wavenumber 2*pi*k/L along `axis` for every spectral slot.
  const RealArray& wavenumber(int axis) const { return wavenumber_[axis]; }
  const RealArray& k_squared() const { return k_squared_; }
  /// 1/|k|^2, with 0 at k = 0.
  const RealArray& inverse_k_squared() const { return inverse_k_squared_; }
  /// 1 on retained modes, 0 on modes removed by the 2/3 rule.
  const RealArray& retained() const { return retained_; }
  /// Multiplicity of each stored slot in the full spectrum (1 or 2).
  const RealArray& multiplicity() const { return multiplicity_; }

  /// Flat spectral slot holding `k`, or -1 when k's last component is
  /// negative (it lives in the conjugate slot) or k is out of range.
  Eigen::Index slot(const WaveVector& k) const;
  WaveVector wavevector(Eigen::Index slot) const;

  /// Physical coordinate of grid point `point` along `axis`.
  Scalar coordinate(Eigen::Index point, int axis) const;

  /// Unnormalized FFTW transforms. `forward` writes spectral_size values,
  /// `inverse` overwrites its input.
  void forward(const Scalar* in, Complex* out) const;
  void inverse(Complex* in, Scalar* out) const;

 private:
  explicit Grid(const TorusSpec& spec);

  TorusSpec spec_;
  Eigen::Index real_size_ = 0;
  Eigen::Index spectral_size_ = 0;
  std::array<IndexArray, 3> index_;
  std::array<RealArray, 3> wavenumber_;
  RealArray k_squared_;
  RealArray inverse_k_squared_;
  RealArray retained_;
  RealArray multiplicity_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace hlx
