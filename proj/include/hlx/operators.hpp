#pragma once

#include "hlx/spectral_field.hpp"

namespace hlx {

/// Leray projection onto divergence-free fields:
/// v(k) -> v(k) - k (k . v(k)) / |k|^2, identity at k = 0.
SpectralField leray_project(const SpectralField& v);

/// 3-D: vector curl. 2-D: scalar curl d1 v2 - d2 v1 of a planar vector.
SpectralField curl(const SpectralField& v);

/// 2-D perpendicular gradient (-d2 f, d1 f) of a scalar.
SpectralField perp_grad(const SpectralField& f);

SpectralField gradient(const SpectralField& f);
SpectralField divergence(const SpectralField& v);
SpectralField laplacian(const SpectralField& v);

/// Partial derivative of every component along `axis`.
SpectralField derivative(const SpectralField& v, int axis);

enum class ProductKind {
  /// a x b. 3-D vectors give a vector. In 2-D two vectors give the scalar
  /// a1 b2 - a2 b1, and a vector with a scalar s gives a x (s e_z).
  cross,
  /// (a . grad) b for vector a and scalar or vector b.
  advective,
  /// div(a (x) b), i.e. d_j (a_j b_i).
  tensor_divergence,
};

/// Quadratic product evaluated on the physical grid and truncated back to the
/// retained band. Inputs band-limited by the 2/3 rule make the result exact.
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b,
                                ProductKind kind);

/// L2 pairing over the torus, by Parseval.
Scalar inner_product(const SpectralField& a, const SpectralField& b);
Scalar norm_squared(const SpectralField& a);

/// L2 norm of div v relative to the L2 norm of grad v (0 for constants).
Scalar relative_divergence(const SpectralField& v);

}  // namespace hlx
