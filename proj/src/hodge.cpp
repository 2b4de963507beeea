#include "hlx/hodge.hpp"

#include <cmath>

#include <fmt/format.h>

#include "hlx/errors.hpp"
#include "hlx/operators.hpp"

namespace hlx {

namespace {

constexpr Complex I{0.0, 1.0};

void require_solenoidal(const SpectralField& b, const char* op) {
  if (!b.is_vector()) throw ConfigurationError(fmt::format("{} expects a vector field", op));
  const Scalar div = relative_divergence(b);
  if (div > kDivergenceTolerance) {
    throw PreconditionError(
        fmt::format("{}: input is not divergence-free (relative divergence {:.3e})", op, div));
  }
}

Scalar mean_tolerance(const SpectralField& b) {
  Scalar scale = 0.0;
  for (int c = 0; c < b.ncomp(); ++c) scale = std::max(scale, b[c].abs().maxCoeff());
  return 1e-12 * std::max(scale, 1.0);
}

}  // namespace

SpectralField project_sigma(const SpectralField& b) {
  SpectralField out = b;
  for (int c = 0; c < out.ncomp(); ++c) out[c](0) = 0.0;
  return out;
}

SpectralField project_harmonic(const SpectralField& b) {
  SpectralField out(b.grid(), b.ncomp());
  for (int c = 0; c < out.ncomp(); ++c) out[c](0) = b[c](0);
  return out;
}

std::vector<SpectralField> harmonic_basis(const GridPtr& grid) {
  std::vector<SpectralField> basis;
  const Scalar scale = 1.0 / std::sqrt(grid->volume());
  for (int i = 0; i < grid->dim(); ++i) {
    SpectralField h(grid, grid->dim());
    h[i](0) = scale;
    basis.push_back(std::move(h));
  }
  return basis;
}

GaugeDecomposition decompose(const SpectralField& b) {
  require_solenoidal(b, "decompose");
  GaugeDecomposition d{project_sigma(b), b.mean(), std::nullopt};
  if (b.dim() == 3) d.potential = coulomb_potential(d.sigma_part);
  return d;
}

SpectralField coulomb_potential(const SpectralField& b_sigma) {
  if (b_sigma.dim() != 3) throw UsageError("coulomb_potential is defined in 3-D only");
  require_solenoidal(b_sigma, "coulomb_potential");
  if (b_sigma.mean().cwiseAbs().maxCoeff() > mean_tolerance(b_sigma)) {
    throw PreconditionError("coulomb_potential: input has nonzero mean");
  }
  const Grid& g = *b_sigma.grid();
  const RealArray& k0 = g.wavenumber(0);
  const RealArray& k1 = g.wavenumber(1);
  const RealArray& k2 = g.wavenumber(2);
  const RealArray& inv = g.inverse_k_squared();
  SpectralField psi(b_sigma.grid(), 3);
  psi[0] = I * inv * (k1 * b_sigma[2] - k2 * b_sigma[1]);
  psi[1] = I * inv * (k2 * b_sigma[0] - k0 * b_sigma[2]);
  psi[2] = I * inv * (k0 * b_sigma[1] - k1 * b_sigma[0]);
  return psi;
}

SpectralField stream_function(const SpectralField& b) {
  if (b.dim() != 2) throw UsageError("stream_function is defined in 2-D only");
  require_solenoidal(b, "stream_function");
  // -perp_grad(phi) = b  =>  curl b = -lap(phi)  =>  phi(k) = curl b(k) / |k|^2
  SpectralField phi = curl(b);
  phi[0] *= b.grid()->inverse_k_squared();
  return phi;
}

Scalar helicity(const SpectralField& b, const Vector& gauge_shift) {
  if (b.dim() != 3) throw UsageError("helicity is defined in 3-D only");
  if (gauge_shift.size() != 3) throw ConfigurationError("gauge shift must have 3 components");
  const SpectralField b_sigma = project_sigma(b);
  const SpectralField psi = coulomb_potential(b_sigma);
  return inner_product(psi, b) + gauge_shift.dot(b.mean()) * b.grid()->volume();
}

Scalar helicity(const SpectralField& b) { return helicity(b, Vector::Zero(3)); }

Scalar mean_square_potential(const SpectralField& b) {
  if (b.dim() != 2) throw UsageError("mean_square_potential is defined in 2-D only");
  return norm_squared(stream_function(b));
}

}  // namespace hlx
