#include "hlx/operators.hpp"

#include <cmath>

#include "hlx/errors.hpp"

namespace hlx {

namespace {

constexpr Complex I{0.0, 1.0};

void require_vector(const SpectralField& v, const char* op) {
  if (!v.is_vector()) {
    throw ConfigurationError(std::string(op) + " expects a vector field");
  }
}

void require_scalar(const SpectralField& f, const char* op) {
  if (f.ncomp() != 1) {
    throw ConfigurationError(std::string(op) + " expects a scalar field");
  }
}

PhysicalField pointwise_cross(const PhysicalField& a, const PhysicalField& b, int dim) {
  if (dim == 3) {
    PhysicalField out(a.grid(), 3);
    out[0] = a[1] * b[2] - a[2] * b[1];
    out[1] = a[2] * b[0] - a[0] * b[2];
    out[2] = a[0] * b[1] - a[1] * b[0];
    return out;
  }
  if (b.ncomp() == 1) {
    PhysicalField out(a.grid(), 2);
    out[0] = a[1] * b[0];
    out[1] = -a[0] * b[0];
    return out;
  }
  PhysicalField out(a.grid(), 1);
  out[0] = a[0] * b[1] - a[1] * b[0];
  return out;
}

}  // namespace

SpectralField leray_project(const SpectralField& v) {
  require_vector(v, "leray_project");
  const Grid& g = *v.grid();
  ComplexArray k_dot_v = ComplexArray::Zero(g.spectral_size());
  for (int i = 0; i < v.dim(); ++i) k_dot_v += g.wavenumber(i) * v[i];
  k_dot_v *= g.inverse_k_squared();
  SpectralField out = v;
  for (int i = 0; i < v.dim(); ++i) out[i] -= g.wavenumber(i) * k_dot_v;
  return out;
}

SpectralField derivative(const SpectralField& v, int axis) {
  SpectralField out = v;
  const RealArray& k = v.grid()->wavenumber(axis);
  for (int c = 0; c < v.ncomp(); ++c) out[c] *= I * k;
  return out;
}

SpectralField curl(const SpectralField& v) {
  require_vector(v, "curl");
  const Grid& g = *v.grid();
  const RealArray& k0 = g.wavenumber(0);
  const RealArray& k1 = g.wavenumber(1);
  if (v.dim() == 2) {
    SpectralField out(v.grid(), 1);
    out[0] = I * (k0 * v[1] - k1 * v[0]);
    return out;
  }
  const RealArray& k2 = g.wavenumber(2);
  SpectralField out(v.grid(), 3);
  out[0] = I * (k1 * v[2] - k2 * v[1]);
  out[1] = I * (k2 * v[0] - k0 * v[2]);
  out[2] = I * (k0 * v[1] - k1 * v[0]);
  return out;
}

SpectralField perp_grad(const SpectralField& f) {
  require_scalar(f, "perp_grad");
  if (f.dim() != 2) throw UsageError("perp_grad is defined in 2-D only");
  const Grid& g = *f.grid();
  SpectralField out(f.grid(), 2);
  out[0] = -I * g.wavenumber(1) * f[0];
  out[1] = I * g.wavenumber(0) * f[0];
  return out;
}

SpectralField gradient(const SpectralField& f) {
  require_scalar(f, "gradient");
  const Grid& g = *f.grid();
  SpectralField out(f.grid(), f.dim());
  for (int i = 0; i < f.dim(); ++i) out[i] = I * g.wavenumber(i) * f[0];
  return out;
}

SpectralField divergence(const SpectralField& v) {
  require_vector(v, "divergence");
  const Grid& g = *v.grid();
  SpectralField out(v.grid(), 1);
  for (int i = 0; i < v.dim(); ++i) out[0] += I * g.wavenumber(i) * v[i];
  return out;
}

SpectralField laplacian(const SpectralField& v) {
  SpectralField out = v;
  for (int c = 0; c < v.ncomp(); ++c) out[c] *= -v.grid()->k_squared();
  return out;
}

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b,
                                ProductKind kind) {
  require_same_torus(a, b);
  const int dim = a.dim();
  switch (kind) {
    case ProductKind::cross: {
      require_vector(a, "cross product");
      const bool ok = dim == 3 ? b.is_vector() : (b.is_vector() || b.ncomp() == 1);
      if (!ok) throw ConfigurationError("cross product operands have incompatible shapes");
      return forward_transform(
          pointwise_cross(inverse_transform(a), inverse_transform(b), dim));
    }
    case ProductKind::advective: {
      require_vector(a, "advective product");
      const PhysicalField ag = inverse_transform(a);
      PhysicalField out(a.grid(), b.ncomp());
      for (int j = 0; j < dim; ++j) {
        const PhysicalField db = inverse_transform(derivative(b, j));
        for (int c = 0; c < b.ncomp(); ++c) out[c] += ag[j] * db[c];
      }
      return forward_transform(out);
    }
    case ProductKind::tensor_divergence: {
      require_vector(a, "tensor divergence");
      const Grid& g = *a.grid();
      const PhysicalField ag = inverse_transform(a);
      const PhysicalField bg = inverse_transform(b);
      SpectralField out(a.grid(), b.ncomp());
      for (int j = 0; j < dim; ++j) {
        PhysicalField flux(a.grid(), b.ncomp());
        for (int c = 0; c < b.ncomp(); ++c) flux[c] = ag[j] * bg[c];
        const SpectralField fh = forward_transform(flux);
        for (int c = 0; c < b.ncomp(); ++c) out[c] += I * g.wavenumber(j) * fh[c];
      }
      return out;
    }
  }
  throw ConfigurationError("unknown product kind");
}

Scalar inner_product(const SpectralField& a, const SpectralField& b) {
  require_same_torus(a, b);
  if (a.ncomp() != b.ncomp()) throw ConfigurationError("component count mismatch");
  const Grid& g = *a.grid();
  Scalar sum = 0.0;
  for (int c = 0; c < a.ncomp(); ++c) {
    sum += (g.multiplicity() * (a[c] * b[c].conjugate()).real()).sum();
  }
  return sum * g.volume();
}

Scalar norm_squared(const SpectralField& a) { return inner_product(a, a); }

Scalar relative_divergence(const SpectralField& v) {
  Scalar grad = 0.0;
  for (int i = 0; i < v.dim(); ++i) grad += norm_squared(derivative(v, i));
  if (grad == 0.0) return 0.0;
  return std::sqrt(norm_squared(divergence(v)) / grad);
}

}  // namespace hlx
