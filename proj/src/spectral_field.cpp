#include "hlx/spectral_field.hpp"

#include <algorithm>

#include "hlx/errors.hpp"

namespace hlx {

namespace {

// Slot of -k for a slot on a self-conjugate plane (last index 0 or modes/2).
Eigen::Index conjugate_slot(const Grid& grid, Eigen::Index slot) {
  WaveVector k = grid.wavevector(slot);
  const int n = grid.modes();
  for (int axis = 0; axis < grid.dim() - 1; ++axis) {
    int c = -k.k[axis];
    if (c == -n / 2) c = n / 2;
    k.k[axis] = c;
  }
  return grid.slot(k);
}

bool on_self_conjugate_plane(const Grid& grid, Eigen::Index slot) {
  const int last = grid.index(grid.dim() - 1)(slot);
  return last == 0 || 2 * last == grid.modes();
}

}  // namespace

PhysicalField::PhysicalField(GridPtr grid, int ncomp)
    : grid_(std::move(grid)), components_(ncomp, RealArray::Zero(grid_->real_size())) {}

SpectralField::SpectralField(GridPtr grid, int ncomp)
    : grid_(std::move(grid)),
      components_(ncomp, ComplexArray::Zero(grid_->spectral_size())) {}

SpectralField SpectralField::zeros_like(const SpectralField& other, int ncomp) {
  return SpectralField(other.grid(), ncomp);
}

Complex SpectralField::coefficient(int c, const WaveVector& k) const {
  const Eigen::Index s = grid_->slot(k);
  if (s >= 0) return components_[c](s);
  WaveVector neg;
  for (int axis = 0; axis < 3; ++axis) neg.k[axis] = -k.k[axis];
  const Eigen::Index t = grid_->slot(neg);
  return t >= 0 ? std::conj(components_[c](t)) : Complex{};
}

void SpectralField::set_coefficient(int c, const WaveVector& k, Complex value) {
  Eigen::Index s = grid_->slot(k);
  if (s < 0) {
    WaveVector neg;
    for (int axis = 0; axis < 3; ++axis) neg.k[axis] = -k.k[axis];
    s = grid_->slot(neg);
    if (s < 0) throw ConfigurationError("wavevector outside the grid");
    value = std::conj(value);
  }
  components_[c](s) = value;
  if (on_self_conjugate_plane(*grid_, s)) {
    const Eigen::Index p = conjugate_slot(*grid_, s);
    if (p != s) components_[c](p) = std::conj(value);
  }
}

Vector SpectralField::mean() const {
  Vector m(ncomp());
  for (int c = 0; c < ncomp(); ++c) m(c) = components_[c](0).real();
  return m;
}

void SpectralField::set_mean(const Vector& mean) {
  if (mean.size() != ncomp()) throw ConfigurationError("mean has wrong length");
  for (int c = 0; c < ncomp(); ++c) components_[c](0) = mean(c);
}

SpectralField& SpectralField::operator+=(const SpectralField& rhs) {
  require_same_torus(*this, rhs);
  if (rhs.ncomp() != ncomp()) throw ConfigurationError("component count mismatch");
  for (int c = 0; c < ncomp(); ++c) components_[c] += rhs.components_[c];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& rhs) {
  require_same_torus(*this, rhs);
  if (rhs.ncomp() != ncomp()) throw ConfigurationError("component count mismatch");
  for (int c = 0; c < ncomp(); ++c) components_[c] -= rhs.components_[c];
  return *this;
}

SpectralField& SpectralField::operator*=(Scalar s) {
  for (auto& comp : components_) comp *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(Scalar s, SpectralField a) { return a *= s; }
SpectralField operator*(SpectralField a, Scalar s) { return a *= s; }

void require_same_torus(const SpectralField& a, const SpectralField& b) {
  if (!a.grid() || !b.grid() || a.spec() != b.spec()) {
    throw ConfigurationError("fields live on different tori");
  }
}

SpectralField forward_transform(const PhysicalField& samples) {
  const Grid& grid = *samples.grid();
  SpectralField out(samples.grid(), samples.ncomp());
  const Scalar norm = 1.0 / static_cast<Scalar>(grid.real_size());
  for (int c = 0; c < samples.ncomp(); ++c) {
    if (samples[c].size() != grid.real_size()) {
      throw ConfigurationError("sample count does not match the grid");
    }
    grid.forward(samples[c].data(), out[c].data());
    out[c] *= norm * grid.retained();
  }
  return out;
}

PhysicalField inverse_transform(const SpectralField& field) {
  const Grid& grid = *field.grid();
  PhysicalField out(field.grid(), field.ncomp());
  ComplexArray scratch;
  for (int c = 0; c < field.ncomp(); ++c) {
    scratch = field[c];
    grid.inverse(scratch.data(), out[c].data());
  }
  return out;
}

SpectralField truncate(SpectralField field) {
  for (int c = 0; c < field.ncomp(); ++c) field[c] *= field.grid()->retained();
  return field;
}

SpectralField hermitian_symmetrize(SpectralField field) {
  const Grid& grid = *field.grid();
  for (int c = 0; c < field.ncomp(); ++c) {
    ComplexArray& a = field[c];
    for (Eigen::Index s = 0; s < grid.spectral_size(); ++s) {
      if (!on_self_conjugate_plane(grid, s)) continue;
      const Eigen::Index p = conjugate_slot(grid, s);
      if (p < s) continue;
      const Complex avg = 0.5 * (a(s) + std::conj(a(p)));
      a(s) = avg;
      a(p) = std::conj(avg);
    }
  }
  return field;
}

Scalar hermitian_defect(const SpectralField& field) {
  const Grid& grid = *field.grid();
  Scalar defect = 0.0;
  Scalar scale = 0.0;
  for (int c = 0; c < field.ncomp(); ++c) {
    const ComplexArray& a = field[c];
    scale = std::max(scale, a.abs().maxCoeff());
    for (Eigen::Index s = 0; s < grid.spectral_size(); ++s) {
      if (!on_self_conjugate_plane(grid, s)) continue;
      const Eigen::Index p = conjugate_slot(grid, s);
      defect = std::max(defect, std::abs(a(s) - std::conj(a(p))));
    }
  }
  return scale > 0.0 ? defect / scale : 0.0;
}

Scalar dealiased_band_defect(const SpectralField& field) {
  Scalar defect = 0.0;
  const RealArray removed = 1.0 - field.grid()->retained();
  for (int c = 0; c < field.ncomp(); ++c) {
    defect = std::max(defect, (field[c].abs() * removed).maxCoeff());
  }
  return defect;
}

}  // namespace hlx
