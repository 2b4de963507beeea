#include "hlx/torus.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include <fftw3.h>
#include <fmt/format.h>

#include "hlx/errors.hpp"

namespace hlx {

namespace {

// FFTW's planner is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void TorusSpec::validate() const {
  if (dim != 2 && dim != 3) {
    throw ConfigurationError(fmt::format("dim must be 2 or 3, got {}", dim));
  }
  if (modes < 4 || modes % 2 != 0) {
    throw ConfigurationError(fmt::format("modes must be even and >= 4, got {}", modes));
  }
  if (!(side_length > 0.0) || !std::isfinite(side_length)) {
    throw ConfigurationError("side_length must be positive");
  }
}

Scalar TorusSpec::volume() const { return std::pow(side_length, dim); }

std::shared_ptr<const Grid> Grid::make(const TorusSpec& spec) {
  spec.validate();
  static std::mutex cache_mutex;
  static std::vector<std::shared_ptr<const Grid>> cache;
  std::lock_guard lock(cache_mutex);
  for (const auto& g : cache) {
    if (g->spec() == spec) return g;
  }
  std::shared_ptr<const Grid> grid(new Grid(spec));
  cache.push_back(grid);
  return grid;
}

Grid::Grid(const TorusSpec& spec) : spec_(spec) {
  const int n = spec.modes;
  const int half = n / 2 + 1;
  real_size_ = 1;
  for (int d = 0; d < spec.dim; ++d) real_size_ *= n;
  spectral_size_ = real_size_ / n * half;

  for (auto& a : index_) a = IndexArray::Zero(spectral_size_);
  const int kmax = spec.max_retained();
  const Scalar unit = 2.0 * std::numbers::pi / spec.side_length;

  retained_.resize(spectral_size_);
  multiplicity_.resize(spectral_size_);
  for (Eigen::Index s = 0; s < spectral_size_; ++s) {
    Eigen::Index rest = s;
    const int last = static_cast<int>(rest % half);
    rest /= half;
    index_[spec.dim - 1](s) = last;
    for (int axis = spec.dim - 2; axis >= 0; --axis) {
      const int i = static_cast<int>(rest % n);
      rest /= n;
      index_[axis](s) = i <= n / 2 ? i : i - n;
    }
    bool keep = true;
    for (int axis = 0; axis < spec.dim; ++axis) {
      if (std::abs(index_[axis](s)) > kmax) keep = false;
    }
    retained_(s) = keep ? 1.0 : 0.0;
    multiplicity_(s) = (last == 0 || 2 * last == n) ? 1.0 : 2.0;
  }

  k_squared_ = RealArray::Zero(spectral_size_);
  for (int axis = 0; axis < 3; ++axis) {
    wavenumber_[axis] = unit * index_[axis].cast<Scalar>();
    k_squared_ += wavenumber_[axis].square();
  }
  inverse_k_squared_ = (k_squared_ > 0.0).select(k_squared_.inverse(), 0.0);

  std::vector<int> shape(spec.dim, n);
  RealArray real_scratch(real_size_);
  ComplexArray spectral_scratch(spectral_size_);
  auto* re = real_scratch.data();
  auto* co = reinterpret_cast<fftw_complex*>(spectral_scratch.data());
  std::lock_guard lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c(spec.dim, shape.data(), re, co,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  inverse_plan_ = fftw_plan_dft_c2r(spec.dim, shape.data(), co, re,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_DESTROY_INPUT);
}

Grid::~Grid() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

Eigen::Index Grid::slot(const WaveVector& k) const {
  const int n = spec_.modes;
  const int last = k[spec_.dim - 1];
  if (last < 0 || last > n / 2) return -1;
  Eigen::Index s = 0;
  for (int axis = 0; axis < spec_.dim - 1; ++axis) {
    const int c = k[axis];
    if (c < -n / 2 + 1 || c > n / 2) return -1;
    s = s * n + (c >= 0 ? c : c + n);
  }
  return s * half_modes() + last;
}

WaveVector Grid::wavevector(Eigen::Index slot) const {
  WaveVector w;
  for (int axis = 0; axis < spec_.dim; ++axis) w.k[axis] = index_[axis](slot);
  return w;
}

Scalar Grid::coordinate(Eigen::Index point, int axis) const {
  const int n = spec_.modes;
  Eigen::Index stride = 1;
  for (int a = spec_.dim - 1; a > axis; --a) stride *= n;
  return static_cast<Scalar>((point / stride) % n) * spec_.side_length / n;
}

void Grid::forward(const Scalar* in, Complex* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<Scalar*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void Grid::inverse(Complex* in, Scalar* out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace hlx
