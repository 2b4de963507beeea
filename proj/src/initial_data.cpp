#include "hlx/initial_data.hpp"

#include <cmath>
#include <functional>
#include <random>

#include <fmt/format.h>

#include "hlx/errors.hpp"
#include "hlx/operators.hpp"

namespace hlx {

namespace {

Scalar param(const InitialDataSpec& spec, const std::string& name, Scalar fallback) {
  const auto it = spec.params.find(name);
  return it == spec.params.end() ? fallback : it->second;
}

using Sampler = std::function<Scalar(const std::array<Scalar, 3>&)>;

// Samples dim functions of the scaled coordinates (kappa x, kappa y, kappa z).
SpectralField sample(const GridPtr& grid, const std::vector<Sampler>& f) {
  PhysicalField p(grid, static_cast<int>(f.size()));
  const Scalar kappa = 2.0 * std::numbers::pi / grid->spec().side_length;
  for (Eigen::Index i = 0; i < grid->real_size(); ++i) {
    std::array<Scalar, 3> x{0.0, 0.0, 0.0};
    for (int axis = 0; axis < grid->dim(); ++axis) x[axis] = kappa * grid->coordinate(i, axis);
    for (std::size_t c = 0; c < f.size(); ++c) p[static_cast<int>(c)](i) = f[c](x);
  }
  return forward_transform(p);
}

SpectralField abc_field(const GridPtr& grid, Scalar a, Scalar b, Scalar c, Scalar m) {
  return sample(grid, {
      [=](const auto& x) { return a * std::sin(m * x[2]) + c * std::cos(m * x[1]); },
      [=](const auto& x) { return b * std::sin(m * x[0]) + a * std::cos(m * x[2]); },
      [=](const auto& x) { return c * std::sin(m * x[1]) + b * std::cos(m * x[0]); },
  });
}

SpectralField cellular_field(const GridPtr& grid, Scalar m) {
  return sample(grid, {
      [=](const auto& x) { return -std::sin(m * x[1]); },
      [=](const auto& x) { return std::sin(m * x[0]); },
  });
}

// Uniform on (0, 1] from the top 53 bits, independent of the library's
// distribution implementations so seeds reproduce across toolchains.
Scalar unit_uniform(std::mt19937_64& rng) {
  return (static_cast<Scalar>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

Complex complex_gaussian(std::mt19937_64& rng) {
  const Scalar r = std::sqrt(-2.0 * std::log(unit_uniform(rng)));
  const Scalar theta = 2.0 * std::numbers::pi * unit_uniform(rng);
  return {r * std::cos(theta), r * std::sin(theta)};
}

SpectralField random_solenoidal(const GridPtr& grid, std::mt19937_64& rng, Scalar slope,
                                Scalar k_max, Scalar energy) {
  const Grid& g = *grid;
  const Scalar unit = 2.0 * std::numbers::pi / g.spec().side_length;
  SpectralField v(grid, g.dim());
  for (Eigen::Index s = 0; s < g.spectral_size(); ++s) {
    // draw for every slot so the stream does not depend on the band
    std::array<Complex, 3> draw{};
    for (int c = 0; c < g.dim(); ++c) draw[c] = complex_gaussian(rng);
    const Scalar k = std::sqrt(g.k_squared()(s)) / unit;
    if (k < 0.5 || k > k_max + 1e-9 || g.retained()(s) == 0.0) continue;
    // shell energy ~ k^-slope spread over ~k^(dim-1) modes
    const Scalar amp = std::sqrt(std::pow(k, -slope - (g.dim() - 1)));
    for (int c = 0; c < g.dim(); ++c) v[c](s) = amp * draw[c];
  }
  v = leray_project(hermitian_symmetrize(v));
  for (int c = 0; c < v.ncomp(); ++c) v[c](0) = 0.0;
  const Scalar e = 0.5 * norm_squared(v);
  if (e > 0.0) v *= std::sqrt(energy * grid->volume() / e);
  return v;
}

}  // namespace

bool operator==(const InitialDataSpec& a, const InitialDataSpec& b) {
  if (a.preset != b.preset || a.params != b.params || a.seed != b.seed) return false;
  if (a.b_mean.has_value() != b.b_mean.has_value()) return false;
  if (!a.b_mean) return true;
  return a.b_mean->size() == b.b_mean->size() && *a.b_mean == *b.b_mean;
}

SpectralField oscillating_field(const GridPtr& grid, int mode) {
  SpectralField f = grid->dim() == 3 ? abc_field(grid, 1.0, 1.0, 1.0, mode)
                                     : cellular_field(grid, mode);
  f.set_mean(Vector::Zero(grid->dim()));
  const Scalar n2 = norm_squared(f);
  if (n2 > 0.0) f *= std::sqrt(grid->volume() / n2);
  return f;
}

MhdState make_initial_data(const TorusSpec& torus, const InitialDataSpec& spec) {
  const GridPtr grid = Grid::make(torus);
  MhdState s = zero_state(grid);
  const int dim = torus.dim;

  if (spec.preset == "beltrami-abc") {
    SpectralField shape = dim == 3 ? abc_field(grid, param(spec, "A", 1.0), param(spec, "B", 1.0),
                                               param(spec, "C", 1.0), 1.0)
                                   : cellular_field(grid, 1.0);
    s.b = param(spec, "amplitude", 1.0) * shape;
    s.u = param(spec, "u_amplitude", 0.0) * shape;
  } else if (spec.preset == "orszag-tang-like") {
    const Scalar ua = param(spec, "u_amplitude", 1.0);
    const Scalar ba = param(spec, "b_amplitude", 1.0);
    if (dim == 2) {
      s.u = ua * cellular_field(grid, 1.0);
      s.b = ba * sample(grid, {
                     [](const auto& x) { return -std::sin(2.0 * x[1]); },
                     [](const auto& x) { return std::sin(x[0]); },
                 });
    } else {
      s.u = ua * sample(grid, {
                     [](const auto& x) { return -std::sin(x[1]); },
                     [](const auto& x) { return std::sin(x[0]); },
                     [](const auto&) { return 0.0; },
                 });
      s.b = ba * sample(grid, {
                     [](const auto& x) { return -std::sin(2.0 * x[1]) + std::sin(x[2]); },
                     [](const auto& x) { return std::sin(x[0]) + std::cos(x[2]); },
                     [](const auto& x) { return std::sin(x[1]) + std::cos(x[0]); },
                 });
    }
  } else if (spec.preset == "random-solenoidal") {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                      static_cast<std::uint32_t>(spec.seed >> 32)};
    std::mt19937_64 rng(seq);
    const Scalar slope = param(spec, "slope", 5.0 / 3.0);
    const Scalar k_max = param(spec, "k_max", 4.0);
    s.u = random_solenoidal(grid, rng, slope, k_max, param(spec, "energy_u", 0.5));
    s.b = random_solenoidal(grid, rng, slope, k_max, param(spec, "energy_b", 0.5));
  } else {
    throw UsageError(fmt::format("unknown initial-data preset '{}'", spec.preset));
  }
  // the trig presets have zero mean; drop the sampling roundoff in k = 0
  s.u.set_mean(Vector::Zero(dim));
  s.b.set_mean(Vector::Zero(dim));

  if (spec.b_mean) {
    if (spec.b_mean->size() != dim) {
      throw ConfigurationError(fmt::format("b_mean must have {} components", dim));
    }
    s.b.set_mean(*spec.b_mean);
  }
  return s;
}

}  // namespace hlx
