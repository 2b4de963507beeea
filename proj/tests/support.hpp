#pragma once

// Test-only helpers: field builders and brute-force oracles that do not go
// through the library's FFT paths.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "hlx/operators.hpp"
#include "hlx/spectral_field.hpp"

namespace hlx::test {

inline constexpr double kPi = std::numbers::pi;
inline const double kTwoPiCubed = std::pow(2.0 * kPi, 3);

inline GridPtr grid(int dim, int modes, double side = 2.0 * kPi) {
  return Grid::make(TorusSpec{dim, side, modes});
}

using Fn = std::function<double(double, double, double)>;

/// Samples the given component functions of (x, y, z) on the grid.
inline PhysicalField samples(const GridPtr& g, const std::vector<Fn>& f) {
  PhysicalField p(g, static_cast<int>(f.size()));
  for (Eigen::Index i = 0; i < g->real_size(); ++i) {
    const double x = g->coordinate(i, 0);
    const double y = g->coordinate(i, 1);
    const double z = g->dim() == 3 ? g->coordinate(i, 2) : 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) p[static_cast<int>(c)](i) = f[c](x, y, z);
  }
  return p;
}

inline SpectralField field(const GridPtr& g, const std::vector<Fn>& f) {
  return forward_transform(samples(g, f));
}

/// ABC field with wavenumber m: curl abc = m abc.
inline SpectralField abc(const GridPtr& g, double m = 1.0) {
  return field(g, {
      [m](double, double y, double z) { return std::sin(m * z) + std::cos(m * y); },
      [m](double x, double, double z) { return std::sin(m * x) + std::cos(m * z); },
      [m](double x, double y, double) { return std::sin(m * y) + std::cos(m * x); },
  });
}

/// Random real field with coefficients on |k_i| <= band (default: the
/// retained band). Not divergence-free unless projected.
inline SpectralField random_field(const GridPtr& g, int ncomp, unsigned seed, int band = -1) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  if (band < 0) band = g->spec().max_retained();
  SpectralField f(g, ncomp);
  for (Eigen::Index s = 0; s < g->spectral_size(); ++s) {
    bool in = true;
    for (int a = 0; a < g->dim(); ++a) in = in && std::abs(g->index(a)(s)) <= band;
    for (int c = 0; c < ncomp; ++c) {
      const std::complex<double> z{n(rng), n(rng)};
      if (in) f[c](s) = z;
    }
  }
  for (int c = 0; c < ncomp; ++c) f[c](0) = f[c](0).real();
  return hermitian_symmetrize(f);
}

inline SpectralField random_solenoidal(const GridPtr& g, unsigned seed, int band = -1) {
  return leray_project(random_field(g, g->dim(), seed, band));
}

inline double rel_l2(const SpectralField& a, const SpectralField& b) {
  const double scale = std::max(norm_squared(b), 1e-300);
  return std::sqrt(norm_squared(a - b) / scale);
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (int c = 0; c < a.ncomp(); ++c) m = std::max(m, (a[c] - b[c]).abs().maxCoeff());
  return m;
}

using Key = std::array<int, 3>;
using FullSpectrum = std::vector<std::map<Key, std::complex<double>>>;

/// Expands the stored half spectrum to every wavevector via conjugate symmetry.
inline FullSpectrum full_spectrum(const SpectralField& f) {
  const Grid& g = *f.grid();
  FullSpectrum out(f.ncomp());
  for (Eigen::Index s = 0; s < g.spectral_size(); ++s) {
    const WaveVector k = g.wavevector(s);
    Key pos{k[0], k[1], g.dim() == 3 ? k[2] : 0};
    Key neg{-pos[0], -pos[1], -pos[2]};
    for (int c = 0; c < f.ncomp(); ++c) {
      const auto v = f[c](s);
      if (v == std::complex<double>{}) continue;
      out[c][pos] = v;
      out[c][neg] = std::conj(v);
    }
  }
  return out;
}

/// Mode-by-mode convolution oracle for quadratic products. kind: 0 cross,
/// 1 advective, 2 tensor divergence. Output is restricted to |k_i| <= kmax.
inline FullSpectrum brute_force_product(const SpectralField& a, const SpectralField& b, int kind) {
  const Grid& g = *a.grid();
  const int dim = g.dim();
  const int kmax = g.spec().max_retained();
  const double unit = 2.0 * kPi / g.spec().side_length;
  const std::complex<double> I{0.0, 1.0};
  const FullSpectrum A = full_spectrum(a);
  const FullSpectrum B = full_spectrum(b);
  const int nout = kind == 0 ? (dim == 3 ? 3 : (b.ncomp() == 1 ? 2 : 1)) : b.ncomp();
  FullSpectrum out(nout);

  auto add = [&](int c, const Key& k, std::complex<double> v) {
    for (int d = 0; d < 3; ++d) {
      if (std::abs(k[d]) > kmax) return;
    }
    out[c][k] += v;
  };
  auto coeff = [](const FullSpectrum& f, int c, const Key& k) {
    const auto it = f[c].find(k);
    return it == f[c].end() ? std::complex<double>{} : it->second;
  };

  std::map<Key, bool> keys;
  for (const auto& m : A) for (const auto& [k, _] : m) keys[k] = true;
  std::map<Key, bool> bkeys;
  for (const auto& m : B) for (const auto& [k, _] : m) bkeys[k] = true;

  for (const auto& [p, _a] : keys) {
    for (const auto& [q, _b] : bkeys) {
      const Key k{p[0] + q[0], p[1] + q[1], p[2] + q[2]};
      if (kind == 0) {
        if (dim == 3) {
          for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, l = (i + 2) % 3;
            add(i, k, coeff(A, j, p) * coeff(B, l, q) - coeff(A, l, p) * coeff(B, j, q));
          }
        } else if (b.ncomp() == 1) {
          add(0, k, coeff(A, 1, p) * coeff(B, 0, q));
          add(1, k, -coeff(A, 0, p) * coeff(B, 0, q));
        } else {
          add(0, k, coeff(A, 0, p) * coeff(B, 1, q) - coeff(A, 1, p) * coeff(B, 0, q));
        }
      } else if (kind == 1) {
        for (int i = 0; i < b.ncomp(); ++i) {
          for (int j = 0; j < dim; ++j) {
            add(i, k, coeff(A, j, p) * I * (unit * q[j]) * coeff(B, i, q));
          }
        }
      } else {
        for (int i = 0; i < b.ncomp(); ++i) {
          for (int j = 0; j < dim; ++j) {
            add(i, k, I * (unit * k[j]) * coeff(A, j, p) * coeff(B, i, q));
          }
        }
      }
    }
  }
  return out;
}

/// Grid quadrature of a . b: mean of the pointwise product times the volume.
inline double grid_inner(const SpectralField& a, const SpectralField& b) {
  const PhysicalField pa = inverse_transform(a);
  const PhysicalField pb = inverse_transform(b);
  double sum = 0.0;
  for (int c = 0; c < a.ncomp(); ++c) sum += (pa[c] * pb[c]).sum();
  return sum * a.grid()->volume() / static_cast<double>(a.grid()->real_size());
}

}  // namespace hlx::test
