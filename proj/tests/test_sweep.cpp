#include <doctest.h>

#include "hlx/errors.hpp"
#include "hlx/hodge.hpp"
#include "hlx/sweep.hpp"
#include "support.hpp"

using namespace hlx;
using namespace hlx::test;
using doctest::Approx;

namespace {

SweepPlan beltrami_plan() {
  SweepPlan p;
  p.torus = {3, 2 * kPi, 16};
  p.initial.preset = "beltrami-abc";
  p.mu_values = {1e-1, 1e-2, 1e-3};
  p.t_end = 1.0;
  p.dt = 1e-2;
  p.record_every = 0.05;
  return p;
}

SweepPlan random_plan(int dim, int modes) {
  SweepPlan p;
  p.torus = {dim, 2 * kPi, modes};
  p.initial.preset = "random-solenoidal";
  p.initial.seed = 7;
  p.initial.params = {{"k_max", 2.0}};
  p.mu_values = {1e-1, 3e-2, 1e-2};
  p.t_end = 0.2;
  p.dt = 0.01;
  p.record_every = 0.02;
  return p;
}

}  // namespace

TEST_CASE("power-law fit recovers an exact exponent") {
  const std::vector<std::pair<double, double>> table{
      {1e-2, 1e-1}, {1e-3, std::pow(10.0, -1.5)}, {1e-4, 1e-2}};
  const auto fit = fit_power_law(table);
  REQUIRE(fit);
  CHECK(fit->slope == Approx(0.5).epsilon(1e-12));
  CHECK(std::exp(fit->intercept) == Approx(1.0).epsilon(1e-12));
  CHECK(fit->points == 3);
}

TEST_CASE("power-law fit drops negligible drifts and needs three points") {
  const std::vector<std::pair<double, double>> table{{1e-1, 1.0}, {1e-2, 0.1}, {1e-3, 1e-15}};
  CHECK_FALSE(fit_power_law(table));
  CHECK_FALSE(fit_power_law(std::vector<std::pair<double, double>>{}));
}

TEST_CASE("sweep plan validation") {
  SweepPlan p = beltrami_plan();
  CHECK_NOTHROW(p.validate(true));
  p.mu_values = {1e-2, 1e-1, 1e-3};
  CHECK_THROWS_AS(p.validate(false), ConfigurationError);
  p.mu_values = {1e-2, 1e-2, 1e-3};
  CHECK_THROWS_AS(p.validate(false), ConfigurationError);
  p.mu_values = {1e-2, 1e-9};
  CHECK_THROWS_AS(p.validate(false), ConfigurationError);
  p.mu_values = {1e-1, 1e-2};
  CHECK_NOTHROW(p.validate(false));
  CHECK_THROWS_AS(p.validate(true), ConfigurationError);
  p = beltrami_plan();
  p.threads = 0;
  CHECK_THROWS_AS(p.validate(false), ConfigurationError);
  p = beltrami_plan();
  p.nu_rule = {false, -1.0};
  CHECK_THROWS_AS(p.validate(false), ConfigurationError);
}

TEST_CASE("nu rule") {
  CHECK(NuRule{}(0.3) == 0.3);
  CHECK(NuRule{false, 0.05}(0.3) == 0.05);
  SweepPlan p = beltrami_plan();
  p.nu_rule = {false, 0.02};
  CHECK(p.solver_config(1e-3).nu == 0.02);
  CHECK(p.solver_config(1e-3).mu == 1e-3);
}

TEST_CASE("Beltrami sweep: analytic drift and unit slope") {
  const SweepResult r = run_sweep(beltrami_plan());
  REQUIRE(r.rows.size() == 3);
  const double h0 = 3.0 * kTwoPiCubed;
  for (const auto& row : r.rows) {
    CHECK_FALSE(row.flagged());
    CHECK(row.nu == row.mu);
    CHECK(row.max_helicity_drift == Approx(h0 * (1.0 - std::exp(-2.0 * row.mu))).epsilon(1e-9));
    REQUIRE(row.bound);
    CHECK(row.bound->holds);
    CHECK(row.within_envelope);
    CHECK(row.helicity_balance_residual <= 1e-8);
  }
  CHECK(r.rows[0].mu > r.rows[1].mu);
  REQUIRE(r.fit);
  CHECK(r.fit->slope == Approx(1.0).epsilon(0.1));
  CHECK(r.bound_constant == Approx(h0 * (1.0 - std::exp(-0.2)) / std::sqrt(0.1)).epsilon(1e-9));
}

TEST_CASE("two-value ladder emits rows without a fit") {
  SweepPlan p = beltrami_plan();
  p.mu_values = {1e-1, 1e-2};
  const SweepResult r = run_sweep(p);
  CHECK(r.rows.size() == 2);
  CHECK_FALSE(r.fit);
}

TEST_CASE("sweep results do not depend on the worker count") {
  SweepPlan p = random_plan(3, 12);
  const SweepResult serial = run_sweep(p);
  p.threads = 3;
  const SweepResult parallel = run_sweep(p);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    const auto& a = serial.rows[i];
    const auto& b = parallel.rows[i];
    CHECK(a.mu == b.mu);
    CHECK(a.max_helicity_drift == b.max_helicity_drift);
    REQUIRE(a.series.size() == b.series.size());
    for (std::size_t k = 0; k < a.series.size(); ++k) {
      CHECK(a.series[k].energy == b.series[k].energy);
      CHECK(a.series[k].helicity == b.series[k].helicity);
    }
  }
  REQUIRE(serial.fit);
  CHECK(serial.fit->slope == parallel.fit->slope);
}

TEST_CASE("every 3-D row satisfies its own drift envelope") {
  const SweepResult r = run_sweep(random_plan(3, 12));
  for (const auto& row : r.rows) {
    REQUIRE(row.bound);
    CHECK(row.bound->holds);
    CHECK(row.within_envelope);
    CHECK(row.envelope == 2.0 * row.bound->rhs);
    CHECK(row.max_helicity_drift <= row.envelope);
  }
}

TEST_CASE("2-D rows report msp drift inside the linear-in-mu envelope") {
  const SweepResult r = run_sweep(random_plan(2, 16));
  CHECK(r.dim == 2);
  for (const auto& row : r.rows) {
    CHECK_FALSE(row.bound);
    CHECK(row.max_msp_drift > 0.0);
    CHECK(row.drift(2) == row.max_msp_drift);
    CHECK(row.within_envelope);
    CHECK(row.msp_balance_residual <= 1e-6);
  }
}

TEST_CASE("perturbation adds a fixed-norm oscillation at rising frequency") {
  const auto g = grid(3, 16);
  for (int mode : {2, 3, 5}) {
    const SpectralField f = oscillating_field(g, mode);
    CHECK(norm_squared(f) == Approx(g->volume()).epsilon(1e-12));
    CHECK(f.mean().norm() == 0.0);
    CHECK(relative_divergence(f) < 1e-14);
    CHECK(dissipation_peak_shell(f) == mode);
  }

  SweepPlan p = beltrami_plan();
  p.t_end = 0.01;
  p.perturbation = {0.1, 2};
  const double e_base = 0.5 * 3.0 * kTwoPiCubed;
  for (std::size_t j = 0; j < 3; ++j) {
    const SweepRow row = run_sweep_row(p, j);
    // perturbation is orthogonal to the |k| = 1 base field; u and b both get it
    CHECK(row.series.front().energy == Approx(e_base + 0.01 * g->volume()).epsilon(1e-12));
    CHECK(row.peak_shell >= 1);
  }
}

TEST_CASE("under-resolved rows are flagged and kept out of the fit") {
  SweepPlan p = random_plan(3, 8);
  p.initial.params = {{"k_max", 2.0}, {"slope", -3.0}};
  const SweepResult r = run_sweep(p);
  CHECK(r.flagged_count() == 3);
  for (const auto& row : r.rows) {
    CHECK_FALSE(row.resolved);
    CHECK(row.message.find("2N/9") != std::string::npos);
  }
  CHECK_FALSE(r.fit);
  CHECK(r.bound_constant == 0.0);
}

TEST_CASE("diverged rows are flagged, not thrown") {
  SweepPlan p = random_plan(3, 8);
  p.initial.params = {{"k_max", 1.0}, {"energy_u", 1e8}, {"energy_b", 1e8}};
  p.mu_values = {1e-2, 1e-3, 1e-4};
  p.dt = 0.05;
  p.t_end = 1.0;
  const SweepResult r = run_sweep(p);
  for (const auto& row : r.rows) {
    CHECK(row.diverged);
    CHECK(row.flagged());
    CHECK_FALSE(row.message.empty());
  }
  CHECK(r.flagged_count() == 3);
}

TEST_CASE("presets: Beltrami, Orszag-Tang-like and random data") {
  const TorusSpec t3{3, 2 * kPi, 16};
  InitialDataSpec spec;
  spec.preset = "beltrami-abc";
  MhdState s = make_initial_data(t3, spec);
  CHECK(rel_l2(s.b, abc(s.b.grid())) < 1e-15);
  CHECK(norm_squared(s.u) == 0.0);

  spec.preset = "orszag-tang-like";
  s = make_initial_data(t3, spec);
  CHECK(relative_divergence(s.u) < 1e-14);
  CHECK(relative_divergence(s.b) < 1e-14);
  CHECK(s.b.mean().norm() == 0.0);
  // only the sin z / cos z and sin x / cos x pairs are helical
  CHECK(helicity(s.b) == Approx(2.0 * kTwoPiCubed).epsilon(1e-12));

  const TorusSpec t2{2, 2 * kPi, 16};
  s = make_initial_data(t2, spec);
  // phi = cos(2y)/2 + cos x
  CHECK(mean_square_potential(s.b) == Approx(2.0 * kPi * kPi * (0.25 + 1.0)).epsilon(1e-12));

  spec.preset = "random-solenoidal";
  spec.seed = 7;
  const MhdState a = make_initial_data(t3, spec);
  const MhdState b = make_initial_data(t3, spec);
  CHECK(max_abs_diff(a.u, b.u) == 0.0);
  CHECK(max_abs_diff(a.b, b.b) == 0.0);
  CHECK(relative_divergence(a.u) < 1e-14);
  CHECK(relative_divergence(a.b) < 1e-14);
  CHECK(0.5 * norm_squared(a.u) / kTwoPiCubed == Approx(0.5).epsilon(1e-12));
  CHECK(0.5 * norm_squared(a.b) / kTwoPiCubed == Approx(0.5).epsilon(1e-12));
  CHECK(a.b.mean().norm() == 0.0);
  spec.seed = 8;
  CHECK(max_abs_diff(make_initial_data(t3, spec).u, a.u) > 0.0);
}

TEST_CASE("prescribed mean is honored exactly") {
  for (const char* preset : {"beltrami-abc", "random-solenoidal"}) {
    InitialDataSpec spec;
    spec.preset = preset;
    spec.b_mean = (Vector(3) << 0.0, 0.0, 0.3).finished();
    const MhdState s = make_initial_data({3, 2 * kPi, 12}, spec);
    const GaugeDecomposition d = decompose(s.b);
    CHECK(d.harmonic_part == *spec.b_mean);
  }
}

TEST_CASE("unknown preset is a usage error") {
  InitialDataSpec spec;
  spec.preset = "kelvin-helmholtz";
  CHECK_THROWS_AS(make_initial_data({3, 2 * kPi, 8}, spec), UsageError);
}
