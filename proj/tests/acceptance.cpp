// Acceptance suite: one pass/fail line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "hlx/diagnostics.hpp"
#include "hlx/hodge.hpp"
#include "hlx/initial_data.hpp"
#include "hlx/sweep.hpp"
#include "support.hpp"

using namespace hlx;
using namespace hlx::test;

namespace {

struct Outcome {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SolverConfig solver(double nu, double mu, double dt, double t_end, double every) {
  SolverConfig c;
  c.nu = nu;
  c.mu = mu;
  c.dt = dt;
  c.t_end = t_end;
  c.record_every = every;
  return c;
}

struct Run {
  Series series;
  int peak_shell = 0;
};

Run simulate(const MhdState& s0, const SolverConfig& cfg) {
  SeriesRecorder rec(cfg);
  Run run;
  integrate(s0, cfg,
            {rec.observer(), [&](const MhdState& s) {
               run.peak_shell = std::max(run.peak_shell, dissipation_peak_shell(s.b));
             }});
  run.series = rec.take();
  return run;
}

std::vector<double> ladder() {
  std::vector<double> mu;
  for (int j = 0; j < 5; ++j) mu.push_back(std::pow(10.0, -1.0 - 0.5 * j));
  return mu;
}

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

// ---------------------------------------------------------------------------

Outcome beltrami_oracle() {
  Stopwatch clock;
  const double mu = 0.1;
  const SolverConfig cfg = solver(0.05, mu, 1e-3, 1.0, 0.01);
  InitialDataSpec spec;
  spec.preset = "beltrami-abc";
  const Run run = simulate(make_initial_data({3, 2 * kPi, 16}, spec), cfg);
  const double seconds = clock.seconds();

  const double exact = 3.0 * kTwoPiCubed * std::exp(-2.0 * mu);
  const double h_err = std::abs(run.series.back().helicity - exact) / exact;
  const double e_res = energy_balance_residual(run.series);
  const bool pass = run.series.back().t == 1.0 && h_err <= 1e-6 && e_res <= 1e-8 && seconds < 10.0;
  return {1, "Beltrami oracle", pass,
          fmt::format("helicity rel err {:.2e} (tol 1e-6), energy residual {:.2e} (tol 1e-8), "
                      "{:.1f} s (limit 10 s)",
                      h_err, e_res, seconds)};
}

struct RandomRuns {
  Outcome outcome;
  std::vector<BoundVerdict> bounds;
};

RandomRuns helicity_balance() {
  Stopwatch clock;
  const TorusSpec torus{3, 2 * kPi, 32};
  const SolverConfig cfg = solver(1e-2, 1e-2, 5e-3, 1.0, 0.01);
  RandomRuns out;
  double worst = 0.0;
  int worst_shell = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    InitialDataSpec spec;
    spec.preset = "random-solenoidal";
    spec.seed = seed;
    const Run run = simulate(make_initial_data(torus, spec), cfg);
    worst = std::max(worst, helicity_balance_residual(run.series));
    worst_shell = std::max(worst_shell, run.peak_shell);
    out.bounds.push_back(sqrt_mu_bound_check(run.series, cfg, run.series.front().energy));
  }
  const double seconds = clock.seconds();
  const bool resolved = 9 * worst_shell < 2 * torus.modes;
  out.outcome = {2, "helicity balance identity", worst <= 1e-5 && resolved && seconds < 300.0,
                 fmt::format("5 random runs N=32: max residual {:.2e} (tol 1e-5), peak shell {} "
                             "({}), {:.1f} s (limit 300 s)",
                             worst, worst_shell, resolved ? "resolved" : "UNDER-RESOLVED",
                             seconds)};
  return out;
}

struct SweepOutcome {
  Outcome outcome;
  std::vector<BoundVerdict> bounds;
};

SweepOutcome ideal_limit_sweep() {
  Stopwatch clock;
  SweepPlan plan;
  plan.torus = {3, 2 * kPi, 48};
  plan.initial.preset = "orszag-tang-like";
  plan.mu_values = ladder();
  plan.t_end = 1.0;
  plan.dt = 5e-3;
  plan.record_every = 0.01;
  plan.threads = workers();

  const MhdState s0 = make_initial_data(plan.torus, plan.initial);
  const double b_h = decompose(s0.b).harmonic_part.norm();
  const SweepResult r = run_sweep(plan);
  const double seconds = clock.seconds();

  SweepOutcome out;
  bool decreasing = true;
  bool enveloped = true;
  std::string drifts;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const SweepRow& row = r.rows[i];
    if (row.bound) out.bounds.push_back(*row.bound);
    enveloped = enveloped && row.within_envelope;
    if (i > 0) decreasing = decreasing && row.max_helicity_drift < r.rows[i - 1].max_helicity_drift;
    drifts += fmt::format("{}{:.2e}", i ? " " : "", row.max_helicity_drift);
  }
  const double slope = r.fit ? r.fit->slope : std::nan("");
  const bool pass = b_h == 0.0 && r.flagged_count() == 0 && decreasing && r.fit &&
                    slope >= 0.4 && enveloped && seconds < 1800.0;
  out.outcome = {4, "ideal-limit sweep", pass,
                 fmt::format("N=48 b mean {:.1e}, drifts [{}] {}, slope {:.3f} (min 0.4), "
                             "envelope {}, {} flagged, {:.0f} s (limit 1800 s)",
                             b_h, drifts, decreasing ? "decreasing" : "NOT decreasing", slope,
                             enveloped ? "holds" : "VIOLATED", r.flagged_count(), seconds)};
  return out;
}

Outcome sqrt_mu_bound(const std::vector<BoundVerdict>& runs, const std::vector<BoundVerdict>& rows) {
  int held = 0;
  double worst_ratio = 0.0;
  for (const auto* group : {&runs, &rows}) {
    for (const BoundVerdict& v : *group) {
      held += v.holds ? 1 : 0;
      if (v.rhs > 0.0) worst_ratio = std::max(worst_ratio, v.lhs / v.rhs);
    }
  }
  const int total = static_cast<int>(runs.size() + rows.size());
  return {3, "sqrt(mu) bound", total == 10 && held == total,
          fmt::format("{}/{} runs and sweep rows hold, max lhs/rhs {:.3f} (limit 1 + 1e-9)", held,
                      total, worst_ratio)};
}

Outcome harmonic_stationarity() {
  double worst = 0.0;
  int runs = 0;
  auto check = [&](const TorusSpec& torus, InitialDataSpec spec, const Vector& mean) {
    spec.b_mean = mean;
    const Run run = simulate(make_initial_data(torus, spec), solver(1e-2, 1e-2, 5e-3, 1.0, 0.01));
    worst = std::max(worst, b_mean_variation(run.series));
    ++runs;
  };
  InitialDataSpec random;
  random.preset = "random-solenoidal";
  random.seed = 11;
  check({3, 2 * kPi, 16}, random, (Vector(3) << 0.2, -0.1, 0.3).finished());
  InitialDataSpec abc_data;
  abc_data.preset = "beltrami-abc";
  check({3, 2 * kPi, 16}, abc_data, (Vector(3) << 0.0, 0.0, 0.3).finished());
  InitialDataSpec ot;
  ot.preset = "orszag-tang-like";
  check({2, 2 * kPi, 64}, ot, (Vector(2) << 0.3, -0.2).finished());
  check({2, 2 * kPi, 32}, random, (Vector(2) << -0.5, 0.1).finished());
  return {5, "harmonic-part stationarity", worst <= 1e-12,
          fmt::format("{} runs with nonzero mean: max b_mean variation {:.2e} (tol 1e-12)", runs,
                      worst)};
}

Outcome gauge_dependence() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double worst = 0.0;
  double worst_zero = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double side = trial % 2 ? 2 * kPi : 3.0 + trial * 0.1;
    const auto g = grid(3, 16, side);
    SpectralField b = random_solenoidal(g, 900u + trial);
    const Vector shift = (Vector(3) << unif(rng), unif(rng), unif(rng)).finished();

    b.set_mean(Vector::Zero(3));
    worst_zero = std::max(worst_zero, std::abs(helicity(b, shift) - helicity(b)));

    const Vector mean = (Vector(3) << unif(rng), unif(rng), unif(rng)).finished();
    b.set_mean(mean);
    const double h0 = helicity(b);
    const double expected = shift.dot(mean) * g->volume();
    const double got = helicity(b, shift) - h0;
    worst = std::max(worst, std::abs(got - expected) / std::max(std::abs(h0), std::abs(expected)));
  }
  return {6, "gauge dependence", worst <= 1e-12 && worst_zero == 0.0,
          fmt::format("20 random fields: max rel err {:.2e} (tol 1e-12), shift change with zero "
                      "mean {:.1e} (must be 0)",
                      worst, worst_zero)};
}

Outcome mean_square_potential_2d() {
  Stopwatch clock;
  const double mu = 0.1;
  InitialDataSpec single;
  single.preset = "beltrami-abc";
  const Run decay = simulate(make_initial_data({2, 2 * kPi, 16}, single),
                             solver(0.0, mu, 1e-3, 1.0, 0.01));
  double oracle_err = 0.0;
  for (const auto& r : decay.series) {
    oracle_err = std::max(oracle_err, std::abs(r.msp - 4 * kPi * kPi * std::exp(-2 * mu * r.t)));
  }

  SweepPlan plan;
  plan.torus = {2, 2 * kPi, 128};
  plan.initial.preset = "orszag-tang-like";
  plan.mu_values = ladder();
  plan.t_end = 1.0;
  plan.dt = 2.5e-3;
  plan.record_every = 0.01;
  plan.threads = workers();
  const SweepResult r = run_sweep(plan);
  const double seconds = clock.seconds();

  bool enveloped = true;
  for (const auto& row : r.rows) enveloped = enveloped && row.within_envelope;
  const double slope = r.fit ? r.fit->slope : std::nan("");
  const bool pass = oracle_err <= 1e-6 && r.flagged_count() == 0 && r.fit && slope >= 0.8 &&
                    enveloped && seconds < 300.0;
  return {7, "2-D mean-square potential", pass,
          fmt::format("decay oracle max err {:.2e} (tol 1e-6); N=128 sweep slope {:.3f} (min 0.8), "
                      "envelope {}, {} flagged, {:.1f} s (limit 300 s)",
                      oracle_err, slope, enveloped ? "holds" : "VIOLATED", r.flagged_count(),
                      seconds)};
}

double product_oracle_error(int dim, int kind, int ncomp_b) {
  const auto g = grid(dim, 8);
  const SpectralField a = random_field(g, dim, 300u + kind);
  const SpectralField b = random_field(g, ncomp_b, 400u + kind);
  const SpectralField got = dealiased_product(a, b, static_cast<ProductKind>(kind));
  const FullSpectrum want = brute_force_product(a, b, kind);
  double scale = 0.0;
  for (const auto& m : want) {
    for (const auto& [_, v] : m) scale = std::max(scale, std::abs(v));
  }
  double err = 0.0;
  for (int c = 0; c < got.ncomp(); ++c) {
    for (Eigen::Index s = 0; s < g->spectral_size(); ++s) {
      const WaveVector k = g->wavevector(s);
      const auto it = want[c].find({k[0], k[1], dim == 3 ? k[2] : 0});
      const std::complex<double> w = it == want[c].end() ? std::complex<double>{} : it->second;
      err = std::max(err, std::abs(got[c](s) - w));
    }
  }
  return err / scale;
}

Outcome spectral_properties() {
  double round_trip = 0.0;
  double idempotence = 0.0;
  double orthogonality = 0.0;
  double divergence = 0.0;
  for (int dim : {2, 3}) {
    for (int modes : {8, 16, 24}) {
      const auto g = grid(dim, modes);
      const SpectralField v = random_field(g, dim, 50u + modes + dim);
      round_trip = std::max(round_trip, rel_l2(forward_transform(inverse_transform(v)), v));
      const SpectralField p = leray_project(v);
      idempotence = std::max(idempotence, rel_l2(leray_project(p), p));
      orthogonality = std::max(orthogonality, std::abs(inner_product(p, v - p)) / norm_squared(v));
      divergence = std::max(divergence, relative_divergence(p));
    }
  }
  double product = 0.0;
  struct Case {
    int dim, kind, ncomp_b;
  };
  for (const Case c : {Case{3, 0, 3}, Case{3, 1, 3}, Case{3, 2, 3}, Case{3, 1, 1}, Case{2, 0, 2},
                       Case{2, 0, 1}, Case{2, 1, 2}, Case{2, 2, 1}}) {
    product = std::max(product, product_oracle_error(c.dim, c.kind, c.ncomp_b));
  }
  const double worst = std::max({round_trip, idempotence, orthogonality, divergence, product});
  return {8, "spectral-core properties", worst <= 1e-10,
          fmt::format("round trip {:.1e}, idempotence {:.1e}, orthogonality {:.1e}, divergence "
                      "{:.1e}, product vs convolution (N=8) {:.1e} (tol 1e-10)",
                      round_trip, idempotence, orthogonality, divergence, product)};
}

}  // namespace

int main() {
  std::vector<Outcome> outcomes;
  auto note = [](const Outcome& o) {
    std::fprintf(stderr, "  finished criterion %d\n", o.id);
    return o;
  };
  outcomes.push_back(note(beltrami_oracle()));
  const RandomRuns random_runs = helicity_balance();
  outcomes.push_back(note(random_runs.outcome));
  const SweepOutcome sweep = ideal_limit_sweep();
  outcomes.push_back(note(sweep.outcome));
  outcomes.push_back(note(sqrt_mu_bound(random_runs.bounds, sweep.bounds)));
  outcomes.push_back(note(harmonic_stationarity()));
  outcomes.push_back(note(gauge_dependence()));
  outcomes.push_back(note(mean_square_potential_2d()));
  outcomes.push_back(note(spectral_properties()));

  std::sort(outcomes.begin(), outcomes.end(),
            [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
  int failed = 0;
  for (const auto& o : outcomes) {
    std::printf("criterion %d %s: %s - %s\n", o.id, o.pass ? "PASS" : "FAIL", o.name.c_str(),
                o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(outcomes.size()) - failed,
              outcomes.size());
  return failed == 0 ? 0 : 1;
}
