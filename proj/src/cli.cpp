#include "hlx/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hlx/errors.hpp"
#include "hlx/hodge.hpp"
#include "hlx/io.hpp"
#include "hlx/operators.hpp"

namespace hlx::cli {

using nlohmann::json;

namespace {

std::string mu_dir_name(Scalar mu) { return fmt::format("mu_{:g}", mu); }

void write_series(const std::filesystem::path& path, const Series& series, int dim) {
  std::ostringstream ss;
  write_series_csv(ss, series, dim);
  write_text_file(path, ss.str());
}

json manifest(const char* command, const RunConfig& cfg, const Options& opts, double wall) {
  return {{"tool", "hlx"},
          {"version", kVersion},
          {"command", command},
          {"threads", opts.threads},
          {"config", to_json(cfg)},
          {"wall_time_seconds", wall}};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::optional<RunConfig> load_or_report(const std::filesystem::path& path, std::ostream& err) {
  try {
    return load_run_config(path);
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  }
  return std::nullopt;
}

struct Check {
  std::string name;
  Scalar value;
  Scalar tolerance;
  bool passed() const { return value <= tolerance; }
};

Scalar relative_l2(const SpectralField& a, const SpectralField& b) {
  const Scalar scale = std::max(norm_squared(b), 1e-300);
  return std::sqrt(norm_squared(a - b) / scale);
}

}  // namespace

std::filesystem::path resolve_out_dir(const Options& opts, const std::string& config_out) {
  if (const char* env = std::getenv("HLX_OUT"); env && *env) return env;
  if (opts.out_dir) return *opts.out_dir;
  return config_out;
}

Vector parse_gauge_shift(const std::string& text) {
  std::vector<Scalar> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigurationError(fmt::format("bad gauge shift component '{}'", item));
    }
  }
  if (values.size() != 2 && values.size() != 3) {
    throw ConfigurationError("gauge shift must be x,y or x,y,z");
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

int cmd_run(const std::filesystem::path& config, const Options& opts, std::ostream& out,
            std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = load_or_report(config, err);
  if (!cfg) return kConfigError;
  const std::filesystem::path dir = resolve_out_dir(opts, cfg->out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    err << "error: cannot create output directory " << dir << ": " << ec.message() << '\n';
    return kIoError;
  }

  const MhdState initial = make_initial_data(cfg->torus, cfg->initial);
  SeriesRecorder recorder(cfg->solver);
  int code = kOk;
  Trajectory traj;
  try {
    traj = integrate(initial, cfg->solver, {recorder.observer()});
  } catch (const DivergedRunError& e) {
    err << "error: run diverged: " << e.what() << '\n';
    code = kDiverged;
  }

  try {
    write_series(dir / "series.csv", recorder.series(), cfg->torus.dim);
    if (code == kOk) write_checkpoint(dir / "checkpoint.hlx", traj.final_state);
    json m = manifest("run", *cfg, opts, seconds_since(start));
    m["steps"] = traj.steps;
    m["status"] = code == kOk ? "ok" : "diverged";
    write_text_file(dir / "manifest.json", m.dump(2) + "\n");
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  if (code != kOk) return code;

  const DiagnosticsRecord& last = recorder.series().back();
  out << fmt::format("t = {:.17g}  energy = {:.17g}  helicity = {:.17g}  msp = {:.17g}\n",
                     last.t, last.energy, last.helicity, last.msp);
  return kOk;
}

int cmd_sweep(const std::filesystem::path& config, const Options& opts, std::ostream& out,
              std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = load_or_report(config, err);
  if (!cfg) return kConfigError;
  const SweepPlan plan = cfg->sweep_plan(opts.threads);
  try {
    plan.validate(true);
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  const std::filesystem::path dir = resolve_out_dir(opts, cfg->out_dir);
  const SweepResult result = run_sweep(plan);
  try {
    for (const auto& row : result.rows) {
      const auto row_dir = dir / mu_dir_name(row.mu);
      std::filesystem::create_directories(row_dir);
      write_series(row_dir / "series.csv", row.series, plan.torus.dim);
    }
    write_text_file(dir / "sweep_summary.json", to_json(result).dump(2) + "\n");
    std::ostringstream csv;
    write_sweep_summary_csv(csv, result);
    write_text_file(dir / "sweep_summary.csv", csv.str());
    write_text_file(dir / "manifest.json",
                    manifest("sweep", *cfg, opts, seconds_since(start)).dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }

  for (const auto& row : result.rows) {
    out << fmt::format("mu = {:<10g} drift = {:.6e}  envelope = {:.6e}{}\n", row.mu,
                       row.drift(result.dim), row.envelope,
                       row.flagged() ? "  [flagged: " + row.message + "]" : "");
  }
  if (result.fit) {
    out << fmt::format("fitted slope = {:.4f} over {} points\n", result.fit->slope,
                       result.fit->points);
  } else {
    out << "fit refused: fewer than 3 usable rows\n";
  }
  if (5 * result.flagged_count() > result.rows.size()) {
    err << fmt::format("error: {} of {} rows flagged\n", result.flagged_count(),
                       result.rows.size());
    return kDiverged;
  }
  return kOk;
}

int cmd_decompose(const std::filesystem::path& checkpoint, const Options& opts,
                  std::ostream& out, std::ostream& err) {
  MhdState state;
  GaugeDecomposition d;
  try {
    state = read_checkpoint(checkpoint);
    d = decompose(state.b);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const PreconditionError& e) {
    err << "error: corrupt checkpoint: " << e.what() << '\n';
    return kIoError;
  }
  const int dim = state.b.dim();
  const Vector shift = opts.gauge_shift.value_or(Vector::Zero(dim));
  if (shift.size() != dim) {
    err << fmt::format("error: gauge shift must have {} components\n", dim);
    return kConfigError;
  }

  json j;
  j["b_sigma_norm"] = std::sqrt(norm_squared(d.sigma_part));
  j["b_harmonic"] = std::vector<Scalar>(d.harmonic_part.data(),
                                        d.harmonic_part.data() + d.harmonic_part.size());
  j["gauge_shift"] = std::vector<Scalar>(shift.data(), shift.data() + shift.size());
  if (dim == 3) {
    j["helicity_at_shift_0"] = helicity(state.b);
    j["helicity_at_shift"] = helicity(state.b, shift);
  } else {
    j["helicity_at_shift_0"] = nullptr;
    j["helicity_at_shift"] = nullptr;
    j["mean_square_potential"] = mean_square_potential(state.b);
  }
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_verify(const std::filesystem::path& checkpoint, const Options&, std::ostream& out,
               std::ostream& err) {
  MhdState state;
  try {
    state = read_checkpoint(checkpoint);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  const SpectralField& u = state.u;
  const SpectralField& b = state.b;
  std::vector<Check> checks{
      {"u_conjugate_symmetry", hermitian_defect(u), 1e-12},
      {"b_conjugate_symmetry", hermitian_defect(b), 1e-12},
      {"u_dealiased_band_zero", dealiased_band_defect(u), 0.0},
      {"b_dealiased_band_zero", dealiased_band_defect(b), 0.0},
      {"u_divergence_free", relative_divergence(u), 1e-10},
      {"b_divergence_free", relative_divergence(b), 1e-10},
      {"leray_idempotent", relative_l2(leray_project(leray_project(u)), leray_project(u)), 1e-12},
  };

  bool decomposable = checks[5].passed();
  if (decomposable) {
    const GaugeDecomposition d = decompose(b);
    SpectralField rebuilt = d.sigma_part;
    rebuilt.set_mean(d.harmonic_part);
    checks.push_back({"decomposition_reconstructs", relative_l2(rebuilt, b), 1e-12});
    if (d.potential) {
      checks.push_back({"potential_curl_is_sigma", relative_l2(curl(*d.potential), d.sigma_part), 1e-12});
      checks.push_back({"potential_divergence_free", relative_divergence(*d.potential), 1e-12});
      checks.push_back({"potential_zero_mean", d.potential->mean().cwiseAbs().maxCoeff(), 0.0});
      const Scalar h0 = helicity(b);
      Scalar worst = 0.0;
      for (int i = 0; i < 3; ++i) {
        Vector e = Vector::Unit(3, i);
        const Scalar expected = d.harmonic_part(i) * b.grid()->volume();
        const Scalar got = helicity(b, e) - h0;
        worst = std::max(worst, std::abs(got - expected) / std::max({1.0, std::abs(h0), std::abs(expected)}));
      }
      checks.push_back({"helicity_gauge_shift_identity", worst, 1e-12});
    } else {
      const SpectralField phi = stream_function(b);
      checks.push_back({"stream_function_inverts", relative_l2(-1.0 * perp_grad(phi), d.sigma_part), 1e-12});
      checks.push_back({"stream_function_zero_mean", std::abs(phi[0](0)), 0.0});
    }
  }

  json arr = json::array();
  bool all = decomposable;
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance},
                   {"passed", c.passed()}});
    all = all && c.passed();
  }
  out << json{{"checks", arr}, {"passed", all}}.dump(2) << '\n';
  if (!all) {
    err << "error: checkpoint violates field invariants\n";
    return kIoError;
  }
  return kOk;
}

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral MHD on periodic tori with helicity diagnostics", "hlx"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Options opts;
  std::string out_dir;
  std::string shift_text;
  app.add_option("--out", out_dir, "Output directory (HLX_OUT overrides)");
  app.add_option("--threads", opts.threads, "Worker threads; 1 is the deterministic CI mode")
      ->check(CLI::Range(1, 1024));
  app.add_option("--gauge-shift", shift_text, "Constant added to the vector potential: x,y[,z]");

  std::string config;
  std::string checkpoint;
  auto* run = app.add_subcommand("run", "Integrate one trajectory");
  run->add_option("--config", config, "JSON run configuration")->required();
  auto* sweep = app.add_subcommand("sweep", "Run a resistivity ladder and fit drift scaling");
  sweep->add_option("--config", config, "JSON run configuration")->required();
  auto* dec = app.add_subcommand("decompose", "Split a checkpoint's b and report helicities");
  dec->add_option("checkpoint", checkpoint, "HLX1 checkpoint")->required();
  auto* ver = app.add_subcommand("verify", "Check field invariants of a checkpoint");
  ver->add_option("checkpoint", checkpoint, "HLX1 checkpoint")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  if (!out_dir.empty()) opts.out_dir = out_dir;
  if (!shift_text.empty()) {
    try {
      opts.gauge_shift = parse_gauge_shift(shift_text);
    } catch (const ConfigurationError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kConfigError;
    }
  }

  try {
    if (run->parsed()) return cmd_run(config, opts, std::cout, std::cerr);
    if (sweep->parsed()) return cmd_sweep(config, opts, std::cout, std::cerr);
    if (dec->parsed()) return cmd_decompose(checkpoint, opts, std::cout, std::cerr);
    return cmd_verify(checkpoint, opts, std::cout, std::cerr);
  } catch (const ConfigurationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace hlx::cli
