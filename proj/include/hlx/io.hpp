#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hlx/diagnostics.hpp"
#include "hlx/initial_data.hpp"
#include "hlx/sweep.hpp"

namespace hlx {

inline constexpr const char* kVersion = "0.1.0";

/// Everything a `run` or `sweep` invocation reads from its JSON config.
struct RunConfig {
  TorusSpec torus;
  SolverConfig solver;
  InitialDataSpec initial;
  std::string out_dir = "out";
  Vector gauge_shift;  ///< empty means zero
  // sweep only
  std::vector<Scalar> mu_values;
  NuRule nu_rule;
  Perturbation perturbation;

  /// Throws ConfigurationError with a one-line message on the first problem.
  void validate() const;
  SweepPlan sweep_plan(int threads) const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Parses and validates. Unknown keys are rejected.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& cfg);

/// Binary checkpoint, all values little-endian:
///   "HLX1" | u32 dim | u32 modes | f64 side_length | f64 t |
///   u64 slots | u then b: dim components x slots x (f64 re, f64 im) |
///   u64 FNV-1a hash of everything before it
void write_checkpoint(const std::filesystem::path& path, const MhdState& state);
/// Throws IoError on a missing, truncated or corrupt file.
MhdState read_checkpoint(const std::filesystem::path& path);

nlohmann::json to_json(const SweepResult& result);
void write_sweep_summary_csv(std::ostream& os, const SweepResult& result);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace hlx
