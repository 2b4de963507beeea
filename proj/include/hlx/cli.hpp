#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "hlx/torus.hpp"

namespace hlx::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kDiverged = 3,
  kIoError = 4,
};

struct Options {
  std::optional<std::string> out_dir;  ///< --out; HLX_OUT overrides it
  int threads = 1;
  std::optional<Vector> gauge_shift;
};

/// Output directory: $HLX_OUT, else --out, else the config's out_dir.
std::filesystem::path resolve_out_dir(const Options& opts, const std::string& config_out);

/// Parses "x,y" or "x,y,z". Throws ConfigurationError on malformed input.
Vector parse_gauge_shift(const std::string& text);

int cmd_run(const std::filesystem::path& config, const Options& opts, std::ostream& out,
            std::ostream& err);
int cmd_sweep(const std::filesystem::path& config, const Options& opts, std::ostream& out,
              std::ostream& err);
int cmd_decompose(const std::filesystem::path& checkpoint, const Options& opts,
                  std::ostream& out, std::ostream& err);
int cmd_verify(const std::filesystem::path& checkpoint, const Options& opts, std::ostream& out,
               std::ostream& err);

/// Entry point of the `hlx` executable.
int main(int argc, char** argv);

}  // namespace hlx::cli
