#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kahlercone/admissible.hpp"
#include "kahlercone/quadrature.hpp"

namespace kc::cli {

enum class Command { Classify, ExtremalPoly, Threshold, Split, Delta, EnergyDemo, TfSweep, TfXs };
enum class Format { Json, Csv, Text };

const char* to_string(Command c);
const char* to_string(Format f);

/// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitInvariant = 3;

/// Environment variable naming the default directory for plot CSV files.
inline constexpr const char* kOutDirEnv = "KAHLERCONE_OUT_DIR";

/// Thrown by the parsers; field() names the offending key or flag.
class ConfigError : public InvalidClass {
 public:
  using InvalidClass::InvalidClass;
};

struct TfInput {
  std::optional<Rat> x;
  std::optional<Rat> s;
  Rat kappa{1};
};

struct SweepInput {
  Rat lo{0};
  Rat hi{1};
  unsigned points = 32;
};

/// Synthetic profile with p_c = 1 and F = (z - z0)^2 (1 - z^2); the only
/// non-admissible input the tool accepts.
struct DoubleRootFixture {
  Rat z0{1, 3};
};

struct RunConfig {
  std::optional<Command> command;
  std::optional<AdmissibleClass> cls;
  TfInput tf;
  std::optional<DoubleRootFixture> fixture;
  SweepInput sweep;
  Format format = Format::Json;
  Rat width = default_root_width();
  QuadratureSpec quadrature;
  unsigned samples = 21;  // F_omega plot grid size
  std::optional<std::string> out_dir;
  std::optional<long long> seed;  // recorded only
};

/// Parses a JSON config document. Unknown keys are ignored so that a JSON
/// report can be fed back in as a config.
RunConfig parse_config(const std::string& json_text);

/// Builds a config from command-line arguments (argv[0] is skipped). A
/// --config file is read first; every flag given on the command line
/// overrides the file.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes the configured command, writing the report to `out` and
/// diagnostics to `err`. Never throws; returns one of the kExit* codes.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args followed by run, with parse errors mapped to kExitInvalidInput.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

}  // namespace kc::cli
