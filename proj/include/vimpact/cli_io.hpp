// Run configuration and the command-line front end.
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vimpact/aux_domain.hpp"
#include "vimpact/return_map.hpp"
#include "vimpact/vi_core.hpp"

namespace vimpact {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr const char* kSoftwareVersion = "1.0.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int schema_version = kConfigSchemaVersion;
  std::optional<PhysicalParams> physical;  // when set, `params` is derived from it
  NondimParams params = reference_params(0.35);
  GridSpec grid = GridSpec::half_open(200, 200);
  std::vector<double> d_values;
  double delta = 1.2;
  double phase_cap = kDefaultPhaseCap;
  std::optional<CaseTag> case_tag;
  std::string output_dir;
  std::string coefficients;  // empty selects the embedded reference table
  SolverConfig solver{};
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const RunConfig& c);

// VIMPACT_OUT when set, otherwise "vimpact_out".
std::filesystem::path default_output_dir();

// Parses "NxM" into a half-open grid.
GridSpec parse_grid(const std::string& text);

// Machine-readable error record printed on failure.
std::string error_json(const std::string& kind, const std::string& message);

// Entry point of the CLI; returns the process exit status.
int run_command(int argc, const char* const* argv);
int run_command(const std::vector<std::string>& args);  // args exclude the program name

}  // namespace vimpact
