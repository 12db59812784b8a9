#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tabkit {

/// Signals a rejected configuration (unknown key, bad value, incompatible
/// method list). Maps to its own process exit code in the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat experiment description; everything the runner needs to reproduce a
/// sweep byte-for-byte. Values not set fall back to scenario-family defaults
/// when the config is resolved.
struct ExperimentConfig {
  std::string scenario = "band";  // band | flip | logistic
  std::vector<double> grid;       // delta or r values; family default if empty
  std::vector<double> gammas;     // nonparametric families only
  std::vector<std::string> methods;
  std::size_t n_q = 0;   // 0 = family default
  std::size_t n_p = 0;
  std::size_t n_test = 50000;
  int reps = 20;
  std::uint64_t seed = 1;
  std::string metric;    // accuracy | agreement; family default if empty
  std::string out;       // output CSV path
  std::optional<double> tau;
  std::optional<int> k_q;
  std::optional<int> k_p;
  int d = 200;           // logistic ambient dimension
  int s = 10;            // logistic sparsity
  double amp_q = 0.1;
  double amp_p = 0.2;
  bool theory_params = false;
  bool exact_angle = false;
};

/// Parses a flat key=value file ('#' starts a comment). Unknown keys are
/// rejected with the offending key named.
ExperimentConfig parse_config(const std::string& path);

/// Applies one key=value pair onto an existing config (also the CLI override
/// path, so flags win over file values by being applied later).
void apply_key_value(ExperimentConfig& config, const std::string& key,
                     const std::string& value);

/// Round-trippable text form; parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

ExperimentConfig parse_config_text(const std::string& text);

/// Applies a config file's key=value lines onto an existing config.
void apply_config_text(ExperimentConfig& config, const std::string& text);
void apply_config_file(ExperimentConfig& config, const std::string& path);

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

/// Fills family defaults (grid, methods, sizes, metric) for unset fields and
/// validates method/scenario compatibility.
ExperimentConfig resolve_defaults(const ExperimentConfig& config);

/// Worker-count cap: TABKIT_THREADS when set, hardware concurrency otherwise.
int thread_budget();

}  // namespace tabkit
