#pragma once

#include <string>
#include <vector>

#include "tabkit/config.hpp"
#include "tabkit/evaluate.hpp"

namespace tabkit {

/// Fixed result-file header. Detail rows carry replicate >= 0; summary rows
/// (one per cell and method, metric columns holding replicate means) carry
/// replicate = -1 and an empty seed.
extern const char* kCsvHeader;

std::string csv_row(const ResultRecord& record);

struct SweepResult {
  std::vector<ResultRecord> detail;     // canonical order
  std::vector<ResultRecord> summaries;  // canonical order, replicate = -1
  std::vector<std::string> errors;
};

/// Builds the scenario for one grid cell of the config.
Scenario make_scenario(const ExperimentConfig& config, double gamma, double grid_value);

/// Builds the experiment cell (methods, sizes, fit options) for one grid cell.
ExperimentCell make_cell(const ExperimentConfig& config, double gamma,
                         double grid_value);

/// Runs the full (gamma x grid x replicate) sweep. Work is distributed over
/// `threads` workers; the output ordering is canonical (scenario, gamma, grid
/// value, method, replicate) regardless of scheduling.
SweepResult run_experiment(const ExperimentConfig& config, int threads);

/// Serializes detail rows followed by summary rows under the fixed header.
std::string to_csv(const SweepResult& result);

/// Writes the CSV, a matching plot script and a natively rendered SVG chart
/// next to `csv_path`. Returns the CSV text that was written.
std::string write_outputs(const SweepResult& result, const ExperimentConfig& config,
                          const std::string& csv_path);

}  // namespace tabkit
