#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <bric/experiment.hpp>
#include <bric/sim_engine.hpp>

namespace bric {

/// Process exit codes of the scenario runner.
enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_config_error = 2,
    exit_funnel_violation = 3,
    exit_numeric_failure = 4,
};

struct ScenarioArtifacts {
    std::filesystem::path trajectory_csv;
    std::filesystem::path metrics_json;
    std::filesystem::path run_log;
};

/// Serializes the trajectory as CSV with a named header row and floats at
/// 17 significant digits (lossless round-trip). Throws std::invalid_argument
/// on an empty trajectory and std::runtime_error (with the path) on I/O
/// failure; no partial file is left behind.
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

/// Flat JSON object with the run metrics.
void write_metrics_json(const Metrics& metrics, const std::filesystem::path& path);

/// Runs a preset (by name) or a config file (by path): validates, simulates,
/// and writes <prefix>_trajectory.csv, <prefix>_metrics.json and
/// <prefix>_run.log under the configured output directory (overridable with
/// the BRIC_OUTPUT_DIR environment variable). Diagnostics and a run summary
/// go to `log`. Returns an ExitCode; on violation or numeric failure no
/// trajectory/metrics files are written.
int run_scenario(const std::string& preset_or_path, std::ostream& log,
                 ScenarioArtifacts* artifacts = nullptr);

/// Same, but with an already validated config.
int run_scenario(const ExperimentConfig& cfg, std::ostream& log,
                 ScenarioArtifacts* artifacts = nullptr);

/// Reads two metrics JSON files and prints an ordering report (final error,
/// control effort, funnel margin). Returns exit_ok, or exit_config_error if
/// either file cannot be read.
int compare_runs(const std::filesystem::path& metrics_a, const std::filesystem::path& metrics_b,
                 std::ostream& report);

}  // namespace bric
