#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <bric/sim_engine.hpp>

namespace bric {

/// Which plant a scenario runs and its parameters.
struct PlantSelection {
    std::string type = "pendulum";  ///< "pendulum" | "double_integrator"
    PendulumParams pendulum;
    ScenarioFlags flags;
    Eigen::VectorXd f_d;  ///< double-integrator drift
};

struct OutputConfig {
    std::string dir = "out";
    std::string prefix = "run";
};

/// A fully resolved experiment: plant, controller, target, initial state,
/// integrator settings and output locations.
struct ExperimentConfig {
    std::string name = "custom";
    PlantSelection plant;
    ControllerConfig controller = BricController{};
    RegulationTarget target;
    InitialState initial;
    SimConfig sim;
    OutputConfig output;
};

/// Outcome of parsing + validating a config document. `errors` collects
/// every failure (not just the first); `notes` records applied defaults
/// worth surfacing, e.g. a defaulted lambda.
struct LoadReport {
    std::optional<ExperimentConfig> config;
    std::vector<std::string> errors;
    std::vector<std::string> notes;

    bool ok() const { return errors.empty() && config.has_value(); }
};

/// Parses a JSON experiment document. Unknown keys are rejected with their
/// location; value constraints are checked module by module.
[[nodiscard]] LoadReport load_config_text(const std::string& text);
[[nodiscard]] LoadReport load_config_file(const std::filesystem::path& path);

/// Canonical JSON form of a config; load_config_text(serialize(c)) returns
/// an identical config.
[[nodiscard]] std::string serialize(const ExperimentConfig& cfg);

[[nodiscard]] std::vector<std::string> preset_names();
[[nodiscard]] bool is_preset(const std::string& name);
/// Throws std::out_of_range for unknown names.
[[nodiscard]] ExperimentConfig preset(const std::string& name);

[[nodiscard]] std::unique_ptr<PlantModel> make_plant(const ExperimentConfig& cfg);

}  // namespace bric
