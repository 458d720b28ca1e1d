// Scenario runner for the barrier-integral regulation library: run presets
// or config files, validate configs, and compare finished runs.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <bric/scenario.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Funnel-constrained regulation scenarios (barrier-integral and "
                 "prescribed-performance controllers)"};
    app.require_subcommand(1);

    std::string run_target;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "Run a preset or a JSON config file");
    run->add_option("scenario", run_target, "Preset name or config path")->required();
    run->add_option("--out", out_dir, "Override the output directory");

    auto* list = app.add_subcommand("list-presets", "List built-in scenario presets");

    std::string show_name;
    auto* show = app.add_subcommand("show-preset", "Print a preset as a JSON config");
    show->add_option("name", show_name, "Preset name")->required();

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Validate a config file without running it");
    validate->add_option("config", validate_path, "Config path")->required();

    std::string cmp_a, cmp_b;
    auto* compare = app.add_subcommand(
        "compare", "Compare the metrics JSON files of two finished runs");
    compare->add_option("runA", cmp_a, "First metrics JSON")->required();
    compare->add_option("runB", cmp_b, "Second metrics JSON")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (!out_dir.empty()) {
            setenv("BRIC_OUTPUT_DIR", out_dir.c_str(), 1);
        }
        bric::ScenarioArtifacts artifacts;
        const int code = bric::run_scenario(run_target, std::cout, &artifacts);
        if (code == bric::exit_ok) {
            std::cout << "wrote " << artifacts.trajectory_csv.string() << "\n"
                      << "wrote " << artifacts.metrics_json.string() << "\n"
                      << "wrote " << artifacts.run_log.string() << "\n";
        }
        return code;
    }
    if (list->parsed()) {
        for (const std::string& name : bric::preset_names()) {
            std::cout << name << "\n";
        }
        return bric::exit_ok;
    }
    if (show->parsed()) {
        if (!bric::is_preset(show_name)) {
            std::cerr << "error: unknown preset: " << show_name << "\n";
            return bric::exit_config_error;
        }
        std::cout << bric::serialize(bric::preset(show_name));
        return bric::exit_ok;
    }
    if (validate->parsed()) {
        const bric::LoadReport report = bric::load_config_file(validate_path);
        for (const std::string& note : report.notes) {
            std::cout << "note: " << note << "\n";
        }
        if (!report.ok()) {
            for (const std::string& err : report.errors) {
                std::cerr << "error: " << err << "\n";
            }
            return bric::exit_config_error;
        }
        std::cout << "ok: " << report.config->name << "\n";
        return bric::exit_ok;
    }
    if (compare->parsed()) {
        return bric::compare_runs(cmp_a, cmp_b, std::cout);
    }
    return bric::exit_internal;
}
